#pragma once

// Dense complex index algebra over adapted frames (xi, eps_a, eps_{a^}).
//
// Frame indices run 0..2n: 0 is the Reeb direction, 1..n are the Latin
// indices and n+1..2n their hatted partners. All tensors are stored densely,
// row-major in the index tuple.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace agcurv {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// Thrown for malformed arguments: bad dimensions, slot lists, variances.
class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by conjugate completion when known entries disagree, or when an
/// entry has neither itself nor its hat image known.
class CompletionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// hat(0) = 0, hat(a) = a + n, hat(a + n) = a.
constexpr int hat(int index, int n) {
  if (index == 0) return 0;
  return index <= n ? index + n : index - n;
}

/// Dense complex array with a uniform extent on every slot.
class DenseArray {
 public:
  DenseArray() = default;
  DenseArray(int extent, int rank);

  int extent() const { return extent_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  std::span<Complex> values() { return data_; }
  std::span<const Complex> values() const { return data_; }

  std::size_t offset(std::span<const int> idx) const;
  void unravel(std::size_t flat, std::span<int> idx) const;

  Complex& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const Complex& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  template <typename... I>
  Complex& operator()(I... idx) {
    const int tuple[] = {static_cast<int>(idx)...};
    return at(std::span<const int>(tuple, sizeof...(I)));
  }
  template <typename... I>
  const Complex& operator()(I... idx) const {
    const int tuple[] = {static_cast<int>(idx)...};
    return at(std::span<const int>(tuple, sizeof...(I)));
  }

  /// Calls fn(index_tuple, value&) for every entry in row-major order.
  void for_each(const std::function<void(std::span<const int>, Complex&)>& fn);
  void for_each(
      const std::function<void(std::span<const int>, const Complex&)>& fn) const;

  double max_abs() const;

 private:
  int extent_ = 0;
  int rank_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const DenseArray& lhs, const DenseArray& rhs);

enum class Variance { Upper, Lower };

/// Frame tensor over indices 0..2n with a variance tag per slot.
class ComponentTensor : public DenseArray {
 public:
  ComponentTensor() = default;
  ComponentTensor(int n, std::vector<Variance> variance);

  static ComponentTensor lower(int n, int rank);
  static ComponentTensor upper(int n, int rank);

  int n() const { return n_; }
  const std::vector<Variance>& variance() const { return variance_; }
  Variance variance(int slot) const { return variance_.at(slot); }

 private:
  int n_ = 0;
  std::vector<Variance> variance_;
};

struct Metric {
  ComponentTensor g;     // g_{ij}
  ComponentTensor ginv;  // g^{ij}
  int n() const { return g.n(); }
};

/// Canonical A-frame metric: g_00 = 1, g_{a^ b} = g_{b a^} = delta, rest 0.
Metric make_metric(int n);

/// Canonical Phi^i_j: Phi^a_b = i delta, Phi^{a^}_{b^} = -i delta, rest 0.
ComponentTensor make_phi(int n);

/// eta_i = delta^0_i on the A-frame.
ComponentTensor make_eta(int n);

/// xi^i = delta^i_0.
ComponentTensor make_xi(int n);

/// Alternating average over permutations of `slots` with weight 1/k!.
/// `excluded` slots are held fixed and must not overlap `slots`.
DenseArray antisymmetrize(const DenseArray& t, std::span<const int> slots,
                          std::span<const int> excluded = {});
ComponentTensor antisymmetrize(const ComponentTensor& t, std::span<const int> slots,
                               std::span<const int> excluded = {});

/// Symmetric average over permutations of `slots` with weight 1/k!.
DenseArray symmetrize(const DenseArray& t, std::span<const int> slots,
                      std::span<const int> excluded = {});
ComponentTensor symmetrize(const ComponentTensor& t, std::span<const int> slots,
                           std::span<const int> excluded = {});

inline DenseArray antisymmetrize(const DenseArray& t, std::initializer_list<int> slots) {
  return antisymmetrize(t, std::span<const int>(slots.begin(), slots.size()));
}
inline DenseArray symmetrize(const DenseArray& t, std::initializer_list<int> slots) {
  return symmetrize(t, std::span<const int>(slots.begin(), slots.size()));
}

/// Sums the upper slot against the lower slot; result drops both slots.
ComponentTensor contract(const ComponentTensor& t, int upper_slot, int lower_slot);

/// T_{..i..} = g_{ip} T^{..p..}
ComponentTensor lower_index(const ComponentTensor& t, int slot, const Metric& metric);
/// T^{..i..} = g^{ip} T_{..p..}
ComponentTensor raise_index(const ComponentTensor& t, int slot, const Metric& metric);

/// Tensor product, slots of `a` first.
ComponentTensor outer(const ComponentTensor& a, const ComponentTensor& b);

/// Applies the hat involution to every entry of a tuple.
void hat_tuple(std::span<const int> idx, std::span<int> out, int n);

/// Fills every entry not satisfying `known` with the conjugate of its hat image.
/// Entries known on both sides must agree to `tol`.
ComponentTensor conjugate_complete(const ComponentTensor& t,
                                   const std::function<bool(std::span<const int>)>& known,
                                   double tol = kDefaultTolerance);

/// max |T(i..) - conj(T(hat(i)..))|
double hat_reality_residual(const DenseArray& t, int n);

}  // namespace agcurv
