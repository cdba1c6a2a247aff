#pragma once

// Fills a frame tensor from a partial set of entries by closing it under
// slot symmetries and hat conjugation, optionally followed by the first
// Bianchi identity. Entries never reached are zero.

#include <optional>
#include <vector>

#include "agcurv/tensor.hpp"

namespace agcurv {

/// out(perm applied to idx) = sign * in(idx)
struct SlotSymmetry {
  std::vector<int> perm;
  double sign = 1.0;
};

/// R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij}
std::vector<SlotSymmetry> curvature_symmetries();
/// r_{ij} = r_{ji}
std::vector<SlotSymmetry> symmetric_pair();

class SymmetryCompletion {
 public:
  /// strict: a conflicting assignment throws CompletionError; otherwise the
  /// first value wins and the largest discrepancy is recorded.
  SymmetryCompletion(ComponentTensor shape, std::vector<SlotSymmetry> generators,
                     double tol = kDefaultTolerance, bool strict = true);

  void set(std::span<const int> idx, Complex value);
  template <typename... I>
  void set_at(Complex value, I... idx) {
    const int tuple[] = {static_cast<int>(idx)...};
    set(std::span<const int>(tuple, sizeof...(I)), value);
  }

  bool known(std::span<const int> idx) const;

  /// Rank-4 only: fills unknown entries from the cyclic identity over the
  /// last three slots wherever the other two terms are known.
  void bianchi_fill();

  /// Worst discrepancy seen between a derived value and an existing one.
  double conflict() const { return conflict_; }

  ComponentTensor result() const { return tensor_; }

 private:
  ComponentTensor tensor_;
  std::vector<bool> known_;
  std::vector<SlotSymmetry> generators_;
  double tol_;
  bool strict_;
  double conflict_ = 0.0;
};

/// max over (i,j,k,l) of |T_ijkl + T_iklj + T_iljk|
double bianchi_residual(const DenseArray& t);
/// max |T_ijkl + T_ijlk|
double last_pair_antisymmetry_residual(const DenseArray& t);
/// max |T_ijkl + T_jikl|
double first_pair_antisymmetry_residual(const DenseArray& t);
/// max |T_ijkl - T_klij|
double pair_symmetry_residual(const DenseArray& t);

}  // namespace agcurv
