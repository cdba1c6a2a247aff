#include "agcurv/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace agcurv {

namespace {

std::size_t checked_size(int extent, int rank) {
  if (extent < 1) throw TensorError("array extent must be positive");
  if (rank < 0) throw TensorError("array rank must be non-negative");
  std::size_t total = 1;
  for (int r = 0; r < rank; ++r) total *= static_cast<std::size_t>(extent);
  return total;
}

void check_slots(int rank, std::span<const int> slots, std::span<const int> excluded) {
  std::vector<bool> seen(rank, false);
  for (int s : slots) {
    if (s < 0 || s >= rank) throw TensorError("slot position out of range");
    if (seen[s]) throw TensorError("slot listed twice");
    seen[s] = true;
  }
  for (int s : excluded) {
    if (s < 0 || s >= rank) throw TensorError("excluded slot position out of range");
    if (seen[s]) throw TensorError("slot appears in both the permuted and excluded lists");
  }
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> visited(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (visited[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !visited[j]; j = perm[j]) {
      visited[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

DenseArray alternate(const DenseArray& t, std::span<const int> slots,
                     std::span<const int> excluded, bool with_sign) {
  check_slots(t.rank(), slots, excluded);
  DenseArray out(t.extent(), t.rank());
  if (slots.empty()) {
    std::copy(t.values().begin(), t.values().end(), out.values().begin());
    return out;
  }
  const std::size_t k = slots.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double factorial = 1.0;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);

  std::vector<int> src(t.rank());
  do {
    const double weight = (with_sign ? permutation_sign(perm) : 1) / factorial;
    out.for_each([&](std::span<const int> idx, Complex& value) {
      std::copy(idx.begin(), idx.end(), src.begin());
      for (std::size_t m = 0; m < k; ++m) src[slots[m]] = idx[slots[perm[m]]];
      value += weight * t.at(src);
    });
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ComponentTensor wrap(const ComponentTensor& like, const DenseArray& values) {
  ComponentTensor out(like.n(), like.variance());
  std::copy(values.values().begin(), values.values().end(), out.values().begin());
  return out;
}

}  // namespace

DenseArray::DenseArray(int extent, int rank)
    : extent_(extent), rank_(rank), data_(checked_size(extent, rank)) {}

std::size_t DenseArray::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw TensorError("index tuple has wrong rank");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= extent_) throw TensorError("index out of range");
    flat = flat * extent_ + i;
  }
  return flat;
}

void DenseArray::unravel(std::size_t flat, std::span<int> idx) const {
  for (int r = rank_ - 1; r >= 0; --r) {
    idx[r] = static_cast<int>(flat % extent_);
    flat /= extent_;
  }
}

void DenseArray::for_each(const std::function<void(std::span<const int>, Complex&)>& fn) {
  std::vector<int> idx(rank_);
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    unravel(flat, idx);
    fn(idx, data_[flat]);
  }
}

void DenseArray::for_each(
    const std::function<void(std::span<const int>, const Complex&)>& fn) const {
  std::vector<int> idx(rank_);
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    unravel(flat, idx);
    fn(idx, data_[flat]);
  }
}

double DenseArray::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const DenseArray& lhs, const DenseArray& rhs) {
  if (lhs.size() != rhs.size()) throw TensorError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    m = std::max(m, std::abs(lhs.values()[i] - rhs.values()[i]));
  return m;
}

ComponentTensor::ComponentTensor(int n, std::vector<Variance> variance)
    : DenseArray((n < 1 ? throw TensorError("dimension parameter n must be >= 1") : 2 * n + 1),
                 static_cast<int>(variance.size())),
      n_(n),
      variance_(std::move(variance)) {}

ComponentTensor ComponentTensor::lower(int n, int rank) {
  return ComponentTensor(n, std::vector<Variance>(rank, Variance::Lower));
}

ComponentTensor ComponentTensor::upper(int n, int rank) {
  return ComponentTensor(n, std::vector<Variance>(rank, Variance::Upper));
}

Metric make_metric(int n) {
  if (n < 1) throw TensorError("make_metric: n must be >= 1");
  Metric m{ComponentTensor::lower(n, 2), ComponentTensor::upper(n, 2)};
  m.g(0, 0) = 1.0;
  m.ginv(0, 0) = 1.0;
  for (int a = 1; a <= n; ++a) {
    m.g(a + n, a) = m.g(a, a + n) = 1.0;
    m.ginv(a + n, a) = m.ginv(a, a + n) = 1.0;
  }
  return m;
}

ComponentTensor make_phi(int n) {
  if (n < 1) throw TensorError("make_phi: n must be >= 1");
  ComponentTensor phi(n, {Variance::Upper, Variance::Lower});
  const Complex i(0.0, 1.0);
  for (int a = 1; a <= n; ++a) {
    phi(a, a) = i;
    phi(a + n, a + n) = -i;
  }
  return phi;
}

ComponentTensor make_eta(int n) {
  ComponentTensor eta = ComponentTensor::lower(n, 1);
  eta(0) = 1.0;
  return eta;
}

ComponentTensor make_xi(int n) {
  ComponentTensor xi = ComponentTensor::upper(n, 1);
  xi(0) = 1.0;
  return xi;
}

DenseArray antisymmetrize(const DenseArray& t, std::span<const int> slots,
                          std::span<const int> excluded) {
  return alternate(t, slots, excluded, true);
}

ComponentTensor antisymmetrize(const ComponentTensor& t, std::span<const int> slots,
                               std::span<const int> excluded) {
  return wrap(t, alternate(t, slots, excluded, true));
}

DenseArray symmetrize(const DenseArray& t, std::span<const int> slots,
                      std::span<const int> excluded) {
  return alternate(t, slots, excluded, false);
}

ComponentTensor symmetrize(const ComponentTensor& t, std::span<const int> slots,
                           std::span<const int> excluded) {
  return wrap(t, alternate(t, slots, excluded, false));
}

ComponentTensor contract(const ComponentTensor& t, int upper_slot, int lower_slot) {
  const int rank = t.rank();
  if (upper_slot < 0 || upper_slot >= rank || lower_slot < 0 || lower_slot >= rank ||
      upper_slot == lower_slot)
    throw TensorError("contract: invalid slot pair");
  if (t.variance(upper_slot) != Variance::Upper || t.variance(lower_slot) != Variance::Lower)
    throw TensorError("contract: slot variances must be (upper, lower)");

  std::vector<Variance> rest;
  for (int s = 0; s < rank; ++s)
    if (s != upper_slot && s != lower_slot) rest.push_back(t.variance(s));
  ComponentTensor out(t.n(), rest);

  std::vector<int> full(rank);
  out.for_each([&](std::span<const int> idx, Complex& value) {
    int k = 0;
    for (int s = 0; s < rank; ++s)
      if (s != upper_slot && s != lower_slot) full[s] = idx[k++];
    Complex sum = 0.0;
    for (int p = 0; p < t.extent(); ++p) {
      full[upper_slot] = full[lower_slot] = p;
      sum += t.at(full);
    }
    value = sum;
  });
  return out;
}

namespace {

ComponentTensor apply_metric(const ComponentTensor& t, int slot, const ComponentTensor& m,
                             Variance from, Variance to) {
  if (slot < 0 || slot >= t.rank()) throw TensorError("slot out of range");
  if (t.variance(slot) != from)
    throw TensorError(from == Variance::Upper ? "lower_index: slot is not upper"
                                              : "raise_index: slot is not lower");
  if (m.n() != t.n()) throw TensorError("metric dimension mismatch");
  auto variance = t.variance();
  variance[slot] = to;
  ComponentTensor out(t.n(), variance);
  std::vector<int> src(t.rank());
  out.for_each([&](std::span<const int> idx, Complex& value) {
    std::copy(idx.begin(), idx.end(), src.begin());
    Complex sum = 0.0;
    for (int p = 0; p < t.extent(); ++p) {
      const Complex w = m(idx[slot], p);
      if (w == 0.0) continue;
      src[slot] = p;
      sum += w * t.at(src);
    }
    value = sum;
  });
  return out;
}

}  // namespace

ComponentTensor lower_index(const ComponentTensor& t, int slot, const Metric& metric) {
  return apply_metric(t, slot, metric.g, Variance::Upper, Variance::Lower);
}

ComponentTensor raise_index(const ComponentTensor& t, int slot, const Metric& metric) {
  return apply_metric(t, slot, metric.ginv, Variance::Lower, Variance::Upper);
}

ComponentTensor outer(const ComponentTensor& a, const ComponentTensor& b) {
  if (a.n() != b.n()) throw TensorError("outer: dimension mismatch");
  auto variance = a.variance();
  variance.insert(variance.end(), b.variance().begin(), b.variance().end());
  ComponentTensor out(a.n(), variance);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out.values()[i * b.size() + j] = a.values()[i] * b.values()[j];
  return out;
}

void hat_tuple(std::span<const int> idx, std::span<int> out, int n) {
  for (std::size_t s = 0; s < idx.size(); ++s) out[s] = hat(idx[s], n);
}

ComponentTensor conjugate_complete(const ComponentTensor& t,
                                   const std::function<bool(std::span<const int>)>& known,
                                   double tol) {
  ComponentTensor out = t;
  std::vector<int> image(t.rank());
  std::string problem;
  out.for_each([&](std::span<const int> idx, Complex& value) {
    hat_tuple(idx, image, t.n());
    const bool self = known(idx);
    const bool mirror = known(image);
    if (self && mirror) {
      if (std::abs(t.at(idx) - std::conj(t.at(image))) > tol && problem.empty())
        problem = "conjugate_complete: conflicting conjugate pair";
    } else if (mirror) {
      value = std::conj(t.at(image));
    } else if (!self && problem.empty()) {
      problem = "conjugate_complete: coverage gap (neither entry nor its hat image known)";
    }
  });
  if (!problem.empty()) throw CompletionError(problem);
  return out;
}

double hat_reality_residual(const DenseArray& t, int n) {
  double m = 0.0;
  std::vector<int> image(t.rank());
  t.for_each([&](std::span<const int> idx, const Complex& value) {
    hat_tuple(idx, image, n);
    m = std::max(m, std::abs(value - std::conj(t.at(image))));
  });
  return m;
}

}  // namespace agcurv
