#include "agcurv/completion.hpp"

#include <algorithm>
#include <cmath>

namespace agcurv {

std::vector<SlotSymmetry> curvature_symmetries() {
  return {{{1, 0, 2, 3}, -1.0}, {{0, 1, 3, 2}, -1.0}, {{2, 3, 0, 1}, 1.0}};
}

std::vector<SlotSymmetry> symmetric_pair() { return {{{1, 0}, 1.0}}; }

SymmetryCompletion::SymmetryCompletion(ComponentTensor shape,
                                       std::vector<SlotSymmetry> generators, double tol,
                                       bool strict)
    : tensor_(std::move(shape)),
      known_(tensor_.size(), false),
      generators_(std::move(generators)),
      tol_(tol),
      strict_(strict) {
  for (const auto& g : generators_)
    if (static_cast<int>(g.perm.size()) != tensor_.rank())
      throw TensorError("slot symmetry rank mismatch");
  std::fill(tensor_.values().begin(), tensor_.values().end(), Complex(0.0));
}

bool SymmetryCompletion::known(std::span<const int> idx) const {
  return known_[tensor_.offset(idx)];
}

void SymmetryCompletion::set(std::span<const int> idx, Complex value) {
  struct Node {
    std::vector<int> idx;
    Complex value;
  };
  const int rank = tensor_.rank();
  std::vector<Node> orbit{{std::vector<int>(idx.begin(), idx.end()), value}};
  std::vector<std::size_t> seen{tensor_.offset(idx)};

  auto visit = [&](std::vector<int> next, Complex v) {
    const std::size_t off = tensor_.offset(next);
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (seen[k] != off) continue;
      const double gap = std::abs(orbit[k].value - v);
      if (gap > tol_) {
        if (strict_) throw CompletionError("symmetry completion: entry is inconsistent with its own orbit");
        conflict_ = std::max(conflict_, gap);
      }
      return;
    }
    seen.push_back(off);
    orbit.push_back({std::move(next), v});
  };

  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const Node node = orbit[k];
    for (const auto& g : generators_) {
      std::vector<int> next(rank);
      for (int s = 0; s < rank; ++s) next[g.perm[s]] = node.idx[s];
      visit(std::move(next), g.sign * node.value);
    }
    std::vector<int> mirror(rank);
    hat_tuple(node.idx, mirror, tensor_.n());
    visit(std::move(mirror), std::conj(node.value));
  }

  for (const auto& node : orbit) {
    const std::size_t off = tensor_.offset(node.idx);
    if (known_[off]) {
      const double gap = std::abs(tensor_.values()[off] - node.value);
      if (gap > tol_) {
        if (strict_) throw CompletionError("symmetry completion: conflicting assignment");
        conflict_ = std::max(conflict_, gap);
      }
      continue;
    }
    known_[off] = true;
    tensor_.values()[off] = node.value;
  }
}

void SymmetryCompletion::bianchi_fill() {
  if (tensor_.rank() != 4) throw TensorError("bianchi_fill needs a rank-4 tensor");
  bool progress = true;
  std::vector<int> idx(4);
  while (progress) {
    progress = false;
    for (std::size_t flat = 0; flat < tensor_.size(); ++flat) {
      if (known_[flat]) continue;
      tensor_.unravel(flat, idx);
      const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
      const int second[] = {i, k, l, j};
      const int third[] = {i, l, j, k};
      if (!known(second) || !known(third)) continue;
      set(idx, -(tensor_.at(second) + tensor_.at(third)));
      progress = true;
    }
  }
}

double bianchi_residual(const DenseArray& t) {
  double m = 0.0;
  t.for_each([&](std::span<const int> x, const Complex& v) {
    m = std::max(m, std::abs(v + t(x[0], x[2], x[3], x[1]) + t(x[0], x[3], x[1], x[2])));
  });
  return m;
}

double last_pair_antisymmetry_residual(const DenseArray& t) {
  double m = 0.0;
  t.for_each([&](std::span<const int> x, const Complex& v) {
    m = std::max(m, std::abs(v + t(x[0], x[1], x[3], x[2])));
  });
  return m;
}

double first_pair_antisymmetry_residual(const DenseArray& t) {
  double m = 0.0;
  t.for_each([&](std::span<const int> x, const Complex& v) {
    m = std::max(m, std::abs(v + t(x[1], x[0], x[2], x[3])));
  });
  return m;
}

double pair_symmetry_residual(const DenseArray& t) {
  double m = 0.0;
  t.for_each([&](std::span<const int> x, const Complex& v) {
    m = std::max(m, std::abs(v - t(x[2], x[3], x[0], x[1])));
  });
  return m;
}

}  // namespace agcurv
