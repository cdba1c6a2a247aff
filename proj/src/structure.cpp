#include "agcurv/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace agcurv {

namespace {

DenseArray conj_of(const DenseArray& a) {
  DenseArray out = a;
  for (auto& v : out.values()) v = std::conj(v);
  return out;
}

void require_shape(const DenseArray& a, int n, int rank, const char* name) {
  if (a.rank() != rank || a.extent() != n)
    throw TensorError(std::string("structure.") + name + ": expected rank " +
                      std::to_string(rank) + " array with extent " + std::to_string(n));
}

struct Family {
  const DenseArray& A22;
  const DenseArray& A13;
  const DenseArray& A31;
  const DenseArray& B22;
  const DenseArray& B31;
  const DenseArray& first;   // B^{ab}_c in the upper relations
  const DenseArray& second;  // B_{ab}^c in the upper relations
};

// A^{ad}_{[bc]} - B^{ad}_{[cb]} - B^{ah}_{[b} B_{|h|c]}^d
double relation_one(const Family& f, int n) {
  double m = 0.0;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Complex v = 0.5 * (f.A22(a, d, b, c) - f.A22(a, d, c, b)) -
                      0.5 * (f.B22(a, d, c, b) - f.B22(a, d, b, c));
          for (int h = 0; h < n; ++h)
            v -= 0.5 * (f.first(a, h, b) * f.second(h, c, d) -
                        f.first(a, h, c) * f.second(h, b, d));
          m = std::max(m, std::abs(v));
        }
  return m;
}

// A^{acd}_b - B^{a[cd]}_b + B^{a[c}_h B^{|h|d]}_b
double relation_two(const Family& f, int n) {
  double m = 0.0;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        for (int b = 0; b < n; ++b) {
          Complex v = f.A31(a, c, d, b) - 0.5 * (f.B31(a, c, d, b) - f.B31(a, d, c, b));
          for (int h = 0; h < n; ++h)
            v += 0.5 * (f.first(a, c, h) * f.first(h, d, b) -
                        f.first(a, d, h) * f.first(h, c, b));
          m = std::max(m, std::abs(v));
        }
  return m;
}

// A^a_{[bcd]}
double relation_three(const DenseArray& A13) {
  return antisymmetrize(A13, {1, 2, 3}).max_abs();
}

std::uint64_t mix_seed(std::uint64_t seed, int n) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n) * 0xBF58476D1CE4E5B9ULL;
}

}  // namespace

DenseArray latin_array(int n, int rank) {
  if (n < 1) throw TensorError("dimension parameter n must be >= 1");
  return DenseArray(n, rank);
}

StructureData zero_structure(int n) {
  StructureData s;
  s.n = n;
  s.B3u = latin_array(n, 3);
  s.B3d = latin_array(n, 3);
  s.A22 = latin_array(n, 4);
  s.A13 = latin_array(n, 4);
  s.A31 = latin_array(n, 4);
  s.B22 = latin_array(n, 4);
  s.B31 = latin_array(n, 4);
  s.A22_lower = latin_array(n, 4);
  s.A13_lower = latin_array(n, 4);
  s.A31_lower = latin_array(n, 4);
  s.B22_lower = latin_array(n, 4);
  s.B31_lower = latin_array(n, 4);
  return s;
}

void conjugate_lower_family(StructureData& s) {
  s.B3d = conj_of(s.B3u);
  s.A22_lower = conj_of(s.A22);
  s.A13_lower = conj_of(s.A13);
  s.A31_lower = conj_of(s.A31);
  s.B22_lower = conj_of(s.B22);
  s.B31_lower = conj_of(s.B31);
}

void check_shapes(const StructureData& s) {
  if (s.n < 1) throw TensorError("structure: n must be >= 1");
  require_shape(s.B3u, s.n, 3, "B3u");
  require_shape(s.B3d, s.n, 3, "B3d");
  require_shape(s.A22, s.n, 4, "A22");
  require_shape(s.A13, s.n, 4, "A13");
  require_shape(s.A31, s.n, 4, "A31");
  require_shape(s.B22, s.n, 4, "B22");
  require_shape(s.B31, s.n, 4, "B31");
  require_shape(s.A22_lower, s.n, 4, "A22_lower");
  require_shape(s.A13_lower, s.n, 4, "A13_lower");
  require_shape(s.A31_lower, s.n, 4, "A31_lower");
  require_shape(s.B22_lower, s.n, 4, "B22_lower");
  require_shape(s.B31_lower, s.n, 4, "B31_lower");
}

bool AdmissibilityReport::admissible() const {
  return std::all_of(residuals.begin(), residuals.end(), [&](const Residual& r) {
    return !r.defining || r.value <= tolerance;
  });
}

bool AdmissibilityReport::curvature_consistent() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [&](const Residual& r) { return r.value <= tolerance; });
}

double AdmissibilityReport::value(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.value;
  throw std::out_of_range("no residual named " + name);
}

DenseArray pair_antisymmetric_part(const StructureData& s) {
  return antisymmetrize(s.B22, {2, 3});
}

DenseArray mixed_curvature_block(const StructureData& s) {
  const int n = s.n;
  DenseArray out = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Complex v = s.B31(a, b, d, c);
          for (int h = 0; h < n; ++h) v -= s.B3u(a, b, h) * s.B3u(h, d, c);
          out(a, b, c, d) = v;
        }
  return out;
}

DenseArray reduced_a22(const StructureData& s) {
  const int n = s.n;
  DenseArray out = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Complex v = s.A22(a, d, b, c);
          for (int h = 0; h < n; ++h) v -= s.B3u(a, h, c) * s.B3d(b, h, d);
          out(a, d, b, c) = v;
        }
  return out;
}

AdmissibilityReport validate_admissible(const StructureData& s, double tol) {
  check_shapes(s);
  const int n = s.n;
  AdmissibilityReport report;
  report.tolerance = tol;

  const Family upper{s.A22, s.A13, s.A31, s.B22, s.B31, s.B3u, s.B3d};
  const Family lower{s.A22_lower, s.A13_lower, s.A31_lower, s.B22_lower, s.B31_lower,
                     s.B3d, s.B3u};
  report.residuals.push_back({"A22_antisymmetric_part", relation_one(upper, n), true});
  report.residuals.push_back({"A31_definition", relation_two(upper, n), true});
  report.residuals.push_back({"A13_total_antisymmetry", relation_three(s.A13), true});
  report.residuals.push_back({"A22_lower_antisymmetric_part", relation_one(lower, n), true});
  report.residuals.push_back({"A31_lower_definition", relation_two(lower, n), true});
  report.residuals.push_back({"A13_lower_total_antisymmetry", relation_three(s.A13_lower), true});

  const DenseArray pair = pair_antisymmetric_part(s);
  const DenseArray mixed = mixed_curvature_block(s);
  const DenseArray reduced = reduced_a22(s);
  double b3u_anti = 0, pair_anti = 0, pair_herm = 0, a22_herm = 0, a13_pair = 0,
         mixed_anti = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        b3u_anti = std::max(b3u_anti, std::abs(s.B3u(a, b, c) + s.B3u(b, a, c)));
        for (int d = 0; d < n; ++d) {
          pair_anti = std::max(pair_anti, std::abs(pair(a, b, c, d) + pair(b, a, c, d)));
          pair_herm = std::max(pair_herm, std::abs(pair(a, b, c, d) - std::conj(pair(c, d, a, b))));
          // reduced is indexed (a,d,b,c); here (a,b,c,d) play those roles.
          a22_herm = std::max(a22_herm,
                              std::abs(reduced(a, b, c, d) - std::conj(reduced(d, c, b, a))));
          a13_pair = std::max(a13_pair,
                              std::abs(2.0 * s.A13(a, b, c, d) - std::conj(mixed(c, d, a, b))));
          mixed_anti = std::max(mixed_anti, std::abs(mixed(a, b, c, d) + mixed(b, a, c, d)));
        }
      }
    }
  report.residuals.push_back({"B3u_antisymmetry", b3u_anti, false});
  report.residuals.push_back({"B22_upper_pair_antisymmetry", pair_anti, false});
  report.residuals.push_back({"B22_pair_hermitian", pair_herm, false});
  report.residuals.push_back({"A22_hermitian", a22_herm, false});
  report.residuals.push_back({"A13_B31_pairing", a13_pair, false});
  report.residuals.push_back({"B31_upper_antisymmetry", mixed_anti, false});

  double conj_gap = max_abs_diff(s.B3d, conj_of(s.B3u));
  conj_gap = std::max(conj_gap, max_abs_diff(s.A22_lower, conj_of(s.A22)));
  conj_gap = std::max(conj_gap, max_abs_diff(s.A13_lower, conj_of(s.A13)));
  conj_gap = std::max(conj_gap, max_abs_diff(s.A31_lower, conj_of(s.A31)));
  conj_gap = std::max(conj_gap, max_abs_diff(s.B22_lower, conj_of(s.B22)));
  conj_gap = std::max(conj_gap, max_abs_diff(s.B31_lower, conj_of(s.B31)));
  report.residuals.push_back({"lower_family_conjugate", conj_gap, false});
  return report;
}

DenseArray project_b3u(const DenseArray& raw) { return antisymmetrize(raw, {0, 1}); }

DenseArray project_mixed_block(const DenseArray& raw) {
  DenseArray t = antisymmetrize(raw, {0, 1});
  const DenseArray total = antisymmetrize(t, {0, 1, 3});
  for (std::size_t i = 0; i < t.size(); ++i) t.values()[i] -= total.values()[i];
  return t;
}

DenseArray project_pair_block(const DenseArray& raw) {
  const DenseArray t = antisymmetrize(antisymmetrize(raw, {0, 1}), {2, 3});
  DenseArray out = t;
  const int n = t.extent();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          out(a, b, c, d) = 0.5 * (t(a, b, c, d) + std::conj(t(c, d, a, b)));
  return out;
}

DenseArray project_hermitian(const DenseArray& raw) {
  const DenseArray t = symmetrize(symmetrize(raw, {0, 1}), {2, 3});
  DenseArray out = t;
  const int n = t.extent();
  // H^{ad}_{bc} = conj(H^{cb}_{da})
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          out(a, d, b, c) = 0.5 * (t(a, d, b, c) + std::conj(t(c, b, d, a)));
  return out;
}

StructureData assemble_structure(int n, const StructureParameters& p) {
  StructureData s = zero_structure(n);
  require_shape(p.B3u, n, 3, "B3u");
  require_shape(p.mixed_block, n, 4, "mixed_block");
  require_shape(p.pair_block, n, 4, "pair_block");
  require_shape(p.pair_sym, n, 4, "pair_sym");
  require_shape(p.hermitian, n, 4, "hermitian");

  s.B3u = p.B3u;
  s.B3d = conj_of(p.B3u);
  const DenseArray sym = symmetrize(p.pair_sym, {2, 3});
  for (std::size_t i = 0; i < s.B22.size(); ++i)
    s.B22.values()[i] = p.pair_block.values()[i] + sym.values()[i];

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Complex quad = 0.0;
          for (int h = 0; h < n; ++h) quad += s.B3u(a, b, h) * s.B3u(h, d, c);
          s.B31(a, b, d, c) = p.mixed_block(a, b, c, d) + quad;
          s.A13(a, b, c, d) = 0.5 * std::conj(p.mixed_block(c, d, a, b));

          // (a,b,c,d) read as (a,d,b,c) for A22.
          Complex product = 0.0;
          for (int h = 0; h < n; ++h) product += s.B3u(a, h, d) * s.B3d(c, h, b);
          s.A22(a, b, c, d) = p.hermitian(a, b, c, d) - p.pair_block(a, b, c, d) + product;
        }

  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        for (int b = 0; b < n; ++b) {
          Complex v = 0.5 * (s.B31(a, c, d, b) - s.B31(a, d, c, b));
          for (int h = 0; h < n; ++h)
            v -= 0.5 * (s.B3u(a, c, h) * s.B3u(h, d, b) - s.B3u(a, d, h) * s.B3u(h, c, b));
          s.A31(a, c, d, b) = v;
        }

  s.A22_lower = conj_of(s.A22);
  s.A13_lower = conj_of(s.A13);
  s.A31_lower = conj_of(s.A31);
  s.B22_lower = conj_of(s.B22);
  s.B31_lower = conj_of(s.B31);
  return s;
}

StructureParameters random_parameters(int n, std::uint64_t seed, double scale) {
  if (n < 1) throw TensorError("random_admissible: n must be >= 1");
  if (!(scale >= 0.0)) throw TensorError("random_admissible: scale must be non-negative");
  std::mt19937_64 rng(mix_seed(seed, n));
  // |re + i im| <= scale
  std::uniform_real_distribution<double> unit(-scale / std::sqrt(2.0), scale / std::sqrt(2.0));
  auto sample = [&](int rank) {
    DenseArray a = latin_array(n, rank);
    for (auto& v : a.values()) {
      const double re = unit(rng);
      v = Complex(re, unit(rng));
    }
    return a;
  };
  StructureParameters p;
  p.B3u = project_b3u(sample(3));
  p.mixed_block = project_mixed_block(sample(4));
  p.pair_block = project_pair_block(sample(4));
  p.pair_sym = sample(4);
  p.hermitian = project_hermitian(sample(4));
  return p;
}

StructureData random_admissible(int n, std::uint64_t seed, double scale) {
  return assemble_structure(n, random_parameters(n, seed, scale));
}

}  // namespace agcurv
