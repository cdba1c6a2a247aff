#include "agcurv/hypersurface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace agcurv {

namespace {

const Complex I(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

DenseArray conj_of(const DenseArray& a) {
  DenseArray out = a;
  for (auto& v : out.values()) v = std::conj(v);
  return out;
}

DenseArray identity_array(int m) {
  DenseArray out(m, 2);
  for (int a = 0; a < m; ++a) out(a, a) = 1.0;
  return out;
}

// sum of scaled arrays of a common shape
DenseArray combine(std::initializer_list<std::pair<Complex, const DenseArray*>> parts) {
  DenseArray out(parts.begin()->second->extent(), parts.begin()->second->rank());
  for (const auto& [w, arr] : parts)
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += w * arr->values()[i];
  return out;
}

// (a,b) -> (b,a)
DenseArray transpose(const DenseArray& a) {
  DenseArray out(a.extent(), 2);
  for (int i = 0; i < a.extent(); ++i)
    for (int j = 0; j < a.extent(); ++j) out(i, j) = a(j, i);
  return out;
}

void require(const DenseArray& a, int extent, int rank, const char* name) {
  if (a.extent() != extent || a.rank() != rank)
    throw TensorError(std::string("hypersurface.") + name + ": expected rank " +
                      std::to_string(rank) + " with extent " + std::to_string(extent));
}

Eigen::MatrixXcd to_matrix(const DenseArray& a) {
  Eigen::MatrixXcd m(a.extent(), a.extent());
  for (int i = 0; i < a.extent(); ++i)
    for (int j = 0; j < a.extent(); ++j) m(i, j) = a(i, j);
  return m;
}

DenseArray array_from(const Eigen::MatrixXcd& m) {
  DenseArray out(static_cast<int>(m.rows()), 2);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

CartanTerm term(std::string form, std::string wedge, std::string coefficient, DenseArray value,
                bool negated = false) {
  return {std::move(form), std::move(wedge), std::move(coefficient), negated, std::move(value)};
}

}  // namespace

HypersurfaceData zero_hypersurface(int n) {
  if (n < 2) throw TensorError("hypersurface: ambient dimension n must be >= 2");
  const int m = n - 1;
  HypersurfaceData h;
  h.n = n;
  h.Bab_c = DenseArray(m, 3);
  h.Ban_b = DenseArray(m, 2);
  h.Bna_b = DenseArray(m, 2);
  h.Bab_n = DenseArray(m, 2);
  h.Bn_nb = DenseArray(m, 1);
  conjugate_lower(h);
  return h;
}

void conjugate_lower(HypersurfaceData& h) {
  h.lower_Bab_c = conj_of(h.Bab_c);
  h.lower_Ban_b = conj_of(h.Ban_b);
  h.lower_Bna_b = conj_of(h.Bna_b);
  h.lower_Bab_n = conj_of(h.Bab_n);
  h.lower_Bn_nb = conj_of(h.Bn_nb);
  if (h.kenmotsu_B) h.kenmotsu_B_lower = conj_of(*h.kenmotsu_B);
}

void check_shapes(const HypersurfaceData& h) {
  if (h.n < 2) throw TensorError("hypersurface.n: must be >= 2");
  const int m = h.n - 1;
  require(h.Bab_c, m, 3, "Bab_c");
  require(h.Ban_b, m, 2, "Ban_b");
  require(h.Bna_b, m, 2, "Bna_b");
  require(h.Bab_n, m, 2, "Bab_n");
  require(h.Bn_nb, m, 1, "Bn_nb");
  require(h.lower_Bab_c, m, 3, "lower_Bab_c");
  require(h.lower_Ban_b, m, 2, "lower_Ban_b");
  require(h.lower_Bna_b, m, 2, "lower_Bna_b");
  require(h.lower_Bab_n, m, 2, "lower_Bab_n");
  require(h.lower_Bn_nb, m, 1, "lower_Bn_nb");
  if (h.kenmotsu_B) require(*h.kenmotsu_B, m, 3, "kenmotsu_B");
  if (h.kenmotsu_B_lower) require(*h.kenmotsu_B_lower, m, 3, "kenmotsu_B_lower");
}

HypersurfaceData consistent_hypersurface(int n, std::uint64_t seed, double scale) {
  HypersurfaceData h = zero_hypersurface(n);
  const int m = n - 1;
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
  std::uniform_real_distribution<double> unit(-scale / kSqrt2, scale / kSqrt2);
  auto sample = [&](int rank) {
    DenseArray a(m, rank);
    for (auto& v : a.values()) {
      const double re = unit(rng);
      v = Complex(re, unit(rng));
    }
    return a;
  };

  DenseArray b3 = sample(3);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) h.Bab_c(a, b, c) = 0.5 * (b3(a, b, c) - b3(b, a, c));

  // B^{an}_b = -delta / sqrt2 + A with A anti-Hermitian, so sigma^a_b is Hermitian.
  const DenseArray raw = sample(2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      h.Ban_b(a, b) = -delta(a, b) / kSqrt2 + 0.5 * (raw(a, b) - std::conj(raw(b, a)));

  // B^{na}_b - conj(B^{nb}_a) = sqrt2 i sigma^a_b: Hermitian part free.
  const DenseArray herm_raw = sample(2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const Complex sigma = I * (kSqrt2 * h.Ban_b(a, b) + delta(a, b));
      h.Bna_b(a, b) =
          0.5 * (herm_raw(a, b) + std::conj(herm_raw(b, a))) + 0.5 * kSqrt2 * I * sigma;
    }
  conjugate_lower(h);
  return h;
}

CartanTable cartan_hermitian(const HypersurfaceData& h, const SecondForm& s) {
  CartanTable t{"hermitian", {}};
  t.terms.push_back(term("domega^a", "omega^c ^ omega_b", "B^{ab}_c", h.Bab_c));
  t.terms.push_back(term("domega^a", "omega^b ^ omega", "sqrt2 B^{an}_b + i sigma^a_b",
                         combine({{kSqrt2, &h.Ban_b}, {I, &s.sigma_mixed}})));
  t.terms.push_back(term("domega^a", "omega_b ^ omega", "i sigma^{ab} - (1/sqrt2) B^{ab}_n",
                         combine({{I, &s.sigma_up}, {-1.0 / kSqrt2, &h.Bab_n}})));
  t.terms.push_back(term("domega_a", "omega_c ^ omega^b", "B_{ab}^c", h.lower_Bab_c));
  t.terms.push_back(term("domega_a", "omega_b ^ omega", "sqrt2 B_{an}^b - i sigma_a^b",
                         combine({{kSqrt2, &h.lower_Ban_b}, {-I, &s.sigma_lower_mixed}})));
  t.terms.push_back(term("domega_a", "omega^b ^ omega", "i sigma_{ab} + (1/sqrt2) B_{ab}^n",
                         combine({{-I, &s.sigma_ab}, {-1.0 / kSqrt2, &h.lower_Bab_n}}), true));
  // B_{nb}^a stored as lower_Bna_b(b,a)
  const DenseArray lower_nb_a = transpose(h.lower_Bna_b);
  t.terms.push_back(term("domega", "omega^b ^ omega_a",
                         "sqrt2 B^{na}_b - sqrt2 B_{nb}^a - 2i sigma^a_b",
                         combine({{kSqrt2, &h.Bna_b},
                                  {-kSqrt2, &lower_nb_a},
                                  {-2.0 * I, &s.sigma_mixed}})));
  t.terms.push_back(term("domega", "omega ^ omega^b", "B^n_{nb} + i sigma_{nb}",
                         combine({{1.0, &h.Bn_nb}, {I, &s.sigma_nb}})));
  t.terms.push_back(term("domega", "omega ^ omega_b", "B_n^{nb} - i sigma_n^b",
                         combine({{1.0, &h.lower_Bn_nb}, {-I, &s.sigma_n_b}})));
  return t;
}

CartanTable cartan_kenmotsu(const HypersurfaceData& h) {
  const int m = h.n - 1;
  DenseArray minus_delta = identity_array(m);
  for (auto& v : minus_delta.values()) v = -v;
  const DenseArray& B = h.kenmotsu_B ? *h.kenmotsu_B : h.Bab_c;
  const DenseArray& Bl = h.kenmotsu_B_lower ? *h.kenmotsu_B_lower : h.lower_Bab_c;
  CartanTable t{"kenmotsu", {}};
  t.terms.push_back(term("domega^a", "omega^c ^ omega_b", "Bk^{ab}_c", B));
  t.terms.push_back(term("domega^a", "omega^b ^ omega", "-delta^a_b", minus_delta));
  t.terms.push_back(term("domega^a", "omega_b ^ omega", "0", DenseArray(m, 2)));
  t.terms.push_back(term("domega_a", "omega_c ^ omega^b", "Bk_{ab}^c", Bl));
  t.terms.push_back(term("domega_a", "omega_b ^ omega", "-delta_a^b", minus_delta));
  t.terms.push_back(term("domega_a", "omega^b ^ omega", "0", DenseArray(m, 2)));
  t.terms.push_back(term("domega", "omega^b ^ omega_a", "0", DenseArray(m, 2)));
  t.terms.push_back(term("domega", "omega ^ omega^b", "0", DenseArray(m, 1)));
  t.terms.push_back(term("domega", "omega ^ omega_b", "0", DenseArray(m, 1)));
  return t;
}

std::vector<Equation> equate(const CartanTable& lhs, const CartanTable& rhs) {
  std::vector<Equation> out;
  for (const auto& l : lhs.terms) {
    auto it = std::find_if(rhs.terms.begin(), rhs.terms.end(), [&](const CartanTerm& r) {
      return r.form == l.form && r.wedge == l.wedge;
    });
    const CartanTerm* r = it == rhs.terms.end() ? nullptr : &*it;
    const std::string rtext = r ? r->coefficient : "0";
    if (!r && l.coefficient == "0") continue;
    if (r && l.coefficient == r->coefficient && l.negated == r->negated) continue;
    // Move an overall sign of the left side across.
    std::string rhs_text = rtext;
    if (l.negated && rtext != "0")
      rhs_text = rtext[0] == '-' ? rtext.substr(1) : "-" + rtext;
    Equation e;
    e.text = l.coefficient + " = " + rhs_text;
    e.residual = r ? max_abs_diff(l.value, r->value) : l.value.max_abs();
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<std::string>& matching_system() {
  static const std::vector<std::string> system = {
      "B^{ab}_c = Bk^{ab}_c",
      "sqrt2 B^{an}_b + i sigma^a_b = -delta^a_b",
      "i sigma^{ab} - (1/sqrt2) B^{ab}_n = 0",
      "B_{ab}^c = Bk_{ab}^c",
      "sqrt2 B_{an}^b - i sigma_a^b = -delta_a^b",
      "i sigma_{ab} + (1/sqrt2) B_{ab}^n = 0",
      "sqrt2 B^{na}_b - sqrt2 B_{nb}^a - 2i sigma^a_b = 0",
      "B^n_{nb} + i sigma_{nb} = 0",
      "B_n^{nb} - i sigma_n^b = 0",
  };
  return system;
}

bool SigmaReport::consistent() const {
  if (sigma_symmetry > tolerance || ambient_antisymmetry > tolerance) return false;
  return std::all_of(relations.begin(), relations.end(),
                     [&](const Equation& e) { return e.residual <= tolerance; });
}

SigmaReport extract_sigma(const HypersurfaceData& h, double tol) {
  check_shapes(h);
  const int m = h.n - 1;
  SigmaReport out;
  out.tolerance = tol;
  SecondForm& s = out.sigma;
  s.sigma_ab = DenseArray(m, 2);
  s.sigma_nb = DenseArray(m, 1);
  s.sigma_up = DenseArray(m, 2);
  s.sigma_mixed = DenseArray(m, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      s.sigma_mixed(a, b) = I * (kSqrt2 * h.Ban_b(a, b) + delta(a, b));
      s.sigma_up(a, b) = h.Bab_n(a, b) / (I * kSqrt2);
    }
  s.sigma_lower_mixed = conj_of(s.sigma_mixed);
  s.sigma_n_b = conj_of(s.sigma_nb);

  out.relations = equate(cartan_hermitian(h, s), cartan_kenmotsu(h));

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      out.sigma_symmetry = std::max(
          {out.sigma_symmetry, std::abs(s.sigma_up(a, b) - s.sigma_up(b, a)),
           std::abs(s.sigma_ab(a, b) - s.sigma_ab(b, a)),
           std::abs(s.sigma_mixed(a, b) - s.sigma_lower_mixed(b, a))});
      out.ambient_antisymmetry =
          std::max(out.ambient_antisymmetry, std::abs(h.Bab_n(a, b) + h.Bab_n(b, a)));
      for (int c = 0; c < m; ++c)
        out.ambient_antisymmetry =
            std::max(out.ambient_antisymmetry, std::abs(h.Bab_c(a, b, c) + h.Bab_c(b, a, c)));
    }
  return out;
}

FrameChange FrameChange::from_matrix(const DenseArray& C) {
  if (C.rank() != 2) throw TensorError("frame change: C must be a square matrix");
  const Eigen::MatrixXcd m = to_matrix(C);
  const double cond = condition_number(m);
  if (!std::isfinite(cond) || cond > 1e14) throw TensorError("frame change: C is singular");
  FrameChange f;
  f.Cmat = C;
  f.Cinv = array_from(m.inverse());
  f.condition = cond;
  return f;
}

FrameChange FrameChange::from_pair(const DenseArray& C, const DenseArray& Cinv, double tol) {
  if (C.rank() != 2 || Cinv.rank() != 2 || C.extent() != Cinv.extent())
    throw TensorError("frame change: C and its inverse must be square of equal size");
  const Eigen::MatrixXcd m = to_matrix(C);
  const Eigen::MatrixXcd product = m * to_matrix(Cinv);
  const double err =
      (product - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (err > tol) throw TensorError("frame change: C Cinv differs from the identity");
  FrameChange f;
  f.Cmat = C;
  f.Cinv = Cinv;
  f.condition = condition_number(m);
  return f;
}

FrameChange FrameChange::identity(int dim) {
  FrameChange f;
  f.Cmat = identity_array(dim);
  f.Cinv = identity_array(dim);
  return f;
}

FrameChange FrameChange::inverse() const {
  FrameChange f;
  f.Cmat = Cinv;
  f.Cinv = Cmat;
  f.condition = condition;
  return f;
}

FrameChange FrameChange::then(const FrameChange& next) const {
  FrameChange f;
  f.Cmat = array_from(to_matrix(Cmat) * to_matrix(next.Cmat));
  f.Cinv = array_from(to_matrix(next.Cinv) * to_matrix(Cinv));
  f.condition = condition_number(to_matrix(f.Cmat));
  return f;
}

DenseArray transform_curvature(const DenseArray& Rt, const FrameChange& F) {
  if (Rt.rank() != 4) throw TensorError("transform_curvature: expected a rank-4 tensor");
  if (F.Cmat.extent() != Rt.extent() || F.Cinv.extent() != Rt.extent())
    throw TensorError("transform_curvature: frame change size differs from the tensor");
  const int D = Rt.extent();
  // Contract one slot at a time: slot 0 with C~ (upper), slots 1..3 with C.
  DenseArray cur = Rt;
  for (int slot = 0; slot < 4; ++slot) {
    DenseArray next(D, 4);
    next.for_each([&](std::span<const int> x, Complex& v) {
      int y[4] = {x[0], x[1], x[2], x[3]};
      Complex sum = 0.0;
      for (int p = 0; p < D; ++p) {
        y[slot] = p;
        const Complex w = slot == 0 ? F.Cinv(x[0], p) : F.Cmat(p, x[slot]);
        if (w != 0.0) sum += w * cur.at(std::span<const int>(y, 4));
      }
      v = sum;
    });
    cur = std::move(next);
  }
  return cur;
}

std::pair<ComponentTensor, Complex> apply_product_structure(const ComponentTensor& X, Complex f) {
  const int n = X.n();
  const ComponentTensor phi = make_phi(n);
  ComponentTensor out = ComponentTensor::upper(n, 1);
  for (int i = 0; i < X.extent(); ++i) {
    Complex v = 0.0;
    for (int j = 0; j < X.extent(); ++j) v += phi(i, j) * X(j);
    out(i) = v;
  }
  out(0) -= f;  // xi = e_0
  return {out, X(0)};  // eta(X) = X^0
}

ProductStructureCheck product_complex_structure_check(int n, std::size_t samples,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Metric metric = make_metric(n);
  auto random_pair = [&] {
    ComponentTensor X = ComponentTensor::upper(n, 1);
    X(0) = normal(rng);
    for (int a = 1; a <= n; ++a) {
      const double re = normal(rng);
      X(a) = Complex(re, normal(rng));
      X(a + n) = std::conj(X(a));
    }
    return std::pair<ComponentTensor, Complex>(X, normal(rng));
  };
  auto h = [&](const std::pair<ComponentTensor, Complex>& U,
               const std::pair<ComponentTensor, Complex>& V) {
    Complex v = U.second * V.second;
    for (int i = 0; i < U.first.extent(); ++i)
      for (int j = 0; j < V.first.extent(); ++j) v += metric.g(i, j) * U.first(i) * V.first(j);
    return v;
  };

  ProductStructureCheck out;
  out.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto U = random_pair();
    const auto V = random_pair();
    const auto JU = apply_product_structure(U.first, U.second);
    const auto JJU = apply_product_structure(JU.first, JU.second);
    double r = std::abs(JJU.second + U.second);
    for (int i = 0; i < U.first.extent(); ++i)
      r = std::max(r, std::abs(JJU.first(i) + U.first(i)));
    out.j_squared = std::max(out.j_squared, r);
    const auto JV = apply_product_structure(V.first, V.second);
    out.compatibility = std::max(out.compatibility, std::abs(h(JU, JV) - h(U, V)));
  }
  return out;
}

}  // namespace agcurv
