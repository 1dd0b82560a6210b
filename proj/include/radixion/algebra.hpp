#pragma once

// Exact arithmetic in the order Z[q] = Z[x]/(m(x)) for a monic integer
// polynomial m, with elements written in the power basis {1, q, ..., q^(d-1)},
// plus the numeric side: complex embeddings of q and the distortion
// parameters derived from them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "radixion/error.hpp"
#include "radixion/integer.hpp"

namespace radixion {

/// Numeric conjugates of q, sorted by (real part, imaginary part).
struct EmbeddingSet {
  std::vector<std::complex<double>> roots;
  double residual_tolerance = 1e-10;  // relative to (1 + |root|)^d
  double max_residual = 0.0;          // worst |m(root)| / (1 + |root|)^d observed
};

struct Distortion {
  double theta_max = 1.0;
  double theta_min = 1.0;
};

namespace detail {

inline std::complex<long double> horner(std::span<const double> c, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + static_cast<long double>(c[k]);
  return acc;
}

inline std::complex<long double> horner_derivative(std::span<const double> c, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<long double>(c[k]) * static_cast<long double>(k);
  return acc;
}

}  // namespace detail

/// Roots of the monic polynomial with coefficients c[0..d] (low to high).
/// Companion-matrix eigenvalues, polished by Newton steps in long double.
inline EmbeddingSet compute_embeddings(std::span<const double> c) {
  const std::size_t d = c.size() - 1;
  EmbeddingSet out;
  std::vector<std::complex<long double>> roots;
  if (d == 1) {
    roots.emplace_back(-c[0], 0.0L);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i + 1 < d; ++i) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw numeric_error("companion eigenvalue computation did not converge");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      auto ev = solver.eigenvalues()(i);
      roots.emplace_back(ev.real(), ev.imag());
    }
  }
  for (auto& r : roots) {
    for (int iter = 0; iter < 8; ++iter) {
      auto dp = detail::horner_derivative(c, r);
      if (std::abs(dp) == 0.0L) break;
      auto step = detail::horner(c, r) / dp;
      r -= step;
      if (std::abs(step) <= 1e-18L * (1.0L + std::abs(r))) break;
    }
  }
  for (const auto& r : roots) {
    const double scale = std::pow(1.0 + static_cast<double>(std::abs(r)), static_cast<double>(d));
    const double residual = static_cast<double>(std::abs(detail::horner(c, r))) / scale;
    out.max_residual = std::max(out.max_residual, residual);
    if (!(residual <= out.residual_tolerance))
      throw numeric_error("root polishing failed to reach residual 1e-10 (got " + std::to_string(residual) + ")");
    double re = static_cast<double>(r.real());
    double im = static_cast<double>(r.imag());
    if (std::abs(im) <= 1e-12 * (1.0 + std::abs(re))) im = 0.0;
    out.roots.emplace_back(re, im);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

/// Maps per-embedding radii R_pi to bounds on power-basis coordinates:
/// |a_k| <= sum_pi |V^{-1}_{k,pi}| R_pi, with V the Vandermonde matrix of the roots.
inline std::vector<double> coordinate_bounds(const EmbeddingSet& emb, std::span<const double> radii) {
  const auto d = static_cast<Eigen::Index>(emb.roots.size());
  Eigen::MatrixXcd vandermonde(d, d);
  for (Eigen::Index p = 0; p < d; ++p) {
    std::complex<double> power = 1.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      vandermonde(p, k) = power;
      power *= emb.roots[static_cast<std::size_t>(p)];
    }
  }
  Eigen::MatrixXcd inverse = vandermonde.fullPivLu().inverse();
  std::vector<double> bounds(static_cast<std::size_t>(d), 0.0);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index p = 0; p < d; ++p) bounds[static_cast<std::size_t>(k)] += std::abs(inverse(k, p)) * radii[static_cast<std::size_t>(p)];
  return bounds;
}

/// Exact coordinate vector (a_0, ..., a_{d-1}) meaning sum_k a_k q^k.
template <ExactInteger Int>
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(std::vector<Int> coords) : coords_(std::move(coords)) {}

  static FieldElement zero(std::size_t d) { return FieldElement(std::vector<Int>(d, Int(0))); }
  static FieldElement integer(std::size_t d, Int value) {
    FieldElement e = zero(d);
    e.coords_[0] = std::move(value);
    return e;
  }

  std::size_t dimension() const noexcept { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Int> coords() const noexcept { return coords_; }
  std::span<Int> coords() noexcept { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Int& a) { return a == Int(0); });
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    FieldElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    FieldElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= b.coords_[i];
    return r;
  }
  friend FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& c : r.coords_) c = -c;
    return r;
  }
  friend FieldElement operator*(const Int& s, const FieldElement& a) {
    FieldElement r = a;
    for (auto& c : r.coords_) c *= s;
    return r;
  }

 private:
  static void require_same(const FieldElement& a, const FieldElement& b) {
    if (a.dimension() != b.dimension())
      throw configuration_error("dimension mismatch: " + std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()));
  }

  std::vector<Int> coords_;
};

template <ExactInteger Int>
struct ElementHash {
  std::size_t operator()(const FieldElement<Int>& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& c : e.coords()) h ^= hash_value(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

/// Monic integer polynomial c_0 + c_1 x + ... + x^d with |c_0| >= 2 whose
/// complex roots all have modulus > 1.
template <ExactInteger Int>
class MinimalPolynomial {
 public:
  explicit MinimalPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw invalid_base_error("polynomial must have degree >= 1");
    if (coeffs_.back() != Int(1)) throw invalid_base_error("polynomial must be monic (leading coefficient 1)");
    if (abs_value(coeffs_.front()) < Int(2)) throw invalid_base_error("|c0| must be at least 2");
    std::vector<double> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(to_double(x));
    embeddings_ = compute_embeddings(c);
    for (const auto& r : embeddings_.roots) {
      if (!(std::abs(r) > 1.0 + 1e-12))
        throw invalid_base_error("conjugate of modulus " + std::to_string(std::abs(r)) + " <= 1");
    }
    check_rational_roots();
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Int>& coefficients() const noexcept { return coeffs_; }
  const Int& coefficient(std::size_t j) const { return coeffs_[j]; }
  /// Q = |c_0| = |N(q)|.
  Int norm_of_base() const { return abs_value(coeffs_.front()); }
  const EmbeddingSet& embeddings() const noexcept { return embeddings_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Exact value m(x) at an integer point.
  Int evaluate(const Int& x) const {
    Int acc(0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
  }

  friend bool operator==(const MinimalPolynomial& a, const MinimalPolynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  // Only rational roots are checked, which decides irreducibility for d <= 3.
  void check_rational_roots() {
    const std::size_t d = degree();
    if (d >= 4) {
      warnings_.push_back("irreducibility not verified for degree >= 4");
      return;
    }
    if (d == 1) return;
    const Int c0 = abs_value(coeffs_.front());
    if (c0 > Int(std::int64_t{10'000'000'000})) {
      warnings_.push_back("irreducibility not verified: |c0| too large for divisor search");
      return;
    }
    auto root_at = [&](const Int& r) { return evaluate(r) == Int(0) || evaluate(-r) == Int(0); };
    for (Int k(1); k * k <= c0; k = k + Int(1)) {
      if (c0 % k != Int(0)) continue;
      if (root_at(k) || root_at(c0 / k)) throw invalid_base_error("polynomial is reducible over Q (has an integer root)");
    }
  }

  std::vector<Int> coeffs_;
  EmbeddingSet embeddings_;
  std::vector<std::string> warnings_;
};

/// Distortion parameters Theta = max d ln|q^pi| / ln Q and theta = min of the same.
template <ExactInteger Int>
Distortion distortion(const MinimalPolynomial<Int>& m) {
  const double d = static_cast<double>(m.degree());
  const double log_q = std::log(to_double(m.norm_of_base()));
  Distortion out{-1e300, 1e300};
  for (const auto& r : m.embeddings().roots) {
    const double v = d * std::log(std::abs(r)) / log_q;
    out.theta_max = std::max(out.theta_max, v);
    out.theta_min = std::min(out.theta_min, v);
  }
  return out;
}

/// Fraction-free Gaussian elimination; exact over the integers.
template <ExactInteger Int>
Int bareiss_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Int(1);
  Int sign(1), prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == Int(0)) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == Int(0)) ++pivot;
      if (pivot == n) return Int(0);
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// The ring Z[q] with exact arithmetic in the power basis.
template <ExactInteger Int>
class Order {
 public:
  using Element = FieldElement<Int>;

  explicit Order(MinimalPolynomial<Int> poly) : poly_(std::move(poly)) {
    const std::size_t d = degree();
    // Newton's identities for p_k = Tr(q^k), up to k = 2d.
    const auto& c = poly_.coefficients();
    power_sums_.assign(2 * d + 1, Int(0));
    power_sums_[0] = Int(static_cast<std::int64_t>(d));
    for (std::size_t k = 1; k <= 2 * d; ++k) {
      Int acc(0);
      for (std::size_t i = 1; i < k && i <= d; ++i) acc += c[d - i] * power_sums_[k - i];
      if (k <= d) acc += Int(static_cast<std::int64_t>(k)) * c[d - k];
      power_sums_[k] = -acc;
    }
    std::vector<Int> u(d);
    for (std::size_t k = 0; k < d; ++k) u[k] = -c[k + 1];
    q_inverse_numerator_ = Element(std::move(u));
  }

  const MinimalPolynomial<Int>& polynomial() const noexcept { return poly_; }
  std::size_t degree() const noexcept { return poly_.degree(); }

  Element zero() const { return Element::zero(degree()); }
  Element one() const { return Element::integer(degree(), Int(1)); }
  Element from_integer(Int v) const { return Element::integer(degree(), std::move(v)); }
  /// q itself (q = -c_0 when d = 1).
  Element generator() const { return mul_by_q(one()); }

  Element add(const Element& x, const Element& y) const { return check(x) + check(y); }
  Element sub(const Element& x, const Element& y) const { return check(x) - check(y); }
  Element neg(const Element& x) const { return -check(x); }

  /// x * q, using q^d = -(c_0 + ... + c_{d-1} q^{d-1}).
  Element mul_by_q(const Element& x) const {
    check(x);
    const std::size_t d = degree();
    const auto& c = poly_.coefficients();
    Element y = zero();
    const Int top = x[d - 1];
    for (std::size_t k = d - 1; k > 0; --k) y[k] = x[k - 1];
    for (std::size_t k = 0; k < d; ++k) y[k] -= top * c[k];
    return y;
  }

  Element pow_q(std::size_t k) const {
    Element r = one();
    for (std::size_t i = 0; i < k; ++i) r = mul_by_q(r);
    return r;
  }

  Element mul(const Element& x, const Element& y) const {
    check(x);
    check(y);
    const std::size_t d = degree();
    const auto& c = poly_.coefficients();
    std::vector<Int> prod(2 * d - 1, Int(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] == Int(0)) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += x[i] * y[j];
    }
    for (std::size_t k = 2 * d - 1; k-- > d;) {
      const Int t = prod[k];
      if (t == Int(0)) continue;
      for (std::size_t j = 0; j < d; ++j) prod[k - d + j] -= t * c[j];
      prod[k] = Int(0);
    }
    prod.resize(d);
    return Element(std::move(prod));
  }

  /// Matrix of multiplication by x: column j holds the coordinates of x q^j.
  std::vector<std::vector<Int>> multiplication_matrix(const Element& x) const {
    const std::size_t d = degree();
    std::vector<std::vector<Int>> m(d, std::vector<Int>(d));
    Element col = check(x);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
      if (j + 1 < d) col = mul_by_q(col);
    }
    return m;
  }

  /// N(x) as the determinant of multiplication by x.
  Int norm(const Element& x) const {
    if (degree() == 1) return check(x)[0];
    return bareiss_determinant(multiplication_matrix(x));
  }

  /// Tr(q^k x).
  Int trace_pow(const Element& x, std::size_t k) const {
    Element y = check(x);
    for (std::size_t i = 0; i < k; ++i) y = mul_by_q(y);
    Int acc(0);
    for (std::size_t i = 0; i < degree(); ++i) acc += y[i] * power_sums_[i];
    return acc;
  }

  /// Tr(q^k) for k <= 2d.
  const std::vector<Int>& power_sums() const noexcept { return power_sums_; }

  /// y with q y = x, or nothing when q does not divide x.
  std::optional<Element> divide_exact_by_q(const Element& x) const {
    Element w = mul(x, q_inverse_numerator_);  // x * (c_0 / q)
    const Int& c0 = poly_.coefficient(0);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (w[i] % c0 != Int(0)) return std::nullopt;
    }
    for (std::size_t i = 0; i < degree(); ++i) w[i] = w[i] / c0;
    return w;
  }

  bool is_unit(const Element& x) const { return abs_value(norm(x)) == Int(1); }

  /// Numeric image of x under the embedding q -> root.
  std::complex<double> embed(const Element& x, std::complex<double> root) const {
    std::complex<double> acc = 0.0, power = 1.0;
    for (std::size_t k = 0; k < degree(); ++k) {
      acc += to_double(x[k]) * power;
      power *= root;
    }
    return acc;
  }

 private:
  const Element& check(const Element& x) const {
    if (x.dimension() != degree())
      throw configuration_error("element of dimension " + std::to_string(x.dimension()) + " used in an order of degree " +
                                std::to_string(degree()));
    return x;
  }

  MinimalPolynomial<Int> poly_;
  std::vector<Int> power_sums_;
  Element q_inverse_numerator_;
};

}  // namespace radixion
