#pragma once

// Prime elements, exponential sums of the sum-of-digits and Rudin-Shapiro
// functions over N_lambda (optionally restricted to primes), and empirical
// decay of the twisted sums sum_v f(v) e(<t v>).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "radixion/algebra.hpp"
#include "radixion/encoding.hpp"
#include "radixion/error.hpp"
#include "radixion/integer.hpp"
#include "radixion/limits.hpp"
#include "radixion/numeration.hpp"
#include "radixion/parallel.hpp"

namespace radixion {

using BigRational = boost::multiprecision::cpp_rational;

// --- rational primes ------------------------------------------------------

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic for all 64-bit n: trial division by primes below 64, then
/// Miller-Rabin with the first twelve prime bases.
inline bool is_rational_prime(std::uint64_t n) {
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  if (n < 2) return false;
  for (auto p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 64 * 64) return true;
  std::uint64_t odd = n - 1;
  unsigned twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::pow_mod(a, odd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < twos && composite; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// r with r*r == n, if n is a perfect square.
inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  if (static_cast<unsigned __int128>(r) * r == n) return r;
  return std::nullopt;
}

// --- prime elements ---------------------------------------------------------

enum class PrimeKind { zero, unit, prime_split, prime_inert, composite, unsupported_degree };

inline const char* to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::zero: return "zero";
    case PrimeKind::unit: return "unit";
    case PrimeKind::prime_split: return "prime_split";
    case PrimeKind::prime_inert: return "prime_inert";
    case PrimeKind::composite: return "composite";
    case PrimeKind::unsupported_degree: return "unsupported_degree";
  }
  return "?";
}

inline bool is_prime_kind(PrimeKind k) { return k == PrimeKind::prime_split || k == PrimeKind::prime_inert; }

struct PrimeVerdict {
  PrimeKind kind = PrimeKind::composite;
  std::uint64_t norm = 0;  // |N(n)|
  std::uint64_t rational_prime = 0;  // l for the prime kinds
};

/// Classifies elements of Z[q]. Degree 1 and 2 are decided completely;
/// higher degree only recognises prime norms.
template <ExactInteger Int>
class PrimeClassifier {
 public:
  explicit PrimeClassifier(const Order<Int>& order) : order_(&order) {
    const auto& c = order.polynomial().coefficients();
    if (order.degree() == 2) {
      c0_ = c[0];
      c1_ = c[1];
    }
  }

  PrimeVerdict classify(std::span<const Int> x) const {
    PrimeVerdict v;
    if (std::all_of(x.begin(), x.end(), [](const Int& a) { return a == Int(0); })) {
      v.kind = PrimeKind::zero;
      return v;
    }
    v.norm = absolute_norm(x);
    if (v.norm == 1) {
      v.kind = PrimeKind::unit;
      return v;
    }
    if (is_rational_prime(v.norm)) {
      v.kind = PrimeKind::prime_split;
      v.rational_prime = v.norm;
      return v;
    }
    const std::size_t d = order_->degree();
    if (d > 2) {
      v.kind = PrimeKind::unsupported_degree;
      return v;
    }
    v.kind = PrimeKind::composite;
    if (d == 1) return v;
    const auto root = exact_sqrt(v.norm);
    if (!root || !is_rational_prime(*root)) return v;
    const std::uint64_t l = *root;
    const Int ell(static_cast<std::int64_t>(l));
    for (const auto& a : x)
      if (a % ell != Int(0)) return v;  // n / l must be integral (then a unit by the norm)
    if (has_root_mod(l)) return v;
    v.kind = PrimeKind::prime_inert;
    v.rational_prime = l;
    return v;
  }

  PrimeVerdict classify(const FieldElement<Int>& x) const { return classify(x.coords()); }

 private:
  std::uint64_t absolute_norm(std::span<const Int> x) const {
    Int n;
    if (order_->degree() == 2) {
      n = x[0] * x[0] - c1_ * x[0] * x[1] + c0_ * x[1] * x[1];  // N(a + bq) for q^2 + c1 q + c0 = 0
    } else {
      n = order_->norm(FieldElement<Int>(std::vector<Int>(x.begin(), x.end())));
    }
    const Int a = abs_value(n);
    if (a > Int(std::numeric_limits<std::int64_t>::max()))
      throw resource_error("norm exceeds the 64-bit primality test range");
    return to_u64(a);
  }

  /// Whether x^2 + c1 x + c0 has a root modulo the prime l.
  bool has_root_mod(std::uint64_t l) const {
    const Int ell(static_cast<std::int64_t>(l));
    if (l == 2) {
      const bool root0 = floor_mod(c0_, ell) == Int(0);
      const bool root1 = floor_mod(Int(1) + c1_ + c0_, ell) == Int(0);
      return root0 || root1;
    }
    const auto disc = to_u64(floor_mod(c1_ * c1_ - Int(4) * c0_, ell));
    if (disc == 0) return true;
    return detail::pow_mod(disc, (l - 1) / 2, l) == 1;
  }

  const Order<Int>* order_;
  Int c0_{0}, c1_{0};
};

template <ExactInteger Int>
PrimeVerdict is_prime_element(const Order<Int>& order, const FieldElement<Int>& x) {
  return PrimeClassifier<Int>(order).classify(x);
}

template <ExactInteger Int>
std::vector<FieldElement<Int>> enumerate_primes(const NumberSystem<Int>& ns, std::size_t lambda, const Limits& limits = {}) {
  if (ns.degree() > 2) throw configuration_error("prime enumeration needs d <= 2");
  const PrimeClassifier<Int> classifier(ns.order());
  std::vector<FieldElement<Int>> out;
  for_each_in_N(
      ns, lambda,
      [&](std::span<const Int> x, std::span<const std::size_t>) {
        if (is_prime_kind(classifier.classify(x).kind)) out.emplace_back(std::vector<Int>(x.begin(), x.end()));
      },
      limits);
  return out;
}

// --- linear forms -----------------------------------------------------------

/// Coefficient of a linear form: an exact fraction, or a float tagged irrational.
struct FormCoefficient {
  double value = 0.0;
  std::optional<BigRational> exact;

  bool is_rational() const noexcept { return exact.has_value(); }
  static FormCoefficient rational(BigRational r) { return {r.convert_to<double>(), std::move(r)}; }
  static FormCoefficient irrational(double v) { return {v, std::nullopt}; }
};

/// "p/q", an integer, a plain decimal (read exactly), or "irr:<decimal>".
inline FormCoefficient parse_coefficient(std::string_view text) {
  if (text.starts_with("irr:")) {
    const std::string body(text.substr(4));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(body, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != body.size() || !std::isfinite(v)) throw parse_error("malformed irrational coefficient '" + std::string(text) + "'");
    return FormCoefficient::irrational(v);
  }
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer<BigInt>(text.substr(0, slash));
    const auto den = parse_integer<BigInt>(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return FormCoefficient::rational(BigRational(num, den));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
      throw parse_error("malformed decimal '" + std::string(text) + "'");
    const bool negative = whole.starts_with('-');
    const std::string_view digits = whole.substr(negative || whole.starts_with('+') ? 1 : 0);
    BigInt w = digits.empty() ? BigInt(0) : parse_integer<BigInt>(digits);
    if (!digits.empty() && digits.find_first_not_of("0123456789") != std::string_view::npos)
      throw parse_error("malformed decimal '" + std::string(text) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt num = w * scale + parse_integer<BigInt>(frac);
    if (negative) num = -num;
    return FormCoefficient::rational(BigRational(num, scale));
  }
  return FormCoefficient::rational(BigRational(parse_integer<BigInt>(text)));
}

/// phi(x) = sum_k t_k Tr(q^k x).
struct LinearForm {
  std::vector<FormCoefficient> t;

  static LinearForm parse(std::string_view text, std::size_t d) {
    LinearForm f;
    for (auto part : split(text, ',')) f.t.push_back(parse_coefficient(part));
    if (f.t.size() != d)
      throw parse_error("linear form has " + std::to_string(f.t.size()) + " coefficients, expected " + std::to_string(d));
    return f;
  }

  LinearForm scaled(const BigRational& factor) const {
    LinearForm f;
    for (const auto& c : t)
      f.t.push_back(c.exact ? FormCoefficient::rational(*c.exact * factor)
                            : FormCoefficient::irrational(c.value * factor.convert_to<double>()));
    return f;
  }
};

/// Fractional part in [0, 1) of a rational, as a double.
inline double fractional_part(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  BigInt rem = num % den;
  if (rem < 0) rem += den;
  return BigRational(rem, den).convert_to<double>();
}

inline double wrap_unit(long double x) {
  long double f = x - std::floor(x);
  if (f >= 1.0L) f = 0.0L;
  return static_cast<double>(f);
}

/// h * phi(x) modulo 1: the rational part exactly, the rest in long double.
template <ExactInteger Int>
double form_phase(const Order<Int>& order, const LinearForm& phi, const FieldElement<Int>& x, const BigInt& h = 1) {
  if (phi.t.size() != order.degree()) throw configuration_error("linear form arity does not match the degree");
  BigRational exact(0);
  long double approx = 0.0L;
  for (std::size_t k = 0; k < phi.t.size(); ++k) {
    const BigInt tr = integer_cast<BigInt>(order.trace_pow(x, k)) * h;
    if (tr == 0) continue;
    if (phi.t[k].exact) {
      exact += *phi.t[k].exact * tr;
    } else {
      approx += static_cast<long double>(phi.t[k].value) * static_cast<long double>(to_double(tr));
    }
  }
  return wrap_unit(static_cast<long double>(fractional_part(exact)) + approx);
}

/// True iff some digit b has phi(b) irrational according to the tags: some
/// irrational-tagged t_k multiplies a nonzero Tr(q^k b).
template <ExactInteger Int>
bool equidist_condition(const NumberSystem<Int>& ns, const LinearForm& phi) {
  if (phi.t.size() != ns.degree()) throw configuration_error("linear form arity does not match the degree");
  for (const auto& b : ns.digits())
    for (std::size_t k = 0; k < phi.t.size(); ++k)
      if (!phi.t[k].is_rational() && ns.order().trace_pow(b, k) != Int(0)) return true;
  return false;
}

struct SumDigitConstants {
  BigInt mu_q;    // sum_j c_j
  BigInt big_m_q;  // sum_j c_j^2
  double digit_norm_sum = 0.0;  // sum_b ||phi(mu_q b)||^2, distance to the nearest integer
  double scaled = 0.0;          // digit_norm_sum / (M_q (d + 1)); the true constant carries a further unknown factor
  bool exact = true;            // digit_norm_sum computed without floating point
};

template <ExactInteger Int>
SumDigitConstants sumdigit_fourier_constants(const NumberSystem<Int>& ns, const LinearForm& phi) {
  SumDigitConstants out;
  for (const auto& c : ns.polynomial().coefficients()) {
    const BigInt v = integer_cast<BigInt>(c);
    out.mu_q += v;
    out.big_m_q += v * v;
  }
  out.exact = std::all_of(phi.t.begin(), phi.t.end(), [](const FormCoefficient& c) { return c.is_rational(); });
  const Int mu = integer_cast<Int>(out.mu_q);
  for (const auto& b : ns.digits()) {
    const double f = form_phase(ns.order(), phi, mu * b);
    const double dist = std::min(f, 1.0 - f);
    out.digit_norm_sum += dist * dist;
  }
  out.scaled = out.digit_norm_sum / (to_double(out.big_m_q) * static_cast<double>(ns.degree() + 1));
  return out;
}

// --- Weyl sums --------------------------------------------------------------

enum class DigitalFunction { sod, rs };
enum class Filter { all, primes };

inline const char* to_string(DigitalFunction f) { return f == DigitalFunction::sod ? "sod" : "rs"; }
inline const char* to_string(Filter f) { return f == Filter::all ? "all" : "primes"; }

/// The character n -> e(value(n)). For sod the value is sum_j theta[b_j] with
/// theta[b] = h phi(b) mod 1; for rs it is (h alpha) * r(n).
struct Character {
  DigitalFunction fn = DigitalFunction::sod;
  std::vector<double> digit_phase;  // sod: one entry per digit index
  double pair_phase = 0.0;          // rs: h * alpha mod 1
};

template <ExactInteger Int>
Character sod_character(const NumberSystem<Int>& ns, const LinearForm& phi, std::int64_t h = 1) {
  Character c;
  c.fn = DigitalFunction::sod;
  for (const auto& b : ns.digits()) c.digit_phase.push_back(form_phase(ns.order(), phi, b, BigInt(h)));
  return c;
}

/// sod with phi(b) = alpha * b for rational-integer digits.
template <ExactInteger Int>
Character sod_character(const NumberSystem<Int>& ns, const FormCoefficient& alpha, std::int64_t h = 1) {
  if (!ns.digits_are_integers()) throw configuration_error("a scalar alpha needs rational-integer digits; pass a linear form");
  Character c;
  c.fn = DigitalFunction::sod;
  for (const auto& b : ns.digits()) {
    const BigInt v = integer_cast<BigInt>(b[0]) * h;
    c.digit_phase.push_back(alpha.exact ? fractional_part(*alpha.exact * v)
                                        : wrap_unit(static_cast<long double>(alpha.value) * static_cast<long double>(to_double(v))));
  }
  return c;
}

inline Character rs_character(const FormCoefficient& alpha, std::int64_t h = 1) {
  Character c;
  c.fn = DigitalFunction::rs;
  c.pair_phase = alpha.exact ? fractional_part(*alpha.exact * h)
                             : wrap_unit(static_cast<long double>(alpha.value) * static_cast<long double>(h));
  return c;
}

/// Phase (mod 1) of the character at the element with the given digit string.
inline double character_phase(const Character& c, std::span<const std::size_t> digits, std::size_t zero_digit) {
  long double v = 0.0L;
  if (c.fn == DigitalFunction::sod) {
    for (auto b : digits) v += c.digit_phase[b];
  } else {
    std::size_t pairs = 0;
    for (std::size_t j = 0; j + 1 < digits.size(); ++j) pairs += digits[j] != zero_digit && digits[j + 1] != zero_digit;
    v = static_cast<long double>(c.pair_phase) * static_cast<long double>(pairs);
  }
  return wrap_unit(v);
}

inline std::complex<double> unit_phase(double x) {
  const double a = 2.0 * std::numbers::pi * x;
  return {std::cos(a), std::sin(a)};
}

/// Compensated summation (Neumaier).
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

struct WeylRow {
  std::size_t lambda = 0;
  std::int64_t h = 1;
  Filter filter = Filter::all;
  std::uint64_t count = 0;
  std::complex<double> sum;
  double normalized = 0.0;  // |sum| / count, 0 when count = 0
  std::size_t partitions = 0;
};

/// sum over N_lambda (or its primes) of e(value(n)). Partition sums are
/// compensated and merged in ascending prefix order, so the result does not
/// depend on the thread count.
template <ExactInteger Int>
WeylRow weyl_sum(const NumberSystem<Int>& ns, const Character& chr, std::size_t lambda, Filter filter, std::int64_t h = 1,
                 const Limits& limits = {}, unsigned threads = 1) {
  if (filter == Filter::primes && ns.degree() > 2) throw configuration_error("the prime filter needs d <= 2");
  if (chr.fn == DigitalFunction::sod && chr.digit_phase.size() != ns.base_norm())
    throw configuration_error("character does not match the digit set");
  const std::size_t q = ns.base_norm();
  require_within_cap(saturating_power(q, static_cast<unsigned>(lambda)), limits.enumeration_cap,
                     "enumeration of N_" + std::to_string(lambda));
  const PlaceTable<Int> places(ns, lambda);
  const std::size_t depth = partition_depth(q, lambda);
  const auto partitions = static_cast<std::size_t>(saturating_power(q, static_cast<unsigned>(depth)));
  const PrimeClassifier<Int> classifier(ns.order());
  const std::size_t zero = ns.zero_digit();

  struct Partial {
    double re = 0.0, im = 0.0;
    std::uint64_t count = 0;
  };
  const auto partials = parallel_map<Partial>(partitions, threads, [&](std::size_t p) {
    CompensatedSum re, im;
    std::uint64_t count = 0;
    const auto prefix = partition_prefix(q, depth, p);
    for_each_in_N(ns, places, std::span<const std::size_t>(prefix), [&](std::span<const Int> x, std::span<const std::size_t> digits) {
      if (filter == Filter::primes && !is_prime_kind(classifier.classify(x).kind)) return;
      const auto z = unit_phase(character_phase(chr, digits, zero));
      re.add(z.real());
      im.add(z.imag());
      ++count;
    });
    return Partial{re.value(), im.value(), count};
  });
  WeylRow row;
  row.lambda = lambda;
  row.h = h;
  row.filter = filter;
  row.partitions = partitions;
  CompensatedSum re, im;
  for (const auto& part : partials) {
    re.add(part.re);
    im.add(part.im);
    row.count += part.count;
  }
  row.sum = {re.value(), im.value()};
  row.normalized = row.count ? std::abs(row.sum) / static_cast<double>(row.count) : 0.0;
  return row;
}

// --- twisted sums and Fourier decay ------------------------------------------

/// S(t) = sum_{v in N_lambda} e(value(v) + <t v>), <t v> = sum_k t_k Tr(q^k v),
/// by a two-state transfer over digit positions (state: previous digit nonzero).
template <ExactInteger Int>
class TwistedSum {
 public:
  TwistedSum(const NumberSystem<Int>& ns, const Character& chr, std::size_t max_lambda)
      : ns_(&ns), chr_(chr), places_(ns, max_lambda) {
    const std::size_t d = ns.degree();
    const auto& p = ns.order().power_sums();
    traces_.resize(d * d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) traces_[k * d + i] = to_double(p[k + i]);
  }

  std::complex<double> operator()(std::span<const double> t, std::size_t lambda) const {
    const std::size_t d = ns_->degree(), q = ns_->base_norm(), zero = ns_->zero_digit();
    if (lambda > places_.length()) throw configuration_error("lambda exceeds the prepared length");
    // w_i = sum_k t_k Tr(q^{k+i}), so <t x> = sum_i x_i w_i.
    std::vector<long double> w(d, 0.0L);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) w[i] += static_cast<long double>(t[k]) * traces_[k * d + i];
    const std::complex<double> couple = unit_phase(chr_.fn == DigitalFunction::rs ? chr_.pair_phase : 0.0);
    std::complex<double> from_zero = 1.0, from_nonzero = 0.0;
    for (std::size_t j = 0; j < lambda; ++j) {
      std::complex<double> to_zero = 0.0, to_nonzero = 0.0;
      for (std::size_t b = 0; b < q; ++b) {
        const auto x = places_.at(j, b);
        long double phase = chr_.fn == DigitalFunction::sod ? chr_.digit_phase[b] : 0.0L;
        for (std::size_t i = 0; i < d; ++i) phase += static_cast<long double>(to_double(x[i])) * w[i];
        const auto z = unit_phase(wrap_unit(phase));
        if (b == zero) {
          to_zero += z * (from_zero + from_nonzero);
        } else {
          to_nonzero += z * (from_zero + from_nonzero * couple);
        }
      }
      from_zero = to_zero;
      from_nonzero = to_nonzero;
    }
    return from_zero + from_nonzero;
  }

 private:
  const NumberSystem<Int>* ns_;
  Character chr_;
  PlaceTable<Int> places_;
  std::vector<long double> traces_;
};

struct FourierDecayRow {
  std::size_t lambda = 0;
  std::size_t samples = 0;    // including t = 0
  double max_log = 0.0;       // max over samples of log_Q |S(t)|
  double gamma_emp = 0.0;     // lambda - max_log
};

struct FourierDecayReport {
  DigitalFunction fn = DigitalFunction::rs;
  std::uint64_t seed = 0;
  std::size_t random_samples = 0;
  std::vector<FourierDecayRow> rows;
  std::optional<double> rs_gamma_rate;  // lower bound on gamma(lambda)/lambda for rs: (1/2) log2(2/(1+|cos(pi alpha)|))
};

/// Per lambda in 1..max_lambda: t = 0 plus `samples` uniform t in [0,1)^d,
/// drawn in sequence from one generator seeded with `seed`.
template <ExactInteger Int>
FourierDecayReport fourier_decay(const NumberSystem<Int>& ns, const Character& chr, std::size_t max_lambda, std::size_t samples,
                                 std::uint64_t seed, std::optional<double> alpha = std::nullopt) {
  const TwistedSum<Int> twisted(ns, chr, max_lambda);
  const std::size_t d = ns.degree();
  const double log_q = std::log(static_cast<double>(ns.base_norm()));
  std::mt19937_64 rng(seed);
  FourierDecayReport rep;
  rep.fn = chr.fn;
  rep.seed = seed;
  rep.random_samples = samples;
  if (chr.fn == DigitalFunction::rs && alpha)
    rep.rs_gamma_rate = 0.5 * std::log2(2.0 / (1.0 + std::abs(std::cos(std::numbers::pi * *alpha))));
  std::vector<double> t(d);
  for (std::size_t lambda = 1; lambda <= max_lambda; ++lambda) {
    FourierDecayRow row;
    row.lambda = lambda;
    row.max_log = -HUGE_VAL;
    for (std::size_t s = 0; s <= samples; ++s) {
      for (auto& v : t) v = s == 0 ? 0.0 : static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double mag = std::abs(twisted(t, lambda));
      row.max_log = std::max(row.max_log, mag > 0.0 ? std::log(mag) / log_q : -HUGE_VAL);
    }
    row.samples = samples + 1;
    row.gamma_emp = static_cast<double>(lambda) - row.max_log;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace radixion
