#pragma once

// Number systems (q, D): validation, base-q expansions with cycle detection,
// the finiteness decision, enumeration of N_lambda and the two digital
// functions (sum of digits, Rudin-Shapiro pair count).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "radixion/algebra.hpp"
#include "radixion/encoding.hpp"
#include "radixion/error.hpp"
#include "radixion/integer.hpp"
#include "radixion/limits.hpp"

namespace radixion {

template <ExactInteger Int>
class NumberSystem {
 public:
  using Element = FieldElement<Int>;

  /// Checks that `digits` is a complete residue system modulo q containing 0.
  static NumberSystem validate(MinimalPolynomial<Int> poly, std::vector<Element> digits) {
    return NumberSystem(std::move(poly), std::move(digits));
  }

  /// (q, {0, 1, ..., Q-1}).
  static NumberSystem canonical(MinimalPolynomial<Int> poly) {
    const std::uint64_t q = to_u64(poly.norm_of_base());
    std::vector<Element> digits;
    for (std::uint64_t b = 0; b < q; ++b)
      digits.push_back(Element::integer(poly.degree(), Int(static_cast<std::int64_t>(b))));
    return NumberSystem(std::move(poly), std::move(digits));
  }

  const Order<Int>& order() const noexcept { return order_; }
  const MinimalPolynomial<Int>& polynomial() const noexcept { return order_.polynomial(); }
  const EmbeddingSet& embeddings() const noexcept { return polynomial().embeddings(); }
  std::size_t degree() const noexcept { return order_.degree(); }
  /// Q = |N(q)| = |D|.
  std::size_t base_norm() const noexcept { return digits_.size(); }
  bool is_binary() const noexcept { return digits_.size() == 2; }
  const std::vector<Element>& digits() const noexcept { return digits_; }
  const Element& digit(std::size_t i) const { return digits_.at(i); }
  std::size_t zero_digit() const noexcept { return zero_index_; }

  /// True when every digit is a rational integer (only a_0 nonzero).
  bool digits_are_integers() const {
    return std::all_of(digits_.begin(), digits_.end(), [](const Element& b) {
      return std::all_of(b.coords().begin() + 1, b.coords().end(), [](const Int& a) { return a == Int(0); });
    });
  }

  /// Index of the digit congruent to x modulo q. Since Z[q]/(q) = Z/c_0,
  /// the class of x is a_0 mod |c_0|.
  std::size_t digit_index_of(std::span<const Int> x) const {
    return residue_to_digit_[static_cast<std::size_t>(to_u64(floor_mod(x[0], c0_)))];
  }

  /// One expansion step in place: x <- (x - b) / q with b the digit
  /// congruent to x. Returns the index of b.
  std::size_t step(std::span<Int> x) const {
    const std::size_t b = digit_index_of(x);
    const auto& digit = digits_[b];
    const auto& c = polynomial().coefficients();
    const std::size_t d = x.size();
    const Int t = (x[0] - digit[0]) / c0_;
    for (std::size_t k = 0; k + 1 < d; ++k) x[k] = (x[k + 1] - digit[k + 1]) - t * c[k + 1];
    x[d - 1] = -(t * c[d]);
    return b;
  }

  std::string describe() const { return format_polynomial(polynomial()) + "|" + format_digits(digits_); }

 private:
  NumberSystem(MinimalPolynomial<Int> poly, std::vector<Element> digits)
      : order_(std::move(poly)), digits_(std::move(digits)), c0_(order_.polynomial().coefficient(0)) {
    const std::size_t d = order_.degree();
    const std::uint64_t q = to_u64(order_.polynomial().norm_of_base());
    if (digits_.size() != q)
      throw configuration_error("digit set has " + std::to_string(digits_.size()) + " elements, expected Q = " +
                                std::to_string(q));
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    residue_to_digit_.assign(static_cast<std::size_t>(q), unset);
    zero_index_ = unset;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (digits_[i].dimension() != d)
        throw configuration_error("digit " + std::to_string(i) + " has dimension " +
                                  std::to_string(digits_[i].dimension()) + ", expected " + std::to_string(d));
      if (digits_[i].is_zero()) zero_index_ = i;
      auto residue = static_cast<std::size_t>(to_u64(floor_mod(digits_[i][0], c0_)));
      if (residue_to_digit_[residue] != unset) {
        const auto j = residue_to_digit_[residue];
        throw configuration_error("digits " + format_element(digits_[j]) + " and " + format_element(digits_[i]) +
                                  " are congruent modulo q (difference divisible by q)");
      }
      residue_to_digit_[residue] = i;
    }
    if (zero_index_ == unset) throw configuration_error("digit set does not contain 0");
  }

  Order<Int> order_;
  std::vector<Element> digits_;
  Int c0_;
  std::vector<std::size_t> residue_to_digit_;
  std::size_t zero_index_ = 0;
};

/// Digit indices b_0, b_1, ... (least significant first), no leading zeros.
struct Expansion {
  std::vector<std::size_t> digits;

  std::size_t length() const noexcept { return digits.size(); }
  friend bool operator==(const Expansion&, const Expansion&) = default;
};

/// The orbit of an element under the expansion step reached a nonzero cycle.
/// `cycle` lists the cycle starting from the first revisited element.
template <ExactInteger Int>
struct CycleDetected {
  std::vector<FieldElement<Int>> cycle;
};

template <ExactInteger Int>
using ExpansionResult = std::variant<Expansion, CycleDetected<Int>>;

namespace detail {

template <ExactInteger Int>
std::vector<FieldElement<Int>> collect_cycle(const NumberSystem<Int>& ns, const FieldElement<Int>& start) {
  std::vector<FieldElement<Int>> cycle;
  FieldElement<Int> x = start;
  do {
    cycle.push_back(x);
    ns.step(x.coords());
  } while (!(x == start));
  return cycle;
}

template <ExactInteger Int>
std::vector<std::string> encode_cycle(const std::vector<FieldElement<Int>>& cycle) {
  std::vector<std::string> out;
  for (const auto& e : cycle) out.push_back(format_element(e));
  return out;
}

}  // namespace detail

/// Base-q expansion of n. Orbits are eventually periodic because q is
/// expanding; a revisit is detected with Brent's teleporting checkpoint,
/// which needs O(1) memory per step.
template <ExactInteger Int>
ExpansionResult<Int> expand(const NumberSystem<Int>& ns, const FieldElement<Int>& n) {
  if (n.dimension() != ns.degree()) throw configuration_error("element dimension does not match the number system");
  Expansion out;
  FieldElement<Int> x = n;
  if (x.is_zero()) return out;
  FieldElement<Int> checkpoint = x;
  std::size_t power = 1, since = 0;
  while (true) {
    out.digits.push_back(ns.step(x.coords()));
    if (x.is_zero()) return out;
    if (x == checkpoint) return CycleDetected<Int>{detail::collect_cycle(ns, x)};
    if (++since == power) {
      checkpoint = x;
      power *= 2;
      since = 0;
    }
  }
}

/// As expand, but a cycle raises cycle_error.
template <ExactInteger Int>
Expansion expand_or_throw(const NumberSystem<Int>& ns, const FieldElement<Int>& n) {
  auto r = expand(ns, n);
  if (auto* cyc = std::get_if<CycleDetected<Int>>(&r)) throw cycle_error(detail::encode_cycle(cyc->cycle));
  return std::get<Expansion>(std::move(r));
}

template <ExactInteger Int>
FieldElement<Int> evaluate_digits(const NumberSystem<Int>& ns, std::span<const std::size_t> digits) {
  FieldElement<Int> x = ns.order().zero();
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (digits[j] >= ns.base_norm())
      throw configuration_error("digit index " + std::to_string(digits[j]) + " out of range [0, " +
                                std::to_string(ns.base_norm()) + ")");
    x = ns.order().mul_by_q(x) + ns.digit(digits[j]);
  }
  return x;
}

/// Horner evaluation of sum_j b_j q^j.
template <ExactInteger Int>
FieldElement<Int> evaluate(const NumberSystem<Int>& ns, const Expansion& e) {
  return evaluate_digits(ns, std::span<const std::size_t>(e.digits));
}

/// r_{nu,mu}(n) = sum_{0 <= j < mu - nu} n_{nu+j} q^j; mu = nullopt means infinity.
template <ExactInteger Int>
FieldElement<Int> digit_slice(const NumberSystem<Int>& ns, const FieldElement<Int>& n, std::size_t nu,
                              std::optional<std::size_t> mu = std::nullopt) {
  if (mu && *mu < nu) throw configuration_error("digit_slice requires nu <= mu");
  const Expansion e = expand_or_throw(ns, n);
  const std::size_t lo = std::min(nu, e.length());
  const std::size_t hi = std::min(mu.value_or(e.length()), e.length());
  return evaluate_digits(ns, std::span<const std::size_t>(e.digits).subspan(lo, hi > lo ? hi - lo : 0));
}

template <ExactInteger Int>
FieldElement<Int> sum_of_digits(const NumberSystem<Int>& ns, const FieldElement<Int>& n) {
  const Expansion e = expand_or_throw(ns, n);
  FieldElement<Int> s = ns.order().zero();
  for (auto b : e.digits) s = s + ns.digit(b);
  return s;
}

/// Number of j with b_j != 0 and b_{j+1} != 0. Defined for any digit set; the
/// equidistribution results concern binary systems (see NumberSystem::is_binary).
template <ExactInteger Int>
std::size_t rudin_shapiro(const NumberSystem<Int>& ns, const FieldElement<Int>& n) {
  const Expansion e = expand_or_throw(ns, n);
  std::size_t count = 0;
  for (std::size_t j = 0; j + 1 < e.length(); ++j)
    if (e.digits[j] != ns.zero_digit() && e.digits[j + 1] != ns.zero_digit()) ++count;
  return count;
}

template <ExactInteger Int>
struct FnsVerdict {
  bool is_fns = false;
  std::optional<std::vector<FieldElement<Int>>> witness_cycle;
  std::uint64_t candidates_examined = 0;
  std::vector<std::int64_t> box;  // half-widths of the candidate box per coordinate
};

/// Radii R_pi = max_b |b^pi| / (|q^pi| - 1): the contraction ball of the
/// inverse expansion step in each embedding. Every cycle lies inside it.
template <ExactInteger Int>
std::vector<double> attractor_radii(const NumberSystem<Int>& ns, double digit_scale = 1.0) {
  std::vector<double> radii;
  for (const auto& r : ns.embeddings().roots) {
    double max_digit = 0.0;
    for (const auto& b : ns.digits()) max_digit = std::max(max_digit, std::abs(ns.order().embed(b, r)));
    radii.push_back(digit_scale * max_digit / (std::abs(r) - 1.0));
  }
  return radii;
}

/// Decides the finiteness property: every lattice point of the coordinate
/// box covering the contraction ball (with slack 1.5) is expanded; (q, D) is
/// an FNS iff none of them runs into a nonzero cycle.
template <ExactInteger Int>
FnsVerdict<Int> is_fns(const NumberSystem<Int>& ns, const Limits& limits = {}) {
  constexpr double slack = 1.5;
  const std::size_t d = ns.degree();
  const auto radii = attractor_radii(ns);
  const auto bounds = coordinate_bounds(ns.embeddings(), radii);
  FnsVerdict<Int> verdict;
  std::uint64_t total = 1;
  for (double b : bounds) {
    const double half = std::floor(slack * b);
    if (!(half < 1e9)) throw resource_error("FNS candidate box is unbounded");
    verdict.box.push_back(static_cast<std::int64_t>(half));
    const auto width = static_cast<std::uint64_t>(2 * half + 1);
    total = total > limits.fns_candidate_cap ? total : total * width;
  }
  require_within_cap(total, limits.fns_candidate_cap, "FNS candidate search");

  using Element = FieldElement<Int>;
  std::unordered_set<Element, ElementHash<Int>> terminating;
  std::unordered_set<Element, ElementHash<Int>> path_set;
  std::vector<Element> path;
  std::vector<std::int64_t> point(d);
  for (std::size_t k = 0; k < d; ++k) point[k] = -verdict.box[k];

  while (true) {
    ++verdict.candidates_examined;
    std::vector<Int> coords;
    for (auto v : point) coords.push_back(Int(v));
    Element x(std::move(coords));
    path.clear();
    path_set.clear();
    while (!x.is_zero() && !terminating.contains(x)) {
      if (!path_set.insert(x).second) {
        verdict.is_fns = false;
        verdict.witness_cycle = detail::collect_cycle(ns, x);
        return verdict;
      }
      path.push_back(x);
      ns.step(x.coords());
    }
    for (auto& e : path) terminating.insert(std::move(e));

    std::size_t k = 0;
    while (k < d && point[k] == verdict.box[k]) {
      point[k] = -verdict.box[k];
      ++k;
    }
    if (k == d) break;
    ++point[k];
  }
  verdict.is_fns = true;
  return verdict;
}

/// Place values b q^j for every digit b and position j < lambda.
template <ExactInteger Int>
class PlaceTable {
 public:
  PlaceTable(const NumberSystem<Int>& ns, std::size_t lambda) : d_(ns.degree()), q_(ns.base_norm()), lambda_(lambda) {
    values_.reserve(lambda * q_ * d_);
    FieldElement<Int> power = ns.order().one();
    for (std::size_t j = 0; j < lambda; ++j) {
      for (std::size_t b = 0; b < q_; ++b) {
        const auto v = ns.order().mul(ns.digit(b), power);
        values_.insert(values_.end(), v.coords().begin(), v.coords().end());
      }
      power = ns.order().mul_by_q(power);
    }
  }

  std::span<const Int> at(std::size_t j, std::size_t b) const {
    return std::span<const Int>(values_).subspan((j * q_ + b) * d_, d_);
  }
  std::size_t length() const noexcept { return lambda_; }

 private:
  std::size_t d_, q_, lambda_;
  std::vector<Int> values_;
};

/// Visits every element of N_lambda = {sum_{j<lambda} b_j q^j}, b_0 varying
/// fastest (element number i has digits given by the base-Q digits of i).
///
/// `prefix` fixes the top digits: prefix[i] is the digit at position
/// lambda - prefix.size() + i. Partitions by distinct prefixes are disjoint,
/// cover N_lambda, and appear in global order when sorted by
/// sum_i prefix[i] Q^i. visit(coords, digits) receives spans valid only
/// during the call.
template <ExactInteger Int, class Visitor>
void for_each_in_N(const NumberSystem<Int>& ns, const PlaceTable<Int>& places, std::span<const std::size_t> prefix,
                   Visitor&& visit) {
  const std::size_t lambda = places.length();
  const std::size_t d = ns.degree();
  const std::size_t q = ns.base_norm();
  if (prefix.size() > lambda) throw configuration_error("prefix longer than lambda");
  const std::size_t free = lambda - prefix.size();
  std::vector<std::size_t> digits(lambda, 0);
  std::vector<Int> cur(d, Int(0));
  auto add_place = [&](std::size_t j, std::size_t b, bool subtract) {
    const auto p = places.at(j, b);
    for (std::size_t k = 0; k < d; ++k) cur[k] = subtract ? Int(cur[k] - p[k]) : Int(cur[k] + p[k]);
  };
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    digits[free + i] = prefix[i];
    add_place(free + i, prefix[i], false);
  }
  for (std::size_t j = 0; j < free; ++j) add_place(j, 0, false);  // digit 0 may be any element of D

  while (true) {
    visit(std::span<const Int>(cur), std::span<const std::size_t>(digits));
    std::size_t j = 0;
    while (j < free && digits[j] + 1 == q) {
      add_place(j, q - 1, true);
      add_place(j, 0, false);
      digits[j] = 0;
      ++j;
    }
    if (j == free) return;
    add_place(j, digits[j], true);
    ++digits[j];
    add_place(j, digits[j], false);
  }
}

template <ExactInteger Int, class Visitor>
void for_each_in_N(const NumberSystem<Int>& ns, std::size_t lambda, Visitor&& visit, const Limits& limits = {}) {
  require_within_cap(saturating_power(ns.base_norm(), static_cast<unsigned>(lambda)), limits.enumeration_cap,
                     "enumeration of N_" + std::to_string(lambda));
  PlaceTable<Int> places(ns, lambda);
  for_each_in_N(ns, places, std::span<const std::size_t>(), std::forward<Visitor>(visit));
}

/// Materialized N_lambda in enumeration order.
template <ExactInteger Int>
std::vector<FieldElement<Int>> enumerate_N(const NumberSystem<Int>& ns, std::size_t lambda, const Limits& limits = {}) {
  std::vector<FieldElement<Int>> out;
  for_each_in_N(
      ns, lambda,
      [&](std::span<const Int> coords, std::span<const std::size_t>) {
        out.emplace_back(std::vector<Int>(coords.begin(), coords.end()));
      },
      limits);
  return out;
}

/// Number of top digits fixed per partition: the largest p <= lambda with
/// Q^p <= max_partitions. Depends only on (Q, lambda).
inline std::size_t partition_depth(std::size_t q, std::size_t lambda, std::uint64_t max_partitions = 1024) {
  std::size_t p = 0;
  std::uint64_t count = 1;
  while (p < lambda && count * q <= max_partitions) {
    count *= q;
    ++p;
  }
  return p;
}

/// Digits of partition index `index` (base Q, least significant first).
inline std::vector<std::size_t> partition_prefix(std::size_t q, std::size_t depth, std::uint64_t index) {
  std::vector<std::size_t> prefix(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    prefix[i] = static_cast<std::size_t>(index % q);
    index /= q;
  }
  return prefix;
}

}  // namespace radixion
