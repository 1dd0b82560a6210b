#pragma once

// Carry propagation for addition in base q.
//
// The carry set B_st is the smallest set containing 0 with
// B_st + D + D contained in D + q B_st. Reading one digit a from state s
// moves to the unique s' with s + a in q s' + D; 0 is absorbing. The carry
// constant is eta2 = 1 - ln(rho)/ln(Q), rho the spectral radius of the
// automaton with the absorbing state removed.
//
// For canonical systems there is also a coarser transducer indexed by
// subsets I of {0..d}; grouping its states by the smallest nonzero element
// gives a d x d companion-type matrix whose Perron root bounds the path
// counts from above.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radixion/algebra.hpp"
#include "radixion/error.hpp"
#include "radixion/integer.hpp"
#include "radixion/limits.hpp"
#include "radixion/numeration.hpp"
#include "radixion/parallel.hpp"
#include "radixion/perron.hpp"

namespace radixion {

template <ExactInteger Int>
struct CarrySet {
  std::vector<FieldElement<Int>> states;  // states[0] is 0; breadth-first insertion order

  std::size_t size() const noexcept { return states.size(); }
};

/// Least fixed point of s -> (s + d1 + d2 - b)/q starting from {0}.
template <ExactInteger Int>
CarrySet<Int> build_carry_set(const NumberSystem<Int>& ns, const Limits& limits = {}) {
  using Element = FieldElement<Int>;
  CarrySet<Int> set;
  std::map<Element, std::size_t> index;
  set.states.push_back(ns.order().zero());
  index.emplace(set.states.back(), 0);
  const auto& digits = ns.digits();
  for (std::size_t i = 0; i < set.states.size(); ++i) {
    for (std::size_t a = 0; a < digits.size(); ++a) {
      for (std::size_t b = a; b < digits.size(); ++b) {
        Element x = set.states[i] + digits[a] + digits[b];
        ns.step(x.coords());
        if (index.contains(x)) continue;
        if (set.states.size() >= limits.carry_state_cap)
          throw resource_error("carry set exceeds " + std::to_string(limits.carry_state_cap) + " states");
        index.emplace(x, set.states.size());
        set.states.push_back(std::move(x));
      }
    }
  }
  return set;
}

template <ExactInteger Int>
class CarryAutomaton {
 public:
  explicit CarryAutomaton(const NumberSystem<Int>& ns, const Limits& limits = {})
      : carry_set_(build_carry_set(ns, limits)), q_(ns.base_norm()) {
    std::map<FieldElement<Int>, std::size_t> index;
    for (std::size_t i = 0; i < carry_set_.size(); ++i) index.emplace(carry_set_.states[i], i);
    next_.resize(carry_set_.size() * q_);
    adjacency_ = NonnegativeMatrix(carry_set_.size());
    for (std::size_t s = 0; s < carry_set_.size(); ++s) {
      for (std::size_t a = 0; a < q_; ++a) {
        FieldElement<Int> x = carry_set_.states[s] + ns.digit(a);
        ns.step(x.coords());
        const auto it = index.find(x);
        if (it == index.end()) throw numeric_error("carry set is not closed under transitions");
        next_[s * q_ + a] = it->second;
        adjacency_(s, it->second) += 1.0;
      }
    }
  }

  const CarrySet<Int>& carry_set() const noexcept { return carry_set_; }
  std::size_t size() const noexcept { return carry_set_.size(); }
  std::size_t digit_count() const noexcept { return q_; }

  /// Successor of `state` on reading digit index `digit`.
  std::size_t transition(std::size_t state, std::size_t digit) const { return next_.at(state * q_ + digit); }

  /// A[s][s'] = #{a in D : s -a-> s'}; rows sum to Q.
  const NonnegativeMatrix& adjacency() const noexcept { return adjacency_; }

 private:
  CarrySet<Int> carry_set_;
  std::size_t q_;
  std::vector<std::size_t> next_;
  NonnegativeMatrix adjacency_;
};

struct CarryConstantReport {
  double eta2 = 0.0;  // +infinity when the restricted graph is nilpotent
  double spectral_radius = 0.0;
  std::size_t automaton_size = 0;
  std::size_t iterations = 0;
};

template <ExactInteger Int>
CarryConstantReport carry_constant(const NumberSystem<Int>& ns, const CarryAutomaton<Int>& aut) {
  std::vector<std::size_t> nonzero;
  for (std::size_t s = 1; s < aut.size(); ++s) nonzero.push_back(s);
  const auto rho = spectral_radius(aut.adjacency().restricted(nonzero));
  CarryConstantReport r;
  r.spectral_radius = rho.value;
  r.automaton_size = aut.size();
  r.iterations = rho.iterations;
  r.eta2 = rho.value > 0.0 ? 1.0 - std::log(rho.value) / std::log(static_cast<double>(ns.base_norm()))
                           : std::numeric_limits<double>::infinity();
  return r;
}

template <ExactInteger Int>
CarryConstantReport carry_constant(const NumberSystem<Int>& ns, const Limits& limits = {}) {
  return carry_constant(ns, CarryAutomaton<Int>(ns, limits));
}

/// #{m in N_mu : some n in N_{nu-rho} has r_{nu,inf}(m+n) != r_{nu,inf}(m)},
/// by exhaustive pairs. r_{nu,inf}(x) is x after nu expansion steps.
template <ExactInteger Int>
std::uint64_t carry_census(const NumberSystem<Int>& ns, std::size_t mu, std::size_t nu, std::size_t rho,
                           const Limits& limits = {}, unsigned threads = 1) {
  if (!(rho <= nu && nu <= mu)) throw configuration_error("carry_census requires 0 <= rho <= nu <= mu");
  const std::size_t q = ns.base_norm();
  const std::uint64_t outer = saturating_power(q, static_cast<unsigned>(mu));
  const std::uint64_t inner = saturating_power(q, static_cast<unsigned>(nu - rho));
  require_within_cap(outer > limits.census_pair_cap / std::max<std::uint64_t>(inner, 1) ? std::numeric_limits<std::uint64_t>::max()
                                                                                       : outer * inner,
                     limits.census_pair_cap, "carry census");
  const auto addends = enumerate_N(ns, nu - rho, limits);
  const std::size_t d = ns.degree();
  const std::size_t depth = partition_depth(q, mu, 256);
  const PlaceTable<Int> places(ns, mu);
  const auto partitions = saturating_power(q, static_cast<unsigned>(depth));

  auto census_partition = [&](std::size_t p) -> std::uint64_t {
    std::uint64_t count = 0;
    std::vector<Int> tail(d), x(d);
    const auto prefix = partition_prefix(q, depth, p);
    for_each_in_N(ns, places, std::span<const std::size_t>(prefix), [&](std::span<const Int> m, std::span<const std::size_t>) {
      std::copy(m.begin(), m.end(), tail.begin());
      for (std::size_t j = 0; j < nu; ++j) ns.step(tail);
      for (const auto& n : addends) {
        for (std::size_t k = 0; k < d; ++k) x[k] = m[k] + n[k];
        for (std::size_t j = 0; j < nu; ++j) ns.step(x);
        if (x != tail) {
          ++count;
          break;
        }
      }
    });
    return count;
  };
  const auto counts = parallel_map<std::uint64_t>(static_cast<std::size_t>(partitions), threads, census_partition);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

// --- canonical-system transducer on subsets ------------------------------

/// eta(I) = sum_j (-1)^j c_{i_j} over the elements i_0 < i_1 < ... of I
/// (bit i of `subset` set means i in I); eta(empty) = 0.
template <ExactInteger Int>
Int subset_eta(const MinimalPolynomial<Int>& m, unsigned subset) {
  Int acc(0);
  bool plus = true;
  for (std::size_t i = 0; i <= m.degree(); ++i) {
    if (!(subset >> i & 1u)) continue;
    acc = plus ? Int(acc + m.coefficient(i)) : Int(acc - m.coefficient(i));
    plus = !plus;
  }
  return acc;
}

/// True when c_d < c_{d-1} < ... < c_0, the regime where the subset
/// transducer describes the canonical system.
template <ExactInteger Int>
bool coefficients_decreasing(const MinimalPolynomial<Int>& m) {
  for (std::size_t j = 1; j <= m.degree(); ++j)
    if (!(m.coefficient(j) < m.coefficient(j - 1))) return false;
  return true;
}

struct SubsetGraph {
  std::vector<unsigned> states;  // bitmasks of I, absorbing {} and {0} removed
  NonnegativeMatrix weights;     // digit multiplicities between states
  bool coefficient_condition = true;
};

/// Subset transducer with the digit label summed out: from I, exactly
/// clamp(c_0 - eta(I), 0, Q) digits lead to I+1 and the rest to
/// (I+1) xor {0,1}. Shifted indices above d are dropped (c_{d+1} = 0).
template <ExactInteger Int>
SubsetGraph cns_subset_graph(const MinimalPolynomial<Int>& m) {
  const std::size_t d = m.degree();
  if (d > 20) throw resource_error("subset graph needs 2^(d+1) states");
  const unsigned full = (1u << (d + 1)) - 1u;
  const Int c0 = m.coefficient(0);
  const Int q = m.norm_of_base();
  SubsetGraph g;
  g.coefficient_condition = coefficients_decreasing(m);
  std::vector<std::size_t> slot(full + 1, static_cast<std::size_t>(-1));
  for (unsigned s = 2; s <= full; ++s) {
    slot[s] = g.states.size();
    g.states.push_back(s);
  }
  g.weights = NonnegativeMatrix(g.states.size());
  for (unsigned s : g.states) {
    const Int eta = subset_eta(m, s);
    Int stay = c0 - eta;
    if (stay < Int(0)) stay = Int(0);
    if (stay > q) stay = q;
    const unsigned shifted = (s << 1) & full;
    const unsigned toggled = shifted ^ 3u;
    if (shifted >= 2) g.weights(slot[s], slot[shifted]) += to_double(stay);
    if (toggled >= 2) g.weights(slot[s], slot[toggled]) += to_double(q - stay);
  }
  return g;
}

struct CnsCollapsedGraph {
  std::vector<BigInt> alphas;  // alpha_1 .. alpha_d
  std::vector<BigInt> betas;   // beta_1 .. beta_d
  std::vector<double> characteristic;  // P(x) = x^d - sum_k a_k x^{d-k}: holds a_1..a_d
  double lambda = 0.0;         // Perron root of P
  double eta_bound = 0.0;      // 1 - ln(lambda)/ln(c_0)
  bool coefficient_condition = true;

  /// P(x) evaluated in long double.
  long double characteristic_at(long double x) const {
    long double v = 1.0L;
    for (std::size_t i = 0; i < characteristic.size(); ++i) v *= x;
    long double power = 1.0L;
    for (std::size_t k = characteristic.size(); k-- > 0;) {
      v -= static_cast<long double>(characteristic[k]) * power;
      power *= x;
    }
    return v;
  }
};

/// alpha_j = 2^{d-j+1}(c_0 - c_j) + 2^{d-j} c_{j+1},
/// beta_j  = 2^{d-j+1} c_j - 2^{d-j} c_{j+1}   (c_{d+1} = 0),
/// P(x) = x^d - sum_k alpha_1...alpha_{k-1} beta_k x^{d-k}.
template <ExactInteger Int>
CnsCollapsedGraph cns_collapsed(const MinimalPolynomial<Int>& m) {
  const std::size_t d = m.degree();
  std::vector<BigInt> c;
  for (std::size_t j = 0; j <= d; ++j) c.push_back(integer_cast<BigInt>(m.coefficient(j)));
  c.push_back(BigInt(0));
  CnsCollapsedGraph g;
  g.coefficient_condition = coefficients_decreasing(m);
  for (std::size_t j = 1; j <= d; ++j) {
    const BigInt hi = BigInt(1) << (d - j + 1);
    const BigInt lo = BigInt(1) << (d - j);
    g.alphas.push_back(hi * (c[0] - c[j]) + lo * c[j + 1]);
    g.betas.push_back(hi * c[j] - lo * c[j + 1]);
  }
  BigInt prefix(1);
  double total = 0.0;
  for (std::size_t k = 1; k <= d; ++k) {
    const BigInt a = prefix * g.betas[k - 1];
    g.characteristic.push_back(to_double(a));
    total += std::abs(to_double(a));
    prefix *= g.alphas[k - 1];
  }
  // Positive root: P(0) <= 0 when the a_k are nonnegative and P(x) > 0 for
  // x > max(1, sum |a_k|). Bisection, then Newton polishing.
  long double lo = 0.0L, hi = std::max(1.0L, static_cast<long double>(total)) + 1.0L;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12L * hi; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (g.characteristic_at(mid) > 0.0L ? hi : lo) = mid;
  }
  long double x = 0.5L * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const long double h = 1e-7L * std::max(1.0L, x);
    const long double deriv = (g.characteristic_at(x + h) - g.characteristic_at(x - h)) / (2.0L * h);
    if (deriv == 0.0L) break;
    const long double next = x - g.characteristic_at(x) / deriv;
    if (!(next > lo - 1e-9L * hi && next < hi + 1e-9L * hi)) break;
    x = next;
  }
  g.lambda = static_cast<double>(x);
  g.eta_bound = 1.0 - std::log(g.lambda) / std::log(to_double(m.coefficient(0)));
  return g;
}

/// Companion-type matrix with first row beta_1..beta_d and subdiagonal
/// alpha_1..alpha_{d-1}; its characteristic polynomial is P.
inline NonnegativeMatrix collapsed_matrix(const CnsCollapsedGraph& g) {
  const std::size_t d = g.betas.size();
  NonnegativeMatrix m(d);
  for (std::size_t j = 0; j < d; ++j) m(0, j) = std::max(0.0, to_double(g.betas[j]));
  for (std::size_t j = 0; j + 1 < d; ++j) m(j + 1, j) = std::max(0.0, to_double(g.alphas[j]));
  return m;
}

/// Minimal polynomial of q = -(m+1) + i, i.e. (x + m + 1)^2 + 1.
inline MinimalPolynomial<BigInt> gaussian_cns_family(std::uint64_t m) {
  const BigInt s = BigInt(m) + 1;
  return MinimalPolynomial<BigInt>({s * s + 1, 2 * s, BigInt(1)});
}

}  // namespace radixion
