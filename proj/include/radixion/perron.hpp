#pragma once

// Spectral radius of nonnegative matrices by power iteration.
//
// The graph is split into strongly connected components; the spectral
// radius is the largest over components. Each irreducible block B is
// iterated as B + I, which is primitive, so the iteration converges even
// when B is periodic. Convergence is declared when the Collatz-Wielandt
// bounds min_i (Mx)_i/x_i <= rho(M) <= max_i (Mx)_i/x_i meet.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "radixion/error.hpp"

namespace radixion {

/// Dense row-major matrix with nonnegative entries.
class NonnegativeMatrix {
 public:
  NonnegativeMatrix() = default;
  explicit NonnegativeMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Principal submatrix on the given indices (in the given order).
  NonnegativeMatrix restricted(const std::vector<std::size_t>& keep) const {
    NonnegativeMatrix r(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) r(i, j) = (*this)(keep[i], keep[j]);
    return r;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct SpectralRadius {
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t components = 0;  // nontrivial strongly connected components
};

/// Strongly connected components (Tarjan), each listed in ascending index order.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const NonnegativeMatrix& a) {
  const std::size_t n = a.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v, next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < n) {
        const std::size_t w = f.next++;
        if (a(f.v, w) <= 0.0) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

namespace detail {

/// Perron root of an irreducible nonnegative block with at least one edge.
inline SpectralRadius irreducible_radius(const NonnegativeMatrix& b, double tolerance, std::size_t max_iterations) {
  const std::size_t n = b.size();
  std::vector<double> x(n, 1.0), y(n);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    double lo = HUGE_VAL, hi = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];  // shift by the identity
      for (std::size_t j = 0; j < n; ++j) s += b(i, j) * x[j];
      y[i] = s;
      const double ratio = s / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      norm += s;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    const double rho = 0.5 * (lo + hi) - 1.0;
    if (hi - lo <= tolerance * std::max(rho, 1e-300)) return {std::max(rho, 0.0), it, 1};
  }
  throw numeric_error("power iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

}  // namespace detail

/// rho(A) to relative tolerance `tolerance`. A nilpotent matrix gives 0.
inline SpectralRadius spectral_radius(const NonnegativeMatrix& a, double tolerance = 1e-10,
                                      std::size_t max_iterations = 100'000) {
  SpectralRadius best;
  for (const auto& comp : strongly_connected_components(a)) {
    if (comp.size() == 1 && a(comp[0], comp[0]) <= 0.0) continue;
    ++best.components;
    const auto r = detail::irreducible_radius(a.restricted(comp), tolerance, max_iterations);
    best.iterations += r.iterations;
    best.value = std::max(best.value, r.value);
  }
  return best;
}

}  // namespace radixion
