#pragma once

// The fundamental tile F = closure{ sum_{j>=1} b_j q^-j } in coordinate
// space, where it has Lebesgue measure 1 and tiles by integer translates.
//
// Two rasterizations are offered. rasterize() marks cells that contain a
// point of a finite cloud. rasterize_tile() marks a cell when its center c
// lies in q^-k (N_k + [0,1)^d), i.e. floor(M^k c) is in N_k for the integer
// matrix M of multiplication by q. That set has measure exactly 1 for
// every k and converges to F, so it is the one used for area and
// boundary statistics; a depth-k point cloud is far too sparse to fill a
// fine grid.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "radixion/algebra.hpp"
#include "radixion/error.hpp"
#include "radixion/integer.hpp"
#include "radixion/limits.hpp"
#include "radixion/numeration.hpp"
#include "radixion/parallel.hpp"

namespace radixion {

enum class SpaceTag { coordinate, embedding };

inline const char* to_string(SpaceTag s) { return s == SpaceTag::coordinate ? "coordinate" : "embedding"; }

struct TileCloud {
  std::size_t depth = 0;
  std::size_t dimension = 0;
  SpaceTag space = SpaceTag::coordinate;
  std::vector<double> coords;  // point i occupies coords[i*dimension .. +dimension)

  std::size_t size() const noexcept { return dimension == 0 ? 0 : coords.size() / dimension; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords).subspan(i * dimension, dimension);
  }
};

namespace detail {

template <ExactInteger Int>
NumberSystem<BigInt> to_big(const NumberSystem<Int>& ns) {
  std::vector<BigInt> coeffs;
  for (const auto& c : ns.polynomial().coefficients()) coeffs.push_back(integer_cast<BigInt>(c));
  std::vector<FieldElement<BigInt>> digits;
  for (const auto& b : ns.digits()) {
    std::vector<BigInt> v;
    for (const auto& a : b.coords()) v.push_back(integer_cast<BigInt>(a));
    digits.emplace_back(std::move(v));
  }
  return NumberSystem<BigInt>::validate(MinimalPolynomial<BigInt>(std::move(coeffs)), std::move(digits));
}

template <ExactInteger Int>
NumberSystem<Checked64> to_checked(const NumberSystem<Int>& ns) {
  std::vector<Checked64> coeffs;
  for (const auto& c : ns.polynomial().coefficients()) coeffs.push_back(integer_cast<Checked64>(c));
  std::vector<FieldElement<Checked64>> digits;
  for (const auto& b : ns.digits()) {
    std::vector<Checked64> v;
    for (const auto& a : b.coords()) v.push_back(integer_cast<Checked64>(a));
    digits.emplace_back(std::move(v));
  }
  return NumberSystem<Checked64>::validate(MinimalPolynomial<Checked64>(std::move(coeffs)), std::move(digits));
}

/// Coordinates of x / c0^j as doubles.
inline std::vector<double> scaled(const FieldElement<BigInt>& x, const BigInt& denominator) {
  std::vector<double> out;
  for (const auto& a : x.coords()) {
    // Divide in exact arithmetic first so the quotient carries the precision.
    const BigInt whole = a / denominator;
    const BigInt rest = a - whole * denominator;
    out.push_back(to_double(whole) + to_double(rest) / to_double(denominator));
  }
  return out;
}

}  // namespace detail

/// Coordinates of b q^-j for every digit b and 1 <= j <= depth, from the
/// exact identity q^-1 = u / c_0 with u = -(c_1 + c_2 q + ... + c_d q^{d-1}).
/// Row (j-1)*Q + b, d doubles each.
template <ExactInteger Int>
std::vector<std::vector<double>> inverse_places(const NumberSystem<Int>& ns, std::size_t depth) {
  const auto big = detail::to_big(ns);
  const auto& order = big.order();
  const std::size_t d = big.degree();
  const auto& c = big.polynomial().coefficients();
  std::vector<BigInt> u(d);
  for (std::size_t k = 0; k < d; ++k) u[k] = -c[k + 1];
  const FieldElement<BigInt> unum(std::move(u));
  std::vector<std::vector<double>> rows;
  FieldElement<BigInt> power = order.one();
  BigInt denominator(1);
  for (std::size_t j = 1; j <= depth; ++j) {
    power = order.mul(power, unum);
    denominator *= c[0];
    for (const auto& b : big.digits()) rows.push_back(detail::scaled(order.mul(b, power), denominator));
  }
  return rows;
}

/// d x d row-major matrix of multiplication by q^-1 in coordinates.
template <ExactInteger Int>
std::vector<double> inverse_q_matrix(const NumberSystem<Int>& ns) {
  const auto big = detail::to_big(ns);
  const std::size_t d = big.degree();
  const auto& c = big.polynomial().coefficients();
  std::vector<BigInt> u(d);
  for (std::size_t k = 0; k < d; ++k) u[k] = -c[k + 1];
  const FieldElement<BigInt> unum(std::move(u));
  std::vector<double> m(d * d);
  FieldElement<BigInt> basis = big.order().one();
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = detail::scaled(big.order().mul(basis, unum), c[0]);
    for (std::size_t i = 0; i < d; ++i) m[i * d + j] = col[i];
    basis = big.order().mul_by_q(basis);
  }
  return m;
}

/// Real coordinates of the Minkowski embedding: one per real root, real and
/// imaginary parts per complex pair (root with positive imaginary part).
template <ExactInteger Int>
std::vector<double> minkowski(const NumberSystem<Int>& ns, std::span<const double> coords) {
  std::vector<double> out;
  for (const auto& r : ns.embeddings().roots) {
    if (r.imag() < 0.0) continue;
    std::complex<double> acc = 0.0, power = 1.0;
    for (double a : coords) {
      acc += a * power;
      power *= r;
    }
    out.push_back(acc.real());
    if (r.imag() > 0.0) out.push_back(acc.imag());
  }
  return out;
}

/// The Q^depth points sum_{j=1..depth} b_j q^-j. Point i has b_1 given by the
/// lowest base-Q digit of i, b_2 by the next, and so on.
template <ExactInteger Int>
TileCloud tile_points(const NumberSystem<Int>& ns, std::size_t depth, SpaceTag space = SpaceTag::coordinate,
                      const Limits& limits = {}, unsigned threads = 1) {
  const std::size_t q = ns.base_norm();
  const std::uint64_t count = saturating_power(q, static_cast<unsigned>(depth));
  require_within_cap(count, limits.tile_point_cap, "tile point cloud of depth " + std::to_string(depth));
  const std::size_t d = ns.degree();
  const auto places = inverse_places(ns, depth);
  TileCloud cloud;
  cloud.depth = depth;
  cloud.dimension = d;
  cloud.space = space;
  cloud.coords.assign(static_cast<std::size_t>(count) * d, 0.0);

  constexpr std::size_t block = 1 << 14;
  const std::size_t blocks = static_cast<std::size_t>((count + block - 1) / block);
  parallel_map<char>(blocks, threads, [&](std::size_t blk) {
    std::vector<double> p(d);
    const std::size_t end = std::min<std::size_t>(static_cast<std::size_t>(count), (blk + 1) * block);
    for (std::size_t i = blk * block; i < end; ++i) {
      std::fill(p.begin(), p.end(), 0.0);
      std::size_t rest = i;
      for (std::size_t j = 0; j < depth; ++j) {
        const auto& row = places[j * q + rest % q];
        rest /= q;
        for (std::size_t k = 0; k < d; ++k) p[k] += row[k];
      }
      if (space == SpaceTag::embedding) {
        const auto e = minkowski(ns, p);
        std::copy(e.begin(), e.end(), cloud.coords.begin() + static_cast<std::ptrdiff_t>(i * d));
      } else {
        std::copy(p.begin(), p.end(), cloud.coords.begin() + static_cast<std::ptrdiff_t>(i * d));
      }
    }
    return char{0};
  });
  return cloud;
}

/// Occupancy grid over an axis-aligned box. For d = 1 the grid is a single row.
struct Raster {
  std::size_t width = 0, height = 0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  std::vector<std::uint8_t> cells;  // row-major, row 0 at y0
  std::string system;
  std::size_t depth = 0;
  SpaceTag space = SpaceTag::coordinate;
  std::size_t dimension = 2;
  // Lattice-aligned grids: cells are squares of side 1/cells_per_unit and
  // column i spans [(origin_col + i)/n, (origin_col + i + 1)/n). 0 when the
  // grid is simply stretched over the bounding box.
  std::size_t cells_per_unit = 0;
  std::int64_t origin_col = 0, origin_row = 0;

  bool at(std::size_t col, std::size_t row) const { return cells[row * width + col] != 0; }
  double cell_width() const {
    return cells_per_unit ? 1.0 / static_cast<double>(cells_per_unit) : (x1 - x0) / static_cast<double>(width);
  }
  double cell_height() const {
    return cells_per_unit && dimension == 2 ? 1.0 / static_cast<double>(cells_per_unit) : (y1 - y0) / static_cast<double>(height);
  }
  /// 1 / cell side, the scale used for box counting.
  double scale() const { return 1.0 / cell_width(); }
  /// Cell measure in the raster's own dimension (length when d = 1).
  double cell_measure() const { return dimension == 1 ? cell_width() : cell_width() * cell_height(); }
  double center_x(std::size_t col) const { return x0 + (static_cast<double>(col) + 0.5) * cell_width(); }
  double center_y(std::size_t row) const { return y0 + (static_cast<double>(row) + 0.5) * cell_height(); }
  std::size_t occupied() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
  }
  /// Smallest and largest x over occupied cells (cell edges).
  std::pair<double, double> occupied_x_span() const {
    std::size_t lo = width, hi = 0;
    for (std::size_t r = 0; r < height; ++r)
      for (std::size_t c = 0; c < width; ++c)
        if (at(c, r)) {
          lo = std::min(lo, c);
          hi = std::max(hi, c);
        }
    if (lo == width) return {0.0, 0.0};
    return {x0 + static_cast<double>(lo) * cell_width(), x0 + static_cast<double>(hi + 1) * cell_width()};
  }
};

inline void require_raster_dimension(std::size_t d) {
  if (d < 1 || d > 2) throw configuration_error("rasters are available for d = 1 and d = 2 only (got d = " + std::to_string(d) + ")");
}

/// Cells containing at least one cloud point, over the cloud's bounding box
/// (axes of zero extent padded by 0.5 on both sides).
inline Raster rasterize(const TileCloud& cloud, std::size_t resolution) {
  require_raster_dimension(cloud.dimension);
  if (cloud.size() == 0) throw configuration_error("cannot rasterize an empty cloud");
  if (resolution == 0) throw configuration_error("resolution must be positive");
  const std::size_t d = cloud.dimension;
  double lo[2] = {HUGE_VAL, HUGE_VAL}, hi[2] = {-HUGE_VAL, -HUGE_VAL};
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], cloud.coords[i * d + k]);
      hi[k] = std::max(hi[k], cloud.coords[i * d + k]);
    }
  for (std::size_t k = 0; k < d; ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k])) throw numeric_error("degenerate bounding box");
    if (hi[k] - lo[k] <= 0.0) {
      lo[k] -= 0.5;
      hi[k] += 0.5;
    }
  }
  Raster r;
  r.dimension = d;
  r.depth = cloud.depth;
  r.space = cloud.space;
  r.width = resolution;
  r.height = d == 1 ? 1 : resolution;
  r.x0 = lo[0];
  r.x1 = hi[0];
  r.y0 = d == 1 ? -0.5 : lo[1];
  r.y1 = d == 1 ? 0.5 : hi[1];
  r.cells.assign(r.width * r.height, 0);
  auto cell = [](double v, double a, double b, std::size_t n) {
    const auto i = static_cast<std::ptrdiff_t>(std::floor((v - a) / (b - a) * static_cast<double>(n)));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const std::size_t col = cell(cloud.coords[i * d], r.x0, r.x1, r.width);
    const std::size_t row = d == 1 ? 0 : cell(cloud.coords[i * d + 1], r.y0, r.y1, r.height);
    r.cells[row * r.width + col] = 1;
  }
  return r;
}

/// Membership raster of q^-k (N_k + [0,1)^d) over its exact bounding box.
template <ExactInteger Int>
Raster rasterize_tile(const NumberSystem<Int>& ns, std::size_t depth, std::size_t resolution, const Limits& limits = {},
                      unsigned threads = 1) {
  const std::size_t d = ns.degree();
  require_raster_dimension(d);
  if (resolution == 0) throw configuration_error("resolution must be positive");
  const auto places = inverse_places(ns, depth);
  const std::size_t q = ns.base_norm();
  const auto fast = detail::to_checked(ns);

  // M^k exactly, and the corners of M^-k [0,1)^d.
  const auto big = detail::to_big(ns);
  std::vector<double> mk(d * d);
  {
    FieldElement<BigInt> col = big.order().pow_q(depth);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) mk[i * d + j] = to_double(col[i]);
      col = big.order().mul_by_q(col);
    }
  }
  const auto inv = inverse_q_matrix(ns);
  std::vector<double> minv_k(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) minv_k[i * d + i] = 1.0;
  for (std::size_t s = 0; s < depth; ++s) {
    std::vector<double> next(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) next[i * d + j] += inv[i * d + l] * minv_k[l * d + j];
    minv_k = std::move(next);
  }
  // Coordinates are linear in the digits, so the box of the digit sums is
  // the sum of the per-position boxes.
  double lo[2] = {0.0, 0.0}, hi[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < depth; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      double plo = HUGE_VAL, phi = -HUGE_VAL;
      for (std::size_t b = 0; b < q; ++b) {
        plo = std::min(plo, places[j * q + b][k]);
        phi = std::max(phi, places[j * q + b][k]);
      }
      lo[k] += plo;
      hi[k] += phi;
    }
  for (std::size_t k = 0; k < d; ++k) {
    double clo = HUGE_VAL, chi = -HUGE_VAL;
    for (unsigned corner = 0; corner < (1u << d); ++corner) {
      double v = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (corner >> j & 1u) v += minv_k[k * d + j];
      clo = std::min(clo, v);
      chi = std::max(chi, v);
    }
    lo[k] += clo;
    hi[k] += chi;
  }

  // Square cells of side 1/n with n chosen so the longer side has about
  // `resolution` cells; integer translates then map cells onto cells.
  const double extent = d == 1 ? hi[0] - lo[0] : std::max(hi[0] - lo[0], hi[1] - lo[1]);
  const auto n = static_cast<std::size_t>(std::ceil(static_cast<double>(resolution) / extent));
  const double scale = static_cast<double>(n);
  Raster r;
  r.dimension = d;
  r.depth = depth;
  r.system = ns.describe();
  r.cells_per_unit = n;
  r.origin_col = static_cast<std::int64_t>(std::floor(lo[0] * scale));
  r.width = static_cast<std::size_t>(static_cast<std::int64_t>(std::ceil(hi[0] * scale)) - r.origin_col);
  r.x0 = static_cast<double>(r.origin_col) / scale;
  r.x1 = static_cast<double>(r.origin_col + static_cast<std::int64_t>(r.width)) / scale;
  if (d == 1) {
    r.height = 1;
    r.y0 = -0.5;
    r.y1 = 0.5;
  } else {
    r.origin_row = static_cast<std::int64_t>(std::floor(lo[1] * scale));
    r.height = static_cast<std::size_t>(static_cast<std::int64_t>(std::ceil(hi[1] * scale)) - r.origin_row);
    r.y0 = static_cast<double>(r.origin_row) / scale;
    r.y1 = static_cast<double>(r.origin_row + static_cast<std::int64_t>(r.height)) / scale;
  }
  require_within_cap(static_cast<std::uint64_t>(r.width) * r.height, limits.tile_point_cap, "raster cells");
  const auto rows = parallel_map<std::vector<std::uint8_t>>(r.height, threads, [&](std::size_t row) {
    std::vector<std::uint8_t> line(r.width, 0);
    std::vector<Checked64> x(d);
    double center[2] = {0.0, (static_cast<double>(r.origin_row + static_cast<std::int64_t>(row)) + 0.5) / scale};
    for (std::size_t col = 0; col < r.width; ++col) {
      center[0] = (static_cast<double>(r.origin_col + static_cast<std::int64_t>(col)) + 0.5) / scale;
      for (std::size_t i = 0; i < d; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < d; ++j) v += mk[i * d + j] * center[j];
        x[i] = Checked64(static_cast<std::int64_t>(std::floor(v)));
      }
      for (std::size_t s = 0; s < depth; ++s) fast.step(x);
      line[col] = std::all_of(x.begin(), x.end(), [](Checked64 a) { return a == Checked64(0); }) ? 1 : 0;
    }
    return line;
  });
  r.cells.reserve(r.width * r.height);
  for (const auto& line : rows) r.cells.insert(r.cells.end(), line.begin(), line.end());
  return r;
}

inline double raster_area(const Raster& r) { return static_cast<double>(r.occupied()) * r.cell_measure(); }

/// Fraction of `samples` uniform points u in [0,1)^d for which exactly one
/// integer translate z has u - z in an occupied cell.
inline double unique_cover_fraction(const Raster& r, std::size_t samples = 10'000, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const bool planar = r.dimension == 2;
  // Index arithmetic on aligned grids: translating by z shifts the cell
  // index by z * n exactly.
  auto occupied_index = [&](std::int64_t col, std::int64_t row) {
    return col >= 0 && row >= 0 && col < static_cast<std::int64_t>(r.width) && row < static_cast<std::int64_t>(r.height) &&
           r.at(static_cast<std::size_t>(col), static_cast<std::size_t>(row));
  };
  auto occupied_at = [&](double x, double y) {
    if (x < r.x0 || x >= r.x1 || (planar && (y < r.y0 || y >= r.y1))) return false;
    const auto col = static_cast<std::int64_t>((x - r.x0) / r.cell_width());
    const auto row = planar ? static_cast<std::int64_t>((y - r.y0) / r.cell_height()) : 0;
    return occupied_index(col, row);
  };
  const auto n = static_cast<std::int64_t>(r.cells_per_unit);
  std::size_t unique = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double ux = uniform();
    const double uy = planar ? uniform() : 0.0;
    std::size_t hits = 0;
    for (double zx = std::ceil(ux - r.x1); zx <= std::floor(ux - r.x0); zx += 1.0) {
      const double zy_lo = planar ? std::ceil(uy - r.y1) : 0.0, zy_hi = planar ? std::floor(uy - r.y0) : 0.0;
      for (double zy = zy_lo; zy <= zy_hi; zy += 1.0) {
        if (n > 0) {
          const auto col = static_cast<std::int64_t>(std::floor(ux * static_cast<double>(n))) - static_cast<std::int64_t>(zx) * n - r.origin_col;
          const auto row = planar ? static_cast<std::int64_t>(std::floor(uy * static_cast<double>(n))) - static_cast<std::int64_t>(zy) * n - r.origin_row : 0;
          hits += occupied_index(col, row);
        } else {
          hits += occupied_at(ux - zx, uy - zy);
        }
      }
    }
    unique += hits == 1;
  }
  return static_cast<double>(unique) / static_cast<double>(samples);
}

struct AreaReport {
  double area = 0.0;
  double unique_cover = 0.0;
  std::size_t occupied_cells = 0;
};

template <ExactInteger Int>
AreaReport area_estimate(const NumberSystem<Int>& ns, std::size_t depth, std::size_t resolution, const Limits& limits = {},
                         unsigned threads = 1, std::uint64_t seed = 1) {
  const Raster r = rasterize_tile(ns, depth, resolution, limits, threads);
  return {raster_area(r), unique_cover_fraction(r, 10'000, seed), r.occupied()};
}

struct RadiiReport {
  double r_plus_bound = 0.0;     // sup-norm bound on coordinates of the tile
  double r_minus_estimate = 0.0;  // sup-norm radius of the largest covered box around 0
  std::vector<double> per_embedding;  // max_b |b^pi| / (|q^pi| - 1)
  std::vector<double> per_coordinate;
};

template <ExactInteger Int>
RadiiReport tile_radii(const NumberSystem<Int>& ns, const Raster& raster) {
  RadiiReport rep;
  rep.per_embedding = attractor_radii(ns);
  rep.per_coordinate = coordinate_bounds(ns.embeddings(), rep.per_embedding);
  rep.r_plus_bound = *std::max_element(rep.per_coordinate.begin(), rep.per_coordinate.end());

  const bool planar = raster.dimension == 2;
  double r = std::min(-raster.x0, raster.x1);
  if (planar) r = std::min({r, -raster.y0, raster.y1});
  r = std::max(r, 0.0);
  auto gap = [](double a, double b) { return a > 0.0 ? a : (b < 0.0 ? -b : 0.0); };  // distance from 0 to [a, b]
  for (std::size_t row = 0; row < raster.height; ++row) {
    for (std::size_t col = 0; col < raster.width; ++col) {
      if (raster.at(col, row)) continue;
      const double ax = raster.x0 + static_cast<double>(col) * raster.cell_width();
      double dist = gap(ax, ax + raster.cell_width());
      if (planar) {
        const double ay = raster.y0 + static_cast<double>(row) * raster.cell_height();
        dist = std::max(dist, gap(ay, ay + raster.cell_height()));
      }
      r = std::min(r, dist);
    }
  }
  rep.r_minus_estimate = r;
  return rep;
}

/// Occupied cells with an unoccupied 4-neighbour (2-neighbour when d = 1);
/// cells outside the grid count as unoccupied.
inline std::size_t boundary_cells(const Raster& r) {
  std::size_t count = 0;
  for (std::size_t row = 0; row < r.height; ++row) {
    for (std::size_t col = 0; col < r.width; ++col) {
      if (!r.at(col, row)) continue;
      bool edge = col == 0 || col + 1 == r.width || !r.at(col - 1, row) || !r.at(col + 1, row);
      if (r.dimension == 2) edge = edge || row == 0 || row + 1 == r.height || !r.at(col, row - 1) || !r.at(col, row + 1);
      count += edge;
    }
  }
  return count;
}

struct BoxDimension {
  double slope = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::vector<std::size_t> resolutions;
  std::vector<double> scales;
  std::vector<std::size_t> counts;
};

/// Least-squares slope of log(boundary cells) against log(1 / cell side).
inline BoxDimension fit_box_dimension(std::vector<std::size_t> resolutions, std::vector<double> scales,
                                      std::vector<std::size_t> counts) {
  if (resolutions.size() < 3) throw configuration_error("box dimension needs at least 3 resolutions");
  const double n = static_cast<double>(resolutions.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    const double x = std::log(scales[i]);
    const double y = std::log(static_cast<double>(std::max<std::size_t>(counts[i], 1)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw configuration_error("box dimension needs distinct resolutions");
  BoxDimension out;
  out.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - out.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    const double e = std::log(static_cast<double>(std::max<std::size_t>(counts[i], 1))) -
                     (intercept + out.slope * std::log(scales[i]));
    ss += e * e;
  }
  out.residual = std::sqrt(ss / n);
  out.resolutions = std::move(resolutions);
  out.scales = std::move(scales);
  out.counts = std::move(counts);
  return out;
}

template <ExactInteger Int>
BoxDimension boundary_boxdim(const NumberSystem<Int>& ns, const std::vector<std::size_t>& resolutions, std::size_t depth = 22,
                             const Limits& limits = {}, unsigned threads = 1) {
  if (resolutions.size() < 3) throw configuration_error("box dimension needs at least 3 resolutions");
  std::vector<std::size_t> counts;
  std::vector<double> scales;
  for (auto res : resolutions) {
    const Raster r = rasterize_tile(ns, depth, res, limits, threads);
    counts.push_back(boundary_cells(r));
    scales.push_back(r.scale());
  }
  return fit_box_dimension(resolutions, std::move(scales), std::move(counts));
}

}  // namespace radixion
