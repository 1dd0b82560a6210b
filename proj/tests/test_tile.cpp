#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "systems.hpp"

using namespace radixion;
using namespace radixion::testing;

namespace {

std::vector<std::vector<double>> sorted_points(const TileCloud& c) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < c.size(); ++i) pts.emplace_back(c.point(i).begin(), c.point(i).end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

TEST(TilePoints, DepthZeroIsOrigin) {
  const auto c = tile_points(knuth(), 0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.point(0)[0], 0.0);
  EXPECT_EQ(c.point(0)[1], 0.0);
}

TEST(TilePoints, KnuthDepthOne) {
  // q^-1 = -(2 + q)/2
  const auto c = tile_points(knuth(), 1);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.point(0)[0], 0.0);
  EXPECT_EQ(c.point(0)[1], 0.0);
  EXPECT_DOUBLE_EQ(c.point(1)[0], -1.0);
  EXPECT_DOUBLE_EQ(c.point(1)[1], -0.5);
}

TEST(TilePoints, SizeIsPowerOfQ) {
  EXPECT_EQ(tile_points(knuth(), 10).size(), 1024u);
  EXPECT_EQ(tile_points(gauss5(), 4).size(), 625u);
  EXPECT_EQ(tile_points(negabinary(), 7).size(), 128u);
}

TEST(TilePoints, CapIsEnforced) {
  Limits limits;
  limits.tile_point_cap = 1000;
  EXPECT_THROW(tile_points(knuth(), 10, SpaceTag::coordinate, limits), resource_error);
}

TEST(TilePoints, SelfAffine) {
  for (const auto& ns : {knuth(), gauss5(), negabinary(), gauss5_twisted()}) {
    const std::size_t d = ns.degree();
    const auto inv = inverse_q_matrix(ns);
    const std::size_t max_depth = ns.base_norm() == 2 ? 8 : 4;
    for (std::size_t k = 0; k < max_depth; ++k) {
      const auto coarse = tile_points(ns, k);
      TileCloud mapped;
      mapped.dimension = d;
      for (const auto& b : ns.digits())
        for (std::size_t i = 0; i < coarse.size(); ++i) {
          std::vector<double> v(d);
          for (std::size_t j = 0; j < d; ++j) v[j] = coarse.point(i)[j] + to_double(b[j]);
          for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += inv[r * d + j] * v[j];
            mapped.coords.push_back(acc);
          }
        }
      const auto a = sorted_points(tile_points(ns, k + 1));
      const auto b = sorted_points(mapped);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) ASSERT_NEAR(a[i][j], b[i][j], 1e-9);
    }
  }
}

TEST(TilePoints, InsideCoordinateBound) {
  for (const auto& ns : {knuth(), gauss5(), negabinary()}) {
    const auto bounds = coordinate_bounds(ns.embeddings(), attractor_radii(ns));
    const auto c = tile_points(ns, ns.base_norm() == 2 ? 14 : 6);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t k = 0; k < c.dimension; ++k) ASSERT_LE(std::abs(c.point(i)[k]), bounds[k] + 1e-9);
  }
}

TEST(TilePoints, EmbeddingSpaceIsAnIsometryOfTheLattice) {
  // Knuth: coordinates (a0, a1) embed as a0 + a1 (-1 + i)
  const auto c = tile_points(knuth(), 6, SpaceTag::coordinate);
  const auto e = tile_points(knuth(), 6, SpaceTag::embedding);
  ASSERT_EQ(c.size(), e.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(e.point(i)[0], c.point(i)[0] - c.point(i)[1], 1e-12);
    EXPECT_NEAR(e.point(i)[1], c.point(i)[1], 1e-12);
  }
}

TEST(Rasterize, SinglePoint) {
  TileCloud c;
  c.dimension = 2;
  c.coords = {0.25, -0.5};
  const auto r = rasterize(c, 64);
  EXPECT_EQ(r.occupied(), 1u);
}

TEST(Rasterize, BoundingBoxContainsCloud) {
  const auto c = tile_points(knuth(), 12);
  const auto r = rasterize(c, 256);
  EXPECT_GT(r.occupied(), 0u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_GE(c.point(i)[0], r.x0);
    EXPECT_LE(c.point(i)[0], r.x1);
    EXPECT_GE(c.point(i)[1], r.y0);
    EXPECT_LE(c.point(i)[1], r.y1);
  }
}

TEST(Rasterize, DepthZeroAreaIsOneCell) {
  const auto r = rasterize(tile_points(knuth(), 0), 100);
  EXPECT_EQ(r.occupied(), 1u);
  EXPECT_DOUBLE_EQ(raster_area(r), r.cell_measure());
}

TEST(Rasterize, RejectsHighDimension) {
  EXPECT_THROW(rasterize_tile(make_system("3,3,3,1"), 4, 64), configuration_error);
}

TEST(TileRaster, NegabinarySpan) {
  const auto r = rasterize_tile(negabinary(), 16, 1024);
  const auto [lo, hi] = r.occupied_x_span();
  EXPECT_NEAR(lo, -2.0 / 3.0, r.cell_width());
  EXPECT_NEAR(hi, 1.0 / 3.0, r.cell_width());
}

TEST(TileRaster, OccupancyStableAcrossDepth) {
  for (const auto& ns : {knuth(), negabinary()}) {
    const auto a = rasterize_tile(ns, 16, 512);
    const auto b = rasterize_tile(ns, 18, 512);
    const double fa = static_cast<double>(a.occupied()) / static_cast<double>(a.cells.size());
    const double fb = static_cast<double>(b.occupied()) / static_cast<double>(b.cells.size());
    EXPECT_NEAR(fa / fb, 1.0, 0.02);
  }
}

TEST(TileRaster, AlignedGrid) {
  const auto r = rasterize_tile(knuth(), 10, 300);
  EXPECT_GT(r.cells_per_unit, 0u);
  EXPECT_DOUBLE_EQ(r.cell_width(), 1.0 / static_cast<double>(r.cells_per_unit));
  EXPECT_DOUBLE_EQ(r.cell_height(), r.cell_width());
  EXPECT_DOUBLE_EQ(r.x0 * static_cast<double>(r.cells_per_unit), static_cast<double>(r.origin_col));
}

TEST(TileRaster, ThreadCountDoesNotMatter) {
  const auto a = rasterize_tile(knuth(), 14, 256, {}, 1);
  const auto b = rasterize_tile(knuth(), 14, 256, {}, 4);
  EXPECT_EQ(a.cells, b.cells);
}

TEST(Area, Goldens) {
  EXPECT_NEAR(area_estimate(negabinary(), 16, 1024).area, 1.0, 0.02);
  EXPECT_NEAR(area_estimate(knuth(), 18, 1024).area, 1.0, 0.03);
  EXPECT_NEAR(area_estimate(gauss5(), 8, 512).area, 1.0, 0.03);
}

TEST(Area, PointCloudConvergesWithDepth) {
  // the membership raster is exact at every depth, so convergence is a
  // property of the point-cloud approximation
  double previous = HUGE_VAL;
  for (std::size_t depth : {10u, 12u, 14u, 16u}) {
    const double err = std::abs(raster_area(rasterize(tile_points(knuth(), depth), 512)) - 1.0);
    EXPECT_LT(err, previous) << depth;
    previous = err;
  }
}

TEST(Area, UniqueCover) {
  EXPECT_GE(unique_cover_fraction(rasterize_tile(knuth(), 18, 1024)), 0.98);
  EXPECT_GE(unique_cover_fraction(rasterize_tile(negabinary(), 18, 1024)), 0.98);
  EXPECT_GE(unique_cover_fraction(rasterize_tile(gauss5(), 18, 1024)), 0.98);
}

TEST(Radii, Negabinary) {
  const auto r = rasterize_tile(negabinary(), 16, 1024);
  const auto radii = tile_radii(negabinary(), r);
  EXPECT_NEAR(radii.r_plus_bound, 1.0, 1e-12);
  EXPECT_GT(radii.r_minus_estimate, 0.0);
  EXPECT_LE(radii.r_minus_estimate, radii.r_plus_bound);
  // the tile [-2/3, 1/3] holds the box of radius 1/3 around 0
  EXPECT_NEAR(radii.r_minus_estimate, 1.0 / 3.0, r.cell_width());
}

TEST(Radii, KnuthGolden) {
  const auto r = rasterize_tile(knuth(), 18, 1024);
  const auto radii = tile_radii(knuth(), r);
  EXPECT_NEAR(radii.r_minus_estimate, 0.066059, 1e-6);
  EXPECT_NEAR(radii.r_plus_bound, 2.0 + std::sqrt(2.0), 1e-9);
}

TEST(Radii, MinusBelowPlus) {
  for (const auto& ns : {knuth(), gauss5(), negabinary(), make_system("3,3,1")}) {
    const auto radii = tile_radii(ns, rasterize_tile(ns, 8, 256));
    EXPECT_GT(radii.r_minus_estimate, 0.0);
    EXPECT_LE(radii.r_minus_estimate, radii.r_plus_bound);
  }
}

TEST(BoxDimension, NegabinaryIsZero) {
  const auto bd = boundary_boxdim(negabinary(), {256, 512, 1024}, 18);
  for (auto c : bd.counts) EXPECT_EQ(c, 2u);
  EXPECT_NEAR(bd.slope, 0.0, 1e-12);
}

TEST(BoxDimension, TwinDragon) {
  const auto bd = boundary_boxdim(knuth(), {256, 512, 1024});
  EXPECT_NEAR(bd.slope, 1.52, 0.06);
  EXPECT_GE(bd.slope, 1.0 - 0.1);
  EXPECT_LE(bd.slope, 2.0 + 0.05);
}

TEST(BoxDimension, FitRecoversExactPowerLaw) {
  const auto bd = fit_box_dimension({1, 2, 3}, {10.0, 100.0, 1000.0}, {100, 10000, 1000000});
  EXPECT_NEAR(bd.slope, 2.0, 1e-12);
  EXPECT_NEAR(bd.residual, 0.0, 1e-12);
  EXPECT_THROW(fit_box_dimension({1, 2}, {1.0, 2.0}, {1, 2}), configuration_error);
}
