#include <chrono>
#include <numbers>

#include "support.hpp"

using ff::Vector;
constexpr double pi = std::numbers::pi;

TEST_CASE("no-silhouette membership on the unit circle") {
  const ff::Frontal C = ff::catalog("circle");
  const auto grid = ff::SampleGrid::uniform(C.domain(), 4096);
  const auto in = ff::ns_membership(C, ff::AmbientVec{0.0, 0.0}, grid);
  CHECK(in.member);
  CHECK(in.margin == Catch::Approx(1.0));
  const auto out = ff::ns_membership(C, ff::AmbientVec{2.0, 0.0}, grid);
  CHECK_FALSE(out.member);
  CHECK(out.sign_change);
  CHECK(out.margin == 0.0);
  // Smallest sampled |1 - 2 cos t| sits next to the tangency at pi/3.
  const double t = out.argmin[0];
  CHECK(std::min(std::abs(t - pi / 3), std::abs(t - 5 * pi / 3)) <= 2 * pi / 4096);
  CHECK(error_code_of([&] { ff::ns_membership(C, ff::AmbientVec{0.0, 0.0, 0.0}, grid); }) ==
        ff::ErrorCode::DimensionMismatch);
  CHECK(error_code_of([&] { ff::ns_membership(C, ff::AmbientVec{0.0, 0.0}, ff::SampleGrid()); }) ==
        ff::ErrorCode::EmptyGrid);
}

TEST_CASE("square frontal: interior poles are members") {
  const ff::Frontal S = ff::catalog("square");
  const auto grid = ff::SampleGrid::uniform(S.domain(), 4096);
  CHECK(ff::ns_membership(S, ff::AmbientVec{0.3, -0.2}, grid).member);
  CHECK_FALSE(ff::ns_membership(S, ff::AmbientVec{1.2, 0.0}, grid).member);
}

TEST_CASE("membership threshold option") {
  const ff::Frontal C = ff::catalog("circle");
  const auto grid = ff::SampleGrid::uniform(C.domain(), 256);
  CHECK(ff::ns_membership(C, ff::AmbientVec{0.5, 0.0}, grid).member);
  CHECK_FALSE(ff::ns_membership(C, ff::AmbientVec{0.5, 0.0}, grid, ff::NSOptions{0.6}).member);
}

TEST_CASE("circle raster is the open unit disk away from the boundary") {
  const ff::Frontal C = ff::catalog("circle");
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = ff::ns_raster(C, {-2, 2, -2, 2}, 128, 128, ff::SampleGrid::uniform(C.domain(), 4096));
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
  const double diag = r.cell_diagonal();
  int checked = 0;
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const double d = r.center(i, j).norm();
      if (std::abs(d - 1.0) < diag) continue;
      ++checked;
      CHECK(r.at(i, j) == (d < 1.0));
    }
  }
  CHECK(checked > 15000);
}

TEST_CASE("square raster is the open square away from the boundary") {
  const ff::Frontal S = ff::catalog("square");
  const auto r = ff::ns_raster(S, {-3, 3, -3, 3}, 128, 128, ff::SampleGrid::uniform(S.domain(), 4096));
  const double diag = r.cell_diagonal();
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const double d = r.center(i, j).cwiseAbs().maxCoeff();
      if (std::abs(d - 1.0) < diag) continue;
      CHECK(r.at(i, j) == (d < 1.0));
    }
  }
}

TEST_CASE("raster outside NS is empty, bad inputs are rejected") {
  const ff::Frontal C = ff::catalog("circle");
  const auto grid = ff::SampleGrid::uniform(C.domain(), 512);
  CHECK(ff::ns_raster(C, {2, 3, 2, 3}, 16, 16, grid).count() == 0);
  CHECK(error_code_of([&] { ff::ns_raster(C, {1, 1, 0, 1}, 16, 16, grid); }) == ff::ErrorCode::InvalidArgument);
  CHECK(error_code_of([&] { ff::ns_raster(C, {0, 1, 0, 1}, 1, 16, grid); }) == ff::ErrorCode::InvalidArgument);
  const ff::Frontal S = ff::catalog("sphere");
  CHECK(error_code_of([&] { ff::ns_raster(S, {0, 1, 0, 1}, 8, 8, ff::SampleGrid::uniform(S.domain(), 8)); }) ==
        ff::ErrorCode::DimensionMismatch);
}

TEST_CASE("sampled poles are reproducible members") {
  for (const auto& name : ff::catalog_names()) {
    const ff::Frontal F = ff::catalog(name);
    const auto grid = ff::SampleGrid::uniform(F.domain(), F.param_dim() == 1 ? 512 : 23);
    const auto a = ff::sample_poles(F, grid, 5);
    const auto b = ff::sample_poles(F, grid, 5);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].coords() == b[i].coords());
      CHECK(ff::ns_membership(F, a[i], grid).member);
    }
  }
  ff::SplitMix64 rng(ff::kPoleSeed);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
