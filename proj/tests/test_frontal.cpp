#include <cstdlib>
#include <numbers>

#include "support.hpp"

using ff::Matrix;
using ff::Vector;
constexpr double pi = std::numbers::pi;

TEST_CASE("domain wraps periodic axes and rejects points outside closed ones") {
  const ff::ParamDomain d({{0.0, 2 * pi, true}, {-1.0, 1.0, false}});
  const Vector y = d.canonical(vec({2 * pi + 0.5, 1.0}));
  CHECK(y[0] == Catch::Approx(0.5));
  CHECK(y[1] == 1.0);
  CHECK(d.canonical(vec({-0.5, 0.0}))[0] == Catch::Approx(2 * pi - 0.5));
  CHECK(d.canonical(vec({2 * pi, 0.0}))[0] == 0.0);
  CHECK(error_code_of([&] { d.canonical(vec({0.0, 1.1})); }) == ff::ErrorCode::DomainViolation);
  CHECK(error_code_of([&] { d.canonical(vec({0.0})); }) == ff::ErrorCode::DimensionMismatch);
  CHECK(error_code_of([] { ff::ParamDomain({{1.0, 1.0, false}}); }) == ff::ErrorCode::InvalidArgument);
}

TEST_CASE("sample grid layout") {
  const auto g = ff::SampleGrid::from_axes({{0.0, 1.0, 3, true}, {0.0, 4.0, 4, false}});
  REQUIRE(g.size() == 12);
  CHECK(g[0] == vec({0.0, 0.0}));
  CHECK(g[1] == vec({0.0, 1.0}));
  CHECK(g[4] == vec({0.5, 0.0}));
  CHECK(g[11] == vec({1.0, 3.0}));
  CHECK(error_code_of([] { ff::SampleGrid::from_axes({{0.0, 1.0, 1, true}}); }) == ff::ErrorCode::InvalidArgument);
}

TEST_CASE("refined grids contain the coarse points bit for bit") {
  for (int c : {5, 17, 64}) {
    const auto coarse = ff::SampleGrid::from_axes({{-1.5, 1.5, c, false}});
    const auto fine = ff::SampleGrid::from_axes({{-1.5, 1.5, 2 * c, false}});
    for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(coarse[i][0] == fine[2 * i][0]);
    const auto ci = ff::SampleGrid::from_axes({{-1.0, 1.0, c, true}});
    const auto fi = ff::SampleGrid::from_axes({{-1.0, 1.0, 2 * c - 1, true}});
    for (std::size_t i = 0; i < ci.size(); ++i) CHECK(ci[i][0] == fi[2 * i][0]);
  }
}

TEST_CASE("finite-difference Jacobians match analytic ones on the catalog") {
  for (const auto& name : ff::catalog_names()) {
    const ff::Frontal F = ff::catalog(name);
    const auto grid = ff::SampleGrid::uniform(F.domain(), F.param_dim() == 1 ? 257 : 17);
    double worst = 0.0;
    for (const auto& x : grid.points()) {
      // The square's smooth steps have large higher derivatives near their
      // flat ends; compare there with a relative bound.
      const Matrix a = F.jacobian_f(x), b = F.fd_jacobian_f(x);
      const Matrix c = F.jacobian_nu(x), d = F.fd_jacobian_nu(x);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / (1.0 + a.cwiseAbs().maxCoeff()));
      worst = std::max(worst, (c - d).cwiseAbs().maxCoeff() / (1.0 + c.cwiseAbs().maxCoeff()));
    }
    INFO(name);
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("one-sided differences at closed ends") {
  const ff::Frontal F = ff::catalog("cusp");
  for (double t : {-1.0, 1.0}) {
    CHECK((F.jacobian_f(at(t)) - F.fd_jacobian_f(at(t))).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("check_frontal passes on the catalog and fails on a wrong normal") {
  for (const auto& name : ff::catalog_names()) {
    const ff::Frontal F = ff::catalog(name);
    INFO(name);
    CHECK(ff::check_frontal(F, ff::SampleGrid::uniform(F.domain(), F.param_dim() == 1 ? 2048 : 46)).passed);
  }
  const ff::Frontal circle = ff::catalog("circle");
  const ff::Frontal bad("bad", circle.domain(), 2, [&](const ff::Param& x) { return circle.f(x); },
                        [](const ff::Param&) { return vec({1.0, 0.0}); });
  const auto r = ff::check_frontal(bad, ff::SampleGrid::uniform(bad.domain(), 64));
  CHECK_FALSE(r.passed);
  CHECK(r.max_residual == Catch::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("frontal validation and sampling") {
  const ff::ParamDomain d({{0.0, 1.0, false}});
  auto f = [](const ff::Param& x) { return vec({x[0], 0.0}); };
  auto nu = [](const ff::Param&) { return vec({0.0, 1.0}); };
  CHECK(error_code_of([&] { ff::Frontal("x", d, 3, f, nu); }) == ff::ErrorCode::DimensionMismatch);
  const ff::Frontal skew("skew", d, 2, f, [](const ff::Param&) { return vec({0.0, 2.0}); });
  CHECK(error_code_of([&] { ff::sample(skew, ff::SampleGrid::uniform(d, 4)); }) == ff::ErrorCode::NotUnit);
  const ff::Frontal line("line", d, 2, f, nu);
  const auto s = ff::sample(line, ff::SampleGrid::uniform(d, 5));
  CHECK(s.size() == 5);
  CHECK(s.values[4] == vec({1.0, 0.0}));
  CHECK(s.gauss[2] == vec({0.0, 1.0}));
}

TEST_CASE("frontal residual is translation invariant") {
  std::mt19937_64 rng(5);
  for (const auto& name : {"circle", "cusp", "sphere", "square"}) {
    const ff::Frontal F = ff::catalog(name);
    const auto grid = ff::SampleGrid::uniform(F.domain(), F.param_dim() == 1 ? 200 : 15);
    const ff::Frontal G = F.translated(random_vector(rng, F.ambient_dim(), -5, 5));
    CHECK(ff::check_frontal(G, grid).max_residual == ff::check_frontal(F, grid).max_residual);
  }
}

TEST_CASE("parallel_for is deterministic and reports the lowest failing index") {
  setenv("FRONTALFORGE_THREADS", "4", 1);
  CHECK(ff::worker_count() <= 4);
  std::vector<double> a(1000), b(1000);
  ff::parallel_for(a.size(), [&](std::size_t i) { a[i] = std::sin(static_cast<double>(i)); });
  setenv("FRONTALFORGE_THREADS", "1", 1);
  CHECK(ff::worker_count() == 1);
  ff::parallel_for(b.size(), [&](std::size_t i) { b[i] = std::sin(static_cast<double>(i)); });
  CHECK(a == b);
  setenv("FRONTALFORGE_THREADS", "4", 1);
  try {
    ff::parallel_for(1000, [](std::size_t i) {
      if (i == 700 || i == 300) throw ff::Error(ff::ErrorCode::InvalidArgument, std::to_string(i));
    });
    FAIL("expected a throw");
  } catch (const ff::Error& e) {
    CHECK(std::string(e.what()) == "300");
  }
  unsetenv("FRONTALFORGE_THREADS");
}
