#include <numbers>

#include "support.hpp"

using ff::Matrix;
using ff::Vector;
constexpr double pi = std::numbers::pi;

TEST_CASE("catalog lists every frontal and rejects unknown names and keys") {
  const auto names = ff::catalog_names();
  CHECK(names == std::vector<std::string>{"circle", "circle-cubic", "square", "cusp", "nonfront", "sphere",
                                          "constant"});
  CHECK(error_code_of([] { ff::catalog("ellipse"); }) == ff::ErrorCode::UnknownName);
  CHECK(error_code_of([] { ff::catalog("circle", {{"r", 2.0}}); }) == ff::ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { ff::catalog("circle", {{"R", -1.0}}); }) == ff::ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { ff::catalog("sphere", {{"polar_margin", 2.0}}); }) == ff::ErrorCode::InvalidArgument);
}

TEST_CASE("circle parameters and derivative") {
  const ff::Frontal F = ff::catalog("circle", {{"R", 2.0}});
  CHECK((F.f(at(pi / 2)) - vec({0.0, 2.0})).norm() <= 1e-15);
  CHECK((F.nu(at(pi / 2)) - vec({0.0, 1.0})).norm() <= 1e-15);
  const ff::Frontal U = ff::catalog("circle").without_analytic_jacobians();
  CHECK((U.jacobian_f(at(0.0)).col(0) - vec({0.0, 1.0})).norm() <= 1e-9);
  CHECK(ff::check_frontal(ff::catalog("circle"), ff::SampleGrid::uniform(F.domain(), 1000), 1e-9).passed);
}

TEST_CASE("finite differences on simple maps") {
  const ff::Frontal cusp = ff::catalog("cusp").without_analytic_jacobians();
  CHECK((cusp.jacobian_f(at(0.5)).col(0) - vec({1.0, 0.75})).norm() <= 1e-9);
  const ff::Frontal c = ff::catalog("constant").without_analytic_jacobians();
  CHECK(c.jacobian_f(at(0.3)) == Matrix::Zero(2, 1));
  CHECK(c.jacobian_nu(at(-1.0)) == Matrix::Zero(2, 1));
}

TEST_CASE("circle-cubic is frontal with a singular point at 0") {
  const ff::Frontal F = ff::catalog("circle-cubic");
  CHECK(ff::check_frontal(F, ff::SampleGrid::uniform(F.domain(), 2049)).passed);
  CHECK(F.jacobian_f(at(0.0)).norm() == 0.0);
  CHECK(F.fd_jacobian_f(at(0.0)).norm() <= 1e-9);
  CHECK((F.f(at(1.0)) - vec({std::cos(1.0), std::sin(1.0)})).norm() <= 1e-15);
}

TEST_CASE("square frontal traces the square and holds still on the corners") {
  const ff::Frontal F = ff::catalog("square");
  const auto grid = ff::SampleGrid::uniform(F.domain(), 4000);
  CHECK(ff::check_frontal(F, grid).max_residual <= 1e-6);
  for (const auto& x : grid.points()) {
    const Vector p = F.f(x);
    const double linf = p.cwiseAbs().maxCoeff();
    CHECK(std::abs(linf - 1.0) <= 1e-9);
    const int k = static_cast<int>(std::floor(x[0]));
    if (k % 2 == 0) {
      const Vector corner = F.f(at(k));
      CHECK((p - corner).norm() == 0.0);
    }
  }
  CHECK((F.f(at(0.5)) - vec({1, -1})).norm() == 0.0);
  CHECK((F.f(at(2.5)) - vec({1, 1})).norm() == 0.0);
  CHECK((F.f(at(4.5)) - vec({-1, 1})).norm() == 0.0);
  CHECK((F.f(at(6.5)) - vec({-1, -1})).norm() == 0.0);
  // Period 8.
  CHECK((F.f(at(9.25)) - F.f(at(1.25))).norm() <= 1e-15);
  // Normal on the sides.
  CHECK((F.nu(at(1.5)) - vec({1, 0})).norm() == 0.0);
  CHECK((F.nu(at(3.5)) - vec({0, 1})).norm() == 0.0);
}

TEST_CASE("nonfront has vanishing Jacobians at 0, cusp does not") {
  const ff::Frontal N = ff::catalog("nonfront");
  const Matrix J = ff::vstack(N.jacobian_f(at(0.0)), N.jacobian_nu(at(0.0)));
  CHECK(J.rows() == 4);
  CHECK(J.norm() <= 1e-9);
  const ff::Frontal C = ff::catalog("cusp");
  CHECK((C.jacobian_nu(at(0.0)).col(0) - vec({1.5, 0.0})).norm() <= 1e-15);
}

TEST_CASE("sphere is its own Gauss map") {
  const ff::Frontal S = ff::catalog("sphere");
  CHECK(S.param_dim() == 2);
  CHECK(S.ambient_dim() == 3);
  const auto grid = ff::SampleGrid::uniform(S.domain(), 20);
  for (const auto& x : grid.points()) {
    CHECK((S.f(x) - S.nu(x)).norm() == 0.0);
    CHECK(std::abs(S.f(x).norm() - 1.0) <= 1e-15);
  }
}

TEST_CASE("a swapped normal fails the frontal check") {
  const ff::Frontal C = ff::catalog("circle");
  const ff::Frontal swapped("swapped", C.domain(), 2, [&](const ff::Param& x) { return C.f(x); },
                            [&](const ff::Param& x) {
                              const Vector n = C.nu(x);
                              return vec({n[1], n[0]});
                            });
  const auto r = ff::check_frontal(swapped, ff::SampleGrid::uniform(C.domain(), 256));
  CHECK(r.max_residual >= 0.1);
  CHECK_FALSE(r.passed);
}
