#include <doctest.h>

#include <cmath>

#include "seqsmooth/kernels.hpp"
#include "seqsmooth/rng.hpp"
#include "test_support.hpp"

using namespace seqsmooth;
using testsupport::simpson_fixed;

TEST_CASE("gaussian kernel point values") {
  const auto k = gaussian_kernel();
  CHECK(eval_kernel(k, 0.0) == doctest::Approx(0.3989423).epsilon(1e-6));
  CHECK(eval_kernel(k, 1.0) ==
        doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
  CHECK(eval_kernel(k, 1.0) == doctest::Approx(0.2419707).epsilon(1e-6));
  CHECK(eval_kernel(k, -2.5) == eval_kernel(k, 2.5));
}

TEST_CASE("epanechnikov kernel support") {
  const auto k = epanechnikov_kernel();
  CHECK(eval_kernel(k, 1.5) == 0.0);
  CHECK(eval_kernel(k, 0.0) == doctest::Approx(0.75));
  CHECK(eval_kernel(k, -0.5) == eval_kernel(k, 0.5));
}

TEST_CASE("eval_kernel rejects non-finite arguments") {
  const auto k = gaussian_kernel();
  CHECK_THROWS_AS(eval_kernel(k, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(eval_kernel(k, INFINITY), std::domain_error);
}

TEST_CASE("scaled kernel weight") {
  const auto g = gaussian_kernel();
  const auto e = epanechnikov_kernel();
  CHECK(scaled_kernel_weight(g, 1.0, 0.3, 0.3) ==
        doctest::Approx(0.3989423).epsilon(1e-6));
  CHECK(scaled_kernel_weight(g, 0.5, 0.3, 0.3) ==
        doctest::Approx(0.7978846).epsilon(1e-6));
  CHECK(scaled_kernel_weight(e, 0.1, 0.5, 0.3) == 0.0);
  CHECK_THROWS_AS(scaled_kernel_weight(g, 0.0, 0.1, 0.2), std::domain_error);
  CHECK_THROWS_AS(scaled_kernel_weight(g, -1.0, 0.1, 0.2), std::domain_error);
}

TEST_CASE("scaled weight symmetry in x and x0") {
  const auto g = gaussian_kernel();
  const auto e = epanechnikov_kernel();
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform01();
    const double x0 = rng.uniform01();
    const double h = 0.05 + rng.uniform01();
    CHECK(scaled_kernel_weight(g, h, x, x0) ==
          scaled_kernel_weight(g, h, x0, x));
    CHECK(scaled_kernel_weight(e, h, x, x0) ==
          scaled_kernel_weight(e, h, x0, x));
  }
}

TEST_CASE("scaled weight integrates to one over x") {
  for (const char* name : {"gaussian", "epanechnikov", "epanechnikov-order4"}) {
    const auto k = kernel_by_name(name);
    for (const double h : {0.05, 0.3, 1.7}) {
      const double x0 = 0.4;
      const double r = (k.compact_support() ? k.support_radius : 8.0) * h;
      const double integral = simpson_fixed(
          [&](double x) { return scaled_kernel_weight(k, h, x, x0); },
          x0 - r - h, x0 + r + h);
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("gaussian moments against fixed-grid quadrature") {
  const auto k = gaussian_kernel();
  CHECK(kernel_moment(k, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(kernel_moment(k, 1)) < 1e-10);
  CHECK(kernel_moment(k, 2) == doctest::Approx(1.0).epsilon(1e-8));
  // Independent oracle: Simpson on a fixed 20000-panel grid.
  for (int j : {0, 2, 4}) {
    const double oracle = simpson_fixed(
        [&](double u) { return std::pow(u, j) * k.evaluate(u); }, -10.0, 10.0);
    CHECK(std::fabs(kernel_moment(k, j) - oracle) < 1e-8);
  }
  CHECK_THROWS_AS(kernel_moment(k, -1), std::invalid_argument);
}

TEST_CASE("kernel invariants for built-ins and constructed kernels") {
  for (const char* name : {"gaussian", "epanechnikov", "epanechnikov-order4"}) {
    const auto k = kernel_by_name(name);
    CHECK(kernel_moment(k, 0) == doctest::Approx(1.0).epsilon(1e-8));
    for (int j = 1; j < k.order; ++j)
      CHECK(std::fabs(kernel_moment(k, j)) < 1e-8);
    CHECK(std::fabs(kernel_moment(k, k.order)) > 1e-6);
  }
}

TEST_CASE("gaussian squared integral matches closed form") {
  CHECK(kernel_squared_integral(gaussian_kernel()) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-8));
  // Epanechnikov: int (0.75(1-u^2))^2 = 3/5.
  CHECK(kernel_squared_integral(epanechnikov_kernel()) ==
        doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("higher-order construction: order 4 epanechnikov closed form") {
  // Solving the 2x2 moment system by hand gives P(u) = 15/8 - 35/8 u^2.
  const auto k4 = make_higher_order_kernel(epanechnikov_kernel(), 4);
  CHECK(k4.order == 4);
  for (const double u : {0.0, 0.2, 0.5, 0.9}) {
    const double expected =
        (15.0 / 8.0 - 35.0 / 8.0 * u * u) * 0.75 * (1.0 - u * u);
    CHECK(k4.evaluate(u) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(k4.evaluate(1.2) == 0.0);
}

TEST_CASE("higher-order construction edge cases") {
  const auto base = epanechnikov_kernel();
  const auto same = make_higher_order_kernel(base, 2);
  for (const double u : {0.0, 0.3, 0.9})
    CHECK(same.evaluate(u) == base.evaluate(u));
  CHECK_THROWS_AS(make_higher_order_kernel(base, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_higher_order_kernel(base, 0), std::invalid_argument);
}

TEST_CASE("gaussian-based order 4 kernel verifies by quadrature") {
  const auto k4 = make_higher_order_kernel(gaussian_kernel(), 4);
  CHECK(kernel_moment(k4, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(kernel_moment(k4, 2)) < 1e-8);
  CHECK(std::fabs(kernel_moment(k4, 4)) > 1e-6);
}

TEST_CASE("kernel_by_name") {
  CHECK(kernel_by_name("gaussian").name == "gaussian");
  CHECK(kernel_by_name("epanechnikov").name == "epanechnikov");
  CHECK(kernel_by_name("epanechnikov-order4").order == 4);
  CHECK_THROWS_AS(kernel_by_name("box"), std::invalid_argument);
}
