#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "softcore/errors.hpp"
#include "softcore/specfun.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

using namespace softcore;
using namespace softcore::specfun;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::max(1e-300, std::fabs(want)); }

constexpr double kBs[] = {0.5, 1.5, 2.5, 3.5};

}  // namespace

TEST_CASE("kummer_m closed forms") {
  CHECK(kummer_m({0.0, 1.5, 7.3}) == 1.0);
  CHECK(kummer_m({0.5, 0.5, 1.0}) == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(kummer_m({1.0, 2.0, 1.0}) == doctest::Approx(1.718281828459045).epsilon(1e-15));
  CHECK(rel_err(kummer_m({1.0, 2.0, 1.0}), static_cast<double>(oracles::series_m(1, 2, 1))) < 1e-15);
  CHECK(rel_err(kummer_m({-1.0, 1.5, 0.7}), 1.0 - 0.7 / 1.5) < 1e-15);
}

TEST_CASE("kummer_m against high-precision values") {
  for (const auto& t : reference::kKummerM) {
    INFO("a = " << t.a << ", b = " << t.b << ", x = " << t.x);
    CHECK(rel_err(kummer_m({t.a, t.b, t.x}), t.value) < 1e-12);
  }
}

TEST_CASE("kummer_m agrees with a 200-term long-double series for moderate x") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> da(-3.0, 3.0), dx(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = da(rng), b = kBs[i % 4], x = dx(rng);
    const double want = static_cast<double>(oracles::series_m(a, b, x, 300));
    INFO("a = " << a << ", b = " << b << ", x = " << x);
    CHECK(std::fabs(kummer_m({a, b, x}) - want) < 1e-13 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("kummer_m derivative examples") {
  CHECK(kummer_m_dx({0.0, 1.5, 2.0}) == 0.0);
  CHECK(kummer_m_dx({0.5, 0.5, 1.0}) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(kummer_m_dx({-1.0, 1.5, 0.7}) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Kummer transformation residual") {
  double worst = 0.0;
  for (double a = -3.0; a <= 3.0 + 1e-12; a += 0.25) {
    for (double b : kBs) {
      for (double x = 0.0; x <= 20.0 + 1e-12; x += 0.5) {
        const double m = kummer_m({a, b, x});
        const double t = std::exp(x) * kummer_m({b - a, b, -x});
        worst = std::max(worst, std::fabs(m - t) / std::max(1.0, std::fabs(m)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("contiguous relation M(a) = M(a-1) + (x/b) M(a, b+1)") {
  double worst = 0.0;
  for (double a = -3.0; a <= 3.0 + 1e-12; a += 0.25) {
    for (double b : kBs) {
      for (double x = 0.0; x <= 20.0 + 1e-12; x += 0.5) {
        const double m = kummer_m({a, b, x});
        const double rhs = kummer_m({a - 1.0, b, x}) + x / b * kummer_m({a, b + 1.0, x});
        worst = std::max(worst, std::fabs(m - rhs) / std::max(1.0, std::fabs(m)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("polynomial truncation for a = -n") {
  for (int n = 0; n <= 12; ++n) {
    for (double b : kBs) {
      const double x = 3.7;
      const SeriesSum s = kummer_m_series(-n, b, x);
      CHECK(s.terms == n + 1);
      // Explicit polynomial in long double.
      long double term = 1.0L, sum = 1.0L, magnitude = 1.0L;
      for (int k = 0; k < n; ++k) {
        term *= (-n + k) / (b + k) * x / (k + 1);
        sum += term;
        magnitude += std::fabs(term);
      }
      CHECK(std::fabs(s.value - static_cast<double>(sum)) < 1e-14 * static_cast<double>(magnitude));
    }
  }
}

TEST_CASE("derivatives agree with central differences") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> da(-3.0, 3.0), dx(0.2, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double a = da(rng), b = kBs[i % 4], x = dx(rng);
    const double h = 1e-5 * std::max(1.0, x);
    const double m = kummer_m({a, b, x});
    const double fd = (kummer_m({a, b, x + h}) - kummer_m({a, b, x - h})) / (2 * h);
    INFO("M: a = " << a << ", b = " << b << ", x = " << x);
    CHECK(std::fabs(kummer_m_dx({a, b, x}) - fd) < 1e-6 * std::max(1.0, std::fabs(m)));

    const double u = tricomi_u({a, b, x});
    const double fdu = (tricomi_u({a, b, x + h}) - tricomi_u({a, b, x - h})) / (2 * h);
    INFO("U: a = " << a << ", b = " << b << ", x = " << x);
    CHECK(std::fabs(tricomi_u_dx({a, b, x}) - fdu) < 1e-6 * std::max(1.0, std::fabs(u)));
  }
}

TEST_CASE("tricomi_u examples") {
  CHECK(tricomi_u({0.5, 1.5, 2.0}) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-13));
  CHECK(tricomi_u_connection({0.5, 1.5, 2.0}) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(tricomi_u({0.0, 1.5, 5.0}) == 1.0);
  const double u50 = tricomi_u({1.0, 1.5, 50.0});
  CHECK(std::fabs(u50 * 50.0 - 1.0) < 0.03);
  CHECK(tricomi_u_dx({0.0, 1.5, 3.0}) == 0.0);
  CHECK(tricomi_u_dx({0.5, 1.5, 2.0}) == doctest::Approx(-0.5 * std::pow(2.0, -1.5)).epsilon(1e-12));
  const double h = 1e-6;
  const double fd = (tricomi_u({1.3, 0.5, 1.1 + h}) - tricomi_u({1.3, 0.5, 1.1 - h})) / (2 * h);
  CHECK(rel_err(tricomi_u_dx({1.3, 0.5, 1.1}), fd) < 1e-6);
}

TEST_CASE("tricomi_u against high-precision values") {
  for (const auto& t : reference::kTricomiU) {
    INFO("a = " << t.a << ", b = " << t.b << ", x = " << t.x);
    CHECK(rel_err(tricomi_u({t.a, t.b, t.x}), t.value) < 1e-11);
  }
}

TEST_CASE("U(a, a+1, x) = x^-a") {
  double worst = 0.0;
  for (double a = -2.5; a <= 3.0; a += 0.5) {
    if (std::fabs(a - std::round(a)) < 1e-12) continue;  // b = a + 1 must be non-integer
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 12.0, 30.0, 60.0}) {
      worst = std::max(worst, rel_err(tricomi_u({a, a + 1.0, x}), std::pow(x, -a)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("U asymptotics for large x") {
  for (double a = 0.25; a <= 2.0 + 1e-12; a += 0.25) {
    for (double b : {0.5, 1.5}) {
      const double c1 = a * (a - b + 1.0);
      const double c2 = c1 * (a + 1.0) * (a - b + 2.0) / 2.0;
      for (double x : {50.0, 80.0, 150.0, 400.0}) {
        INFO("a = " << a << ", b = " << b << ", x = " << x);
        const double scaled = tricomi_u({a, b, x}) * std::pow(x, a);
        // U x^a = 1 - c1/x + c2/x^2 - ...
        CHECK(std::fabs(scaled - (1.0 - c1 / x)) < 1.5 * std::fabs(c2) / (x * x) + 1e-13);
        if (x >= 150.0) CHECK(std::fabs(scaled - 1.0) < 0.05);
      }
    }
  }
}

TEST_CASE("U at the poles of 1/Gamma(a) is the terminating polynomial") {
  // U(-n, b, x) is a polynomial; U(-1, b, x) = x - b.
  for (double b : {0.5, 1.5, 2.5}) {
    for (double x : {0.3, 1.0, 4.0, 40.0}) CHECK(rel_err(tricomi_u({-1.0, b, x}), x - b) < 1e-12);
  }
}

TEST_CASE("connection formula and the large-x route agree where both are accurate") {
  for (double a : {-2.3, -0.4, 0.7, 1.9}) {
    for (double b : {0.5, 1.5, 2.5}) {
      for (double x : {1.2, 2.0, 3.5}) {
        INFO("a = " << a << ", b = " << b << ", x = " << x);
        CHECK(rel_err(tricomi_u({a, b, x}), tricomi_u_connection({a, b, x})) < 1e-9);
      }
    }
  }
}

TEST_CASE("gamma function") {
  CHECK(rel_err(gamma_fn(0.5), reference::kGammaHalf) < 1e-13);
  CHECK(rel_err(gamma_fn(-2.5), reference::kGammaMinus2p5) < 1e-13);
  CHECK(rel_err(gamma_fn(10.3), reference::kGamma10p3) < 1e-13);
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rel_err(rgamma(4.0), 1.0 / 6.0) < 1e-14);
}

TEST_CASE("hermite polynomials") {
  CHECK(hermite(0, 1.7) == 1.0);
  CHECK(hermite(1, 0.5) == 1.0);
  CHECK(hermite(3, 1.0) == -4.0);
  CHECK(hermite(2, 1.0 / std::sqrt(2.0)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
}

TEST_CASE("scaled Kummer function") {
  for (double a : {-2.5, 0.3, 4.0}) {
    for (double x : {0.5, 5.0, 20.0}) {
      const ScaledValue s = kummer_m_scaled({a, 1.5, x});
      CHECK(rel_err(s.mantissa * std::exp(s.log_scale), kummer_m({a, 1.5, x})) < 1e-13);
    }
  }
  // Far beyond the double range: log M grows like 2 sqrt(a x) for large a.
  const ScaledValue big = kummer_m_scaled({5e7, 1.5, 0.5});
  CHECK(std::isfinite(big.mantissa));
  CHECK(big.mantissa > 0.0);
  const double log_m = std::log(big.mantissa) + big.log_scale;
  CHECK(log_m == doctest::Approx(2.0 * std::sqrt(5e7 * 0.5)).epsilon(1e-3));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(kummer_m({1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(kummer_m({1.0, -2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(tricomi_u({1.0, 2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(tricomi_u({1.0, 1.5, -1.0}), DomainError);
  CHECK_THROWS_AS(kummer_m({1.0, 1.5, std::nan("")}), DomainError);
}
