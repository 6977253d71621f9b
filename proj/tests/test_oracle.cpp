#include <doctest.h>

#include <cmath>
#include <vector>

#include "softcore/errors.hpp"
#include "softcore/oracle.hpp"
#include "support/oracles.hpp"

using namespace softcore;
using namespace softcore::oracle;

namespace {

GridSpec half_line(double h) { return grid_with_spacing(14.0, h, Geometry::half_line_dirichlet); }

double trap(double r) { return 0.25 * r * r; }

}  // namespace

TEST_CASE("grid geometry") {
  const GridSpec g{10.0, 199, Geometry::half_line_dirichlet};
  CHECK(g.spacing() == doctest::Approx(0.05));
  const auto r = g.points();
  CHECK(r.front() == doctest::Approx(0.05));
  CHECK(r.back() == doctest::Approx(9.95));

  const GridSpec f{5.0, 199, Geometry::full_line};
  CHECK(f.spacing() == doctest::Approx(0.05));
  const auto x = f.points();
  CHECK(x[99] == 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == -x[x.size() - 1 - i]);

  CHECK(half_line(2.5e-3).n == 5599);
  CHECK(grid_with_spacing(14.0, 2.5e-3, Geometry::full_line).n == 11199);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((GridSpec{14.0, 99, Geometry::half_line_dirichlet}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{0.0, 500, Geometry::half_line_dirichlet}.validate()), DomainError);
  CHECK_THROWS_AS(grid_with_spacing(14.0, -1.0, Geometry::full_line), DomainError);
  const GridSpec g{14.0, 200, Geometry::half_line_dirichlet};
  const std::vector<double> v(200, 0.0);
  CHECK_THROWS_AS(diagonalize(v, g, 0), DomainError);
  CHECK_THROWS_AS(diagonalize(v, g, 201), DomainError);
  CHECK_THROWS_AS(diagonalize(std::vector<double>(150, 0.0), g, 3), DomainError);
  CHECK_THROWS_AS(oracle_spectrum(SoftCorePotential{1.0, 1.0}, ParitySector{}, g, 3), DomainError);
  CHECK_THROWS_AS(oracle_spectrum(SoftCorePotential{1.0, 1.0}, AngularChannel{0},
                                  GridSpec{14.0, 200, Geometry::full_line}, 3),
                  DomainError);
}

TEST_CASE("oscillator") {
  const auto half = oracle_spectrum(trap, half_line(2.5e-3), 3);
  CHECK(std::fabs(half[0] - 1.5) < 1e-4);
  CHECK(std::fabs(half[1] - 3.5) < 1e-4);
  const GridSpec full = grid_with_spacing(14.0, 2.5e-3, Geometry::full_line);
  CHECK(std::fabs(oracle_spectrum({0.0, 1.0}, ParitySector{Parity::even}, full, 1)[0] - 0.5) < 1e-4);
  CHECK(std::fabs(oracle_spectrum({0.0, 1.0}, ParitySector{Parity::odd}, full, 1)[0] - 1.5) < 1e-4);

  const auto l1 = oracle_spectrum({0.0, 1.0}, AngularChannel{1}, half_line(2.5e-3), 3);
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(l1[k] - (2.5 + 2 * k)) < 1e-4);
}

TEST_CASE("second-order convergence") {
  const double exact = 1.5;
  const double e1 = oracle_spectrum(trap, half_line(0.02), 1)[0] - exact;
  const double e2 = oracle_spectrum(trap, half_line(0.01), 1)[0] - exact;
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));

  // Monotone approach on a family with a core step: three grids, one side.
  for (int l : {0, 1}) {
    const SoftCorePotential pot{10.0, 0.5};
    std::vector<double> seq;
    for (double h : {1e-2, 5e-3, 2.5e-3}) seq.push_back(oracle_spectrum(pot, AngularChannel{l}, half_line(h), 1)[0]);
    const double d1 = seq[1] - seq[0], d2 = seq[2] - seq[1];
    CHECK((d1 > 0) == (d2 > 0));
    CHECK(std::fabs(d2) < std::fabs(d1));
  }
}

TEST_CASE("eigenvectors") {
  const GridSpec g = half_line(5e-3);
  const auto pairs = oracle_eigenpairs({2.0, 1.0}, AngularChannel{0}, g, 6);
  REQUIRE(pairs.size() == 6);
  const double h = g.spacing();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    CHECK(pairs[k].converged);
    if (k > 0) CHECK(pairs[k].value > pairs[k - 1].value);
    CHECK(oracles::sign_changes(pairs[k].vector, 1e-9) == static_cast<int>(k));
    double norm = 0.0, first = 0.0, peak = 0.0;
    for (double u : pairs[k].vector) {
      norm += u * u * h;
      peak = std::max(peak, std::fabs(u));
    }
    for (double u : pairs[k].vector) {
      if (std::fabs(u) > 1e-6 * peak) {
        first = u;
        break;
      }
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(first > 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < pairs[k].vector.size(); ++i) dot += pairs[k].vector[i] * pairs[j].vector[i] * h;
      CHECK(std::fabs(dot) < 1e-8);
    }
  }
}

TEST_CASE("parity blocks agree with the unsplit full-line matrix") {
  const GridSpec g{6.0, 1201, Geometry::full_line};
  const SoftCorePotential pot{3.0, 0.8};
  const auto v = effective_potential(pot, g);
  const auto all = diagonalize(v, g, 6);
  const auto even = oracle_eigenpairs(pot, ParitySector{Parity::even}, g, 3);
  const auto odd = oracle_eigenpairs(pot, ParitySector{Parity::odd}, g, 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(even[k].value == doctest::Approx(all[2 * k].value).epsilon(1e-11));
    CHECK(odd[k].value == doctest::Approx(all[2 * k + 1].value).epsilon(1e-11));
    const auto& ev = even[k].vector;
    const auto& od = odd[k].vector;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      CHECK(ev[i] == doctest::Approx(ev[ev.size() - 1 - i]).epsilon(1e-12));
      CHECK(od[i] == doctest::Approx(-od[od.size() - 1 - i]).epsilon(1e-12));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i) dot += ev[i] * all[2 * k].vector[i] * g.spacing();
    CHECK(std::fabs(dot) == doctest::Approx(1.0).epsilon(1e-8));
  }
  // Even number of points: no centre node.
  const GridSpec g2{6.0, 1200, Geometry::full_line};
  const auto all2 = diagonalize(effective_potential(pot, g2), g2, 4);
  CHECK(oracle_spectrum(pot, ParitySector{Parity::even}, g2, 2)[1] == doctest::Approx(all2[2].value).epsilon(1e-11));
  CHECK(oracle_spectrum(pot, ParitySector{Parity::odd}, g2, 2)[1] == doctest::Approx(all2[3].value).epsilon(1e-11));
}

TEST_CASE("cell-averaged core step") {
  const GridSpec g{4.0, 399, Geometry::half_line_dirichlet};  // h = 0.01
  const auto v = effective_potential({5.0, 0.99}, AngularChannel{0}, g);
  const auto r = g.points();
  CHECK(v[50] == doctest::Approx(5.0 + trap(r[50])));
  CHECK(v[98] == doctest::Approx(5.0 * 0.5 + trap(r[98])));  // edge at the centre of the cell
  CHECK(v[97] == doctest::Approx(5.0 + trap(r[97])));
  CHECK(v[99] == doctest::Approx(trap(r[99])));
}

TEST_CASE("harmonium QES point") {
  const double lam = std::sqrt(2.0);
  const auto ev = oracle_spectrum([&](double r) { return lam / r + trap(r); }, half_line(2.5e-3), 2);
  CHECK(std::fabs(ev[0] - 2.5) < 5e-4);
}
