#include <doctest.h>

#include <cmath>

#include "bcond/convergence.hpp"

using namespace bcond;

TEST_CASE("worst_case_width: endpoints and the half-way point") {
  CHECK(worst_case_width(15, 0.0, 5.0) == 1.0);
  CHECK(worst_case_width(15, 5.0 * 32768, 5.0) == 0.0);
  CHECK(worst_case_width(15, 16384.0, 1.0) == 0.5);
  CHECK_THROWS_AS(worst_case_width(4, 17.0, 1.0), Error);
  CHECK_THROWS_AS(worst_case_width(0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(worst_case_width(4, -1.0, 1.0), Error);
  CHECK_THROWS_AS(worst_case_width(4, 1.0, 0.0), Error);
}

TEST_CASE("binomial_width: boundaries, symmetry, brute force") {
  for (int n = 1; n <= 10; ++n) {
    CHECK(binomial_width(n, 0.75, n) == 0.0);
  }

  // p = 1/2 collapses onto the equal-weight line at class boundaries.
  for (int n = 2; n <= 10; ++n) {
    double consumed = 0.0;
    double coeff = 1.0;
    for (int m = 0; m <= n; ++m) {
      if (m > 0) coeff = coeff * (n - m + 1) / m;
      consumed += coeff;
      const double expect = 1.0 - std::ldexp(consumed, -n);
      CHECK(std::abs(binomial_width(n, 0.5, m) - expect) <= 1e-12);
    }
  }

  // Brute force: enumerate all 8 instance weights for n = 3, p = 0.75;
  // the top class (j <= 1) holds 1 + 3 instances.
  const double p = 0.75;
  std::vector<double> weights;
  for (int bits = 0; bits < 8; ++bits) {
    double w = 1.0;
    for (int k = 0; k < 3; ++k) {
      w *= (bits >> k) & 1 ? 1.0 - p : p;
    }
    weights.push_back(w);
  }
  std::sort(weights.rbegin(), weights.rend());
  double top = weights[0] + weights[1] + weights[2] + weights[3];
  CHECK(std::abs((1.0 - top) - binomial_width(3, 0.75, 1)) <= 1e-12);
  CHECK(binomial_width(3, 0.75, 1) == doctest::Approx(0.15625).epsilon(1e-12));

  for (int n = 1; n <= 8; ++n) {
    double last = 1.0;
    for (int m = 0; m <= n; ++m) {
      const double width = binomial_width(n, 0.7, m);
      CHECK(width <= last + 1e-12);
      last = width;
    }
  }

  CHECK_THROWS_AS(binomial_width(3, 1.5, 1), Error);
  CHECK_THROWS_AS(binomial_width(3, 0.5, 4), Error);
}

TEST_CASE("fit_decay: exact model recovery") {
  std::vector<std::pair<double, double>> trace;
  for (int t = 0; t <= 20; ++t) {
    trace.emplace_back(t, std::exp(-0.2 * (t + 1)));
  }
  auto fit = fit_decay(trace);
  CHECK(std::abs(fit.k - 0.2) <= 1e-6);
  CHECK(fit.residual <= 1e-9);
  CHECK(fit.used == 21);
}

TEST_CASE("fit_decay: constant width one gives k = 0") {
  std::vector<std::pair<double, double>> trace{{0, 1.0}, {1, 1.0}, {2, 1.0}};
  auto fit = fit_decay(trace);
  CHECK(fit.k == 0.0);
}

TEST_CASE("fit_decay: exclusions and failure modes") {
  std::vector<std::pair<double, double>> trace{
      {0, 0.9}, {1, 0.5}, {2, 0.0}, {3, 0.2}};
  auto fit = fit_decay(trace);
  CHECK(fit.excluded == 1);
  CHECK(fit.used == 3);
  CHECK(fit.k > 0.0);

  std::vector<std::pair<double, double>> dead{{0, 0.0}, {1, 0.0}};
  CHECK_THROWS_AS(fit_decay(dead), Error);
  std::vector<std::pair<double, double>> tiny{{0, 0.5}};
  CHECK_THROWS_AS(fit_decay(tiny), Error);
}
