#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "paretogof/error.hpp"
#include "paretogof/projections.hpp"
#include "paretogof/quadrature.hpp"

using namespace paretogof;
using doctest::Approx;

TEST_CASE("psi special values") {
  CHECK(psi(3, 1.0) == Approx(-0.125).epsilon(1e-14));
  CHECK(psi3_closed(1.0) == Approx(-0.125).epsilon(1e-15));
  CHECK(psi(4, 1e12) == Approx(-0.3).epsilon(1e-10));
  CHECK(psi4_closed(1e12) == Approx(-0.3).epsilon(1e-10));
  CHECK_THROWS_AS(psi(3, 0.9), DomainError);
  CHECK_THROWS_AS(psi(1, 2.0), DomainError);
  // k = 2 has an empty alternating sum.
  for (double s : {1.0, 2.0, 10.0}) {
    const double F = 1.0 - 1.0 / s;
    CHECK(psi(2, s) == Approx((2 * F - 1) / 6 - F / 3 + 2.0 / 3.0 * std::log(s) / s).epsilon(1e-14));
  }
}

TEST_CASE("general psi matches the reduced forms") {
  double worst3 = 0.0, worst4 = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double s = 1.0 + 99.0 * i / 2000.0;
    worst3 = std::max(worst3, std::abs(psi(3, s) - psi3_closed(s)));
    worst4 = std::max(worst4, std::abs(psi(4, s) - psi4_closed(s)));
  }
  CHECK(worst3 < 1e-12);
  CHECK(worst4 < 1e-12);
}

TEST_CASE("psi is centered") {
  for (int k = 2; k <= 8; ++k) {
    CAPTURE(k);
    CHECK(std::abs(integrate_support([k](double s) { return psi(k, s) / (s * s); })) < 1e-10);
  }
}

TEST_CASE("integral-kernel variances") {
  const auto d3 = delta_sq_integral(3);
  const auto d4 = delta_sq_integral(4);
  CHECK(d3.method == VarianceMethod::ClosedForm);
  CHECK(d3.value == 11.0 / 1920.0);
  CHECK(d4.value == 271.0 / 52500.0);
  CHECK(std::abs(delta_sq_integral_quadrature(3).value - 11.0 / 1920.0) < 1e-10);
  CHECK(std::abs(delta_sq_integral_quadrature(4).value - 271.0 / 52500.0) < 1e-10);
  const auto d2 = delta_sq_integral(2);
  CHECK(d2.method == VarianceMethod::Quadrature);
  // Independent route: Simpson on x = e^y.
  const double simpson = oracle::simpson(
      [](double y) {
        const double s = std::exp(y);
        const double p = psi(2, s);
        return p * p / s;
      },
      0.0, 80.0, 40000);
  CHECK(d2.value == Approx(simpson).epsilon(1e-8));
}

TEST_CASE("psi_3 agrees with the raw kernel by simulation") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int draws = 200000;
  for (double s : {1.2, 2.0, 5.0}) {
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
      double x[4] = {1.0 / (1.0 - u(gen)), 1.0 / (1.0 - u(gen)), 1.0 / (1.0 - u(gen)), s};
      const double v = oracle::kernel_psi3(x);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CAPTURE(s);
    CHECK(std::abs(mean - psi(3, s)) < 3.0 * se);
  }
}

TEST_CASE("xi special values") {
  for (int k : {3, 4, 5}) {
    for (double t : {1.5, 2.0, 5.0}) {
      const double expected = (std::pow(1.0 - 1.0 / t, k - 1) - 1.0 / k) / t + 1.0 / k;
      CHECK(xi(k, t, t) == Approx(expected).epsilon(1e-14));
    }
    for (double s : {1.0, 1.7, 30.0}) CHECK(std::abs(xi(k, s, 1.0)) < 1e-15);
  }
  // Reduced k = 3 display.
  for (double s : {1.0, 1.5, 2.5, 9.0}) {
    const double t = 2.0;
    const double ref = (1 / (s * s) - 2 / s + 2.0 / 3.0) / t -
                       (s >= t ? t * t / (s * s) - 2 * t / s + 2.0 / 3.0 : 0.0);
    CHECK(xi(3, s, t) == Approx(ref).epsilon(1e-14));
  }
  CHECK_THROWS_AS(xi(3, 2.0, 0.5), DomainError);
}

TEST_CASE("xi is centered") {
  for (int k : {3, 4, 5}) {
    for (double t : {1.5, 2.0, 5.0}) {
      const std::vector<double> br{t};
      CHECK(std::abs(integrate_support([&](double s) { return xi(k, s, t) / (s * s); }, br)) < 1e-9);
    }
  }
}

TEST_CASE("sup-kernel variances") {
  CHECK(delta_sq_sup_t(3, 1.0).value == Approx(0.0).epsilon(1e-15));
  CHECK(delta_sq_sup_t(3, 1.0).method == VarianceMethod::ClosedForm);
  CHECK(delta_sq_sup_t(5, 2.0).method == VarianceMethod::Quadrature);
  for (int i = 0; i < 50; ++i) {
    const double t = 1.0 + 0.2 * i;
    CHECK(std::abs(delta_sq_sup_t_closed(3, t) - delta_sq_sup_t_quadrature(3, t).value) < 1e-9);
    CHECK(std::abs(delta_sq_sup_t_closed(4, t) - delta_sq_sup_t_quadrature(4, t).value) < 1e-9);
  }
  for (int k = 2; k <= 6; ++k) {
    CHECK(delta_sq_sup_t(k, 1.0).value == Approx(0.0).epsilon(1e-12));
    CHECK(delta_sq_sup_t(k, 1e3).value < 1e-2);
    for (double t : {1.1, 2.0, 10.0}) CHECK(delta_sq_sup_t(k, t).value >= 0.0);
  }
  CHECK(delta_sq_sup_t(3, 1.9395).value == Approx(0.03477).epsilon(1e-4));
  CHECK(delta_sq_sup_t(4, 2.1810).value == Approx(0.0258).epsilon(2e-3));
}

TEST_CASE("variance maximizers") {
  const auto m3 = delta_sq_sup(3);
  const auto m4 = delta_sq_sup(4);
  CHECK(m3.t_star == Approx(1.93954).epsilon(1e-5));
  CHECK(m3.value == Approx(0.0347655).epsilon(1e-5));
  CHECK(m4.t_star == Approx(2.18103).epsilon(1e-5));
  CHECK(m4.value == Approx(0.0257965).epsilon(1e-5));
  // Stationarity of the closed forms at the reported maximizer.
  const double h = 1e-5;
  CHECK(std::abs(delta_sq_sup_t_closed(3, m3.t_star + h) - delta_sq_sup_t_closed(3, m3.t_star - h)) < 1e-11);
  const auto m5 = delta_sq_sup(5);
  const auto m6 = delta_sq_sup(6);
  CHECK(m5.t_star == Approx(2.3796).epsilon(1e-4));
  CHECK(m6.t_star == Approx(2.54297).epsilon(1e-4));
  CHECK(m5.value == Approx(0.0198019).epsilon(1e-5));
  CHECK(m6.value == Approx(0.0157755).epsilon(1e-5));
}
