#include <doctest.h>

#include <cmath>

#include "groen/densities.hpp"
#include "groen/errors.hpp"
#include "groen/spectra.hpp"
#include "oracles.hpp"

using namespace groen;

TEST_CASE("gaussian_eigenvalue closed form") {
  CHECK(gaussian_eigenvalue(0, 1.0) == doctest::Approx(1.0));
  for (int n = 1; n <= 8; ++n) CHECK(gaussian_eigenvalue(n, 1.0) == 0.0);
  CHECK(gaussian_eigenvalue(1, 1.0 / 3.0) == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(gaussian_eigenvalue(0, 3.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_eigenvalue(0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_eigenvalue(-1, 1.0), std::invalid_argument);
}

TEST_CASE("gaussian closed form vs the radial quadrature route") {
  for (double s : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 30);
    for (int n = 0; n <= 30; ++n)
      CHECK(std::abs(m.at(n, n) - gaussian_eigenvalue(n, s)) <= 1e-10);
  }
}

TEST_CASE("gaussian spectrum structure across s") {
  // sign alternation below s = 1
  for (double s : {0.1, 0.5, 0.9})
    for (int n = 0; n <= 20; ++n) {
      double v = gaussian_eigenvalue(n, s);
      CHECK((n % 2 == 1 ? v < 0.0 : v > 0.0));
    }
  // delta-function limit: lambda_n -> 2 (-1)^n, with leading deviation
  // 2(2n+1)s -- so at s = 1e-4 only n = 0 sits inside a flat 5e-4 window,
  // and the higher modes need the n-dependent bound.
  CHECK(std::abs(gaussian_eigenvalue(0, 1e-4) - 2.0) < 5e-4);
  for (int n = 0; n <= 10; ++n) {
    double dev = std::abs(gaussian_eigenvalue(n, 1e-4) - 2.0 * (n % 2 == 0 ? 1.0 : -1.0));
    CHECK(dev < 2.2 * (2.0 * n + 1.0) * 1e-4);
  }
  // trace via geometric closure and purity
  for (double s : {0.3, 1.0, 2.0, 17.0}) {
    double partial = 0.0, purity = 0.0;
    for (int n = 0; n <= 400; ++n) {
      double v = gaussian_eigenvalue(n, s);
      partial += v;
      purity += v * v;
    }
    double tail = gaussian_eigenvalue(401, s) * (s + 1.0) / 2.0;
    CHECK(std::abs(partial + tail - 1.0) <= 1e-10);
    CHECK(std::abs(purity - 1.0 / s) <= 1e-10);
  }
}

TEST_CASE("uniform eigenvalues: fixed values and the recurrence oracle") {
  CHECK(uniform_eigenvalue(0, 2.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  CHECK(uniform_eigenvalue(1, 2.0) ==
        doctest::Approx(1.0 - 5.0 * std::exp(-2.0)).epsilon(1e-11));
  // (2/s)[1 - (1+2s)e^{-s}] at s = 2 equals the quadrature value
  double s = 2.0;
  CHECK(uniform_eigenvalue(1, s) ==
        doctest::Approx((2.0 / s) * (1.0 - (1.0 + 2.0 * s) * std::exp(-s))).epsilon(1e-11));
  for (double sv : {0.5, 2.0, 11.0, 40.0}) {
    std::vector<double> lam = uniform_spectrum(sv, 80);
    std::vector<double> ref = oracle::uniform_eigenvalues_recurrence(sv, 80);
    for (int n = 0; n <= 80; ++n)
      CHECK(lam[n] == doctest::Approx(ref[n]).epsilon(1e-10).scale(1.0));
  }
  CHECK_THROWS_AS(uniform_eigenvalue(0, 0.0), std::invalid_argument);
}

TEST_CASE("uniform small-s limit") {
  // lambda_n(s) = 2(-1)^n (1 - (2n+1) s / 2 + O(s^2)); at s = 1e-4 the leading
  // deviation is (2n+1)e-4
  for (int n = 0; n <= 10; ++n) {
    double dev = std::abs(uniform_eigenvalue(n, 1e-4) - 2.0 * (n % 2 == 0 ? 1.0 : -1.0));
    CHECK(dev < 1.2 * (2.0 * n + 1.0) * 1e-4);
  }
}

TEST_CASE("uniform trace closes under the Euler tail transform") {
  for (double s : {0.5, 3.0, 12.0, 40.0}) {
    UniformTrace t = uniform_trace(s, 256);
    CHECK(std::abs(t.total() - 1.0) < 1e-8);
    // raw partial sums are nowhere near this good; the closure does real work
    CHECK(std::abs(t.partial_sum - 1.0) > 1e-6);
  }
  // closure is stable in the cut point
  UniformTrace a = uniform_trace(5.0, 128);
  UniformTrace b = uniform_trace(5.0, 256);
  CHECK(a.total() == doctest::Approx(b.total()).epsilon(1e-10));
  CHECK_THROWS_AS(uniform_trace(40.0, 20), std::invalid_argument);
}

TEST_CASE("eigendecompose: diagonal, exchange, sorting") {
  GroenewoldMatrix diag;
  diag.dim = 3;
  diag.entries = {0.2, 0, 0, 0, 0.5, 0, 0, 0, 0.3};
  diag.s = 1.0;
  diag.hbar = 1.0;
  SpectrumResult r = eigendecompose(diag);
  CHECK(r.eigenvalues == std::vector<double>{0.5, 0.3, 0.2});
  CHECK(r.max_bound == 0.5);
  CHECK(r.min_bound == 0.2);
  CHECK(r.method == Method::eigensolve);

  GroenewoldMatrix ex;
  ex.dim = 2;
  ex.entries = {0, 1, 1, 0};
  ex.s = 1.0;
  SpectrumResult rx = eigendecompose(ex);
  CHECK(rx.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rx.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));

  GroenewoldMatrix bad;
  bad.dim = 2;
  bad.entries = {0, 1, 0, 0};
  CHECK_THROWS_AS(eigendecompose(bad), std::invalid_argument);
}

TEST_CASE("eigendecompose reproduces the diagonal Gaussian spectrum") {
  GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(3.0)), 24);
  SpectrumResult r = eigendecompose(m);
  // diagonal is already sorted descending for s > 1
  for (int n = 0; n <= 24; ++n)
    CHECK(std::abs(r.eigenvalues[n] - gaussian_eigenvalue(n, 3.0)) <= 1e-10);
}

TEST_CASE("eigendecompose of the quantised square box") {
  GeneralDensity box = uniform_box_density(1.0, 1.0);
  GroenewoldMatrix m = quantize_general(box, 16, default_rule_pair(box.support_box, 16));
  SpectrumResult r = eigendecompose(m);
  CHECK(r.min_bound < 0.0);
  CHECK(r.min_bound == doctest::Approx(-0.280254388998).epsilon(1e-6));
  CHECK(r.max_bound == doctest::Approx(1.12525897829).epsilon(1e-6));
  CHECK(r.eigenvalues.front() <= 2.0 + 1e-8);
  CHECK(r.eigenvalues.back() >= -2.0 - 1e-8);
}

TEST_CASE("spectral_bounds: gaussian family") {
  Bounds b1 = spectral_bounds(Family::gaussian, 1.0, 64);
  CHECK(b1.min == 0.0);
  CHECK(b1.max == doctest::Approx(1.0));
  Bounds b3 = spectral_bounds(Family::gaussian, 1.0 / 3.0, 64);
  CHECK(b3.min == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(b3.max == doctest::Approx(1.5).epsilon(1e-12));
  // s > 1: all eigenvalues positive but the accumulation point pins min at 0
  Bounds b5 = spectral_bounds(Family::gaussian, 5.0, 256);
  CHECK(b5.min == 0.0);
  CHECK(b5.max == doctest::Approx(gaussian_eigenvalue(0, 5.0)));
  CHECK_THROWS_AS(spectral_bounds(Family::gaussian, 20.0, 8), std::invalid_argument);
}

TEST_CASE("spectral_bounds: uniform family") {
  Bounds b = spectral_bounds(Family::uniform, 4.0, 96);
  CHECK(b.max == doctest::Approx((1.0 - std::exp(-4.0)) / 2.0).epsilon(1e-10));
  CHECK(b.min < 0.0);
  // max is lambda_0 throughout the tested range
  for (double s : {0.1, 1.0, 10.0, 40.0}) {
    Bounds bs = spectral_bounds(Family::uniform, s, 128);
    CHECK(bs.max == doctest::Approx(uniform_eigenvalue(0, s)).epsilon(1e-10));
    CHECK(bs.min < 0.0);
  }
  CHECK_THROWS_AS(spectral_bounds(Family::uniform, 40.0, 30), std::invalid_argument);
}

TEST_CASE("sweep: structure and concurrency determinism") {
  std::vector<double> svals;
  for (int i = 0; i < 15; ++i) svals.push_back(0.2 + 0.2 * i); // hits s = 1 exactly
  SweepResult serial = sweep(Family::gaussian, svals, 128, 1);
  SweepResult par = sweep(Family::gaussian, svals, 128, 4);
  REQUIRE(serial.rows.size() == svals.size());
  for (std::size_t i = 0; i < svals.size(); ++i) {
    CHECK(serial.rows[i].uncertainty_over_hbar == par.rows[i].uncertainty_over_hbar);
    CHECK(serial.rows[i].min_bound == par.rows[i].min_bound);
    CHECK(serial.rows[i].max_bound == par.rows[i].max_bound);
    CHECK(serial.rows[i].uncertainty_over_hbar == doctest::Approx(svals[i] / 2.0));
    if (svals[i] < 1.0) {
      CHECK(serial.rows[i].min_bound < 0.0);
      CHECK(serial.rows[i].max_bound > 1.0);
    } else {
      CHECK(serial.rows[i].min_bound == 0.0);
      CHECK(serial.rows[i].max_bound <= 1.0);
    }
    if (i) CHECK(serial.rows[i].uncertainty_over_hbar >
                 serial.rows[i - 1].uncertainty_over_hbar);
  }

  std::vector<double> us = {0.5, 4.0, 12.0, 40.0};
  SweepResult u = sweep(Family::uniform, us, 512, 2);
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK(u.rows[i].uncertainty_over_hbar == doctest::Approx(us[i] / 4.0));
    CHECK(u.rows[i].min_bound < 0.0);
  }

  CHECK_THROWS_AS(sweep(Family::gaussian, {1.0, 0.5}, 64, 1), std::invalid_argument);
  CHECK_THROWS_AS(sweep(Family::gaussian, {}, 64, 1), std::invalid_argument);
}

TEST_CASE("mixed_state_weights") {
  MixedStateWeights w3 = mixed_state_weights(3.0, 40);
  for (int n = 0; n <= 40; ++n)
    CHECK(w3.weights[n] == doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-12));
  CHECK(w3.partial_sum + w3.tail_closure == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : w3.weights) CHECK(v > 0.0);

  MixedStateWeights weps = mixed_state_weights(1.0 + 1e-9, 10);
  CHECK(weps.weights[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(weps.weights[1]) < 1e-8);

  CHECK_THROWS_AS(mixed_state_weights(0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(mixed_state_weights(1.0, 10), std::invalid_argument);
}

TEST_CASE("family/method tags") {
  CHECK(to_string(Family::gaussian) == "gaussian");
  CHECK(to_string(Family::uniform) == "uniform");
  CHECK(to_string(Method::closed_form) == "closed_form");
  CHECK(to_string(Method::quadrature) == "quadrature");
  CHECK(to_string(Method::eigensolve) == "eigensolve");
}
