// Invariant suites behind `groen verify`.  Each group re-derives a property
// the library promises through the cheapest independent route available
// (direct sums, closed forms, alternate integration channels) and reports one
// line per check.
#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "groen/densities.hpp"
#include "groen/errors.hpp"
#include "groen/kernel_check.hpp"
#include "groen/quantizer.hpp"
#include "groen/spectra.hpp"
#include "groen/special_functions.hpp"

#include "emit.hpp"

namespace {

using namespace groen;

struct Reporter {
  int passed = 0;
  int failed = 0;

  void note(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("  %-44s %s%s%s\n", name.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    ++(ok ? passed : failed);
  }
};

std::string metric(const char* label, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%s %.3g)", label, value);
  return buf;
}

// --------------------------------------------------------------------------
// special functions

// direct alternating-sum evaluation, used only to cross-check the recurrence;
// biggest_term reports the cancellation the caller must tolerate
double laguerre_direct(int n, int k, double x, double& biggest_term) {
  double acc = 0.0, xpow = 1.0, fact = 1.0;
  biggest_term = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (i) fact *= i;
    double binom = 1.0;
    for (int j = 0; j < n - i; ++j) binom *= double(n + k - j) / double(n - i - j);
    double term = binom * xpow / fact;
    biggest_term = std::max(biggest_term, std::abs(term));
    acc += (i % 2 == 0) ? term : -term;
    xpow *= x;
  }
  return acc;
}

void suite_special(Reporter& rep) {
  {
    QuadratureRule wide = finite_rule(400, -15.0, 15.0);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int m = n; m <= 20; ++m) {
        double ip = wide.integrate([&](double x) {
          return oscillator_eigenfunction(n, x, 1.0) * oscillator_eigenfunction(m, x, 1.0);
        });
        worst = std::max(worst, std::abs(ip - (n == m ? 1.0 : 0.0)));
      }
    rep.note("eigenfunction orthonormality", worst <= 1e-10, metric("max dev", worst));
  }
  {
    // the direct sum cancels catastrophically at large x, so its own rounding
    // floor (1e-16 per unit of largest term) joins the tolerance
    double worst_excess = 0.0;
    for (int n = 0; n <= 15; ++n)
      for (int k : {0, 1, 3})
        for (double x : {0.0, 0.3, 1.0, 7.5, 20.0, 50.0}) {
          double biggest = 0.0;
          double ref = laguerre_direct(n, k, x, biggest);
          double tol = 1e-10 * std::max(1.0, std::abs(ref)) + 1e-13 * biggest;
          worst_excess = std::max(worst_excess, std::abs(laguerre(n, k, x) - ref) / tol);
        }
    rep.note("Laguerre recurrence vs direct sums", worst_excess <= 1.0,
             metric("worst dev/tol", worst_excess));
  }
  {
    // Abel-regularised alternating series sum_n (-r)^n L_n(2t): closed form
    // e^{2tr/(1+r)}/(1+r), approaching e^t/2 as r -> 1
    bool ok = true;
    double worst = 0.0;
    std::vector<double> ladder;
    for (double t : {0.0, 1.0, 3.0}) {
      auto abel = [&](double r) {
        int N = int(std::ceil(std::log(1e-14) / std::log(r)));
        detail::laguerre_ladder(N, 2.0 * t, ladder);
        double acc = 0.0, pw = 1.0;
        for (int n = 0; n <= N; ++n) {
          acc += pw * ladder[n];
          pw *= -r;
        }
        return acc;
      };
      for (double r : {0.9, 0.99}) {
        double closed = std::exp(2.0 * t * r / (1.0 + r)) / (1.0 + r);
        double dev = std::abs(abel(r) - closed);
        worst = std::max(worst, dev);
        ok = ok && dev <= 1e-8 * (1.0 + closed);
      }
      double target = std::exp(t) / 2.0;
      ok = ok && std::abs(abel(0.99) - target) < std::abs(abel(0.9) - target);
    }
    rep.note("alternating Laguerre series Abel limit", ok, metric("max dev", worst));
  }
}

// --------------------------------------------------------------------------
// densities

void suite_densities(Reporter& rep) {
  std::vector<Density> pool;
  pool.push_back(GaussianDensity{1.0, 1.0});
  pool.push_back(GaussianDensity{2.0, 0.5});
  pool.push_back(UniformEllipseDensity{2.0, 2.0});
  pool.push_back(gaussian_as_radial(GaussianDensity{1.3, 0.8}));
  pool.push_back(uniform_box_density(1.0, 1.0));

  {
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    double lowest = 0.0;
    for (const Density& d : pool)
      for (int i = 0; i < 10000; ++i)
        lowest = std::min(lowest, evaluate(d, coord(gen), coord(gen)));
    rep.note("density nonnegativity (1e4 samples each)", lowest >= 0.0,
             metric("min value", lowest));
  }
  {
    double worst_sym = 0.0, worst_cs = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        double ab = overlap_integral(pool[i], pool[j]);
        double ba = overlap_integral(pool[j], pool[i]);
        worst_sym = std::max(worst_sym, std::abs(ab - ba));
        double aa = overlap_integral(pool[i], pool[i]);
        double bb = overlap_integral(pool[j], pool[j]);
        worst_cs = std::max(worst_cs, ab * ab - aa * bb);
      }
    rep.note("overlap symmetry", worst_sym <= 1e-12, metric("max dev", worst_sym));
    rep.note("overlap Cauchy-Schwarz", worst_cs <= 1e-12, metric("max excess", worst_cs));
  }
  {
    GaussianDensity g{1.3, 0.8};
    RadialDensity r = gaussian_as_radial(g);
    double worst = 0.0;
    for (double q = -3.0; q <= 3.0; q += 0.37)
      for (double p = -3.0; p <= 3.0; p += 0.41)
        worst = std::max(worst, std::abs(r.evaluate(q, p) - g.evaluate(q, p)));
    rep.note("radial Gaussian matches closed form", worst <= 1e-12,
             metric("max dev", worst));
  }
}

// --------------------------------------------------------------------------
// quantizer

void suite_quantizer(Reporter& rep) {
  {
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      GroenewoldMatrix rg = quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 10);
      GroenewoldMatrix gg = quantize_general(gaussian_of_s(s), 10);
      GroenewoldMatrix re = quantize_radial(ellipse_as_radial(ellipse_of_s(s)), 10);
      GroenewoldMatrix ge = quantize_general(ellipse_of_s(s), 10);
      for (int n = 0; n <= 10; ++n)
        for (int m = 0; m <= 10; ++m) {
          worst = std::max(worst, std::abs(rg.at(n, m) - gg.at(n, m)));
          worst = std::max(worst, std::abs(re.at(n, m) - ge.at(n, m)));
        }
    }
    rep.note("radial vs general assembly", worst <= 1e-8, metric("max dev", worst));
  }
  {
    std::vector<double> svals = {0.5, 1.0, 2.0, 3.0};
    std::vector<GroenewoldMatrix> mats;
    std::vector<Density> dens;
    for (double s : svals) {
      mats.push_back(quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 40));
      dens.push_back(GaussianDensity{std::sqrt(s), std::sqrt(s)});
    }
    double min_pair = 1e300, worst_closed = 0.0, worst_overlap = 0.0;
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i; j < mats.size(); ++j) {
        double tp = trace_product(mats[i], mats[j]);
        min_pair = std::min(min_pair, tp);
        worst_closed =
            std::max(worst_closed, std::abs(tp - 2.0 / (svals[i] + svals[j])));
        worst_overlap = std::max(
            worst_overlap,
            std::abs(tp - 2.0 * M_PI * overlap_integral(dens[i], dens[j])));
      }
    rep.note("pair traces nonnegative", min_pair >= -1e-10, metric("min", min_pair));
    rep.note("pair trace closed form 2/(s+s')", worst_closed <= 1e-8,
             metric("max dev", worst_closed));
    rep.note("pair trace equals 2 pi hbar overlap", worst_overlap <= 1e-8,
             metric("max dev", worst_overlap));
  }
  {
    GeneralDensity box = uniform_box_density(1.0, 1.0);
    GroenewoldMatrix bm = quantize_general(box, 16, default_rule_pair(box.support_box, 16));
    GroenewoldMatrix em = quantize_radial(ellipse_as_radial(ellipse_of_s(2.0)), 48);
    double worst_resid = 0.0;
    bool within = true;
    for (const GroenewoldMatrix* m : {&bm, &em}) {
      double resid = std::abs(m->trace() - 1.0);
      worst_resid = std::max(worst_resid, resid);
      within = within && resid <= m->trace_tolerance;
    }
    rep.note("unit trace within declared tolerance", within,
             metric("max resid", worst_resid));
    SpectrumResult spec = eigendecompose(bm);
    bool in_range = spec.eigenvalues.front() <= 2.0 + 1e-8 &&
                    spec.eigenvalues.back() >= -2.0 - 1e-8;
    rep.note("eigenvalues within [-2, 2]", in_range,
             metric("extreme", std::max(std::abs(spec.eigenvalues.front()),
                                        std::abs(spec.eigenvalues.back()))));
  }
  {
    GaussianDensity g{2.0, 0.75, 0.5};
    GroenewoldMatrix m = quantize_radial(gaussian_as_radial(g), 60);
    double worst = std::abs(expectation(m, identity_observable(m.dim)) - 1.0);
    worst = std::max(
        worst, std::abs(expectation(m, q_squared_observable(m.dim, 2.0, 0.75, 0.5)) -
                        2.0 * 2.0 / 2.0));
    worst = std::max(
        worst, std::abs(expectation(m, p_squared_observable(m.dim, 2.0, 0.75, 0.5)) -
                        0.75 * 0.75 / 2.0));
    rep.note("expectations match classical moments", worst <= 1e-6,
             metric("max dev", worst));
  }
}

// --------------------------------------------------------------------------
// spectra

void suite_spectra(Reporter& rep) {
  {
    double worst_trace = 0.0, worst_purity = 0.0;
    for (double s : {0.3, 1.0, 2.0, 17.0}) {
      double partial = 0.0, purity = 0.0;
      for (int n = 0; n <= 400; ++n) {
        double v = gaussian_eigenvalue(n, s);
        partial += v;
        purity += v * v;
      }
      partial += gaussian_eigenvalue(401, s) * (s + 1.0) / 2.0;
      worst_trace = std::max(worst_trace, std::abs(partial - 1.0));
      worst_purity = std::max(worst_purity, std::abs(purity - 1.0 / s));
    }
    rep.note("Gaussian trace closes to 1", worst_trace <= 1e-10,
             metric("max dev", worst_trace));
    rep.note("Gaussian purity equals 1/s", worst_purity <= 1e-10,
             metric("max dev", worst_purity));
  }
  {
    double worst = 0.0;
    for (double s : {0.5, 3.0, 12.0, 40.0})
      worst = std::max(worst, std::abs(uniform_trace(s, 256).total() - 1.0));
    rep.note("uniform trace closes to 1", worst <= 1e-8, metric("max dev", worst));
  }
  {
    bool ok = true;
    for (double s : {0.1, 0.5, 0.9})
      for (int n = 0; n <= 20; ++n) {
        double v = gaussian_eigenvalue(n, s);
        ok = ok && (n % 2 == 1 ? v < 0.0 : v > 0.0);
      }
    rep.note("sign alternation below s = 1", ok);
  }
  {
    // lambda_n(s) -> 2(-1)^n with leading deviation 2(2n+1)s: flat 5e-4 window
    // at n = 0, slope-aware bound beyond
    double dev0 = std::abs(gaussian_eigenvalue(0, 1e-4) - 2.0);
    bool ok = dev0 < 5e-4;
    for (int n = 1; n <= 10; ++n) {
      double dev =
          std::abs(gaussian_eigenvalue(n, 1e-4) - 2.0 * (n % 2 == 0 ? 1.0 : -1.0));
      ok = ok && dev < 2.2 * (2.0 * n + 1.0) * 1e-4;
    }
    rep.note("delta-function limit", ok, metric("n=0 dev", dev0));
  }
  {
    double worst = 0.0;
    for (double s : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 30);
      for (int n = 0; n <= 30; ++n)
        worst = std::max(worst, std::abs(m.at(n, n) - gaussian_eigenvalue(n, s)));
    }
    rep.note("closed form vs quadrature route", worst <= 1e-10,
             metric("max dev", worst));
  }
  {
    GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(3.0)), 24);
    SpectrumResult r = eigendecompose(m);
    double worst = 0.0;
    for (int n = 0; n <= 24; ++n)
      worst = std::max(worst, std::abs(r.eigenvalues[n] - gaussian_eigenvalue(n, 3.0)));
    rep.note("eigensolver reproduces diagonal spectrum", worst <= 1e-10,
             metric("max dev", worst));
  }
}

// --------------------------------------------------------------------------
// kernel

void suite_kernel(Reporter& rep) {
  {
    QuadratureRule wide = finite_rule(300, -14.0, 14.0);
    double worst = 0.0;
    for (auto [beta, gamma] : {std::pair{1.0, 1.0}, {1.4, 0.6}}) {
      double tr = wide.integrate(
          [&, b = beta, g = gamma](double x) { return coordinate_kernel(x, x, b, g, 1.0); });
      worst = std::max(worst, std::abs(tr - 1.0));
    }
    rep.note("kernel trace is one", worst <= 1e-10, metric("max dev", worst));
  }
  {
    // kernel vs the Fourier p-integral of the phase-space density, evaluated
    // with Simpson panels at random coordinate pairs
    const double beta = 1.2, gamma = 0.8, hbar = 1.0;
    std::mt19937 gen(777);
    std::uniform_real_distribution<double> coord(-2.5, 2.5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      double x = coord(gen), y = coord(gen);
      double q = 0.5 * (x + y);
      auto f = [&](double p) {
        double rho = std::exp(-q * q / (beta * beta) - p * p / (gamma * gamma)) /
                     (M_PI * beta * gamma);
        return rho * std::cos(p * (x - y) / hbar);
      };
      const int panels = 2000;
      const double a = -10.0 * gamma, h = 20.0 * gamma / panels;
      double sum = f(a) + f(a + panels * h);
      for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
      double integral = sum * h / 3.0;
      worst = std::max(worst, std::abs(coordinate_kernel(x, y, beta, gamma, hbar) - integral));
    }
    rep.note("kernel equals Fourier p-integral", worst <= 1e-9,
             metric("max dev", worst));
  }
  {
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      KernelGrid grid = default_grid(std::sqrt(s), std::sqrt(s), 1.0);
      for (int n = 0; n <= 10; ++n)
        worst = std::max(worst, hermite_identity_residual(n, s, grid));
    }
    rep.note("Hermite eigen-identity residual", worst <= 1e-8,
             metric("max resid", worst));
  }
}

// --------------------------------------------------------------------------
// cli emitters

void suite_cli(Reporter& rep) {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(0.4 + 0.2 * i);
  {
    std::string a = cli::sweep_csv(sweep(Family::gaussian, grid, 256, 1));
    std::string b = cli::sweep_csv(sweep(Family::gaussian, grid, 256, 1));
    std::string c = cli::sweep_csv(sweep(Family::gaussian, grid, 256, 2));
    rep.note("sweep CSV deterministic", a == b);
    rep.note("sweep CSV independent of jobs", a == c);

    bool headed = a.rfind("uncertainty_over_hbar,min_bound,max_bound,family\n", 0) == 0;
    bool roundtrip = true;
    std::size_t pos = a.find('\n') + 1;
    while (pos < a.size()) {
      std::size_t eol = a.find('\n', pos);
      std::string line = a.substr(pos, eol - pos);
      for (int field = 0; field < 3; ++field) {
        std::size_t comma = line.find(',');
        std::string cell = line.substr(0, comma);
        roundtrip = roundtrip && cli::num12(std::strtod(cell.c_str(), nullptr)) == cell;
        line = line.substr(comma + 1);
      }
      pos = eol + 1;
    }
    rep.note("sweep CSV header present", headed);
    rep.note("numerics carry 12 significant digits", roundtrip);
  }
  {
    std::vector<double> lam = uniform_spectrum(2.0, 40);
    std::vector<cli::SpectrumRow> rows;
    for (int n = 0; n <= 40; ++n)
      rows.push_back({n, lam[n], to_string(Method::quadrature)});
    std::string a = cli::spectrum_csv(rows);
    std::string b = cli::spectrum_csv(rows);
    rep.note("spectrum CSV deterministic", a == b);
    rep.note("spectrum CSV header present", a.rfind("n,eigenvalue,method\n", 0) == 0);
  }
}

} // namespace

int run_verify(const std::string& only) {
  struct Group {
    const char* name;
    void (*run)(Reporter&);
  };
  const Group groups[] = {
      {"special", suite_special},   {"densities", suite_densities},
      {"quantizer", suite_quantizer}, {"spectra", suite_spectra},
      {"kernel", suite_kernel},     {"cli", suite_cli},
  };
  if (!only.empty()) {
    bool known = false;
    for (const Group& g : groups) known = known || only == g.name;
    if (!known) throw std::invalid_argument("verify: unknown group: " + only);
  }
  Reporter rep;
  for (const Group& g : groups) {
    if (!only.empty() && only != g.name) continue;
    std::printf("== %s ==\n", g.name);
    try {
      g.run(rep);
    } catch (const std::exception& e) {
      std::printf("  suite aborted: %s\n", e.what());
      ++rep.failed;
    }
  }
  std::printf("verify: %d/%d checks passed\n", rep.passed, rep.passed + rep.failed);
  return rep.failed == 0 ? 0 : 1;
}
