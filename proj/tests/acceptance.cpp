// Acceptance gate: ten numbered criteria checked end to end against pinned
// tolerances, one PASS/FAIL line each.  Exits nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "groen/densities.hpp"
#include "groen/errors.hpp"
#include "groen/kernel_check.hpp"
#include "groen/quantizer.hpp"
#include "groen/spectra.hpp"

using namespace groen;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail) {
  std::printf("%s %2d %s (%s)\n", ok ? "PASS" : "FAIL", number, title, detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(GROEN_CLI_PATH) + " " + args;
  int raw = std::system(cmd.c_str());
  return (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct SweepFile {
  std::vector<double> x, lo, hi;
  bool parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        line != "uncertainty_over_hbar,min_bound,max_bound,family")
      return false;
    while (std::getline(in, line)) {
      double a, b, c;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,", &a, &b, &c) != 3) return false;
      x.push_back(a);
      lo.push_back(b);
      hi.push_back(c);
    }
    return !x.empty();
  }
};

void criterion(int number, const char* title, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(number, title, false, std::string("exception: ") + e.what());
  }
}

} // namespace

int main() {
  criterion(1, "closed form matches independent quadrature", [] {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double s : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 30);
      for (int n = 0; n <= 30; ++n)
        worst = std::max(worst, std::abs(m.at(n, n) - gaussian_eigenvalue(n, s)));
    }
    double dt = seconds_since(t0);
    report(1, "closed form matches independent quadrature", worst <= 1e-10 && dt < 1.0,
           fmt("max dev %.3g <= 1e-10; %.2f s < 1 s", worst, dt));
  });

  criterion(2, "pure-state point s = 1", [] {
    double worst = 0.0;
    GroenewoldMatrix m = quantize_radial(gaussian_as_radial(gaussian_of_s(1.0)), 40);
    for (int n = 0; n <= 40; ++n) {
      double want = n == 0 ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gaussian_eigenvalue(n, 1.0) - want));
      worst = std::max(worst, std::abs(m.at(n, n) - want));
    }
    report(2, "pure-state point s = 1", worst <= 1e-10, fmt("max dev %.3g <= 1e-10", worst));
  });

  criterion(3, "classical signatures across s", [] {
    bool ok = true;
    for (double s : {0.1, 0.3, 0.5, 0.9}) {
      ok = ok && gaussian_eigenvalue(0, s) > 1.0;
      for (int n = 1; n <= 60; n += 2) ok = ok && gaussian_eigenvalue(n, s) < 0.0;
    }
    for (double s : {1.1, 2.0, 5.0, 20.0})
      for (int n = 0; n <= 60; ++n) {
        double v = gaussian_eigenvalue(n, s);
        ok = ok && v > 0.0 && v < 1.0;
      }
    report(3, "classical signatures across s", ok,
           "odd < 0 and lambda_0 > 1 below s=1; all in (0,1) above");
  });

  criterion(4, "trace, purity, pair-trace identities", [] {
    double worst_tr = 0.0, worst_pu = 0.0;
    for (double s : {0.3, 1.0, 2.0, 17.0}) {
      double tr = 0.0, pu = 0.0;
      for (int n = 0; n <= 400; ++n) {
        double v = gaussian_eigenvalue(n, s);
        tr += v;
        pu += v * v;
      }
      tr += gaussian_eigenvalue(401, s) * (s + 1.0) / 2.0;
      worst_tr = std::max(worst_tr, std::abs(tr - 1.0));
      worst_pu = std::max(worst_pu, std::abs(pu - 1.0 / s));
    }
    std::vector<double> svals = {0.5, 1.0, 2.0, 3.0};
    std::vector<GroenewoldMatrix> mats;
    for (double s : svals)
      mats.push_back(quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 40));
    double worst_tp = 0.0;
    for (std::size_t i = 0; i < svals.size(); ++i)
      for (std::size_t j = i; j < svals.size(); ++j) {
        double tp = trace_product(mats[i], mats[j]);
        worst_tp = std::max(worst_tp, std::abs(tp - 2.0 / (svals[i] + svals[j])));
        double ov = overlap_integral(GaussianDensity{std::sqrt(svals[i]), std::sqrt(svals[i])},
                                     GaussianDensity{std::sqrt(svals[j]), std::sqrt(svals[j])});
        worst_tp = std::max(worst_tp, std::abs(tp - 2.0 * M_PI * ov));
      }
    bool ok = worst_tr <= 1e-10 && worst_pu <= 1e-10 && worst_tp <= 1e-8;
    report(4, "trace, purity, pair-trace identities", ok,
           fmt("trace/purity dev %.3g <= 1e-10; pair dev %.3g <= 1e-8",
               std::max(worst_tr, worst_pu), worst_tp));
  });

  criterion(5, "uniform family: trace, values, limit, negativity", [] {
    auto t0 = std::chrono::steady_clock::now();
    double worst_tr = 0.0;
    for (double s : {0.5, 3.0, 12.0, 40.0})
      worst_tr = std::max(worst_tr, std::abs(uniform_trace(s, 256).total() - 1.0));
    double dev0 = std::abs(uniform_eigenvalue(0, 2.0) - (1.0 - std::exp(-2.0)));
    double worst_lim = 0.0;
    for (int n : {0, 1})
      worst_lim = std::max(worst_lim, std::abs(uniform_eigenvalue(n, 1e-4) -
                                               2.0 * (n % 2 == 0 ? 1.0 : -1.0)));
    bool all_negative = true;
    for (int i = 0; i < 50; ++i) {
      double s = ((49 - i) * 0.1 + i * 40.0) / 49.0;
      std::vector<double> lam = uniform_spectrum(s, 256);
      double lo = lam[0];
      for (double v : lam) lo = std::min(lo, v);
      all_negative = all_negative && lo < 0.0;
    }
    double dt = seconds_since(t0);
    bool ok = worst_tr <= 1e-8 && dev0 <= 1e-10 && worst_lim < 5e-4 && all_negative &&
              dt < 10.0;
    report(5, "uniform family: trace, values, limit, negativity", ok,
           fmt("trace dev %.3g <= 1e-8; limit dev %.3g < 5e-4", worst_tr, worst_lim) +
               fmt("; min < 0 on 50-point grid; %.2f s < 10 s", dt));
  });

  criterion(6, "Hermite kernel identity", [] {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      KernelGrid grid = default_grid(std::sqrt(s), std::sqrt(s), 1.0);
      for (int n = 0; n <= 10; ++n)
        worst = std::max(worst, hermite_identity_residual(n, s, grid));
    }
    double dt = seconds_since(t0);
    report(6, "Hermite kernel identity", worst <= 1e-8 && dt < 30.0,
           fmt("max residual %.3g <= 1e-8; %.2f s < 30 s", worst, dt));
  });

  criterion(7, "general path agrees with radial path", [] {
    double worst = 0.0, worst_off = 0.0;
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      GroenewoldMatrix rg = quantize_radial(gaussian_as_radial(gaussian_of_s(s)), 16);
      GroenewoldMatrix gg = quantize_general(gaussian_of_s(s), 16);
      GroenewoldMatrix re = quantize_radial(ellipse_as_radial(ellipse_of_s(s)), 16);
      GroenewoldMatrix ge = quantize_general(ellipse_of_s(s), 16);
      for (int n = 0; n <= 16; ++n)
        for (int m = 0; m <= 16; ++m) {
          worst = std::max({worst, std::abs(rg.at(n, m) - gg.at(n, m)),
                            std::abs(re.at(n, m) - ge.at(n, m))});
          if (n != m)
            worst_off = std::max({worst_off, std::abs(gg.at(n, m)), std::abs(ge.at(n, m))});
        }
    }
    report(7, "general path agrees with radial path",
           worst <= 1e-8 && worst_off <= 1e-8,
           fmt("max entry dev %.3g; max off-diagonal %.3g; both <= 1e-8", worst, worst_off));
  });

  criterion(8, "square box spectrum: negativity within [-2, 2]", [] {
    GeneralDensity box = uniform_box_density(1.0, 1.0);
    GroenewoldMatrix m = quantize_general(box, 16, default_rule_pair(box.support_box, 16));
    SpectrumResult r = eigendecompose(m);
    bool ok = r.min_bound < -1e-4 && r.min_bound >= -2.0 - 1e-8 &&
              r.max_bound <= 2.0 + 1e-8;
    report(8, "square box spectrum: negativity within [-2, 2]", ok,
           fmt("min %.6g < -1e-4; extremes inside [-2-1e-8, 2+1e-8] (max %.6g)",
               r.min_bound, r.max_bound));
  });

  criterion(9, "bound-curve CSVs regenerate deterministically", [] {
    const char* title = "bound-curve CSVs regenerate deterministically";
    std::string g = "sweep --family gaussian --s-min 0.1 --s-max 2.0 --steps 20 --n-max 400";
    std::string u = "sweep --family uniform --s-min 0.4 --s-max 40 --steps 12 --n-max 512";
    if (run_cli(g + " --out acc_g1.csv") != 0 || run_cli(g + " --out acc_g2.csv") != 0 ||
        run_cli(g + " --jobs 2 --out acc_g3.csv") != 0 ||
        run_cli(u + " --out acc_u1.csv") != 0 || run_cli(u + " --out acc_u2.csv") != 0) {
      report(9, title, false, "CLI sweep invocation failed");
      return;
    }
    std::string ga = slurp("acc_g1.csv");
    bool identical = !ga.empty() && ga == slurp("acc_g2.csv") && ga == slurp("acc_g3.csv") &&
                     slurp("acc_u1.csv") == slurp("acc_u2.csv");
    SweepFile gs, us;
    if (!gs.parse(ga) || !us.parse(slurp("acc_u1.csv"))) {
      report(9, title, false, "sweep CSV did not parse");
      return;
    }
    bool monotone = true, crossing = true, uniform_negative = true;
    for (std::size_t i = 1; i < gs.x.size(); ++i)
      monotone = monotone && gs.x[i] > gs.x[i - 1];
    for (std::size_t i = 1; i < us.x.size(); ++i)
      monotone = monotone && us.x[i] > us.x[i - 1];
    for (std::size_t i = 0; i < gs.x.size(); ++i)
      crossing = crossing && (gs.x[i] < 0.5 ? gs.lo[i] < 0.0 : gs.lo[i] == 0.0);
    for (double lo : us.lo) uniform_negative = uniform_negative && lo < 0.0;
    report(9, title, identical && monotone && crossing && uniform_negative,
           "byte-identical reruns (incl. --jobs 2); sign change at exactly 0.5; "
           "uniform min stays < 0");
  });

  criterion(10, "operator averages match classical moments", [] {
    double worst = 0.0;
    struct Case { double beta, gamma, hbar; };
    for (Case c : {Case{std::sqrt(2.0), std::sqrt(2.0), 1.0}, Case{2.0, 0.75, 0.5}}) {
      GaussianDensity g{c.beta, c.gamma, c.hbar};
      GroenewoldMatrix m = quantize_radial(gaussian_as_radial(g), 60);
      worst = std::max(worst, std::abs(expectation(m, identity_observable(m.dim)) - 1.0));
      worst = std::max(
          worst, std::abs(expectation(m, q_squared_observable(m.dim, c.beta, c.gamma, c.hbar)) -
                          c.beta * c.beta / 2.0));
      worst = std::max(
          worst, std::abs(expectation(m, p_squared_observable(m.dim, c.beta, c.gamma, c.hbar)) -
                          c.gamma * c.gamma / 2.0));
    }
    report(10, "operator averages match classical moments", worst <= 1e-6,
           fmt("max dev %.3g <= 1e-6", worst));
  });

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
