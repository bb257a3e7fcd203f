#include "groen/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "groen/errors.hpp"
#include "groen/special_functions.hpp"

namespace groen {

std::string to_string(Family f) {
  return f == Family::gaussian ? "gaussian" : "uniform";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    default: return "eigensolve";
  }
}

double gaussian_eigenvalue(int n, double s) {
  if (n < 0) throw std::invalid_argument("gaussian_eigenvalue: negative index");
  if (!(s > 0.0)) throw std::invalid_argument("gaussian_eigenvalue: s must be positive");
  const double r = (s - 1.0) / (s + 1.0);
  double pw = 1.0;
  for (int i = 0; i < n; ++i) pw *= r;
  return 2.0 / (s + 1.0) * pw;
}

std::vector<double> uniform_spectrum(double s, int n_max) {
  if (!(s > 0.0)) throw std::invalid_argument("uniform_spectrum: s must be positive");
  if (n_max < 0) throw std::invalid_argument("uniform_spectrum: negative n_max");

  // lambda_n = (2 (-1)^n / s) int_0^s e^{-t} L_n(2t) dt, every n off one grid.
  auto eval = [&](int npts) {
    std::vector<double> lam(std::size_t(n_max) + 1, 0.0);
    QuadratureRule rule = finite_rule(npts, 0.0, s);
    std::vector<double> ladder;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double t = rule.nodes[i];
      double w = rule.weights[i] * std::exp(-t);
      detail::laguerre_ladder(n_max, 2.0 * t, ladder);
      for (int n = 0; n <= n_max; ++n) lam[n] += w * ladder[n];
    }
    for (int n = 0; n <= n_max; ++n) {
      lam[n] *= 2.0 / s;
      if (n % 2) lam[n] = -lam[n];
    }
    return lam;
  };

  int npts = std::max(64, n_max / 2 + 48);
  std::vector<double> coarse = eval(npts);
  for (;;) {
    std::vector<double> fine = eval(2 * npts);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n)
      worst = std::max(worst, std::abs(fine[n] - coarse[n]) /
                                  std::max(1.0, std::abs(fine[n])));
    if (worst <= 1e-12) return fine;
    npts *= 2;
    if (npts > 4096)
      throw numerical_error("uniform_spectrum: quadrature refinement did not converge");
    coarse = std::move(fine);
  }
}

double uniform_eigenvalue(int n, double s) {
  return uniform_spectrum(s, n).back();
}

UniformTrace uniform_trace(double s, int n_partial) {
  const int edge = int(std::ceil(s / 2.0)) + 16;
  if (n_partial < edge)
    throw std::invalid_argument(
        "uniform_trace: n_partial must clear the oscillatory edge (~s/2 + 16)");
  constexpr int K = 24; // Euler-transform depth
  std::vector<double> lam = uniform_spectrum(s, n_partial + K + 1);
  UniformTrace out{};
  for (int n = 0; n <= n_partial; ++n) out.partial_sum += lam[n];
  // Past the edge, (-1)^n lambda_n varies smoothly in n (a slow modulation may
  // take it through zero, so no sign assumption). Unfold the alternation and
  // accelerate the remainder with an Euler transform, which only needs the
  // forward differences of the unfolded sequence to decay.
  std::vector<double> b(K + 1);
  for (int j = 0; j <= K; ++j) {
    b[j] = lam[n_partial + 1 + j];
    if ((n_partial + 1 + j) % 2) b[j] = -b[j];
  }
  double tail = 0.0, half = 0.5;
  for (int k = 0; k <= K; ++k) {
    tail += b[0] * half;
    half *= 0.5;
    for (int j = 0; j < K - k; ++j) b[j] = b[j] - b[j + 1];
  }
  out.tail_closure = (n_partial % 2 == 0) ? -tail : tail; // sign of lambda_{N+1}
  return out;
}

SpectrumResult eigendecompose(const GroenewoldMatrix& matrix) {
  const int n = matrix.dim;
  if (n <= 0 || matrix.entries.size() != std::size_t(n) * n)
    throw std::invalid_argument("eigendecompose: malformed matrix");
  double max_abs = 0.0, max_asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      max_abs = std::max(max_abs, std::abs(matrix.at(i, j)));
      max_asym = std::max(max_asym, std::abs(matrix.at(i, j) - matrix.at(j, i)));
    }
  if (max_asym > 1e-12 * std::max(1.0, max_abs))
    throw std::invalid_argument("eigendecompose: matrix is not symmetric");

  std::vector<double> a = matrix.entries;
  auto el = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
  double frob = 0.0;
  for (double v : a) frob += v * v;
  frob = std::sqrt(frob);
  const double stop = 1e-12 * std::max(frob, 1e-300);

  for (int sweep_i = 0; sweep_i < 100; ++sweep_i) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * el(i, j) * el(i, j);
    if (std::sqrt(off) <= stop) break;
    if (sweep_i == 99) throw numerical_error("eigendecompose: Jacobi sweeps exhausted");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = el(p, q);
        if (apq == 0.0) continue;
        double theta = (el(q, q) - el(p, p)) / (2.0 * apq);
        double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double si = t * c;
        double app = el(p, p), aqq = el(q, q);
        el(p, p) = app - t * apq;
        el(q, q) = aqq + t * apq;
        el(p, q) = el(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = el(k, p), akq = el(k, q);
          el(k, p) = el(p, k) = c * akp - si * akq;
          el(k, q) = el(q, k) = si * akp + c * akq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    double vi = el(i, i), vj = el(j, j);
    if (vi != vj) return vi > vj;
    return i > j; // ties: descending original Fock index
  });

  SpectrumResult res;
  res.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) res.eigenvalues[i] = el(order[i], order[i]);
  res.s = matrix.s;
  res.max_bound = res.eigenvalues.front();
  res.min_bound = res.eigenvalues.back();
  res.trace_residual =
      std::abs(std::accumulate(res.eigenvalues.begin(), res.eigenvalues.end(), 0.0) - 1.0);
  res.method = Method::eigensolve;
  for (double v : res.eigenvalues)
    if (v < -2.0 - 1e-8 || v > 2.0 + 1e-8)
      throw numerical_error("eigendecompose: eigenvalue outside [-2, 2]");
  return res;
}

Bounds spectral_bounds(Family family, double s, int n_max) {
  if (!(s > 0.0)) throw std::invalid_argument("spectral_bounds: s must be positive");
  if (n_max < 1) throw std::invalid_argument("spectral_bounds: n_max must be >= 1");
  if (family == Family::gaussian) {
    const double r = std::abs(s - 1.0) / (s + 1.0);
    if (std::pow(r, n_max) > 1e-12)
      throw std::invalid_argument(
          "spectral_bounds: n_max too small for the geometric tail at this s");
    double lo = 0.0, hi = 0.0; // 0 is the accumulation point of the sequence
    for (int n = 0; n <= n_max; ++n) {
      double v = gaussian_eigenvalue(n, s);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }
  const int edge = int(std::ceil(s / 2.0)) + 16;
  if (n_max < edge)
    throw std::invalid_argument(
        "spectral_bounds: n_max must clear the oscillatory edge (~s/2 + 16)");
  std::vector<double> lam = uniform_spectrum(s, n_max);
  double lo = lam[0], hi = lam[0];
  for (double v : lam) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // the neglected tail must be spectrally irrelevant: its envelope has to sit
  // well inside the attained extremes
  double tail_env = 0.0;
  for (int n = 3 * n_max / 4; n <= n_max; ++n)
    tail_env = std::max(tail_env, std::abs(lam[n]));
  if (tail_env > 0.5 * std::max(std::abs(lo), std::abs(hi)))
    throw std::invalid_argument(
        "spectral_bounds: n_max too small (tail envelope not yet decayed)");
  return {lo, hi};
}

SweepResult sweep(Family family, const std::vector<double>& s_values, int n_max,
                  int jobs) {
  if (s_values.size() < 1) throw std::invalid_argument("sweep: empty s grid");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0.0)) throw std::invalid_argument("sweep: s values must be positive");
    if (i && !(s_values[i] > s_values[i - 1]))
      throw std::invalid_argument("sweep: s values must be strictly increasing");
  }
  if (jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
  const double axis_factor = family == Family::gaussian ? 0.5 : 0.25;
  SweepResult out;
  out.rows.resize(s_values.size());
  std::string error;
  bool config_error = false;
  // Rows are independent; each lands in its own slot so assembly order is
  // deterministic no matter how many threads run.
#pragma omp parallel for schedule(static) num_threads(jobs) if (jobs > 1)
  for (long long i = 0; i < (long long)s_values.size(); ++i) {
    try {
      Bounds b = spectral_bounds(family, s_values[i], n_max);
      out.rows[i] = SweepRow{axis_factor * s_values[i], b.min, b.max, family};
    } catch (const std::invalid_argument& e) {
#pragma omp critical
      {
        error = e.what();
        config_error = true;
      }
    } catch (const std::exception& e) {
#pragma omp critical
      error = e.what();
    }
  }
  if (!error.empty()) {
    if (config_error) throw std::invalid_argument(error);
    throw numerical_error(error);
  }
  return out;
}

MixedStateWeights mixed_state_weights(double s, int n_max) {
  if (!(s > 1.0))
    throw std::invalid_argument("mixed_state_weights: defined only for s > 1");
  if (n_max < 0) throw std::invalid_argument("mixed_state_weights: negative n_max");
  MixedStateWeights out;
  out.weights.resize(std::size_t(n_max) + 1);
  out.partial_sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    out.weights[n] = gaussian_eigenvalue(n, s);
    out.partial_sum += out.weights[n];
  }
  // geometric remainder: sum_{n>N} lambda_n = lambda_{N+1} (s+1)/2
  out.tail_closure = gaussian_eigenvalue(n_max + 1, s) * (s + 1.0) / 2.0;
  return out;
}

} // namespace groen
