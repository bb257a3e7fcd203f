#include "groen/quantizer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "groen/errors.hpp"

namespace groen {

double GroenewoldMatrix::trace() const {
  double t = 0.0;
  for (int n = 0; n < dim; ++n) t += at(n, n);
  return t;
}

std::vector<double> GroenewoldMatrix::diagonal() const {
  std::vector<double> d(dim);
  for (int n = 0; n < dim; ++n) d[n] = at(n, n);
  return d;
}

namespace {

constexpr int kFockCeiling = 1024; // log-domain factorials stay accurate below this

// Core of the displaced-parity matrix element for n >= m:
//   2 (-1)^m exp(lgamma(m+1)/2 - lgamma(n+1)/2) (2 alpha)^{n-m}
//     L_m^{n-m}(4|alpha|^2) e^{-2|alpha|^2}
// with the radial factor assembled in the log domain.
std::complex<double> element_upper(int n, int m, std::complex<double> alpha) {
  const double x = 4.0 * std::norm(alpha);
  const int d = n - m;
  // associated Laguerre ladder L_j^{(d)}(x), j = 0..m
  double lag = 1.0;
  if (m >= 1) {
    double prev = 1.0;
    double cur = 1.0 + d - x;
    for (int j = 1; j < m; ++j) {
      double next = ((2.0 * j + 1.0 + d - x) * cur - (j + d) * prev) / (j + 1.0);
      prev = cur;
      cur = next;
    }
    lag = cur;
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  if (d == 0) return sign * 2.0 * lag * std::exp(-x / 2.0);
  const double r2a = 2.0 * std::abs(alpha);
  if (r2a == 0.0) return 0.0;
  double log_mag = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) +
                   d * std::log(r2a) - x / 2.0;
  double phase = d * std::arg(alpha);
  return sign * 2.0 * lag * std::exp(log_mag) *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

} // namespace

std::complex<double> displacement_matrix_element(int n, int m, std::complex<double> alpha) {
  if (n < 0 || m < 0)
    throw std::invalid_argument("displacement_matrix_element: negative Fock label");
  if (n > kFockCeiling || m > kFockCeiling)
    throw std::invalid_argument(
        "displacement_matrix_element: label beyond supported range (~1e3)");
  if (n >= m) return element_upper(n, m, alpha);
  return std::conj(element_upper(m, n, alpha));
}

// ---------------------------------------------------------------------------
// Assembly over phase-space point sets

namespace detail {

namespace {

// One symmetric entry: sum_i w_i <n|Delta(alpha_i)|m>, n >= m.  Kept
// self-contained so both drivers below produce bit-identical numbers.
std::complex<double> entry_sum(std::span<const PhasePoint> points, int n, int m) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& pt : points) acc += pt.weight * element_upper(n, m, pt.alpha);
  return acc;
}

AssemblyResult finish(std::vector<std::complex<double>>&& upper, int n_max) {
  const int dim = n_max + 1;
  AssemblyResult out;
  out.entries.assign(std::size_t(dim) * dim, 0.0);
  out.max_imag_residue = 0.0;
  std::size_t k = 0;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m <= n; ++m, ++k) {
      out.max_imag_residue = std::max(out.max_imag_residue, std::abs(upper[k].imag()));
      out.entries[std::size_t(n) * dim + m] = upper[k].real();
      out.entries[std::size_t(m) * dim + n] = upper[k].real();
    }
  return out;
}

} // namespace

AssemblyResult assemble_fock_matrix_serial(std::span<const PhasePoint> points, int n_max) {
  const int dim = n_max + 1;
  std::vector<std::complex<double>> upper(std::size_t(dim) * (dim + 1) / 2);
  std::size_t k = 0;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m <= n; ++m, ++k) upper[k] = entry_sum(points, n, m);
  return finish(std::move(upper), n_max);
}

AssemblyResult assemble_fock_matrix_omp(std::span<const PhasePoint> points, int n_max) {
  const int dim = n_max + 1;
  const std::size_t npairs = std::size_t(dim) * (dim + 1) / 2;
  std::vector<std::complex<double>> upper(npairs);
  // Whole entries are distributed across threads; each entry's point sum runs
  // sequentially in one thread, so any thread count yields identical bits.
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < (long long)npairs; ++k) {
    // invert k -> (n, m) with k = n(n+1)/2 + m
    int n = int((std::sqrt(8.0 * k + 1.0) - 1.0) / 2.0);
    while (std::size_t(n + 1) * (n + 2) / 2 <= std::size_t(k)) ++n;
    while (std::size_t(n) * (n + 1) / 2 > std::size_t(k)) --n;
    int m = int(k - (long long)n * (n + 1) / 2);
    upper[k] = entry_sum(points, n, m);
  }
  return finish(std::move(upper), n_max);
}

AssemblyResult assemble_fock_matrix(std::span<const PhasePoint> points, int n_max) {
#ifdef _OPENMP
  return assemble_fock_matrix_omp(points, n_max);
#else
  return assemble_fock_matrix_serial(points, n_max);
#endif
}

} // namespace detail

// ---------------------------------------------------------------------------
// Radial fast path

GroenewoldMatrix quantize_radial(const RadialDensity& density, int n_max) {
  if (n_max < 0) throw std::invalid_argument("quantize_radial: n_max must be >= 0");
  if (!density.profile) throw std::invalid_argument("quantize_radial: empty profile");
  const double s = density.s();
  if (!(s > 0.0)) throw std::invalid_argument("quantize_radial: scales must be positive");
  const bool finite_support = std::isfinite(density.support_radius);
  const double t_max = finite_support
                           ? s * density.support_radius * density.support_radius
                           : 0.0;

  // lambda_n = 2 pi hbar (-1)^n int g(t/s) e^{-t} L_n(2t) dt, all n off one grid.
  auto eval = [&](int npts) {
    std::vector<double> lam(std::size_t(n_max) + 1, 0.0);
    QuadratureRule rule =
        finite_support ? finite_rule(npts, 0.0, t_max) : semi_infinite_rule(npts);
    std::vector<double> ladder;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double t = rule.nodes[i];
      double w = rule.weights[i] * density.profile(t / s);
      if (finite_support) w *= std::exp(-t);
      detail::laguerre_ladder(n_max, 2.0 * t, ladder);
      for (int n = 0; n <= n_max; ++n) lam[n] += w * ladder[n];
    }
    double pref = 2.0 * M_PI * density.hbar;
    for (int n = 0; n <= n_max; ++n)
      lam[n] *= (n % 2 == 0) ? pref : -pref;
    return lam;
  };

  int npts = std::max(64, n_max + 24);
  std::vector<double> coarse = eval(npts);
  std::vector<double> fine;
  for (;;) {
    fine = eval(2 * npts);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n)
      worst = std::max(worst,
                       std::abs(fine[n] - coarse[n]) / std::max(1.0, std::abs(fine[n])));
    if (worst <= 1e-9) break;
    npts *= 2;
    if (npts > 1024)
      throw numerical_error("quantize_radial: quadrature refinement did not converge");
    coarse = std::move(fine);
  }

  GroenewoldMatrix mat;
  mat.dim = n_max + 1;
  mat.entries.assign(std::size_t(mat.dim) * mat.dim, 0.0);
  for (int n = 0; n <= n_max; ++n) mat.at(n, n) = fine[n];
  mat.s = s;
  mat.hbar = density.hbar;
  mat.is_diagonal = true;
  mat.aspect = density.beta / density.gamma;
  if (density.gaussian_profile) {
    double r = std::abs(s - 1.0) / (s + 1.0);
    mat.tail_bound = r < 1.0 ? std::abs(fine[n_max]) * r / (1.0 - r) : 0.0;
  } else {
    mat.tail_bound = std::abs(fine[n_max]);
    if (n_max >= 1) mat.tail_bound += std::abs(fine[n_max - 1]);
  }
  // The geometric tail estimate is tight (it can equal the truncation deficit
  // to the last bit), so the residual gate needs rounding headroom.
  mat.trace_tolerance = 1.5 * mat.tail_bound + 1e-9;
  for (int n = 0; n <= n_max; ++n)
    if (std::abs(fine[n]) > 2.0 + 1e-8)
      throw numerical_error("quantize_radial: eigenvalue outside [-2, 2]");
  if (std::abs(mat.trace() - 1.0) > mat.trace_tolerance)
    throw numerical_error("quantize_radial: trace residual exceeds truncation tolerance");
  return mat;
}

// ---------------------------------------------------------------------------
// General path

namespace {

GroenewoldMatrix finalize_general(detail::AssemblyResult&& res, int n_max, double s,
                                  double hbar, double aspect, bool gaussian_tail) {
  if (res.max_imag_residue > 1e-8)
    throw numerical_error(
        "quantize_general: imaginary residue above threshold (density lacks the "
        "required reflection symmetry)");
  GroenewoldMatrix mat;
  mat.dim = n_max + 1;
  mat.entries = std::move(res.entries);
  mat.s = s;
  mat.hbar = hbar;
  mat.is_diagonal = false;
  mat.aspect = aspect;
  double d_last = mat.at(n_max, n_max);
  double d_prev = n_max >= 1 ? mat.at(n_max - 1, n_max - 1) : 0.0;
  if (gaussian_tail) {
    double r = std::abs(s - 1.0) / (s + 1.0);
    mat.tail_bound = r < 1.0 ? std::abs(d_last) * r / (1.0 - r) : 0.0;
  } else {
    mat.tail_bound = std::abs(d_last) + std::abs(d_prev);
  }
  mat.trace_tolerance = 1.5 * mat.tail_bound + 1e-9;
  if (std::abs(mat.trace() - 1.0) > mat.trace_tolerance)
    throw numerical_error("quantize_general: trace residual exceeds truncation tolerance");
  return mat;
}

// Refinement driver: build points at increasing resolution until two
// consecutive assemblies agree entrywise to 1e-9.
template <class PointBuilder>
detail::AssemblyResult assemble_refined(PointBuilder&& build, int n_max, int max_level) {
  detail::AssemblyResult coarse = detail::assemble_fock_matrix(build(0), n_max);
  for (int level = 1; level <= max_level; ++level) {
    detail::AssemblyResult fine = detail::assemble_fock_matrix(build(level), n_max);
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.entries.size(); ++i)
      worst = std::max(worst, std::abs(fine.entries[i] - coarse.entries[i]) /
                                  std::max(1.0, std::abs(fine.entries[i])));
    if (worst <= 1e-9) return fine;
    coarse = std::move(fine);
  }
  throw numerical_error("quantize_general: quadrature refinement did not converge");
}

std::complex<double> alpha_of(double q, double p, double beta, double gamma, double hbar) {
  double re = std::sqrt(gamma / beta) * q;
  double im = std::sqrt(beta / gamma) * p;
  double inv = 1.0 / std::sqrt(2.0 * hbar);
  return {re * inv, im * inv};
}

// Polar node set for the radially symmetric built-ins: with u = r^2 the entry
// integral is (1/(2 pi)) int du w(u) int dphi <n|Delta|m>, where the u-rule
// absorbs the profile; the phi trapezoid annihilates Fourier modes exactly.
std::vector<detail::PhasePoint> polar_points(const QuadratureRule& u_rule,
                                             bool semi_infinite, int nphi, double s) {
  std::vector<detail::PhasePoint> pts;
  pts.reserve(u_rule.nodes.size() * nphi);
  for (std::size_t i = 0; i < u_rule.nodes.size(); ++i) {
    double u = u_rule.nodes[i];
    double w = u_rule.weights[i] / nphi;
    (void)semi_infinite; // e^{-u} profile already matches the Laguerre weight
    double amp = std::sqrt(s * u / 2.0);
    for (int j = 0; j < nphi; ++j) {
      double phi = 2.0 * M_PI * j / nphi;
      pts.push_back({std::complex<double>(amp * std::cos(phi), amp * std::sin(phi)), w});
    }
  }
  return pts;
}

} // namespace

RulePair default_rule_pair(const SupportBox& box, int n_max) {
  int npts = std::max(96, 4 * (n_max + 1));
  return RulePair{finite_rule(npts, box.q_min, box.q_max),
                  finite_rule(npts, box.p_min, box.p_max)};
}

GroenewoldMatrix quantize_general(const GeneralDensity& density, int n_max,
                                  const RulePair& rules) {
  if (n_max < 0) throw std::invalid_argument("quantize_general: n_max must be >= 0");
  if (!density.sampler) throw std::invalid_argument("quantize_general: empty sampler");
  const auto& box = density.support_box;
  if (!(box.q_min < box.q_max) || !(box.p_min < box.p_max))
    throw std::invalid_argument("quantize_general: degenerate support box");
  if (rules.q_rule.nodes.empty() || rules.p_rule.nodes.empty())
    throw std::invalid_argument("quantize_general: empty quadrature rule");
  if (rules.q_rule.domain != QuadratureRule::Domain::finite ||
      rules.p_rule.domain != QuadratureRule::Domain::finite)
    throw std::invalid_argument("quantize_general: finite-interval rules required");
  if (rules.q_rule.a > box.q_min + 1e-12 || rules.q_rule.b < box.q_max - 1e-12 ||
      rules.p_rule.a > box.p_min + 1e-12 || rules.p_rule.b < box.p_max - 1e-12)
    throw std::invalid_argument(
        "quantize_general: density support not contained in the quadrature domain");

  const double beta = 0.5 * (box.q_max - box.q_min);
  const double gamma = 0.5 * (box.p_max - box.p_min);
  const double s = beta * gamma / density.hbar;

  auto build = [&](int level) {
    const QuadratureRule* qr = &rules.q_rule;
    const QuadratureRule* pr = &rules.p_rule;
    QuadratureRule q_fine, p_fine;
    if (level > 0) {
      int nq = int(rules.q_rule.nodes.size()) << level;
      int np = int(rules.p_rule.nodes.size()) << level;
      if (nq > 1024 || np > 1024)
        throw numerical_error("quantize_general: refinement cap exceeded");
      q_fine = finite_rule(nq, rules.q_rule.a, rules.q_rule.b);
      p_fine = finite_rule(np, rules.p_rule.a, rules.p_rule.b);
      qr = &q_fine;
      pr = &p_fine;
    }
    std::vector<detail::PhasePoint> pts;
    pts.reserve(qr->nodes.size() * pr->nodes.size());
    for (std::size_t i = 0; i < qr->nodes.size(); ++i)
      for (std::size_t j = 0; j < pr->nodes.size(); ++j) {
        // evaluate (not the raw sampler) so nodes outside the box see zero
        double w = qr->weights[i] * pr->weights[j] *
                   density.evaluate(qr->nodes[i], pr->nodes[j]);
        pts.push_back(
            {alpha_of(qr->nodes[i], pr->nodes[j], beta, gamma, density.hbar), w});
      }
    return pts;
  };

  detail::AssemblyResult res = assemble_refined(build, n_max, 3);
  return finalize_general(std::move(res), n_max, s, density.hbar, beta / gamma, false);
}

GroenewoldMatrix quantize_general(const GaussianDensity& density, int n_max) {
  if (n_max < 0) throw std::invalid_argument("quantize_general: n_max must be >= 0");
  const double s = density.s();
  auto build = [&](int level) {
    int nu = std::max(48, n_max + 16) << level;
    int nphi = std::max(64, 4 * (n_max + 1)) << level;
    if (nu > 2048) throw numerical_error("quantize_general: refinement cap exceeded");
    // profile e^{-u}/(pi beta gamma) folds with the polar Jacobian into
    // (1/(2 pi)) e^{-u} du dphi -- exactly the Gauss-Laguerre weight.
    return polar_points(semi_infinite_rule(nu), true, nphi, s);
  };
  detail::AssemblyResult res = assemble_refined(build, n_max, 3);
  return finalize_general(std::move(res), n_max, s, density.hbar,
                          density.beta / density.gamma, true);
}

GroenewoldMatrix quantize_general(const UniformEllipseDensity& density, int n_max) {
  if (n_max < 0) throw std::invalid_argument("quantize_general: n_max must be >= 0");
  const double s = density.s();
  auto build = [&](int level) {
    int nu = std::max(48, n_max + 16) << level;
    int nphi = std::max(64, 4 * (n_max + 1)) << level;
    if (nu > 2048) throw numerical_error("quantize_general: refinement cap exceeded");
    return polar_points(finite_rule(nu, 0.0, 1.0), false, nphi, s);
  };
  detail::AssemblyResult res = assemble_refined(build, n_max, 3);
  return finalize_general(std::move(res), n_max, s, density.hbar,
                          density.beta / density.gamma, false);
}

// ---------------------------------------------------------------------------
// Traces, expectations, symbol reconstruction

namespace {

void check_same_basis(const GroenewoldMatrix& m1, const GroenewoldMatrix& m2) {
  if (m1.dim != m2.dim)
    throw std::invalid_argument("trace_product: dimension mismatch");
  if (std::abs(m1.hbar - m2.hbar) > 1e-12 * std::max(m1.hbar, m2.hbar))
    throw std::invalid_argument("trace_product: hbar mismatch");
  if (std::isnan(m1.aspect) || std::isnan(m2.aspect) ||
      std::abs(m1.aspect - m2.aspect) > 1e-9 * std::max(m1.aspect, m2.aspect))
    throw std::invalid_argument("trace_product: basis aspect-ratio mismatch");
}

} // namespace

double trace_product(const GroenewoldMatrix& m1, const GroenewoldMatrix& m2) {
  check_same_basis(m1, m2);
  // Tr(AB) with A, B symmetric: elementwise product sum.
  double acc = 0.0;
  for (std::size_t i = 0; i < m1.entries.size(); ++i) acc += m1.entries[i] * m2.entries[i];
  return acc;
}

double expectation(const GroenewoldMatrix& matrix, std::span<const double> observable) {
  if (observable.size() != matrix.entries.size())
    throw std::invalid_argument("expectation: observable dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < matrix.entries.size(); ++i)
    acc += matrix.entries[i] * observable[i];
  return acc;
}

double weyl_symbol(const GroenewoldMatrix& matrix, double q, double p) {
  if (std::isnan(matrix.aspect))
    throw std::invalid_argument("weyl_symbol: matrix lacks basis scales");
  const double beta = std::sqrt(matrix.s * matrix.hbar * matrix.aspect);
  const double gamma = std::sqrt(matrix.s * matrix.hbar / matrix.aspect);
  const std::complex<double> alpha = alpha_of(q, p, beta, gamma, matrix.hbar);
  double acc = 0.0;
  for (int n = 0; n < matrix.dim; ++n) {
    acc += matrix.at(n, n) * element_upper(n, n, alpha).real();
    for (int m = 0; m < n; ++m)
      acc += 2.0 * matrix.at(n, m) * element_upper(n, m, alpha).real();
  }
  return acc / (2.0 * M_PI * matrix.hbar);
}

std::vector<double> identity_observable(int dim) {
  std::vector<double> a(std::size_t(dim) * dim, 0.0);
  for (int n = 0; n < dim; ++n) a[std::size_t(n) * dim + n] = 1.0;
  return a;
}

std::vector<double> number_observable(int dim) {
  std::vector<double> a(std::size_t(dim) * dim, 0.0);
  for (int n = 0; n < dim; ++n) a[std::size_t(n) * dim + n] = double(n);
  return a;
}

// q^2 in the scaled basis: (beta hbar / (2 gamma)) [(2n+1) delta_{nm}
//   + sqrt((n+1)(n+2)) delta_{m,n+2} + sqrt(n(n-1)) delta_{m,n-2}];
// p^2 is the same with the off-diagonal sign flipped and gamma hbar/(2 beta).
std::vector<double> q_squared_observable(int dim, double beta, double gamma, double hbar) {
  std::vector<double> a(std::size_t(dim) * dim, 0.0);
  const double c = beta * hbar / (2.0 * gamma);
  for (int n = 0; n < dim; ++n) {
    a[std::size_t(n) * dim + n] = c * (2.0 * n + 1.0);
    if (n + 2 < dim) {
      double v = c * std::sqrt(double(n + 1) * (n + 2));
      a[std::size_t(n) * dim + n + 2] = v;
      a[std::size_t(n + 2) * dim + n] = v;
    }
  }
  return a;
}

std::vector<double> p_squared_observable(int dim, double beta, double gamma, double hbar) {
  std::vector<double> a(std::size_t(dim) * dim, 0.0);
  const double c = gamma * hbar / (2.0 * beta);
  for (int n = 0; n < dim; ++n) {
    a[std::size_t(n) * dim + n] = c * (2.0 * n + 1.0);
    if (n + 2 < dim) {
      double v = -c * std::sqrt(double(n + 1) * (n + 2));
      a[std::size_t(n) * dim + n + 2] = v;
      a[std::size_t(n + 2) * dim + n] = v;
    }
  }
  return a;
}

std::string matrix_to_json(const GroenewoldMatrix& matrix) {
  auto g12 = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  std::string out = "{\"dim\":" + std::to_string(matrix.dim);
  out += ",\"s\":" + g12(matrix.s);
  out += ",\"hbar\":" + g12(matrix.hbar);
  out += ",\"entries\":[";
  for (std::size_t i = 0; i < matrix.entries.size(); ++i) {
    if (i) out += ',';
    out += g12(matrix.entries[i]);
  }
  out += "],\"trace\":" + g12(matrix.trace());
  out += ",\"tail_bound\":" + g12(matrix.tail_bound);
  out += "}";
  return out;
}

} // namespace groen
