#pragma once
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "groen/densities.hpp"
#include "groen/special_functions.hpp"

namespace groen {

// Fock-basis matrix <n|rho_hat|m> of a quantised density, truncated at dim-1.
struct GroenewoldMatrix {
  int dim = 0;
  std::vector<double> entries; // row-major dim x dim, symmetric
  double s = 0.0;
  double hbar = 1.0;
  double tail_bound = 0.0;      // estimated magnitude of neglected eigenvalues
  bool is_diagonal = false;
  double trace_tolerance = 0.0; // truncation-aware bound declared at build time
  // beta/gamma of the basis oscillator; NaN when unknown.  Needed to check the
  // same-basis precondition of trace_product; not part of the export format.
  double aspect = std::numeric_limits<double>::quiet_NaN();

  double at(int n, int m) const { return entries[std::size_t(n) * dim + m]; }
  double& at(int n, int m) { return entries[std::size_t(n) * dim + m]; }
  double trace() const;
  std::vector<double> diagonal() const;
};

// Matrix element <n|Delta_hat(alpha)|m> of the displaced-parity kernel:
//   2 (-1)^m sqrt(m!/n!) (2 alpha)^{n-m} L_m^{n-m}(4|alpha|^2) e^{-2|alpha|^2}
// for n >= m, conjugate symmetry for n < m.  Factorial ratios are taken in the
// log domain and (2 alpha)^{n-m} in polar form, so no intermediate overflows.
std::complex<double> displacement_matrix_element(int n, int m, std::complex<double> alpha);

// Diagonal fast path for densities radially symmetric in (q/beta, p/gamma):
//   lambda_n = 2 pi hbar (-1)^n integral_0^inf g(t/s) e^{-t} L_n(2t) dt.
// Each integral is evaluated at two quadrature resolutions and refined until
// they agree; persistent disagreement raises numerical_error.
GroenewoldMatrix quantize_radial(const RadialDensity& density, int n_max);

struct RulePair {
  QuadratureRule q_rule;
  QuadratureRule p_rule;
};

// Default tensor rule for a support box, sized for the requested truncation.
RulePair default_rule_pair(const SupportBox& box, int n_max);

// Full matrix over a box: <n|rho_hat|m> = integral rho(q,p) <n|Delta(q,p)|m> dq dp,
// with the basis oscillator scaled to the box half-widths.  Densities lacking
// the reflection symmetry that makes entries real are rejected when the
// imaginary residue exceeds 1e-8.
GroenewoldMatrix quantize_general(const GeneralDensity& density, int n_max,
                                  const RulePair& rules);

// General (full-assembly) path applied to the radially symmetric built-ins,
// integrating over scaled polar nodes instead of a Cartesian box; independent
// of quantize_radial and used to cross-check it.
GroenewoldMatrix quantize_general(const GaussianDensity& density, int n_max);
GroenewoldMatrix quantize_general(const UniformEllipseDensity& density, int n_max);

// Tr(m1 m2); the matrices must share dim, hbar, and basis aspect ratio.
double trace_product(const GroenewoldMatrix& m1, const GroenewoldMatrix& m2);

// Tr(rho_hat A) for a real symmetric observable in the same basis.
double expectation(const GroenewoldMatrix& matrix, std::span<const double> observable);

// Truncated forward transform: (2 pi hbar)^{-1} sum_{n,m} <m|rho|n><n|Delta(q,p)|m>.
double weyl_symbol(const GroenewoldMatrix& matrix, double q, double p);

// Observable builders in the scaled Fock basis (row-major dim x dim).
std::vector<double> identity_observable(int dim);
std::vector<double> number_observable(int dim);
std::vector<double> q_squared_observable(int dim, double beta, double gamma, double hbar);
std::vector<double> p_squared_observable(int dim, double beta, double gamma, double hbar);

// Export format:
//   {"dim":N,"s":r,"hbar":r,"entries":[...],"trace":r,"tail_bound":r}
// All numerics printed with 12 significant digits; byte-deterministic.
std::string matrix_to_json(const GroenewoldMatrix& matrix);

namespace detail {
// One phase-space quadrature sample: point alpha and combined weight
// (quadrature weight x density value x Jacobian), so that an entry is
// sum_i weight_i * <n|Delta(alpha_i)|m>.
struct PhasePoint {
  std::complex<double> alpha;
  double weight;
};

struct AssemblyResult {
  std::vector<double> entries; // row-major (n_max+1)^2, symmetrised
  double max_imag_residue;
};

// Upper triangle (n >= m) assembled entry by entry; each entry's sum over
// points runs sequentially in one thread, so results are identical for any
// thread count.  _serial is the reference implementation kept for testing.
AssemblyResult assemble_fock_matrix_serial(std::span<const PhasePoint> points, int n_max);
AssemblyResult assemble_fock_matrix_omp(std::span<const PhasePoint> points, int n_max);
AssemblyResult assemble_fock_matrix(std::span<const PhasePoint> points, int n_max);
} // namespace detail

} // namespace groen
