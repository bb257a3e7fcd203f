#pragma once
#include <string>
#include <vector>

#include "groen/quantizer.hpp"

namespace groen {

enum class Family { gaussian, uniform };
enum class Method { closed_form, quadrature, eigensolve };

std::string to_string(Family f);
std::string to_string(Method m);

struct SpectrumResult {
  std::vector<double> eigenvalues; // descending
  double s = 0.0;
  double min_bound = 0.0;
  double max_bound = 0.0;
  double trace_residual = 0.0;
  Method method = Method::eigensolve;
};

struct SweepRow {
  double uncertainty_over_hbar;
  double min_bound;
  double max_bound;
  Family family;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Closed form lambda_n = (2/(s+1)) ((s-1)/(s+1))^n.
double gaussian_eigenvalue(int n, double s);

// lambda_n = (2 (-1)^n / s) integral_0^s e^{-t} L_n(2t) dt by finite-interval
// quadrature, refined until two resolutions agree.
double uniform_eigenvalue(int n, double s);

// All uniform eigenvalues n = 0..n_max off one shared quadrature grid.
std::vector<double> uniform_spectrum(double s, int n_max);

struct UniformTrace {
  double partial_sum;  // sum over n <= n_partial
  double tail_closure; // Euler-transform estimate of the remainder
  double total() const { return partial_sum + tail_closure; }
};

// The eigenvalue envelope decays like a power law, so the raw partial sums
// close to 1 only as O(|lambda_N|); the tail is an alternating series past the
// n ~ s/2 edge and an Euler transform collapses it to ~1e-12.
UniformTrace uniform_trace(double s, int n_partial);

// Cyclic-Jacobi eigensolve of a symmetric matrix; eigenvalues sorted
// descending, ties broken by descending original index.
SpectrumResult eigendecompose(const GroenewoldMatrix& matrix);

struct Bounds {
  double min;
  double max;
};

// Inf/sup of the eigenvalue sequence at parameter s.  For the Gaussian family
// the accumulation point 0 is included, so min_bound = 0 for every s >= 1.
// n_max must make the neglected tail irrelevant: geometric ratio^n_max <= 1e-12
// (Gaussian), or past the oscillatory edge with a decayed envelope (uniform);
// otherwise std::invalid_argument.
Bounds spectral_bounds(Family family, double s, int n_max);

// One row of bounds per s value; x-axis is the classical uncertainty product
// over hbar (s/2 Gaussian, s/4 uniform).  Rows are independent and computed
// concurrently when jobs > 1, assembled in input order.
SweepResult sweep(Family family, const std::vector<double>& s_values, int n_max,
                  int jobs = 1);

struct MixedStateWeights {
  std::vector<double> weights; // p_n = gaussian_eigenvalue(n, s), all positive
  double partial_sum;
  double tail_closure; // geometric remainder; partial_sum + tail_closure = 1
};

// Valid only for s > 1 where every weight is positive.
MixedStateWeights mixed_state_weights(double s, int n_max);

} // namespace groen
