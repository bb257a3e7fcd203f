#pragma once
#include <functional>
#include <limits>
#include <string>
#include <variant>

namespace groen {

// Centred Gaussian rho(q,p) = (pi beta gamma)^{-1} exp(-q^2/beta^2 - p^2/gamma^2).
struct GaussianDensity {
  double beta;
  double gamma;
  double hbar = 1.0;

  double evaluate(double q, double p) const;
  double s() const { return beta * gamma / hbar; }
};

// Constant 1/(pi beta gamma) on the ellipse q^2/beta^2 + p^2/gamma^2 <= 1.
struct UniformEllipseDensity {
  double beta;
  double gamma;
  double hbar = 1.0;

  double evaluate(double q, double p) const;
  double s() const { return beta * gamma / hbar; }
};

// rho(q,p) = g(u) with u = q^2/beta^2 + p^2/gamma^2; normalisation demands
// pi beta gamma * integral_0^inf g(u) du = 1.  support_radius bounds the
// radial coordinate r = sqrt(u) (infinity for unbounded profiles).
struct RadialDensity {
  std::function<double(double)> profile;
  double beta;
  double gamma;
  double hbar = 1.0;
  double support_radius = std::numeric_limits<double>::infinity();
  // Set by gaussian_as_radial; lets the quantiser use the geometric tail
  // estimate instead of the generic last-entries one.
  bool gaussian_profile = false;

  double evaluate(double q, double p) const;
  double s() const { return beta * gamma / hbar; }
};

struct SupportBox {
  double q_min, q_max, p_min, p_max;
};

// Arbitrary nonnegative sampler on an explicit finite box, zero outside.
struct GeneralDensity {
  std::function<double(double, double)> sampler;
  SupportBox support_box;
  double hbar = 1.0;

  double evaluate(double q, double p) const;
};

using Density =
    std::variant<GaussianDensity, UniformEllipseDensity, RadialDensity, GeneralDensity>;

double evaluate(const Density& density, double q, double p);
double hbar_of(const Density& density);

// Delta q * Delta p about the centroid; analytic for the Gaussian
// (beta gamma / 2) and uniform ellipse (beta gamma / 4), quadrature otherwise.
double uncertainty_product(const Density& density);

// integral rho rho' dq dp over the union of effective supports.
double overlap_integral(const Density& rho, const Density& rho_prime);

// | integral rho dq dp - 1 |, used as a gate before quantisation.
double normalization_residual(const Density& density);

// Canonical Gaussian of dimensionless parameter s: beta = gamma = sqrt(s*hbar).
GaussianDensity gaussian_of_s(double s, double hbar = 1.0);
UniformEllipseDensity ellipse_of_s(double s, double hbar = 1.0);

// Built-in radial profiles feeding the radial quantisation path.
RadialDensity gaussian_as_radial(const GaussianDensity& g);
RadialDensity ellipse_as_radial(const UniformEllipseDensity& e);

// Uniform box of half-widths (a,b): value 1/(4ab) inside [-a,a]x[-b,b].
GeneralDensity uniform_box_density(double q_half_width, double p_half_width,
                                   double hbar = 1.0, double amplitude_scale = 1.0);

// Parses the density-spec JSON text:
//   {"type":"gaussian"|"uniform_ellipse", "beta":r, "gamma":r, "hbar":r}
//   {"type":"uniform_box", "q_half_width":r, "p_half_width":r, "hbar":r}
// "hbar" defaults to 1; optional "amplitude" rescales the sampler (a value
// other than 1 deliberately breaks normalisation, for gate testing).
// Malformed input throws std::invalid_argument.
Density density_from_spec(const std::string& json_text);

} // namespace groen
