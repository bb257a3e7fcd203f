#include "groen/densities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "groen/errors.hpp"
#include "groen/special_functions.hpp"

namespace groen {

double GaussianDensity::evaluate(double q, double p) const {
  double u = q * q / (beta * beta) + p * p / (gamma * gamma);
  return std::exp(-u) / (M_PI * beta * gamma);
}

double UniformEllipseDensity::evaluate(double q, double p) const {
  double u = q * q / (beta * beta) + p * p / (gamma * gamma);
  return u <= 1.0 ? 1.0 / (M_PI * beta * gamma) : 0.0;
}

double RadialDensity::evaluate(double q, double p) const {
  double u = q * q / (beta * beta) + p * p / (gamma * gamma);
  if (u > support_radius * support_radius) return 0.0;
  return profile(u);
}

double GeneralDensity::evaluate(double q, double p) const {
  const auto& b = support_box;
  if (q < b.q_min || q > b.q_max || p < b.p_min || p > b.p_max) return 0.0;
  return sampler(q, p);
}

double evaluate(const Density& density, double q, double p) {
  return std::visit([&](const auto& d) { return d.evaluate(q, p); }, density);
}

double hbar_of(const Density& density) {
  return std::visit([](const auto& d) { return d.hbar; }, density);
}

GaussianDensity gaussian_of_s(double s, double hbar) {
  if (!(s > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("gaussian_of_s: s and hbar must be positive");
  double scale = std::sqrt(s * hbar);
  return GaussianDensity{scale, scale, hbar};
}

UniformEllipseDensity ellipse_of_s(double s, double hbar) {
  if (!(s > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("ellipse_of_s: s and hbar must be positive");
  double scale = std::sqrt(s * hbar);
  return UniformEllipseDensity{scale, scale, hbar};
}

RadialDensity gaussian_as_radial(const GaussianDensity& g) {
  double c = 1.0 / (M_PI * g.beta * g.gamma);
  RadialDensity r;
  r.profile = [c](double u) { return c * std::exp(-u); };
  r.beta = g.beta;
  r.gamma = g.gamma;
  r.hbar = g.hbar;
  r.gaussian_profile = true;
  return r;
}

RadialDensity ellipse_as_radial(const UniformEllipseDensity& e) {
  double c = 1.0 / (M_PI * e.beta * e.gamma);
  RadialDensity r;
  r.profile = [c](double) { return c; };
  r.beta = e.beta;
  r.gamma = e.gamma;
  r.hbar = e.hbar;
  r.support_radius = 1.0;
  return r;
}

GeneralDensity uniform_box_density(double q_half_width, double p_half_width, double hbar,
                                   double amplitude_scale) {
  if (!(q_half_width > 0.0) || !(p_half_width > 0.0))
    throw std::invalid_argument("uniform_box_density: half-widths must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("uniform_box_density: hbar must be positive");
  double value = amplitude_scale / (4.0 * q_half_width * p_half_width);
  GeneralDensity d;
  d.sampler = [value](double, double) { return value; };
  d.support_box = SupportBox{-q_half_width, q_half_width, -p_half_width, p_half_width};
  d.hbar = hbar;
  return d;
}

// ---------------------------------------------------------------------------
// Quadrature plumbing shared by the moment/overlap/normalisation operations.

namespace {

// Integrates rho * f over phase space with a node set native to the density:
// polar nodes for the radially symmetric types (spectrally accurate even at a
// hard support edge), tensor Gauss-Legendre otherwise.  `level` doubles the
// resolution (and widens unbounded boxes) for convergence checks.
template <class F>
double integrate_against(const Density& density, F&& f, int level) {
  const int scale = 1 << level;
  if (const auto* g = std::get_if<GaussianDensity>(&density)) {
    double hw_factor = 1.0 + 0.25 * level;
    QuadratureRule qr = finite_rule(120 * scale, -8.0 * hw_factor * g->beta,
                                    8.0 * hw_factor * g->beta);
    QuadratureRule pr = finite_rule(120 * scale, -8.0 * hw_factor * g->gamma,
                                    8.0 * hw_factor * g->gamma);
    double acc = 0.0;
    for (std::size_t i = 0; i < qr.nodes.size(); ++i) {
      double inner = 0.0;
      for (std::size_t j = 0; j < pr.nodes.size(); ++j)
        inner += pr.weights[j] * g->evaluate(qr.nodes[i], pr.nodes[j]) *
                 f(qr.nodes[i], pr.nodes[j]);
      acc += qr.weights[i] * inner;
    }
    return acc;
  }
  if (const auto* gen = std::get_if<GeneralDensity>(&density)) {
    const auto& b = gen->support_box;
    QuadratureRule qr = finite_rule(160 * scale, b.q_min, b.q_max);
    QuadratureRule pr = finite_rule(160 * scale, b.p_min, b.p_max);
    double acc = 0.0;
    for (std::size_t i = 0; i < qr.nodes.size(); ++i) {
      double inner = 0.0;
      for (std::size_t j = 0; j < pr.nodes.size(); ++j)
        inner += pr.weights[j] * gen->sampler(qr.nodes[i], pr.nodes[j]) *
                 f(qr.nodes[i], pr.nodes[j]);
      acc += qr.weights[i] * inner;
    }
    return acc;
  }
  // Radially symmetric (ellipse or radial profile): q = beta r cos, p = gamma r sin,
  // u = r^2 gives  integral = (beta gamma / 2) int du g(u) int dphi f.
  double beta, gamma, u_max;
  std::function<double(double)> g;
  bool semi_infinite = false;
  if (const auto* e = std::get_if<UniformEllipseDensity>(&density)) {
    beta = e->beta;
    gamma = e->gamma;
    u_max = 1.0;
    double c = 1.0 / (M_PI * beta * gamma);
    g = [c](double) { return c; };
  } else {
    const auto& r = std::get<RadialDensity>(density);
    beta = r.beta;
    gamma = r.gamma;
    g = r.profile;
    semi_infinite = !std::isfinite(r.support_radius);
    u_max = semi_infinite ? 0.0 : r.support_radius * r.support_radius;
  }
  QuadratureRule ur = semi_infinite ? semi_infinite_rule(64 * scale)
                                    : finite_rule(64 * scale, 0.0, u_max);
  const int nphi = 256 * scale;
  double acc = 0.0;
  for (std::size_t i = 0; i < ur.nodes.size(); ++i) {
    double u = ur.nodes[i];
    double gu = semi_infinite ? g(u) * std::exp(u) : g(u); // undo e^{-u} weight
    double rr = std::sqrt(u);
    double ring = 0.0;
    for (int j = 0; j < nphi; ++j) {
      double phi = 2.0 * M_PI * j / nphi;
      ring += f(beta * rr * std::cos(phi), gamma * rr * std::sin(phi));
    }
    acc += ur.weights[i] * gu * ring * (2.0 * M_PI / nphi);
  }
  return acc * beta * gamma / 2.0;
}

template <class F>
double integrate_refined(const Density& density, F&& f, const char* what,
                         double tol = 1e-10) {
  double prev = integrate_against(density, f, 0);
  for (int level = 1; level <= 3; ++level) {
    double cur = integrate_against(density, f, level);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw numerical_error(std::string(what) + ": quadrature did not converge");
}

// Area of the support (infinity for unbounded); used to pick the owner of the
// node set in overlap_integral so the choice is order-independent.
double support_area(const Density& d) {
  if (std::holds_alternative<GaussianDensity>(d))
    return std::numeric_limits<double>::infinity();
  if (const auto* e = std::get_if<UniformEllipseDensity>(&d))
    return M_PI * e->beta * e->gamma;
  if (const auto* r = std::get_if<RadialDensity>(&d)) {
    if (!std::isfinite(r->support_radius)) return std::numeric_limits<double>::infinity();
    return M_PI * r->beta * r->gamma * r->support_radius * r->support_radius;
  }
  const auto& b = std::get<GeneralDensity>(d).support_box;
  return (b.q_max - b.q_min) * (b.p_max - b.p_min);
}

double kind_rank(const Density& d) { return double(d.index()); }

// Characteristic (q, p) scales, completing the order-independent owner key.
std::pair<double, double> scales_of(const Density& d) {
  if (const auto* g = std::get_if<GaussianDensity>(&d)) return {g->beta, g->gamma};
  if (const auto* e = std::get_if<UniformEllipseDensity>(&d)) return {e->beta, e->gamma};
  if (const auto* r = std::get_if<RadialDensity>(&d)) return {r->beta, r->gamma};
  const auto& b = std::get<GeneralDensity>(d).support_box;
  return {b.q_max - b.q_min, b.p_max - b.p_min};
}

} // namespace

double uncertainty_product(const Density& density) {
  if (const auto* g = std::get_if<GaussianDensity>(&density))
    return g->beta * g->gamma / 2.0;
  if (const auto* e = std::get_if<UniformEllipseDensity>(&density))
    return e->beta * e->gamma / 4.0;
  double m0 = integrate_refined(density, [](double, double) { return 1.0; },
                                "uncertainty_product");
  double mq = integrate_refined(density, [](double q, double) { return q; },
                                "uncertainty_product");
  double mp = integrate_refined(density, [](double, double p) { return p; },
                                "uncertainty_product");
  double mqq = integrate_refined(density, [](double q, double) { return q * q; },
                                 "uncertainty_product");
  double mpp = integrate_refined(density, [](double, double p) { return p * p; },
                                 "uncertainty_product");
  double var_q = mqq / m0 - (mq / m0) * (mq / m0);
  double var_p = mpp / m0 - (mp / m0) * (mp / m0);
  if (!(var_q > 0.0) || !(var_p > 0.0) || !std::isfinite(var_q) || !std::isfinite(var_p))
    throw numerical_error("uncertainty_product: divergent or degenerate second moment");
  return std::sqrt(var_q * var_p);
}

double overlap_integral(const Density& rho, const Density& rho_prime) {
  // Evaluate with the node set of the more compact density, so a hard support
  // edge sits at the domain boundary (where it is harmless) for every pair we
  // ship.  The owner choice ignores argument order, making the result exactly
  // symmetric.
  auto key = [](const Density& d) {
    auto [sq, sp] = scales_of(d);
    return std::tuple(support_area(d), kind_rank(d), sq, sp);
  };
  const Density& owner = key(rho_prime) < key(rho) ? rho_prime : rho;
  const Density& other = (&owner == &rho) ? rho_prime : rho;
  return integrate_refined(
      owner, [&](double q, double p) { return evaluate(other, q, p); },
      "overlap_integral", 1e-11);
}

double normalization_residual(const Density& density) {
  double mass =
      integrate_refined(density, [](double, double) { return 1.0; },
                        "normalization_residual");
  return std::abs(mass - 1.0);
}

// ---------------------------------------------------------------------------
// density-spec JSON

namespace {

using nlohmann::json;

double required_positive(const json& j, const char* key) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string("density spec: missing \"") + key + "\"");
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("density spec: \"") + key + "\" must be a number");
  double v = j.at(key).get<double>();
  if (!(v > 0.0))
    throw std::invalid_argument(std::string("density spec: \"") + key + "\" must be positive");
  return v;
}

double optional_positive(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("density spec: \"") + key + "\" must be a number");
  double v = j.at(key).get<double>();
  if (!(v > 0.0))
    throw std::invalid_argument(std::string("density spec: \"") + key + "\" must be positive");
  return v;
}

} // namespace

Density density_from_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("density spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw std::invalid_argument("density spec: object with a string \"type\" required");
  const std::string type = j.at("type").get<std::string>();
  const double hbar = optional_positive(j, "hbar", 1.0);
  if (type == "gaussian" || type == "uniform_ellipse") {
    if (j.contains("amplitude"))
      throw std::invalid_argument("density spec: \"amplitude\" is only supported for uniform_box");
    double beta = required_positive(j, "beta");
    double gamma = required_positive(j, "gamma");
    if (type == "gaussian") return GaussianDensity{beta, gamma, hbar};
    return UniformEllipseDensity{beta, gamma, hbar};
  }
  if (type == "uniform_box") {
    double a = required_positive(j, "q_half_width");
    double b = required_positive(j, "p_half_width");
    double amplitude = optional_positive(j, "amplitude", 1.0);
    return uniform_box_density(a, b, hbar, amplitude);
  }
  throw std::invalid_argument("density spec: unknown type \"" + type + "\"");
}

} // namespace groen
