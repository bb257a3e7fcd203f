// groen: quantise classical phase-space densities onto a truncated Fock basis
// and emit spectra, bound sweeps, and matrix exports as CSV/JSON.
//
// Exit codes: 0 ok, 1 verify failure, 2 config error, 3 numerical failure,
// 4 normalisation failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groen/densities.hpp"
#include "groen/errors.hpp"
#include "groen/quantizer.hpp"
#include "groen/spectra.hpp"

#include "emit.hpp"
#include "verify.hpp"

namespace {

using nlohmann::json;

constexpr int kUnsetInt = std::numeric_limits<int>::min();
const double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Cfg {
  std::string family;
  std::string density_spec;
  std::string out;
  std::string format; // defaulted per subcommand after merging
  std::string config;
  std::string only;
  double s = kUnset;
  double beta = kUnset;
  double gamma = kUnset;
  double hbar = 1.0;
  double s_min = kUnset;
  double s_max = kUnset;
  int n_max = kUnsetInt;
  int steps = kUnsetInt;
  int jobs = 1;
};

bool given(double v) { return !std::isnan(v); }

// Optional JSON config file; values only fill in flags the user did not pass.
void merge_config(const CLI::App* cmd, Cfg& c, const std::vector<std::string>& keys) {
  if (c.config.empty()) return;
  std::ifstream f(c.config);
  if (!f) throw std::invalid_argument("cannot read config file: " + c.config);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const std::string& k : keys) known = known || k == key;
    if (!known)
      throw std::invalid_argument("config key not valid for this subcommand: " + key);
    std::string flag = "--" + key;
    for (char& ch : flag)
      if (ch == '_') ch = '-';
    if (cmd->count(flag) > 0) continue; // explicit flag wins
    try {
      if (key == "family") c.family = value.get<std::string>();
      else if (key == "density_spec") c.density_spec = value.get<std::string>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "format") c.format = value.get<std::string>();
      else if (key == "only") c.only = value.get<std::string>();
      else if (key == "s") c.s = value.get<double>();
      else if (key == "beta") c.beta = value.get<double>();
      else if (key == "gamma") c.gamma = value.get<double>();
      else if (key == "hbar") c.hbar = value.get<double>();
      else if (key == "s_min") c.s_min = value.get<double>();
      else if (key == "s_max") c.s_max = value.get<double>();
      else if (key == "n_max") c.n_max = value.get<int>();
      else if (key == "steps") c.steps = value.get<int>();
      else if (key == "jobs") c.jobs = value.get<int>();
    } catch (const json::exception& e) {
      throw std::invalid_argument("config value for \"" + key + "\" has the wrong type");
    }
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f.write(text.data(), std::streamsize(text.size()));
  f.close();
  if (f.fail()) throw std::invalid_argument("error writing output file: " + path);
}

groen::Family parse_family(const std::string& name) {
  if (name == "gaussian") return groen::Family::gaussian;
  if (name == "uniform") return groen::Family::uniform;
  throw std::invalid_argument("unknown family (expected gaussian or uniform): " + name);
}

std::string pick_format(const Cfg& c, const char* fallback) {
  std::string fmt = c.format.empty() ? fallback : c.format;
  if (fmt != "csv" && fmt != "json")
    throw std::invalid_argument("unknown format (expected csv or json): " + fmt);
  return fmt;
}

groen::Density load_density_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read density spec: " + path);
  std::ostringstream text;
  text << f.rdbuf();
  return groen::density_from_spec(text.str());
}

// Densities must integrate to 1 before they are quantised.
void normalisation_gate(const groen::Density& density) {
  double resid = groen::normalization_residual(density);
  if (resid > 1e-6) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "density is not normalised (residual %.3g)", resid);
    throw groen::normalization_error(buf);
  }
}

struct Quantized {
  groen::GroenewoldMatrix matrix;
  bool diagonal_spectrum; // diagonal holds the eigenvalues indexed by Fock n
};

Quantized quantize_density(const groen::Density& density, int n_max) {
  using namespace groen;
  if (std::holds_alternative<GaussianDensity>(density))
    return {quantize_radial(gaussian_as_radial(std::get<GaussianDensity>(density)), n_max),
            true};
  if (std::holds_alternative<UniformEllipseDensity>(density))
    return {quantize_radial(ellipse_as_radial(std::get<UniformEllipseDensity>(density)),
                            n_max),
            true};
  if (std::holds_alternative<RadialDensity>(density))
    return {quantize_radial(std::get<RadialDensity>(density), n_max), true};
  const GeneralDensity& g = std::get<GeneralDensity>(density);
  return {quantize_general(g, n_max, default_rule_pair(g.support_box, n_max)), false};
}

double resolve_s(const Cfg& c) {
  bool have_bg = given(c.beta) || given(c.gamma);
  if (given(c.s) && have_bg)
    throw std::invalid_argument("give either --s or --beta/--gamma, not both");
  if (given(c.s)) return c.s;
  if (given(c.beta) != given(c.gamma))
    throw std::invalid_argument("--beta and --gamma must be given together");
  if (!given(c.beta)) throw std::invalid_argument("missing --s (or --beta/--gamma)");
  if (!(c.beta > 0.0) || !(c.gamma > 0.0) || !(c.hbar > 0.0))
    throw std::invalid_argument("beta, gamma, hbar must be positive");
  return c.beta * c.gamma / c.hbar;
}

int cmd_spectrum(const Cfg& c) {
  using namespace groen;
  bool have_family = !c.family.empty();
  bool have_spec = !c.density_spec.empty();
  if (have_family == have_spec)
    throw std::invalid_argument("spectrum needs exactly one of --family or --density-spec");
  int n_max = c.n_max == kUnsetInt ? 64 : c.n_max;
  if (n_max < 0) throw std::invalid_argument("n-max must be >= 0");
  std::string fmt = pick_format(c, "csv");

  std::vector<cli::SpectrumRow> rows;
  if (have_family) {
    Family family = parse_family(c.family);
    double s = resolve_s(c);
    if (family == Family::gaussian) {
      for (int n = 0; n <= n_max; ++n)
        rows.push_back({n, gaussian_eigenvalue(n, s), to_string(Method::closed_form)});
    } else {
      std::vector<double> lam = uniform_spectrum(s, n_max);
      for (int n = 0; n <= n_max; ++n)
        rows.push_back({n, lam[n], to_string(Method::quadrature)});
    }
  } else {
    if (given(c.s) || given(c.beta) || given(c.gamma))
      throw std::invalid_argument("--density-spec conflicts with --s/--beta/--gamma");
    Density density = load_density_spec(c.density_spec);
    normalisation_gate(density);
    Quantized q = quantize_density(density, n_max);
    if (q.diagonal_spectrum) {
      std::vector<double> diag = q.matrix.diagonal();
      for (int n = 0; n <= n_max; ++n)
        rows.push_back({n, diag[n], to_string(Method::quadrature)});
    } else {
      SpectrumResult r = eigendecompose(q.matrix);
      for (int n = 0; n <= n_max; ++n)
        rows.push_back({n, r.eigenvalues[n], to_string(Method::eigensolve)});
    }
  }
  write_output(fmt == "csv" ? cli::spectrum_csv(rows) : cli::spectrum_json(rows), c.out);
  return 0;
}

int cmd_sweep(const Cfg& c) {
  using namespace groen;
  if (c.family.empty()) throw std::invalid_argument("sweep needs --family");
  Family family = parse_family(c.family);
  if (!given(c.s_min) || !given(c.s_max))
    throw std::invalid_argument("sweep needs --s-min and --s-max");
  if (!(c.s_min > 0.0) || !(c.s_max > c.s_min))
    throw std::invalid_argument("sweep needs 0 < s-min < s-max");
  int steps = c.steps == kUnsetInt ? 50 : c.steps;
  if (steps < 2) throw std::invalid_argument("sweep needs --steps >= 2");
  int n_max = c.n_max == kUnsetInt ? 512 : c.n_max;
  std::string fmt = pick_format(c, "csv");

  // endpoint-exact linspace: both ends and any rational hit land exactly
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = ((steps - 1 - i) * c.s_min + i * c.s_max) / (steps - 1);

  SweepResult result = sweep(family, grid, n_max, c.jobs);
  write_output(fmt == "csv" ? cli::sweep_csv(result) : cli::sweep_json(result), c.out);
  return 0;
}

int cmd_quantize(const Cfg& c) {
  using namespace groen;
  if (c.density_spec.empty()) throw std::invalid_argument("quantize needs --density-spec");
  int n_max = c.n_max == kUnsetInt ? 16 : c.n_max;
  if (n_max < 0) throw std::invalid_argument("n-max must be >= 0");
  std::string fmt = pick_format(c, "json");
  if (fmt != "json") throw std::invalid_argument("quantize emits JSON only");

  Density density = load_density_spec(c.density_spec);
  normalisation_gate(density);
  Quantized q = quantize_density(density, n_max);
  SpectrumResult spectrum = eigendecompose(q.matrix);
  write_output(cli::quantize_json(q.matrix, spectrum.eigenvalues), c.out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-basis quantisation of classical phase-space densities"};
  app.require_subcommand(1);
  Cfg c;

  CLI::App* sp = app.add_subcommand("spectrum", "eigenvalues of one quantised density");
  sp->add_option("--family", c.family, "gaussian|uniform");
  sp->add_option("--s", c.s, "dimensionless parameter beta*gamma/hbar");
  sp->add_option("--beta", c.beta, "q-scale (with --gamma, instead of --s)");
  sp->add_option("--gamma", c.gamma, "p-scale (with --beta, instead of --s)");
  sp->add_option("--hbar", c.hbar, "Planck constant (default 1)");
  sp->add_option("--n-max", c.n_max, "highest Fock index (default 64)");
  sp->add_option("--density-spec", c.density_spec, "density JSON file (instead of --family)");
  sp->add_option("--out", c.out, "output path (default stdout)");
  sp->add_option("--format", c.format, "csv|json (default csv)");
  sp->add_option("--config", c.config, "JSON config file; explicit flags win");

  CLI::App* sw = app.add_subcommand("sweep", "spectral bounds across a range of s");
  sw->add_option("--family", c.family, "gaussian|uniform");
  sw->add_option("--s-min", c.s_min, "lower end of the s grid");
  sw->add_option("--s-max", c.s_max, "upper end of the s grid");
  sw->add_option("--steps", c.steps, "grid points (default 50)");
  sw->add_option("--n-max", c.n_max, "truncation per row (default 512)");
  sw->add_option("--jobs", c.jobs, "parallel rows (default 1)");
  sw->add_option("--out", c.out, "output path (default stdout)");
  sw->add_option("--format", c.format, "csv|json (default csv)");
  sw->add_option("--config", c.config, "JSON config file; explicit flags win");

  CLI::App* qz = app.add_subcommand("quantize", "full matrix export of one density");
  qz->add_option("--density-spec", c.density_spec, "density JSON file");
  qz->add_option("--n-max", c.n_max, "highest Fock index (default 16)");
  qz->add_option("--out", c.out, "output path (default stdout)");
  qz->add_option("--format", c.format, "json");
  qz->add_option("--config", c.config, "JSON config file; explicit flags win");

  CLI::App* vf = app.add_subcommand("verify", "run the invariant suites");
  vf->add_option("--only", c.only,
                 "restrict to one group: special|densities|quantizer|spectra|kernel|cli");
  vf->add_option("--config", c.config, "JSON config file; explicit flags win");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      merge_config(sp, c,
                   {"family", "s", "beta", "gamma", "hbar", "n_max", "density_spec", "out",
                    "format"});
      return cmd_spectrum(c);
    }
    if (sw->parsed()) {
      merge_config(sw, c,
                   {"family", "s_min", "s_max", "steps", "n_max", "jobs", "out", "format"});
      return cmd_sweep(c);
    }
    if (qz->parsed()) {
      merge_config(qz, c, {"density_spec", "n_max", "out", "format"});
      return cmd_quantize(c);
    }
    merge_config(vf, c, {"only"});
    return run_verify(c.only);
  } catch (const groen::normalization_error& e) {
    std::fprintf(stderr, "normalisation failure: %s\n", e.what());
    return 4;
  } catch (const groen::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}
