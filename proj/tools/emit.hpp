// Deterministic CSV/JSON emitters shared by the CLI and the verify suite.
// Everything numeric goes through %.12g so identical inputs give identical
// bytes, independent of locale or stream state.
#pragma once
#include <cstdio>
#include <string>
#include <vector>

#include "groen/quantizer.hpp"
#include "groen/spectra.hpp"

namespace cli {

inline std::string num12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

struct SpectrumRow {
  int n;
  double eigenvalue;
  std::string method;
};

inline std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "n,eigenvalue,method\n";
  for (const SpectrumRow& r : rows)
    out += std::to_string(r.n) + "," + num12(r.eigenvalue) + "," + r.method + "\n";
  return out;
}

inline std::string spectrum_json(const std::vector<SpectrumRow>& rows) {
  std::string out = "{\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ',';
    out += "{\"n\":" + std::to_string(rows[i].n);
    out += ",\"eigenvalue\":" + num12(rows[i].eigenvalue);
    out += ",\"method\":\"" + rows[i].method + "\"}";
  }
  out += "]}\n";
  return out;
}

inline std::string sweep_csv(const groen::SweepResult& result) {
  std::string out = "uncertainty_over_hbar,min_bound,max_bound,family\n";
  for (const groen::SweepRow& r : result.rows) {
    out += num12(r.uncertainty_over_hbar) + "," + num12(r.min_bound) + "," +
           num12(r.max_bound) + "," + to_string(r.family) + "\n";
  }
  return out;
}

inline std::string sweep_json(const groen::SweepResult& result) {
  std::string out = "{\"rows\":[";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const groen::SweepRow& r = result.rows[i];
    if (i) out += ',';
    out += "{\"uncertainty_over_hbar\":" + num12(r.uncertainty_over_hbar);
    out += ",\"min_bound\":" + num12(r.min_bound);
    out += ",\"max_bound\":" + num12(r.max_bound);
    out += ",\"family\":\"" + to_string(r.family) + "\"}";
  }
  out += "]}\n";
  return out;
}

// Matrix export plus the eigenvalue list, spliced into one object.
inline std::string quantize_json(const groen::GroenewoldMatrix& matrix,
                                 const std::vector<double>& eigenvalues) {
  std::string out = groen::matrix_to_json(matrix);
  out.pop_back(); // trailing '}'
  out += ",\"eigenvalues\":[";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (i) out += ',';
    out += num12(eigenvalues[i]);
  }
  out += "]}\n";
  return out;
}

} // namespace cli
