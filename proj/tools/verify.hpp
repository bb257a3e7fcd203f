#pragma once
#include <string>

// Runs the library's invariant suites and prints a pass/fail table.
// `only` restricts to one group (special, densities, quantizer, spectra,
// kernel, cli); empty means all.  Returns 0 iff every check passed.
int run_verify(const std::string& only);
