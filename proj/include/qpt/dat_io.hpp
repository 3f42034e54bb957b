#pragma once

#include <string>
#include <vector>

#include "qpt/complex.hpp"

namespace qpt {

// The .dat text format: one facet per row as n binary digits (digit i = 1
// iff vertex i is in the facet), complexes separated by blank lines. An
// optional first line "n=<k>" fixes the row length; headerless input infers
// n from the first row. save_dat writes the header only for n != 15 and
// emits rows in canonical mask order, so save(load(x)) == canonicalize(x).
std::vector<Complex> load_dat(const std::string& text);
std::string save_dat(const std::vector<Complex>& complexes);

// JSON mirror: {"n": <k>, "complexes": [[[v,...], ...], ...]} with 1-based
// vertex lists.
std::vector<Complex> load_json_complexes(const std::string& text);
std::string save_json_complexes(const std::vector<Complex>& complexes);

}  // namespace qpt
