#pragma once

#include <string>

#include "toric/lattice.hpp"

namespace toric {

// {"d": 7, "error": ["H 0 1", "V 2 3"]}
std::string error_to_json(const ToricLattice& lat, const ErrorVector& e);
ErrorVector error_from_json(const std::string& text, int* d_out = nullptr);

// {"d": 7, "syndrome": [[0, 0], [1, 1]], "fake": false}
std::string syndrome_to_json(const ToricLattice& lat, const SyndromeVector& s);
SyndromeVector syndrome_from_json(const std::string& text, int* d_out = nullptr);

EdgeId parse_edge(const std::string& text);

// Shortest text that reads back as the same double.
std::string format_double(double x);

}  // namespace toric
