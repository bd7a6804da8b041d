#pragma once

#include <optional>
#include <string>

#include "acheck/circuit.hpp"

namespace acheck {

// Textual polynomial constraint format:
//
//   # comment
//   prime 21888242871839275222246405745257275088548364400416034343698204186575808495617;
//   input inp;
//   output out0, out1;
//   temp t;
//   eq out0 * inp;
//   eq t - (inp - 1)^2;
//
// `prime` is optional (`default_prime`, else the BN254 scalar field) and must precede every
// other statement. `eq a = b` is accepted as shorthand for `eq a - b`.
// The result has been passed through reduce_degree. Throws FormatError with
// the line number.
ConstraintSystem parse_polyir(const std::string& text, const std::optional<Prime>& default_prime = std::nullopt);

// Inverse of parse_polyir up to whitespace. Aux variables print as temps.
std::string print_polyir(const ConstraintSystem& sys);

}  // namespace acheck
