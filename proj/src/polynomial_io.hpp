#pragma once

#include <string>

#include "polynomial.hpp"

namespace projcurv {

// JSON wire format, the bit-exact interchange contract:
//   { "num_vars": 3, "degree": 2,
//     "terms": [ {"exponents": [2,0,0], "re": 1.0, "im": 0.0}, ... ] }
// Serialization emits terms in canonical order with shortest round-trip
// doubles, so parse(serialize(p)) reproduces p exactly.
HomogeneousPolynomial polynomial_from_json(const std::string& json_text);
std::string polynomial_to_json(const HomogeneousPolynomial& poly);

// Text shorthand: "z0^2 + z1^2 + z2^2", factors joined with '*', optional
// complex coefficients as "(a+bi)*z0^1*z1^2". When num_vars < 0 it is
// inferred as the largest variable index plus one. The polynomial must be
// homogeneous; mixed term degrees are a parse error.
HomogeneousPolynomial polynomial_from_text(const std::string& text, int num_vars = -1);

}  // namespace projcurv
