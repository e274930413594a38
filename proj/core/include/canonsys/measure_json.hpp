#pragma once

// JSON schema for spectral measures.
//
//   {"type":"periodic","density":[{"k":0,"re":1.0,"im":0.0}],
//    "atoms":[{"x":3.14159,"mass":3.14159}],"moments_only":false}
//   {"type":"line","lebesgue":1.0,"atoms":[{"lambda":0.0,"beta":1.0}]}
//   {"type":"rational","numerator":[0,0,1],"denominator":[1,0,1],
//    "atoms":[{"lambda":0.0,"beta":1.0}]}
//
// Line atoms carry mass pi * beta. Polynomial coefficients ascend in degree.
// With "moments_only", density lists the moments gamma_0..gamma_K of a
// measure that need not have a trigonometric-polynomial density.
// Unknown keys are rejected.

#include <string>
#include <string_view>

#include "canonsys/measure.hpp"

namespace canonsys {

SpectralMeasure parse_measure_json(std::string_view text);
std::string measure_to_json(const SpectralMeasure& measure);

}  // namespace canonsys
