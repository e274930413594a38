#pragma once

// Locale-independent CSV emission with 17 significant digits.

#include <string>
#include <string_view>
#include <vector>

#include "canonsys/hamiltonian.hpp"

namespace canonsys {

std::string format_double(double v);

/// Header "t_lo,t_hi,h11,h12,h22".
std::string piecewise_csv(const PiecewiseHamiltonian& H);

/// Header "t,h11,h12,h22".
std::string sampled_csv(const std::vector<SampledRow>& rows);

/// Inverse of piecewise_csv. Blocks need not be det-normalized.
PiecewiseHamiltonian parse_piecewise_csv(std::string_view text);

}  // namespace canonsys
