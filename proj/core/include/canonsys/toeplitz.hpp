#pragma once

// Hermitian Toeplitz moment matrices and the sum-of-entries functionals
// Sigma[G^-1] and Sigma[D G^-1] that drive the periodic inverse solver.
//
// Gamma_n has entries (j, k) -> gamma_{k-j}; Delta_n has zero diagonal and
// entries sign(k - j) gamma_{k-j}. First rows are (gamma_0, gamma_1, ...)
// and (0, gamma_1, ...).

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "canonsys/measure.hpp"

namespace canonsys {

struct MomentMatrices {
  std::size_t n = 0;
  Eigen::MatrixXcd gamma;
  Eigen::MatrixXcd delta;
};

MomentMatrices moment_matrices(const MomentSequence& gamma, std::size_t n);

/// Every leading minor of Gamma_n is positive definite.
bool positivity_check(const MomentSequence& gamma, std::size_t n);

struct InverseSums {
  double sigma = 0.0;         // Sigma[Gamma_n^-1]
  cplx delta_sigma{0.0, 0.0};  // Sigma[Delta_n Gamma_n^-1]
};

enum class SolvePath { Levinson, Dense };

struct ToeplitzOptions {
  SolvePath path = SolvePath::Levinson;
  // Levinson hands over to a dense LDLT once |reflection| exceeds 1 - this.
  double reflection_margin = 1e-12;
  // Ill-posed once det Gamma_{m+1} / det Gamma_m falls below this * gamma_0.
  double minor_ratio_floor = 1e-13;
};

/// Solves Gamma_n x = rhs.
Eigen::VectorXcd toeplitz_solve(const MomentSequence& gamma, const Eigen::VectorXcd& rhs,
                                const ToeplitzOptions& options = {});

InverseSums inverse_sums(const MomentSequence& gamma, std::size_t n,
                         const ToeplitzOptions& options = {});

/// inverse_sums for every size 0..n in one O(n^2) Levinson sweep; entry 0 is zero.
std::vector<InverseSums> inverse_sums_progressive(const MomentSequence& gamma, std::size_t n,
                                                  const ToeplitzOptions& options = {});

/// Hand-derived Sigma_n for real moments and n <= 4. Oracle only.
double sigma_closed_form(const MomentSequence& gamma, std::size_t n);

}  // namespace canonsys
