#pragma once

// Inverse solver for periodic spectral measures: the h and g sequences,
// kernel profiles f_t and the piecewise-constant Hamiltonian on (n/2, (n+1)/2).

#include <cstddef>
#include <vector>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/measure.hpp"
#include "canonsys/toeplitz.hpp"

namespace canonsys {

struct HgSequences {
  std::vector<double> h;  // h_0..h_N
  std::vector<double> g;  // g_0..g_N
};

/// h_n = Sigma[G_{n+1}^-1] - Sigma[G_n^-1], g_n from the Delta sums.
HgSequences hg_sequences(const MomentSequence& gamma, std::size_t N, const ToeplitzOptions& options = {});

struct KernelProfile {
  double t = 0.0;
  int n = 0;
  std::vector<double> breakpoints;  // -t = b_0 < ... < b_{2n+1} = t
  std::vector<cplx> values;         // f_t on (b_i, b_{i+1})
  double integral = 0.0;            // int f_t
  double k0 = 0.0;                  // integral / 2

  cplx value_at(double xi) const;
  double length_weighted_integral() const;
};

KernelProfile kernel_profile(const MomentSequence& gamma, double t);

struct PeriodicSolveOptions {
  std::size_t steps = 8;
  double gauge_k = 0.0;
  bool crosscheck = false;
  double crosscheck_tol = 1e-6;
  DualOptions dual;
};

/// Blocks (n/2, (n+1)/2), n = 0..steps-1, with h11 = h_n, h12 = g_n - k h_n and
/// h22 = (1 + h12^2) / h11.
PiecewiseHamiltonian hamiltonian_from_periodic(const SpectralMeasure& mu, const PeriodicSolveOptions& options);

/// h sequence of the b = 0 dual measure, h~_0..h~_N.
std::vector<double> dual_h_sequence(const SpectralMeasure& mu, std::size_t N, const DualOptions& options = {});

}  // namespace canonsys
