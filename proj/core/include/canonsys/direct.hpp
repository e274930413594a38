#pragma once

// Direct problem for piecewise-constant Hamiltonians: transfer matrices of
// X' = z J H X with J = (0 -1; 1 0), the Hermite-Biehler function E = A - iC,
// representing measures and the round-trip verifier.

#include <cstddef>
#include <vector>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/measure.hpp"

namespace canonsys {

struct TransferMatrix {
  double t = 0.0;
  cplx z;
  cplx A{1.0, 0.0}, B{0.0, 0.0}, C{0.0, 0.0}, D{1.0, 0.0};
  bool has_derivative = false;
  cplx dA{0.0, 0.0}, dB{0.0, 0.0}, dC{0.0, 0.0}, dD{0.0, 0.0};
  // Entries are e^{-log_scale} times the true ones (see matrizant_scaled).
  double log_scale = 0.0;

  cplx E() const { return A - cplx(0.0, 1.0) * C; }
  cplx E_tilde() const { return B - cplx(0.0, 1.0) * D; }
  cplx det() const { return A * D - B * C; }
};

/// Ordered product of exact block exponentials, later blocks on the left.
TransferMatrix matrizant(const PiecewiseHamiltonian& H, double t, cplx z, bool with_derivative = false);

/// As matrizant, but each block factor is divided by e^{|Im z| tau}; the
/// accumulated logarithm is stored in log_scale. Suited to large |Im z|.
TransferMatrix matrizant_scaled(const PiecewiseHamiltonian& H, double t, cplx z);

/// 1/|E_t(x)|^2. With rescale, uses the invariant (A, C) H_last (A, C)^T of
/// the final block instead of |E|^2.
double spectral_density(const PiecewiseHamiltonian& H, double t, double x, bool rescale = false);

struct RepresentingMeasure {
  double t = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<double> points;  // zeros of A_t, ascending
  std::vector<double> masses;  // pi / (phi' |E|^2)
};

/// Atoms of mu_{-1} on [lo, hi] located by monotone-phase bracketing.
RepresentingMeasure representing_measure(const PiecewiseHamiltonian& H, double t, double lo, double hi);

/// Zeros of C_t on [lo, hi], the interlacing partner of representing_measure.
std::vector<double> zeros_of_C(const PiecewiseHamiltonian& H, double t, double lo, double hi);

struct RoundtripReport {
  double T = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t atoms = 0;
  std::vector<cplx> estimated;
  std::vector<cplx> expected;
  std::vector<double> residuals;  // |estimated_k - expected_k|, k = 0..K

  double max_residual() const;
};

/// Periodic mu: averages over [-P pi, P pi). Line and rational mu: windowed
/// moments (1 / 2R) int_{-R}^{R} e^{-ikx} d mu with R = P pi.
RoundtripReport roundtrip_residual(const SpectralMeasure& mu, const PiecewiseHamiltonian& H, double T, std::size_t K,
                                   int window_periods);

struct KreinTypeEstimate {
  double slope = 0.0;     // regression slope of log|A_T(iy)| against y
  double expected = 0.0;  // int_0^T sqrt(det H)
  double relative_error() const;
};

KreinTypeEstimate krein_type_rate(const PiecewiseHamiltonian& H, double T, double y_lo = 1e2, double y_hi = 1e4,
                                  int samples = 25);

}  // namespace canonsys
