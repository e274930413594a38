#pragma once

// Spectral measures of canonical systems and the transforms built on them:
// trigonometric moments, the Cauchy (Herglotz) transform, Aleksandrov-Clark
// dual measures and the Fourier representation used by the soliton solver.
//
// Conventions
//   * Periodic measures live on [0, 2pi) and are extended 2pi-periodically.
//     Their density is sum_k gamma_k e^{ikx} with gamma_{-k} = conj(gamma_k),
//     stored for k >= 0 only. An atom (x0, m) is the mass m at x0 + 2 pi Z.
//   * Line measures are alpha * Lebesgue + sum pi * beta_n * delta_{lambda_n}.
//     The pi factor is part of the atom convention.
//   * Kmu(z) = (1/pi) int [1/(s - z) - s/(1 + s^2)] dmu(s) up to a real
//     constant, so that Im Kmu is the Poisson extension of mu.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "canonsys/polynomial.hpp"

namespace canonsys {

/// Hermitian sequence gamma_0..gamma_K. Negative indices are implied.
class MomentSequence {
 public:
  MomentSequence() = default;
  explicit MomentSequence(std::vector<cplx> gamma);

  std::size_t max_index() const { return gamma_.size() - 1; }
  std::size_t size() const { return gamma_.size(); }

  /// gamma_k for any |k| <= K.
  cplx operator[](long k) const;

  std::span<const cplx> values() const { return gamma_; }
  bool is_real(double tol = 1e-14) const;
  MomentSequence truncated(std::size_t K) const;

 private:
  std::vector<cplx> gamma_{cplx{1.0, 0.0}};
};

struct TrigCoefficient {
  int k = 0;
  cplx value;
};

struct PeriodicAtom {
  double x = 0.0;
  double mass = 0.0;
};

struct LineAtom {
  double lambda = 0.0;
  double beta = 0.0;
};

struct PeriodicMeasure {
  std::vector<TrigCoefficient> density;  // sorted by k, unique, k >= 0
  std::vector<PeriodicAtom> atoms;       // x in [0, 2pi)
  // The density list is a (truncated) moment sequence rather than a
  // trigonometric polynomial density; pointwise nonnegativity is not implied.
  bool moment_defined = false;
};

struct LineMeasure {
  double lebesgue = 0.0;
  std::vector<LineAtom> atoms;
};

struct RationalDensityMeasure {
  RPoly numerator;
  RPoly denominator;
  std::vector<LineAtom> atoms;
};

class SpectralMeasure {
 public:
  using Variant = std::variant<PeriodicMeasure, LineMeasure, RationalDensityMeasure>;

  static SpectralMeasure periodic(std::vector<TrigCoefficient> density,
                                  std::vector<PeriodicAtom> atoms = {});
  static SpectralMeasure periodic_from_moments(const MomentSequence& moments);
  static SpectralMeasure line(double lebesgue, std::vector<LineAtom> atoms = {});
  static SpectralMeasure rational(RPoly numerator, RPoly denominator,
                                  std::vector<LineAtom> atoms = {});

  const Variant& variant() const { return v_; }
  bool is_periodic() const { return std::holds_alternative<PeriodicMeasure>(v_); }
  bool is_line() const { return std::holds_alternative<LineMeasure>(v_); }
  bool is_rational() const { return std::holds_alternative<RationalDensityMeasure>(v_); }

  const PeriodicMeasure& as_periodic() const;
  const LineMeasure& as_line() const;
  const RationalDensityMeasure& as_rational() const;

  /// Symmetric under x -> -x (mod 2pi for periodic measures).
  bool is_even(double tol = 1e-12) const;

  /// Finite measures (pure point line measures) are never PW-sampling.
  bool flagged_non_pw() const;

  /// Absolutely continuous part at x.
  double density(double x) const;

  /// mu((a, b]).
  double mass(double a, double b) const;

  /// Atom locations and masses inside (a, b] (masses include the pi factor
  /// for line conventions).
  std::vector<std::pair<double, double>> atoms_in(double a, double b) const;

 private:
  explicit SpectralMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

MomentSequence periodic_moments(const SpectralMeasure& measure, std::size_t K);

struct HerglotzRep {
  enum class Kind { RationalInZ, RationalInS };
  Kind kind = Kind::RationalInZ;
  CPoly numerator{cplx{0.0, 0.0}};
  CPoly denominator{cplx{1.0, 0.0}};
  double real_offset = 0.0;

  cplx eval(cplx z) const;
  cplx derivative(cplx z) const;
};

HerglotzRep cauchy_transform(const SpectralMeasure& measure);

/// Im K(z) > 0 on a grid of n points of the open upper half-plane.
bool herglotz_spot_check(const HerglotzRep& rep, int n = 100);

struct DualOptions {
  // Quadrature height for periodic duals. A value <= 0 selects
  // min(0.5, 8 / K), which keeps e^{Ky} amplification bounded.
  double height = 0.0;
  int quadrature_points = 4096;
  double consistency_tol = 1e-9;
};

/// Aleksandrov-Clark dual with parameter b: P(dual) = Re i / (Kmu + b).
/// Periodic input yields a moment-defined periodic measure (moments 0..K);
/// line input yields a rational density plus atoms at real zeros of Kmu + b.
SpectralMeasure dual_measure(const SpectralMeasure& measure, double b, std::size_t K,
                             const DualOptions& options = {});

/// Trapezoid extraction of the dual moments from Re i/(K + b) at height y.
MomentSequence dual_moments_at_height(const HerglotzRep& rep, double b, std::size_t K,
                                      double y, int quadrature_points);

struct FourierAtom {
  double position = 0.0;
  cplx weight;
};

/// coefficient * e^{-i frequency xi}
struct FourierExponential {
  double frequency = 0.0;
  cplx coefficient;
};

struct FourierRep {
  std::vector<FourierAtom> atoms;
  std::vector<FourierExponential> exponentials;
};

/// Periodic measures with atoms have infinitely many Fourier atoms; those
/// are truncated to |k| <= max(max_index, density degree).
FourierRep fourier_rep(const SpectralMeasure& measure, std::size_t max_index = 0);

}  // namespace canonsys
