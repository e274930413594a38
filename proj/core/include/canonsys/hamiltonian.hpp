#pragma once

// Piecewise-constant 2x2 Hamiltonians on consecutive intervals of [0, T],
// their involutions and normalizing time changes.

#include <cstddef>
#include <vector>

namespace canonsys {

struct HamiltonianBlock {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double h11 = 1.0;
  double h12 = 0.0;
  double h22 = 1.0;

  double length() const { return t_hi - t_lo; }
  double det() const { return h11 * h22 - h12 * h12; }
  double trace() const { return h11 + h22; }
};

class PiecewiseHamiltonian {
 public:
  PiecewiseHamiltonian() = default;

  /// Validates contiguity from 0, positive lengths and positive
  /// (semi)definiteness. With unit_det, every block must have det 1.
  explicit PiecewiseHamiltonian(std::vector<HamiltonianBlock> blocks, bool unit_det = true);

  const std::vector<HamiltonianBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  double end() const { return blocks_.empty() ? 0.0 : blocks_.back().t_hi; }

  bool is_diagonal(double tol = 1e-14) const;
  bool is_det_normalized(double tol = 1e-12) const;

  /// Splits every block into 2^levels equal sub-blocks.
  PiecewiseHamiltonian refined(int levels) const;

 private:
  std::vector<HamiltonianBlock> blocks_;
  bool unit_det_ = true;
};

/// Sampled Hamiltonian row for the atomic solver.
struct SampledRow {
  double t = 0.0;
  double h11 = 0.0;
  double h12 = 0.0;
  double h22 = 0.0;
};

enum class Involution { Breve, Tilde, Conjugate };

/// Breve: (h11, -h12; -h12, h22). Tilde: (h22, -h12; -h12, h11).
/// Conjugate(k): (h11, h12 + k h11; h12 + k h11, h22 + 2k h12 + k^2 h11).
HamiltonianBlock involution(const HamiltonianBlock& block, Involution kind, double k = 0.0);
PiecewiseHamiltonian involution(const PiecewiseHamiltonian& H, Involution kind, double k = 0.0);

/// Piecewise-linear monotone map between original time t and new time s.
struct TimeChange {
  std::vector<double> t_knots;
  std::vector<double> s_knots;

  double s_of_t(double t) const;
  double t_of_s(double s) const;
};

enum class NormalizeMode { Det, Trace };

struct NormalizedHamiltonian {
  PiecewiseHamiltonian hamiltonian;
  TimeChange time_change;
};

/// Det mode: s = int sqrt(det H), H~ = H / sqrt(det H). Trace mode: s = int tr H.
NormalizedHamiltonian normalize(const PiecewiseHamiltonian& H, NormalizeMode mode);

}  // namespace canonsys
