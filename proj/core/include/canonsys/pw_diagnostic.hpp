#pragma once

// Finite-window heuristic for the PW-sampling criterion: bounded mass on unit
// intervals and delta-capacity density on long intervals. Never a proof.

#include <string_view>

#include "canonsys/measure.hpp"

namespace canonsys {

enum class PwVerdict { ConsistentWithPw, ViolatesUnitMassBound, ViolatesCapacity };

std::string_view to_string(PwVerdict verdict);

struct PwOptions {
  double t = 1.0;
  double L = 10.0;
  double delta = 0.4;
  double unit_mass_bound = 1e6;
  double scan_step = 0.0;  // spacing of tested interval starts; <= 0 picks min(1, L/10)
};

struct PwReport {
  double window_lo = 0.0;
  double window_hi = 0.0;
  double sup_unit_mass = 0.0;
  int intervals_checked = 0;
  int min_capacity = 0;
  double min_capacity_ratio = 0.0;  // min over I of C_delta(I) / |I|
  double worst_interval_lo = 0.0;
  bool capacity_ok = true;
  PwVerdict verdict = PwVerdict::ConsistentWithPw;
};

/// Maximal number of disjoint delta-massive intervals (a, b] inside the
/// window that intersect (lo, hi), by earliest-right-endpoint greedy.
int delta_capacity(const SpectralMeasure& mu, double lo, double hi, double delta, double window_lo, double window_hi);

PwReport pw_diagnostic(const SpectralMeasure& mu, double window_lo, double window_hi, const PwOptions& options = {});

}  // namespace canonsys
