#include "canonsys/pw_diagnostic.hpp"

#include <algorithm>
#include <cmath>

#include "canonsys/errors.hpp"

namespace canonsys {

std::string_view to_string(PwVerdict verdict) {
  switch (verdict) {
    case PwVerdict::ConsistentWithPw:
      return "consistent-with-PW";
    case PwVerdict::ViolatesUnitMassBound:
      return "violates-(i)";
    case PwVerdict::ViolatesCapacity:
      return "violates-(ii)-on-window";
  }
  return "unknown";
}

namespace {

// Smallest b in [from, limit] with mu((p, b]) >= delta, or +inf.
double earliest_end(const SpectralMeasure& mu, double p, double from, double limit, double delta) {
  if (from > limit || mu.mass(p, limit) < delta) return INFINITY;
  if (mu.mass(p, from) >= delta) return from;
  double lo = from;
  double hi = limit;
  for (int it = 0; it < 60 && hi - lo > 1e-10 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mu.mass(p, mid) >= delta ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

int delta_capacity(const SpectralMeasure& mu, double lo, double hi, double delta, double window_lo, double window_hi) {
  if (!(delta > 0.0)) fail(ErrorKind::InvalidArgument, "delta must be positive");
  int count = 0;
  double p = window_lo;
  bool first = true;
  while (p < hi) {
    // The first interval only needs its right end beyond lo.
    const double from = first ? std::max(p + delta, std::nextafter(lo, INFINITY)) : p + delta;
    const double b = earliest_end(mu, p, from, window_hi, delta);
    if (!std::isfinite(b)) break;
    ++count;
    p = b;
    first = false;
  }
  return count;
}

PwReport pw_diagnostic(const SpectralMeasure& mu, double window_lo, double window_hi, const PwOptions& options) {
  if (!std::isfinite(window_lo) || !std::isfinite(window_hi) || !(window_hi > window_lo))
    fail(ErrorKind::InvalidArgument, "window must be a finite nonempty interval");
  if (!(options.t > 0.0) || !(options.L > 0.0) || !(options.delta > 0.0))
    fail(ErrorKind::InvalidArgument, "t, L and delta must be positive");
  if (window_hi - window_lo < 3.0 * options.L) fail(ErrorKind::InvalidArgument, "window must be at least 3L long");

  PwReport rep;
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;

  // (i) sup of mu((x, x+1]) over a fine grid plus atom-aligned starts.
  std::vector<double> starts;
  const double unit_step = 1.0 / 64.0;
  for (double x = window_lo; x + 1.0 <= window_hi + 1e-12; x += unit_step) starts.push_back(x);
  for (const auto& [pos, m] : mu.atoms_in(window_lo, window_hi)) {
    if (pos - 1.0 >= window_lo) starts.push_back(pos - 1.0);
    starts.push_back(std::nextafter(pos, -INFINITY));
  }
  for (double x : starts) {
    if (x + 1.0 > window_hi + 1e-12) continue;
    rep.sup_unit_mass = std::max(rep.sup_unit_mass, mu.mass(x, x + 1.0));
  }

  // (ii) capacity of every tested length-L subinterval.
  const double step = options.scan_step > 0.0 ? options.scan_step : std::min(1.0, options.L / 10.0);
  rep.min_capacity_ratio = INFINITY;
  for (double a = window_lo; a + options.L <= window_hi + 1e-12; a += step) {
    const int c = delta_capacity(mu, a, a + options.L, options.delta, window_lo, window_hi);
    const double ratio = c / options.L;
    ++rep.intervals_checked;
    if (ratio < rep.min_capacity_ratio) {
      rep.min_capacity_ratio = ratio;
      rep.min_capacity = c;
      rep.worst_interval_lo = a;
    }
  }
  rep.capacity_ok = rep.min_capacity_ratio >= options.t;

  if (rep.sup_unit_mass > options.unit_mass_bound) {
    rep.verdict = PwVerdict::ViolatesUnitMassBound;
  } else if (!rep.capacity_ok) {
    rep.verdict = PwVerdict::ViolatesCapacity;
  } else {
    rep.verdict = PwVerdict::ConsistentWithPw;
  }
  return rep;
}

}  // namespace canonsys
