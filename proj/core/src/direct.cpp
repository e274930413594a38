#include "canonsys/direct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonsys/errors.hpp"
#include "canonsys/quadrature.hpp"

namespace canonsys {

namespace {

constexpr double kPi = std::numbers::pi;

template <class T>
struct Mat2 {
  T a, b, c, d;
};

template <class T>
Mat2<T> mul(const Mat2<T>& x, const Mat2<T>& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

template <class T>
Mat2<T> add(const Mat2<T>& x, const Mat2<T>& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

template <class T>
struct Propagation {
  Mat2<T> M{T(1), T(0), T(0), T(1)};
  Mat2<T> dM{T(0), T(0), T(0), T(0)};
  double log_scale = 0.0;
};

bool degenerate_block(const HamiltonianBlock& b) {
  return !(b.det() > 1e-14 * std::max(1.0, b.trace() * b.trace()));
}

// cos(u) e^{-|Im u|} and sin(u) e^{-|Im u|} without overflow.
std::pair<cplx, cplx> scaled_trig(cplx u) {
  const double m = std::abs(u.imag());
  const cplx ep = std::exp(cplx(-u.imag() - m, u.real()));
  const cplx em = std::exp(cplx(u.imag() - m, -u.real()));
  return {0.5 * (ep + em), (ep - em) / cplx(0.0, 2.0)};
}

template <class T>
Propagation<T> propagate(const PiecewiseHamiltonian& H, double t, T z, bool with_derivative, bool scaled) {
  if (!(t >= 0.0)) fail(ErrorKind::Range, "t must be nonnegative");
  if (t > H.end() * (1.0 + 1e-14) + 1e-300) {
    std::ostringstream os;
    os << "t = " << t << " exceeds the Hamiltonian's coverage " << H.end();
    fail(ErrorKind::Range, os.str());
  }
  Propagation<T> p;
  for (const auto& b : H.blocks()) {
    if (b.t_lo >= t) break;
    const double elapsed = std::min(b.t_hi, t) - b.t_lo;
    if (elapsed <= 0.0) continue;
    Mat2<T> F;
    Mat2<T> dF;
    if (degenerate_block(b)) {
      // (JH)^2 = 0: the exponential is I + z tau J H.
      const Mat2<T> JH{T(-b.h12), T(-b.h22), T(b.h11), T(b.h12)};
      F = {T(1) + z * elapsed * JH.a, z * elapsed * JH.b, z * elapsed * JH.c, T(1) + z * elapsed * JH.d};
      dF = {elapsed * JH.a, elapsed * JH.b, elapsed * JH.c, elapsed * JH.d};
    } else {
      const double r = std::sqrt(b.det());
      const double h1 = b.h11 / r;
      const double g = b.h12 / r;
      const double h2 = b.h22 / r;
      const double tau = r * elapsed;
      T c;
      T s;
      if constexpr (std::is_same_v<T, cplx>) {
        if (scaled) {
          std::tie(c, s) = scaled_trig(z * tau);
          p.log_scale += std::abs((z * tau).imag());
        } else {
          c = std::cos(z * tau);
          s = std::sin(z * tau);
        }
      } else {
        c = std::cos(z * tau);
        s = std::sin(z * tau);
      }
      F = {c - g * s, -h2 * s, h1 * s, c + g * s};
      dF = {tau * (-s - g * c), -tau * h2 * c, tau * h1 * c, tau * (-s + g * c)};
    }
    if (with_derivative) p.dM = add(mul(F, p.dM), mul(dF, p.M));
    p.M = mul(F, p.M);
    if (scaled) {
      const double mx = std::max({std::abs(p.M.a), std::abs(p.M.b), std::abs(p.M.c), std::abs(p.M.d)});
      if (mx > 0.0) {
        p.M = {p.M.a / mx, p.M.b / mx, p.M.c / mx, p.M.d / mx};
        p.log_scale += std::log(mx);
      }
    }
  }
  return p;
}

TransferMatrix to_transfer(const Propagation<cplx>& p, double t, cplx z, bool with_derivative) {
  TransferMatrix m;
  m.t = t;
  m.z = z;
  m.A = p.M.a;
  m.B = p.M.b;
  m.C = p.M.c;
  m.D = p.M.d;
  m.has_derivative = with_derivative;
  if (with_derivative) {
    m.dA = p.dM.a;
    m.dB = p.dM.b;
    m.dC = p.dM.c;
    m.dD = p.dM.d;
  }
  m.log_scale = p.log_scale;
  return m;
}

// Real evaluation on the axis with z-derivatives.
struct AxisPoint {
  double x = 0.0;
  double A = 1.0, C = 0.0, dA = 0.0, dC = 0.0;
  double phase = 0.0;  // unwrapped atan2(C, A)
};

AxisPoint eval_axis(const PiecewiseHamiltonian& H, double t, double x) {
  const auto p = propagate<double>(H, t, x, true, false);
  AxisPoint a;
  a.x = x;
  a.A = p.M.a;
  a.C = p.M.c;
  a.dA = p.dM.a;
  a.dC = p.dM.c;
  a.phase = std::atan2(a.C, a.A);
  return a;
}

double unwrap_towards(double raw, double reference) {
  const double k = std::round((reference - raw) / (2.0 * kPi));
  return raw + 2.0 * kPi * k;
}

// Upper bound on phi' over the real line: sum of elapsed * lambda_max(H).
double phase_rate_bound(const PiecewiseHamiltonian& H, double t) {
  double rate = 0.0;
  for (const auto& b : H.blocks()) {
    if (b.t_lo >= t) break;
    const double elapsed = std::min(b.t_hi, t) - b.t_lo;
    const double tr = b.trace();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * b.det()));
    rate += elapsed * 0.5 * (tr + disc);
  }
  return rate;
}

// Samples the phase on [lo, hi] so that consecutive increments lie in
// (0, pi/2), refining where needed.
std::vector<AxisPoint> phase_track(const PiecewiseHamiltonian& H, double t, double lo, double hi) {
  const double rate = phase_rate_bound(H, t);
  if (!(rate > 0.0)) fail(ErrorKind::Numerical, "Hamiltonian has zero phase rate on (0, t)");
  const double dx = std::min(0.25 / rate, 0.25 * (hi - lo));
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / dx));
  if (steps > 200000000) fail(ErrorKind::Numerical, "window too large for phase tracking");
  std::vector<AxisPoint> track;
  track.reserve(steps + 1);
  AxisPoint first = eval_axis(H, t, lo);
  track.push_back(first);

  auto admissible = [](double inc) { return inc > 0.0 && inc < 0.5 * kPi; };
  // Recursive refinement between a and b.
  std::function<void(const AxisPoint&, double, int)> advance = [&](const AxisPoint& a, double xb, int depth) {
    AxisPoint b = eval_axis(H, t, xb);
    b.phase = unwrap_towards(b.phase, a.phase);
    if (admissible(b.phase - a.phase)) {
      track.push_back(b);
      return;
    }
    if (depth > 40 || xb - a.x < 1e-14 * std::max(1.0, std::abs(xb))) {
      std::ostringstream os;
      os << "phase is not increasing near x = " << a.x << " (increment " << b.phase - a.phase << ")";
      fail(ErrorKind::Numerical, os.str());
    }
    const double mid = 0.5 * (a.x + xb);
    advance(a, mid, depth + 1);
    AxisPoint m = track.back();
    advance(m, xb, depth + 1);
  };
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x = i == steps ? hi : lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(steps);
    const AxisPoint a = track.back();
    advance(a, x, 0);
  }
  return track;
}

// Root of the selected entry (A when use_a, else C) on a sign-change bracket.
double polish_root(const PiecewiseHamiltonian& H, double t, AxisPoint a, AxisPoint b, bool use_a) {
  auto val = [use_a](const AxisPoint& p) { return use_a ? p.A : p.C; };
  double lo = a.x;
  double hi = b.x;
  double flo = val(a);
  if (val(a) == 0.0) return a.x;
  if (val(b) == 0.0) return b.x;
  if ((val(a) > 0.0) == (val(b) > 0.0)) fail(ErrorKind::Numerical, "root bracket without sign change");
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const AxisPoint m = eval_axis(H, t, mid);
    if (val(m) == 0.0) return mid;
    if ((val(m) > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = val(m);
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const AxisPoint p = eval_axis(H, t, x);
    const double d = use_a ? p.dA : p.dC;
    if (d == 0.0) break;
    const double nx = x - val(p) / d;
    if (!(nx >= lo && nx <= hi)) break;
    x = nx;
  }
  return x;
}

std::vector<double> phase_level_roots(const PiecewiseHamiltonian& H, double t, double lo, double hi, bool use_a) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "representing measure needs t > 0");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) fail(ErrorKind::InvalidArgument, "window must be finite and nonempty");
  const auto track = phase_track(H, t, lo, hi);
  const double offset = use_a ? 0.5 * kPi : 0.0;
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    const double la = std::floor((track[i].phase - offset) / kPi);
    const double lb = std::floor((track[i + 1].phase - offset) / kPi);
    if (lb > la) {
      const double x = polish_root(H, t, track[i], track[i + 1], use_a);
      if (roots.empty() || x > roots.back() + 1e-13 * std::max(1.0, std::abs(x))) roots.push_back(x);
    } else if (i == 0 && (track[0].phase - offset) / kPi == la) {
      roots.push_back(track[0].x);
    }
  }
  return roots;
}

}  // namespace

TransferMatrix matrizant(const PiecewiseHamiltonian& H, double t, cplx z, bool with_derivative) {
  return to_transfer(propagate<cplx>(H, t, z, with_derivative, false), t, z, with_derivative);
}

TransferMatrix matrizant_scaled(const PiecewiseHamiltonian& H, double t, cplx z) {
  return to_transfer(propagate<cplx>(H, t, z, false, true), t, z, false);
}

double spectral_density(const PiecewiseHamiltonian& H, double t, double x, bool rescale) {
  const auto p = propagate<double>(H, t, x, false, false);
  const double A = p.M.a;
  const double C = p.M.c;
  double q = A * A + C * C;
  if (rescale) {
    if (H.empty() || !(t > 0.0)) fail(ErrorKind::InvalidArgument, "rescaling needs a nonempty chain and t > 0");
    auto it = std::find_if(H.blocks().begin(), H.blocks().end(), [t](const HamiltonianBlock& b) { return t <= b.t_hi; });
    if (it == H.blocks().end()) it = std::prev(H.blocks().end());
    q = it->h11 * A * A + 2.0 * it->h12 * A * C + it->h22 * C * C;
  }
  if (!(q > 0.0)) fail(ErrorKind::Pole, "E_t vanishes on the real line");
  return 1.0 / q;
}

RepresentingMeasure representing_measure(const PiecewiseHamiltonian& H, double t, double lo, double hi) {
  RepresentingMeasure rm;
  rm.t = t;
  rm.window_lo = lo;
  rm.window_hi = hi;
  rm.points = phase_level_roots(H, t, lo, hi, true);
  rm.masses.reserve(rm.points.size());
  for (double x : rm.points) {
    const AxisPoint p = eval_axis(H, t, x);
    const double m = -kPi / (p.dA * p.C);
    if (!(m > 0.0) || !std::isfinite(m)) {
      std::ostringstream os;
      os << "non-positive representing mass " << m << " at x = " << x;
      fail(ErrorKind::Numerical, os.str());
    }
    rm.masses.push_back(m);
  }
  return rm;
}

std::vector<double> zeros_of_C(const PiecewiseHamiltonian& H, double t, double lo, double hi) {
  return phase_level_roots(H, t, lo, hi, false);
}

double RoundtripReport::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

namespace {

std::vector<cplx> windowed_line_moments(const SpectralMeasure& mu, double R, std::size_t K) {
  std::vector<cplx> out(K + 1);
  const double width = 2.0 * R;
  for (std::size_t k = 0; k <= K; ++k) {
    const double kk = static_cast<double>(k);
    cplx acc{0.0, 0.0};
    if (mu.is_line()) {
      const double a = mu.as_line().lebesgue;
      acc += k == 0 ? a * width : a * 2.0 * std::sin(kk * R) / kk;
    } else {
      const auto& r = mu.as_rational();
      const int panels = std::max(1, static_cast<int>(std::ceil(width * std::max(1.0, kk))));
      const double h = width / panels;
      for (int p = 0; p < panels; ++p) {
        const double a = -R + p * h;
        const double b = a + h;
        const double re = quad::adaptive_simpson(
            [&](double x) { return std::cos(kk * x) * poly::eval(r.numerator, x) / poly::eval(r.denominator, x); }, a, b,
            1e-13);
        const double im = quad::adaptive_simpson(
            [&](double x) { return -std::sin(kk * x) * poly::eval(r.numerator, x) / poly::eval(r.denominator, x); }, a,
            b, 1e-13);
        acc += cplx(re, im);
      }
    }
    for (const auto& [x, m] : mu.atoms_in(-R, R)) acc += m * std::polar(1.0, -kk * x);
    out[k] = acc / width;
  }
  return out;
}

}  // namespace

RoundtripReport roundtrip_residual(const SpectralMeasure& mu, const PiecewiseHamiltonian& H, double T, std::size_t K,
                                   int window_periods) {
  if (window_periods < 1) fail(ErrorKind::InvalidArgument, "window must span at least one period");
  if (!(T > 0.0) || T > H.end() * (1.0 + 1e-14)) fail(ErrorKind::Range, "chain time must lie in (0, end of H]");
  RoundtripReport rep;
  rep.T = T;
  const double R = kPi * window_periods;
  rep.window_lo = -R;
  rep.window_hi = R;
  const RepresentingMeasure rm = representing_measure(H, T, -R, R);

  // Half-open window [-R, R).
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t i = 0; i < rm.points.size(); ++i)
    if (rm.points[i] < R) atoms.emplace_back(rm.points[i], rm.masses[i]);
  rep.atoms = atoms.size();

  if (mu.is_periodic()) {
    const MomentSequence g = periodic_moments(mu, K);
    for (std::size_t k = 0; k <= K; ++k) rep.expected.push_back(g[static_cast<long>(k)]);
  } else {
    rep.expected = windowed_line_moments(mu, R, K);
  }
  for (std::size_t k = 0; k <= K; ++k) {
    cplx acc{0.0, 0.0};
    for (const auto& [x, m] : atoms) acc += m * std::polar(1.0, -static_cast<double>(k) * x);
    rep.estimated.push_back(acc / (2.0 * R));
    rep.residuals.push_back(std::abs(rep.estimated.back() - rep.expected[k]));
  }
  return rep;
}

double KreinTypeEstimate::relative_error() const {
  return std::abs(slope - expected) / std::max(std::abs(expected), 1e-300);
}

KreinTypeEstimate krein_type_rate(const PiecewiseHamiltonian& H, double T, double y_lo, double y_hi, int samples) {
  if (!(y_hi > y_lo) || !(y_lo > 0.0) || samples < 2) fail(ErrorKind::InvalidArgument, "bad regression range");
  KreinTypeEstimate est;
  for (const auto& b : H.blocks()) {
    if (b.t_lo >= T) break;
    est.expected += (std::min(b.t_hi, T) - b.t_lo) * std::sqrt(std::max(0.0, b.det()));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = y_lo * std::pow(y_hi / y_lo, static_cast<double>(i) / (samples - 1));
    const TransferMatrix m = matrizant_scaled(H, T, cplx(0.0, y));
    const double v = std::log(std::abs(m.A)) + m.log_scale;
    sx += y;
    sy += v;
    sxx += y * y;
    sxy += y * v;
  }
  const double n = samples;
  est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return est;
}

}  // namespace canonsys
