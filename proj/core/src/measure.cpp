#include "canonsys/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonsys/errors.hpp"
#include "canonsys/quadrature.hpp"

namespace canonsys {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDensityCheckPoints = 10000;
constexpr double kDensityCheckTol = -1e-10;

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

void check_atom_locations(std::vector<double> locs, const char* what) {
  std::sort(locs.begin(), locs.end());
  for (std::size_t i = 1; i < locs.size(); ++i) {
    if (locs[i] == locs[i - 1]) fail(ErrorKind::InvalidArgument, std::string(what) + ": duplicate atom location");
  }
}

void check_line_atoms(const std::vector<LineAtom>& atoms) {
  std::vector<double> locs;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.lambda) || !(a.beta > 0.0) || !std::isfinite(a.beta))
      fail(ErrorKind::InvalidArgument, "line atom weights must be finite and strictly positive");
    locs.push_back(a.lambda);
  }
  check_atom_locations(std::move(locs), "line measure");
}

double trig_density(const std::vector<TrigCoefficient>& coeffs, double x) {
  double v = 0.0;
  for (const auto& c : coeffs) {
    if (c.k == 0) {
      v += c.value.real();
    } else {
      v += 2.0 * (c.value * std::polar(1.0, c.k * x)).real();
    }
  }
  return v;
}

// Antiderivative of the trigonometric density normalized with F(0) = 0.
double trig_antiderivative(const std::vector<TrigCoefficient>& coeffs, double x) {
  double v = 0.0;
  for (const auto& c : coeffs) {
    if (c.k == 0) {
      v += c.value.real() * x;
    } else {
      const cplx e = (std::polar(1.0, c.k * x) - 1.0) / cplx(0.0, c.k);
      v += 2.0 * (c.value * e).real();
    }
  }
  return v;
}

double rational_density(const RationalDensityMeasure& r, double x) {
  return poly::eval(r.numerator, x) / poly::eval(r.denominator, x);
}

// Integral of a smooth density over (a, b], split into unit panels.
template <class F>
double panel_integral(const F& f, double a, double b) {
  if (b <= a) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) acc += quad::adaptive_simpson(f, a + p * h, a + (p + 1) * h, 1e-12);
  return acc;
}

RPoly line_atom_denominator(const std::vector<LineAtom>& atoms) {
  RPoly d{1.0};
  for (const auto& a : atoms) {
    const RPoly f{a.lambda, -1.0};
    d = poly::multiply(d, f);
  }
  return d;
}

RPoly line_atom_residual_numerator(const std::vector<LineAtom>& atoms) {
  RPoly r{0.0};
  for (std::size_t n = 0; n < atoms.size(); ++n) {
    RPoly term{atoms[n].beta};
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i == n) continue;
      const RPoly f{atoms[i].lambda, -1.0};
      term = poly::multiply(term, f);
    }
    r = poly::add(r, term);
  }
  return r;
}

CPoly to_complex(const RPoly& p) {
  CPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MomentSequence

MomentSequence::MomentSequence(std::vector<cplx> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) fail(ErrorKind::InvalidArgument, "moment sequence must contain gamma_0");
  const cplx g0 = gamma_[0];
  if (!(g0.real() > 0.0) || std::abs(g0.imag()) > 1e-12 * std::max(1.0, g0.real()))
    fail(ErrorKind::InvalidArgument, "gamma_0 must be real and positive");
  gamma_[0] = cplx(g0.real(), 0.0);
  for (const auto& g : gamma_) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      fail(ErrorKind::InvalidArgument, "moments must be finite");
  }
}

cplx MomentSequence::operator[](long k) const {
  const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
  if (idx >= gamma_.size()) fail(ErrorKind::InsufficientMoments, "moment index exceeds stored order");
  return k < 0 ? std::conj(gamma_[idx]) : gamma_[idx];
}

bool MomentSequence::is_real(double tol) const {
  return std::all_of(gamma_.begin(), gamma_.end(),
                     [tol](const cplx& g) { return std::abs(g.imag()) <= tol * std::max(1.0, std::abs(g)); });
}

MomentSequence MomentSequence::truncated(std::size_t K) const {
  if (K >= gamma_.size()) fail(ErrorKind::InsufficientMoments, "cannot truncate beyond stored order");
  return MomentSequence(std::vector<cplx>(gamma_.begin(), gamma_.begin() + static_cast<long>(K) + 1));
}

// ---------------------------------------------------------------------------
// SpectralMeasure construction

SpectralMeasure SpectralMeasure::periodic(std::vector<TrigCoefficient> density,
                                          std::vector<PeriodicAtom> atoms) {
  std::sort(density.begin(), density.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (density[i].k < 0) fail(ErrorKind::InvalidArgument, "density coefficients are stored for k >= 0");
    if (i > 0 && density[i].k == density[i - 1].k)
      fail(ErrorKind::InvalidArgument, "duplicate density coefficient index");
    if (density[i].k == 0 && std::abs(density[i].value.imag()) > 1e-14)
      fail(ErrorKind::InvalidArgument, "gamma_0 of the density must be real");
  }
  std::vector<double> locs;
  for (auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      fail(ErrorKind::InvalidArgument, "periodic atom masses must be finite and strictly positive");
    if (!std::isfinite(a.x)) fail(ErrorKind::InvalidArgument, "atom location must be finite");
    a.x = wrap_angle(a.x);
    locs.push_back(a.x);
  }
  check_atom_locations(std::move(locs), "periodic measure");
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.x < b.x; });

  if (!density.empty()) {
    for (int i = 0; i < kDensityCheckPoints; ++i) {
      const double x = kTwoPi * i / kDensityCheckPoints;
      if (trig_density(density, x) < kDensityCheckTol) {
        std::ostringstream os;
        os << "periodic density is negative at x = " << x;
        fail(ErrorKind::NonPositiveMeasure, os.str());
      }
    }
  }
  double total = atoms.empty() ? 0.0 : 1.0;
  for (const auto& c : density)
    if (c.k == 0) total = std::max(total, c.value.real());
  if (!(total > 0.0)) fail(ErrorKind::NonPositiveMeasure, "periodic measure is zero");

  PeriodicMeasure p;
  p.density = std::move(density);
  p.atoms = std::move(atoms);
  return SpectralMeasure(std::move(p));
}

SpectralMeasure SpectralMeasure::periodic_from_moments(const MomentSequence& moments) {
  PeriodicMeasure p;
  p.moment_defined = true;
  for (std::size_t k = 0; k < moments.size(); ++k)
    p.density.push_back({static_cast<int>(k), moments[static_cast<long>(k)]});
  return SpectralMeasure(std::move(p));
}

SpectralMeasure SpectralMeasure::line(double lebesgue, std::vector<LineAtom> atoms) {
  if (!(lebesgue >= 0.0) || !std::isfinite(lebesgue))
    fail(ErrorKind::InvalidArgument, "Lebesgue multiple must be finite and nonnegative");
  check_line_atoms(atoms);
  if (lebesgue == 0.0 && atoms.empty()) fail(ErrorKind::NonPositiveMeasure, "line measure is zero");
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  return SpectralMeasure(LineMeasure{lebesgue, std::move(atoms)});
}

SpectralMeasure SpectralMeasure::rational(RPoly numerator, RPoly denominator,
                                          std::vector<LineAtom> atoms) {
  numerator = poly::trimmed(numerator, 1e-15);
  denominator = poly::trimmed(denominator, 1e-15);
  if (denominator.empty()) fail(ErrorKind::InvalidArgument, "rational density denominator is zero");
  if (numerator.empty()) numerator = RPoly{0.0};
  check_line_atoms(atoms);
  if (numerator.size() > denominator.size() + 1)
    fail(ErrorKind::InvalidArgument, "rational density grows too fast to be Poisson-finite");
  if (!poly::real_roots(denominator, 1e-10).empty())
    fail(ErrorKind::InvalidArgument, "rational density denominator has a real zero");

  // Sign of num/den is constant between consecutive real zeros of num.
  auto roots = poly::real_roots(numerator, 1e-7);
  std::vector<double> probes;
  if (roots.empty()) {
    probes.push_back(0.0);
  } else {
    probes.push_back(roots.front() - 1.0);
    for (std::size_t i = 1; i < roots.size(); ++i) probes.push_back(0.5 * (roots[i - 1] + roots[i]));
    probes.push_back(roots.back() + 1.0);
  }
  for (double x : probes) {
    if (poly::eval(numerator, x) / poly::eval(denominator, x) < -1e-12)
      fail(ErrorKind::NonPositiveMeasure, "rational density is negative somewhere on the real line");
  }
  const bool zero_density = numerator.size() == 1 && numerator[0] == 0.0;
  if (zero_density && atoms.empty()) fail(ErrorKind::NonPositiveMeasure, "rational measure is zero");
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  return SpectralMeasure(RationalDensityMeasure{std::move(numerator), std::move(denominator), std::move(atoms)});
}

const PeriodicMeasure& SpectralMeasure::as_periodic() const {
  if (!is_periodic()) fail(ErrorKind::InvalidVariant, "expected a periodic measure");
  return std::get<PeriodicMeasure>(v_);
}

const LineMeasure& SpectralMeasure::as_line() const {
  if (!is_line()) fail(ErrorKind::InvalidVariant, "expected a line measure");
  return std::get<LineMeasure>(v_);
}

const RationalDensityMeasure& SpectralMeasure::as_rational() const {
  if (!is_rational()) fail(ErrorKind::InvalidVariant, "expected a rational-density measure");
  return std::get<RationalDensityMeasure>(v_);
}

namespace {

bool line_atoms_even(const std::vector<LineAtom>& atoms, double tol) {
  for (const auto& a : atoms) {
    const bool mirrored = std::any_of(atoms.begin(), atoms.end(), [&](const LineAtom& b) {
      return std::abs(b.lambda + a.lambda) <= tol * std::max(1.0, std::abs(a.lambda)) &&
             std::abs(b.beta - a.beta) <= tol * std::max(1.0, a.beta);
    });
    if (!mirrored) return false;
  }
  return true;
}

}  // namespace

bool SpectralMeasure::is_even(double tol) const {
  if (const auto* p = std::get_if<PeriodicMeasure>(&v_)) {
    for (const auto& c : p->density)
      if (std::abs(c.value.imag()) > tol * std::max(1.0, std::abs(c.value))) return false;
    for (const auto& a : p->atoms) {
      const double mirror = wrap_angle(-a.x);
      const bool found = std::any_of(p->atoms.begin(), p->atoms.end(), [&](const PeriodicAtom& b) {
        const double d = std::abs(b.x - mirror);
        return std::min(d, kTwoPi - d) <= tol * kTwoPi && std::abs(b.mass - a.mass) <= tol * std::max(1.0, a.mass);
      });
      if (!found) return false;
    }
    return true;
  }
  if (const auto* l = std::get_if<LineMeasure>(&v_)) return line_atoms_even(l->atoms, tol);
  const auto& r = std::get<RationalDensityMeasure>(v_);
  // num(x) den(-x) - num(-x) den(x) must vanish identically.
  auto reflect = [](const RPoly& p) {
    RPoly q = p;
    for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
    return q;
  };
  const RPoly lhs = poly::multiply(r.numerator, reflect(r.denominator));
  const RPoly rhs = poly::multiply(reflect(r.numerator), r.denominator);
  double scale = 0.0;
  for (double c : lhs) scale = std::max(scale, std::abs(c));
  const RPoly diff = poly::add(lhs, poly::scale(rhs, -1.0));
  for (double c : diff)
    if (std::abs(c) > tol * std::max(1.0, scale)) return false;
  return line_atoms_even(r.atoms, tol);
}

bool SpectralMeasure::flagged_non_pw() const {
  if (const auto* l = std::get_if<LineMeasure>(&v_)) return l->lebesgue == 0.0;
  if (const auto* r = std::get_if<RationalDensityMeasure>(&v_))
    return r->numerator.size() == 1 && r->numerator[0] == 0.0;
  const auto& p = std::get<PeriodicMeasure>(v_);
  return p.density.empty();  // finitely many atoms per period
}

double SpectralMeasure::density(double x) const {
  if (const auto* p = std::get_if<PeriodicMeasure>(&v_)) return trig_density(p->density, x);
  if (const auto* l = std::get_if<LineMeasure>(&v_)) return l->lebesgue;
  return rational_density(std::get<RationalDensityMeasure>(v_), x);
}

std::vector<std::pair<double, double>> SpectralMeasure::atoms_in(double a, double b) const {
  std::vector<std::pair<double, double>> out;
  if (!(b > a)) return out;
  if (const auto* p = std::get_if<PeriodicMeasure>(&v_)) {
    for (const auto& atom : p->atoms) {
      // Smallest n with x0 + 2 pi n > a.
      double n = std::floor((a - atom.x) / kTwoPi) + 1.0;
      for (double pos = atom.x + kTwoPi * n; pos <= b; pos += kTwoPi)
        if (pos > a) out.emplace_back(pos, atom.mass);
    }
  } else {
    const auto& atoms = is_line() ? std::get<LineMeasure>(v_).atoms : std::get<RationalDensityMeasure>(v_).atoms;
    for (const auto& atom : atoms)
      if (atom.lambda > a && atom.lambda <= b) out.emplace_back(atom.lambda, kPi * atom.beta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SpectralMeasure::mass(double a, double b) const {
  if (!(b > a)) return 0.0;
  double m = 0.0;
  if (const auto* p = std::get_if<PeriodicMeasure>(&v_)) {
    m = trig_antiderivative(p->density, b) - trig_antiderivative(p->density, a);
  } else if (const auto* l = std::get_if<LineMeasure>(&v_)) {
    m = l->lebesgue * (b - a);
  } else {
    const auto& r = std::get<RationalDensityMeasure>(v_);
    m = panel_integral([&r](double x) { return rational_density(r, x); }, a, b);
  }
  for (const auto& [pos, w] : atoms_in(a, b)) m += w;
  return m;
}

// ---------------------------------------------------------------------------
// Moments

MomentSequence periodic_moments(const SpectralMeasure& measure, std::size_t K) {
  const auto& p = measure.as_periodic();
  std::vector<cplx> gamma(K + 1, cplx{0.0, 0.0});
  for (const auto& c : p.density) {
    if (static_cast<std::size_t>(c.k) <= K) gamma[static_cast<std::size_t>(c.k)] += c.value;
  }
  if (p.moment_defined) {
    const auto stored = p.density.empty() ? 0 : static_cast<std::size_t>(p.density.back().k);
    if (K > stored) fail(ErrorKind::InsufficientMoments, "moment-defined measure does not store enough moments");
  }
  for (const auto& atom : p.atoms) {
    for (std::size_t k = 0; k <= K; ++k)
      gamma[k] += atom.mass / kTwoPi * std::polar(1.0, -static_cast<double>(k) * atom.x);
  }
  return MomentSequence(std::move(gamma));
}

// ---------------------------------------------------------------------------
// Herglotz representation

cplx HerglotzRep::eval(cplx z) const {
  const cplx var = kind == Kind::RationalInS ? std::exp(cplx(0.0, 1.0) * z) : z;
  return poly::eval(numerator, var) / poly::eval(denominator, var) + real_offset;
}

cplx HerglotzRep::derivative(cplx z) const {
  const cplx var = kind == Kind::RationalInS ? std::exp(cplx(0.0, 1.0) * z) : z;
  const cplx n = poly::eval(numerator, var);
  const cplx d = poly::eval(denominator, var);
  const cplx dn = poly::eval(poly::derivative(numerator), var);
  const cplx dd = poly::eval(poly::derivative(denominator), var);
  const cplx q = (dn * d - n * dd) / (d * d);
  return kind == Kind::RationalInS ? q * cplx(0.0, 1.0) * var : q;
}

HerglotzRep cauchy_transform(const SpectralMeasure& measure) {
  const cplx I{0.0, 1.0};
  HerglotzRep rep;
  if (measure.is_periodic()) {
    const auto& p = measure.as_periodic();
    rep.kind = HerglotzRep::Kind::RationalInS;
    // F(S) = gamma_0 + 2 sum gamma_k S^k for the density part.
    int degree = 0;
    for (const auto& c : p.density) degree = std::max(degree, c.k);
    CPoly f(static_cast<std::size_t>(degree) + 1, cplx{0.0, 0.0});
    for (const auto& c : p.density) f[static_cast<std::size_t>(c.k)] += (c.k == 0 ? 1.0 : 2.0) * c.value;
    // Each atom adds (m / 2pi) (1 + wS) / (1 - wS), w = e^{-i x0}.
    CPoly den{cplx{1.0, 0.0}};
    std::vector<CPoly> factors;
    for (const auto& atom : p.atoms) {
      const cplx w = std::polar(1.0, -atom.x);
      factors.push_back(CPoly{cplx{1.0, 0.0}, -w});
      den = poly::multiply(den, factors.back());
    }
    CPoly num = poly::multiply(f, den);
    for (std::size_t j = 0; j < p.atoms.size(); ++j) {
      const cplx w = std::polar(1.0, -p.atoms[j].x);
      CPoly term{cplx{p.atoms[j].mass / kTwoPi, 0.0}, w * (p.atoms[j].mass / kTwoPi)};
      for (std::size_t i = 0; i < factors.size(); ++i)
        if (i != j) term = poly::multiply(term, factors[i]);
      num = poly::add(num, term);
    }
    rep.numerator = poly::scale(num, I);
    rep.denominator = std::move(den);
    return rep;
  }
  if (measure.is_line()) {
    const auto& l = measure.as_line();
    rep.kind = HerglotzRep::Kind::RationalInZ;
    const CPoly den = to_complex(line_atom_denominator(l.atoms));
    const CPoly res = to_complex(line_atom_residual_numerator(l.atoms));
    rep.numerator = poly::add(poly::scale(den, I * l.lebesgue), res);
    rep.denominator = den;
    return rep;
  }
  fail(ErrorKind::Unsupported, "Cauchy transform of a rational density is not supported");
}

bool herglotz_spot_check(const HerglotzRep& rep, int n) {
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
  int count = 0;
  for (int i = 0; i < side && count < n; ++i) {
    for (int j = 0; j < side && count < n; ++j, ++count) {
      const double x = -6.0 + 12.0 * (i + 0.5) / side;
      const double y = 0.05 * std::pow(60.0, static_cast<double>(j) / std::max(1, side - 1));
      if (!(rep.eval(cplx(x, y)).imag() > 0.0)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dual measures

MomentSequence dual_moments_at_height(const HerglotzRep& rep, double b, std::size_t K, double y,
                                      int quadrature_points) {
  if (rep.kind != HerglotzRep::Kind::RationalInS)
    fail(ErrorKind::InvalidVariant, "dual moments need a periodic Herglotz function");
  if (!(y > 0.0)) fail(ErrorKind::InvalidArgument, "quadrature height must be positive");
  const auto N = static_cast<std::size_t>(quadrature_points);
  if (N < 2 * K + 2) fail(ErrorKind::InvalidArgument, "too few quadrature points for the requested moments");
  const cplx I{0.0, 1.0};
  std::vector<double> values(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(N);
    const cplx w = rep.eval(cplx(x, y)) + b;
    if (w == cplx{0.0, 0.0}) fail(ErrorKind::Internal, "K + b vanished in the upper half-plane");
    values[j] = (I / w).real();
  }
  std::vector<cplx> gamma(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    cplx acc{0.0, 0.0};
    const cplx step = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(N));
    cplx e{1.0, 0.0};
    for (std::size_t j = 0; j < N; ++j) {
      acc += values[j] * e;
      e *= step;
      if ((j & 63u) == 63u) e /= std::abs(e);
    }
    gamma[k] = acc / static_cast<double>(N) * std::exp(static_cast<double>(k) * y);
  }
  gamma[0] = cplx(gamma[0].real(), 0.0);
  return MomentSequence(std::move(gamma));
}

namespace {

SpectralMeasure line_dual(const LineMeasure& l, double b) {
  const RPoly D = line_atom_denominator(l.atoms);
  const RPoly R = line_atom_residual_numerator(l.atoms);
  const RPoly shifted = poly::add(R, poly::scale(D, b));
  const double alpha = l.lebesgue;

  RPoly num{0.0};
  RPoly den{1.0};
  if (alpha > 0.0) {
    const RPoly D2 = poly::multiply(D, D);
    num = poly::scale(D2, alpha);
    den = poly::add(poly::scale(D2, alpha * alpha), poly::multiply(shifted, shifted));
    // Kmu + b has imaginary part alpha on the real line: no real zeros.
    return SpectralMeasure::rational(std::move(num), std::move(den));
  }

  // Pure point: K(x) + b = b + sum beta/(lambda - x) is increasing between
  // poles, from -inf to +inf, so each gap holds exactly one simple zero.
  auto f = [&](double x) {
    double v = b;
    for (const auto& a : l.atoms) v += a.beta / (a.lambda - x);
    return v;
  };
  auto fprime = [&](double x) {
    double v = 0.0;
    for (const auto& a : l.atoms) v += a.beta / ((a.lambda - x) * (a.lambda - x));
    return v;
  };
  auto bisect = [&](double lo, double hi) {
    for (int it = 0; it < 400 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  std::vector<double> zeros;
  const auto& atoms = l.atoms;
  for (std::size_t n = 0; n + 1 < atoms.size(); ++n) {
    const double gap = atoms[n + 1].lambda - atoms[n].lambda;
    double lo = atoms[n].lambda + gap * 1e-12;
    double hi = atoms[n + 1].lambda - gap * 1e-12;
    zeros.push_back(bisect(lo, hi));
  }
  if (b < 0.0) {
    double R0 = 1.0;
    while (f(atoms.front().lambda - R0) >= 0.0 && R0 < 1e300) R0 *= 2.0;
    zeros.push_back(bisect(atoms.front().lambda - R0, atoms.front().lambda - R0 * 1e-16 - 1e-300));
  } else if (b > 0.0) {
    double R0 = 1.0;
    while (f(atoms.back().lambda + R0) <= 0.0 && R0 < 1e300) R0 *= 2.0;
    zeros.push_back(bisect(atoms.back().lambda + 1e-300 + R0 * 1e-16, atoms.back().lambda + R0));
  }
  std::vector<LineAtom> dual_atoms;
  for (double x0 : zeros) {
    const double kp = fprime(x0);
    if (!(kp > 0.0)) fail(ErrorKind::Numerical, "dual atom at a multiple zero");
    // Mass pi / |K'(x0)| in the pi * beta convention.
    dual_atoms.push_back({x0, 1.0 / kp});
  }
  if (dual_atoms.empty()) fail(ErrorKind::Degenerate, "dual of a single atom with b = 0 sits at infinity");
  return SpectralMeasure::rational(RPoly{0.0}, RPoly{1.0}, std::move(dual_atoms));
}

}  // namespace

SpectralMeasure dual_measure(const SpectralMeasure& measure, double b, std::size_t K,
                             const DualOptions& options) {
  if (!std::isfinite(b)) fail(ErrorKind::InvalidArgument, "dual parameter b must be finite");
  if (measure.is_line()) return line_dual(measure.as_line(), b);
  if (measure.is_rational()) fail(ErrorKind::Unsupported, "dual of a rational density is not supported");

  const HerglotzRep rep = cauchy_transform(measure);
  double y = options.height;
  if (!(y > 0.0)) y = std::min(0.5, 8.0 / static_cast<double>(std::max<std::size_t>(K, 1)));
  const MomentSequence coarse = dual_moments_at_height(rep, b, K, y, options.quadrature_points);
  const MomentSequence fine = dual_moments_at_height(rep, b, K, 0.5 * y, options.quadrature_points);
  for (std::size_t k = 0; k <= K; ++k) {
    const long ik = static_cast<long>(k);
    const double diff = std::abs(coarse[ik] - fine[ik]);
    if (diff > options.consistency_tol * std::max(1.0, std::abs(coarse[ik]))) {
      std::ostringstream os;
      os << "dual moment " << k << " differs across quadrature heights " << y << " and " << 0.5 * y
         << " by " << diff;
      fail(ErrorKind::Accuracy, os.str());
    }
  }
  return SpectralMeasure::periodic_from_moments(coarse);
}

// ---------------------------------------------------------------------------
// Fourier representation

FourierRep fourier_rep(const SpectralMeasure& measure, std::size_t max_index) {
  const double root2pi = std::sqrt(kTwoPi);
  FourierRep rep;
  if (measure.is_periodic()) {
    const auto& p = measure.as_periodic();
    std::size_t K = max_index;
    for (const auto& c : p.density) K = std::max(K, static_cast<std::size_t>(c.k));
    if (p.moment_defined) K = std::min(K, static_cast<std::size_t>(p.density.back().k));
    const MomentSequence g = periodic_moments(measure, K);
    const long Kl = static_cast<long>(K);
    for (long k = -Kl; k <= Kl; ++k) {
      const cplx w = root2pi * g[k];
      if (w != cplx{0.0, 0.0}) rep.atoms.push_back({static_cast<double>(k), w});
    }
    return rep;
  }
  if (measure.is_line()) {
    const auto& l = measure.as_line();
    if (l.lebesgue > 0.0) rep.atoms.push_back({0.0, cplx(root2pi * l.lebesgue, 0.0)});
    for (const auto& a : l.atoms) rep.exponentials.push_back({a.lambda, cplx(kPi * a.beta / root2pi, 0.0)});
    return rep;
  }
  fail(ErrorKind::Unsupported, "Fourier representation of a rational density is not supported");
}

}  // namespace canonsys
