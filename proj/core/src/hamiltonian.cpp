#include "canonsys/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canonsys {

namespace {

double det_scale(const HamiltonianBlock& b) {
  return std::max({1.0, std::abs(b.h11 * b.h22), b.h12 * b.h12});
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty()) fail(ErrorKind::Internal, "empty time change");
  if (x < xs.front() || x > xs.back()) fail(ErrorKind::Range, "time outside the normalized range");
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return ys.back();
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace

PiecewiseHamiltonian::PiecewiseHamiltonian(std::vector<HamiltonianBlock> blocks, bool unit_det)
    : blocks_(std::move(blocks)), unit_det_(unit_det) {
  double expected = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    std::ostringstream where;
    where << "block " << i << " (" << b.t_lo << ", " << b.t_hi << ")";
    if (!std::isfinite(b.t_lo) || !std::isfinite(b.t_hi) || !std::isfinite(b.h11) || !std::isfinite(b.h12) ||
        !std::isfinite(b.h22))
      fail(ErrorKind::InvalidArgument, where.str() + ": non-finite entry");
    if (std::abs(b.t_lo - expected) > 1e-12 * std::max(1.0, expected))
      fail(ErrorKind::InvalidArgument, where.str() + ": blocks must be contiguous from 0");
    if (!(b.t_hi > b.t_lo)) fail(ErrorKind::InvalidArgument, where.str() + ": empty interval");
    if (b.h11 < 0.0 || b.h22 < 0.0 || b.det() < -1e-14 * det_scale(b) || b.trace() <= 0.0)
      fail(ErrorKind::InvalidArgument, where.str() + ": block is not positive semidefinite");
    if (unit_det_ && std::abs(b.det() - 1.0) > 1e-12 * det_scale(b)) {
      std::ostringstream os;
      os << where.str() << ": det = " << b.det() << " violates det-normalization";
      fail(ErrorKind::InvalidArgument, os.str());
    }
    expected = b.t_hi;
  }
}

bool PiecewiseHamiltonian::is_diagonal(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const HamiltonianBlock& b) {
    return std::abs(b.h12) <= tol * std::max(1.0, std::sqrt(std::abs(b.h11 * b.h22)));
  });
}

bool PiecewiseHamiltonian::is_det_normalized(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [tol](const HamiltonianBlock& b) { return std::abs(b.det() - 1.0) <= tol * det_scale(b); });
}

PiecewiseHamiltonian PiecewiseHamiltonian::refined(int levels) const {
  if (levels < 0) fail(ErrorKind::InvalidArgument, "refinement level must be nonnegative");
  const std::size_t parts = std::size_t{1} << levels;
  std::vector<HamiltonianBlock> out;
  out.reserve(blocks_.size() * parts);
  for (const auto& b : blocks_) {
    for (std::size_t p = 0; p < parts; ++p) {
      HamiltonianBlock s = b;
      s.t_lo = b.t_lo + b.length() * static_cast<double>(p) / static_cast<double>(parts);
      s.t_hi = p + 1 == parts ? b.t_hi : b.t_lo + b.length() * static_cast<double>(p + 1) / static_cast<double>(parts);
      out.push_back(s);
    }
  }
  return PiecewiseHamiltonian(std::move(out), unit_det_);
}

HamiltonianBlock involution(const HamiltonianBlock& b, Involution kind, double k) {
  HamiltonianBlock out = b;
  switch (kind) {
    case Involution::Breve:
      out.h12 = -b.h12;
      break;
    case Involution::Tilde:
      out.h11 = b.h22;
      out.h12 = -b.h12;
      out.h22 = b.h11;
      break;
    case Involution::Conjugate:
      out.h12 = b.h12 + k * b.h11;
      out.h22 = b.h22 + 2.0 * k * b.h12 + k * k * b.h11;
      break;
  }
  return out;
}

PiecewiseHamiltonian involution(const PiecewiseHamiltonian& H, Involution kind, double k) {
  std::vector<HamiltonianBlock> out;
  out.reserve(H.size());
  for (const auto& b : H.blocks()) out.push_back(involution(b, kind, k));
  return PiecewiseHamiltonian(std::move(out), false);
}

double TimeChange::s_of_t(double t) const { return interpolate(t_knots, s_knots, t); }
double TimeChange::t_of_s(double s) const { return interpolate(s_knots, t_knots, s); }

NormalizedHamiltonian normalize(const PiecewiseHamiltonian& H, NormalizeMode mode) {
  NormalizedHamiltonian out;
  out.time_change.t_knots.push_back(0.0);
  out.time_change.s_knots.push_back(0.0);
  std::vector<HamiltonianBlock> blocks;
  double s = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i) {
    const auto& b = H.blocks()[i];
    double rate = 0.0;
    if (mode == NormalizeMode::Det) {
      if (!(b.det() > 0.0)) {
        std::ostringstream os;
        os << "block " << i << " has det " << b.det() << " and cannot be det-normalized";
        fail(ErrorKind::NotDetNormalizable, os.str());
      }
      rate = std::sqrt(b.det());
    } else {
      rate = b.trace();
    }
    HamiltonianBlock nb;
    nb.t_lo = s;
    nb.t_hi = s + rate * b.length();
    nb.h11 = b.h11 / rate;
    nb.h12 = b.h12 / rate;
    nb.h22 = b.h22 / rate;
    s = nb.t_hi;
    blocks.push_back(nb);
    out.time_change.t_knots.push_back(b.t_hi);
    out.time_change.s_knots.push_back(s);
  }
  out.hamiltonian = PiecewiseHamiltonian(std::move(blocks), mode == NormalizeMode::Det);
  return out;
}

}  // namespace canonsys
