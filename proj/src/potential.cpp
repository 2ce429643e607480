#include "latbound/potential.hpp"

#include <algorithm>
#include <cmath>

#include "latbound/error.hpp"

namespace latbound {

double compensated_sum(const std::vector<double>& xs) noexcept {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

LatticePotential LatticePotential::from_entries(int dim, std::vector<PotentialEntry> in) {
  if (dim != 1 && dim != 2)
    raise(ErrorKind::unsupported_dimension, "dimension must be 1 or 2");
  if (in.empty()) raise(ErrorKind::invariant, "potential has empty support");
  bool nonzero = false;
  for (const auto& e : in) {
    if (!std::isfinite(e.v)) raise(ErrorKind::invariant, "potential value is not finite");
    if (dim == 1 && e.x[1] != 0)
      raise(ErrorKind::invariant, "second coordinate given for a 1-d site");
    if (e.v != 0.0) nonzero = true;
  }
  if (!nonzero) raise(ErrorKind::invariant, "potential is identically zero");
  std::sort(in.begin(), in.end(), [](const PotentialEntry& a, const PotentialEntry& b) {
    return a.x[0] != b.x[0] ? a.x[0] < b.x[0] : a.x[1] < b.x[1];
  });
  for (std::size_t i = 1; i < in.size(); ++i)
    if (in[i].x == in[i - 1].x) raise(ErrorKind::invariant, "duplicate potential site");
  LatticePotential p;
  p.dim_ = dim;
  p.entries_ = std::move(in);
  return p;
}

LatticePotential LatticePotential::negated() const {
  LatticePotential p = *this;
  for (auto& e : p.entries_) e.v = -e.v;
  return p;
}

double LatticePotential::kappa0() const noexcept {
  std::vector<double> v;
  for (const auto& e : entries_) v.push_back(e.v);
  return compensated_sum(v);
}

double LatticePotential::abs_sum() const noexcept {
  std::vector<double> v;
  for (const auto& e : entries_) v.push_back(std::abs(e.v));
  return compensated_sum(v);
}

int LatticePotential::range() const noexcept {
  int r = 0;
  for (const auto& e : entries_) r = std::max({r, std::abs(e.x[0]), std::abs(e.x[1])});
  return r;
}

DecayReport decay_report(const LatticePotential& pot, double gamma, bool permissive) {
  if (!(gamma > 0.0 && gamma < 1.0)) raise(ErrorKind::parameter, "gamma must lie in (0,1)");
  const double s = 2.0 - pot.dim() + gamma;
  std::vector<double> w;
  for (const auto& e : pot.entries()) {
    const double r = std::hypot(double(e.x[0]), double(e.x[1]));
    if (r > 0.0) w.push_back(std::pow(r, s) * std::abs(e.v));
  }
  DecayReport d;
  d.gamma = gamma;
  d.weighted_sum = compensated_sum(w);
  d.abs_sum = pot.abs_sum();
  d.kappa0 = pot.kappa0();
  if (!(d.weighted_sum > 0.0)) {
    if (!permissive)
      raise(ErrorKind::parameter,
            "weighted decay sum is 0 (potential lives on the origin only); add a "
            "non-origin site or enable the permissive zero-weight mode");
    d.permissive_zero_weight = true;
  }
  return d;
}

std::complex<double> potential_symbol(const LatticePotential& pot, const Point& p) {
  std::complex<double> s = 0.0;
  for (const auto& e : pot.entries()) s += e.v * std::polar(1.0, dot(e.x, p));
  return s;
}

SignSplit sign_split(const LatticePotential& pot) {
  SignSplit out;
  for (const auto& e : pot.entries()) {
    out.sites.push_back(e.x);
    out.signs.push_back(e.v > 0 ? 1 : (e.v < 0 ? -1 : 0));
    out.sqrt_abs.push_back(std::sqrt(std::abs(e.v)));
  }
  return out;
}

}  // namespace latbound
