#include "latbound/morse.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "latbound/error.hpp"

namespace latbound {

namespace {

std::vector<double> richardson(const std::vector<double>& v, double factor) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < v.size(); ++k)
    out.push_back((factor * v[k + 1] - v[k]) / (factor - 1.0));
  return out;
}

}  // namespace

MorseEstimate extract_morse_edge(const GreenEvaluator& g, Edge e) {
  constexpr int levels = 7;
  std::vector<double> delta, a;
  for (int k = 0; k < levels; ++k) {
    const double d = 1e-2 * std::pow(4.0, -k);
    delta.push_back(d);
    a.push_back(g.chart_values(EdgeDistance::from_delta(e, d), {}).a);
  }

  std::vector<double> r2;
  if (g.dim() == 1) {
    std::vector<double> f;
    for (int k = 0; k < levels; ++k) f.push_back(std::sqrt(delta[k]) * a[k]);
    r2 = richardson(richardson(f, 2.0), 4.0);
  } else {
    std::vector<double> inc;
    for (int k = 0; k + 1 < levels; ++k) inc.push_back((a[k + 1] - a[k]) / std::log(4.0));
    r2 = richardson(richardson(inc, 4.0), 4.0);
  }
  MorseEstimate m;
  m.value = r2.back();
  m.residual = std::abs(r2.back() - r2[r2.size() - 2]);
  if (!(m.residual <= 1e-4) || !(m.value > 0.0)) {
    std::ostringstream os;
    os << "edge coefficient extrapolation did not settle at the " << to_string(e)
       << " edge (residual " << m.residual << ")";
    raise(ErrorKind::extraction, os.str());
  }
  return m;
}

MorseConstant extract_morse_constant(const GreenEvaluator& g) {
  const MorseEstimate top = extract_morse_edge(g, Edge::top);
  const MorseEstimate bot = extract_morse_edge(g, Edge::bottom);
  return {top.value, bot.value, std::max(top.residual, bot.residual)};
}

}  // namespace latbound
