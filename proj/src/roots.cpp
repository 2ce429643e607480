#include "latbound/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "latbound/error.hpp"

namespace latbound {

RootResult brent(const std::function<double(double)>& f, double a, double b, double xtol,
                 int max_iter) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if ((fa > 0) == (fb > 0)) {
    std::ostringstream os;
    os << "root not bracketed on [" << a << ", " << b << "] (f = " << fa << ", " << fb << ")";
    raise(ErrorKind::solver, os.str());
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, fb, it};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  std::ostringstream os;
  os << "Brent iteration stagnated after " << max_iter << " steps near " << b
     << " (bracket width " << std::abs(c - b) << ")";
  raise(ErrorKind::solver, os.str());
}

}  // namespace latbound
