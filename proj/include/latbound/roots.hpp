#pragma once

#include <functional>

namespace latbound {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Brent-Dekker on [a, b] with f(a) f(b) <= 0. Stops when the bracket is
/// below xtol or f vanishes; throws solver error after max_iter steps.
RootResult brent(const std::function<double(double)>& f, double a, double b, double xtol,
                 int max_iter = 200);

}  // namespace latbound
