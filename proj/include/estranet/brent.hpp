#pragma once

#include <functional>

namespace estranet {

struct BrentResult {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

/// Bounded derivative-free scalar minimization: golden-section steps with
/// successive parabolic interpolation. Every accepted step narrows the
/// bracket; iteration stops once the best point sits within xtol of the
/// bracket midpoint or the evaluation budget runs out.
BrentResult brent_minimize(const std::function<double(double)>& f, double lo, double hi, double xtol,
                           int max_evaluations = 500);

}  // namespace estranet
