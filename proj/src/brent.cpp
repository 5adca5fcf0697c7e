#include "estranet/brent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace estranet {

BrentResult brent_minimize(const std::function<double(double)>& f, double lo, double hi, double xtol,
                           int max_evaluations) {
  if (!(lo < hi)) throw std::invalid_argument("brent_minimize: empty interval");
  if (!(xtol > 0.0)) throw std::invalid_argument("brent_minimize: xtol must be positive");
  if (max_evaluations < 1) throw std::invalid_argument("brent_minimize: need at least one evaluation");

  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);  // best point
  double w = x;                     // second best
  double v = x;                     // previous second best
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  int evaluations = 1;

  double step = 0.0;       // size of the latest step
  double prev_step = 0.0;  // size of the step before it
  double mid = 0.5 * (a + b);
  double tol1 = sqrt_eps * std::abs(x) + xtol / 3.0;
  double tol2 = 2.0 * tol1;

  while (std::abs(x - mid) > tol2 - 0.5 * (b - a)) {
    if (evaluations >= max_evaluations) break;
    bool use_golden = true;
    if (std::abs(prev_step) > tol1) {
      // parabola through (x, fx), (w, fw), (v, fv)
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double held = prev_step;
      prev_step = step;
      if (std::abs(p) < std::abs(0.5 * q * held) && p > q * (a - x) && p < q * (b - x)) {
        use_golden = false;
        step = p / q;
        const double candidate = x + step;
        // keep interpolated points clear of the bounds
        if (candidate - a < tol2 || b - candidate < tol2) step = (mid >= x) ? tol1 : -tol1;
      }
    }
    if (use_golden) {
      prev_step = (x >= mid) ? a - x : b - x;
      step = golden * prev_step;
    }
    const double u =
        (std::abs(step) >= tol1) ? x + step : x + ((step >= 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    ++evaluations;

    if (fu <= fx) {
      if (u >= x) {
        a = x;
      } else {
        b = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
    mid = 0.5 * (a + b);
    tol1 = sqrt_eps * std::abs(x) + xtol / 3.0;
    tol2 = 2.0 * tol1;
  }
  return {x, fx, evaluations};
}

}  // namespace estranet
