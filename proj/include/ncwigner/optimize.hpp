#pragma once

#include <cmath>

namespace ncwigner {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/**
 * @brief Golden-section search for the maximum of a unimodal f on [lo, hi].
 *
 * Stops when the bracket is narrower than tol. Ties keep the left part of the
 * bracket, so flat tails to the right never pull the search away.
 */
template <class F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tol,
                                      int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iterations) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace ncwigner
