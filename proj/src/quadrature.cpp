#include "holosim/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "holosim/errors.hpp"

namespace holosim {
namespace {

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw NumericsError("adaptive quadrature did not converge on [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double integrate_segmented(const std::function<double(double)>& f, double a,
                           double b, const std::vector<double>& breakpoints,
                           double abs_tol) {
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double t : breakpoints) {
    if (t > a && t < b) cuts.push_back(t);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_simpson(f, cuts[i], cuts[i + 1], piece_tol);
  }
  return total;
}

}  // namespace holosim
