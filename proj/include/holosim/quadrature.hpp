#pragma once

#include <functional>
#include <vector>

namespace holosim {

// Adaptive Simpson quadrature with an absolute error target. Throws
// NumericsError when the recursion depth limit is hit (non-integrable or
// pathologically rough integrand).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-12, int max_depth = 48);

// Integrate over [a, b], splitting at the interior breakpoints so each
// smooth piece is handled separately.
double integrate_segmented(const std::function<double(double)>& f, double a,
                           double b, const std::vector<double>& breakpoints,
                           double abs_tol = 1e-12);

}  // namespace holosim
