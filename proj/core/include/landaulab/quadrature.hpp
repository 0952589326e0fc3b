#pragma once

#include <functional>
#include <vector>

namespace landaulab::quad {

// Adaptive Simpson with Richardson control. Bisection stops once the local
// error estimate is below tol * max(1, |whole integral so far|) scaled by the
// interval fraction.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, int max_depth = 50);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Composite 40-point Gauss-Legendre panels on log-spaced breakpoints covering
// [t_floor, horizon], plus one linear panel for [0, t_floor]. Used as the
// direct time-quadrature cross-check of the closed-form Laplace kernel.
struct LogPanelRule {
  int points_per_panel = 40;
  int panels_per_decade = 8;
  double floor_factor = 1e-8;  // t_floor = floor_factor * horizon
};
double integrate_log_panels(const std::function<double(double)>& f,
                            double horizon, const LogPanelRule& rule = {});

}  // namespace landaulab::quad
