#include "landaulab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace landaulab::quad {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, int max_depth) {
  if (!(b > a)) {
    throw std::invalid_argument("adaptive_simpson: requires b > a");
  }
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  // Scale the absolute tolerance off a coarse magnitude estimate; a second
  // pass refines it once the first pass pins the magnitude.
  double scale = std::max(std::abs(whole), 1e-300);
  double result =
      adaptive_step(f, a, m, fa, f(0.5 * (a + m)), fm, simpson(fa, f(0.5 * (a + m)), fm, m - a),
                    0.5 * rel_tol * scale, max_depth) +
      adaptive_step(f, m, b, fm, f(0.5 * (m + b)), fb, simpson(fm, f(0.5 * (m + b)), fb, b - m),
                    0.5 * rel_tol * scale, max_depth);
  if (std::abs(result) < scale * 0.5 || std::abs(result) > scale * 2.0) {
    scale = std::max(std::abs(result), 1e-300);
    result = adaptive_step(f, a, m, fa, f(0.5 * (a + m)), fm,
                           simpson(fa, f(0.5 * (a + m)), fm, m - a),
                           0.5 * rel_tol * scale, max_depth) +
             adaptive_step(f, m, b, fm, f(0.5 * (m + b)), fb,
                           simpson(fm, f(0.5 * (m + b)), fb, b - m),
                           0.5 * rel_tol * scale, max_depth);
  }
  return result;
}

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1");

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // Newton iteration on Legendre polynomials from the Chebyshev initial guess.
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  auto [pos, inserted] = cache.emplace(order, std::move(rule));
  (void)inserted;
  return pos->second;
}

double integrate_log_panels(const std::function<double(double)>& f,
                            double horizon, const LogPanelRule& rule) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("integrate_log_panels: horizon > 0 required");
  }
  const GaussRule& gauss = gauss_legendre(rule.points_per_panel);
  const double t_floor = rule.floor_factor * horizon;
  const int decades = static_cast<int>(
      std::ceil(std::log10(horizon / t_floor) * rule.panels_per_decade));

  auto panel = [&](double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t k = 0; k < gauss.nodes.size(); ++k) {
      acc += gauss.weights[k] * f(c + h * gauss.nodes[k]);
    }
    return acc * h;
  };

  double total = panel(0.0, t_floor);
  const double ratio = std::pow(horizon / t_floor, 1.0 / decades);
  double lo = t_floor;
  for (int d = 0; d < decades; ++d) {
    const double hi = (d + 1 == decades) ? horizon : lo * ratio;
    total += panel(lo, hi);
    lo = hi;
  }
  return total;
}

}  // namespace landaulab::quad
