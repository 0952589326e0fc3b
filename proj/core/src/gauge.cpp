#include "landaulab/gauge.hpp"

#include <cmath>

namespace landaulab {

namespace {
cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

GaugeField GaugeField::landau(const MagneticTorus& torus) {
  const int n = torus.grid_per_side();
  const double phi = torus.plaquette_flux();
  GaugeField g;
  g.grid = n;
  g.link_x.assign(static_cast<std::size_t>(n) * n, cplx(1.0, 0.0));
  g.link_y.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int s = torus.site_index(i, j);
      g.link_y[s] = unit_phase(phi * i);
      if (i == n - 1) {
        // Boundary column: closes the x cycle so every plaquette in the last
        // column also carries exp(i phi). Unit total flux makes the corner
        // plaquette consistent.
        g.link_x[s] = unit_phase(-phi * n * j);
      }
    }
  }
  return g;
}

GaugeField GaugeField::landau_transposed(const MagneticTorus& torus) {
  const int n = torus.grid_per_side();
  const double phi = torus.plaquette_flux();
  GaugeField g;
  g.grid = n;
  g.link_x.resize(static_cast<std::size_t>(n) * n);
  g.link_y.assign(static_cast<std::size_t>(n) * n, cplx(1.0, 0.0));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int s = torus.site_index(i, j);
      g.link_x[s] = unit_phase(-phi * j);
      if (j == n - 1) {
        g.link_y[s] = unit_phase(phi * n * i);
      }
    }
  }
  return g;
}

GaugeField GaugeField::rephased(const std::vector<cplx>& site_phase) const {
  if (static_cast<int>(site_phase.size()) != grid * grid) {
    throw std::invalid_argument("GaugeField::rephased: wrong phase count");
  }
  GaugeField g;
  g.grid = grid;
  g.link_x.resize(link_x.size());
  g.link_y.resize(link_y.size());
  const int n = grid;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int s = i + n * j;
      const int sx = (i + 1) % n + n * j;
      const int sy = i + n * ((j + 1) % n);
      g.link_x[s] = site_phase[sx] * link_x[s] * std::conj(site_phase[s]);
      g.link_y[s] = site_phase[sy] * link_y[s] * std::conj(site_phase[s]);
    }
  }
  return g;
}

cplx GaugeField::plaquette(int i, int j) const {
  const int n = grid;
  const int s = i + n * j;
  const int se = (i + 1) % n + n * j;
  const int sn = i + n * ((j + 1) % n);
  return link_x[s] * link_y[se] * std::conj(link_x[sn]) * std::conj(link_y[s]);
}

cplx GaugeField::holonomy_x(int row) const {
  cplx h(1.0, 0.0);
  for (int i = 0; i < grid; ++i) h *= link_x[i + grid * row];
  return h;
}

cplx GaugeField::holonomy_y(int column) const {
  cplx h(1.0, 0.0);
  for (int j = 0; j < grid; ++j) h *= link_y[column + grid * j];
  return h;
}

}  // namespace landaulab
