#pragma once

#include <vector>

#include "landaulab/geometry.hpp"

namespace landaulab {

// Unit phases on the directed nearest-neighbor bonds of the grid. link_x[s]
// sits on the bond s -> s+e_x, link_y[s] on s -> s+e_y (reversed bonds carry
// the conjugate phase by construction of the Hamiltonian). Every elementary
// plaquette multiplies to exp(i B a^2); the boundary columns/rows carry the
// compensating phases that make this exact at integer total flux.
struct GaugeField {
  int grid = 0;
  std::vector<cplx> link_x;
  std::vector<cplx> link_y;

  // Landau-type gauge with the vector potential along y (default).
  static GaugeField landau(const MagneticTorus& torus);
  // Same field with the roles of the axes exchanged; equal plaquettes and
  // cycle holonomies, different link phases. Used by gauge-invariance tests.
  static GaugeField landau_transposed(const MagneticTorus& torus);

  // Gauge transform by per-site unit phases g: link'(x->y) = g(y) link g(x)*.
  GaugeField rephased(const std::vector<cplx>& site_phase) const;

  cplx plaquette(int i, int j) const;
  cplx holonomy_x(int row) const;     // product of x links along a row
  cplx holonomy_y(int column) const;  // product of y links along a column
};

}  // namespace landaulab
