#pragma once

#include <vector>

#include "landaulab/spectral.hpp"

namespace landaulab {

// Sharp switch functions 1{x1 >= r}, 1{x2 >= s}. Sites exactly on the jump
// take value 1. On the torus each switch also jumps back at the 0/L seam, so
// the jump lines cross at four points; the windowed trace picks out the
// crossing at (r, s).
struct SwitchPair {
  double r = 0.0;
  double s = 0.0;

  static SwitchPair centered(const MagneticTorus& torus) {
    return {0.5 * torus.side(), 0.5 * torus.side()};
  }
};

// The finite-dimensional trace of P[[P,L1],[P,L2]] vanishes identically, so
// the conductance is read off from the diagonal density summed over a window
// around one jump-line crossing; the reported truncation_estimate bounds what
// the window boundary still carries.
//
// Sign convention: sigma_h = +2 pi i * theta, fixed so the clean lowest-band
// Fermi projection gives Re sigma_h = +1 with the gauge orientation of
// GaugeField::landau (asserted in tests).
struct HallResult {
  cplx theta = 0.0;
  cplx sigma_h = 0.0;
  double window_radius = 0.0;
  double truncation_estimate = 0.0;
};

// Diagonal density theta(x) = <x| P[[P,L1],[P,L2]] |x>; purely imaginary up
// to roundoff, sums to zero over the whole torus.
Vector theta_density(const FermiProjection& p, const MagneticTorus& torus,
                     const SwitchPair& switches);

bool switches_admissible(const MagneticTorus& torus, const SwitchPair& switches,
                         double window_radius);

HallResult theta_windowed(const FermiProjection& p, const MagneticTorus& torus,
                          const SwitchPair& switches, double window_radius);

double default_window_radius(const MagneticTorus& torus);

// |theta_{r,s} - theta_{r',s'}|; contract: bounded by the combined
// truncation estimates.
double theta_shift_invariance(const FermiProjection& p,
                              const MagneticTorus& torus, const SwitchPair& a,
                              const SwitchPair& b, double window_radius);

// |theta(P+Q) - theta(P) - theta(Q)| for orthogonal spectral projections
// (rejects pairs with ||P Q|| > 1e-9).
double theta_additivity(const FermiProjection& p, const FermiProjection& q,
                        const MagneticTorus& torus, const SwitchPair& switches,
                        double window_radius);

// Bott index of the projected cycle phases exp(2 pi i x_j / L); integer
// topological oracle for the windowed conductance. Near-unimodular spectrum
// close to the -1 branch cut or a near-singular projected phase is flagged.
struct BottResult {
  double raw = 0.0;
  int index = 0;
  double residue = 0.0;
  bool branch_warning = false;
  double min_singular_value = 1.0;
};

BottResult bott_index(const FermiProjection& p, const MagneticTorus& torus);

struct HallTraceRow {
  double energy = 0.0;
  double re_sigma = 0.0;
  double truncation_estimate = 0.0;
  double bott_raw = 0.0;
  int bott = 0;
  double bott_residue = 0.0;
  int rank = 0;
};

// Conductance as a function of the Fermi energy for one realization.
std::vector<HallTraceRow> hall_trace(const SpectralDecomposition& spec,
                                     const MagneticTorus& torus,
                                     const std::vector<double>& energies,
                                     const SwitchPair& switches,
                                     double window_radius);

}  // namespace landaulab
