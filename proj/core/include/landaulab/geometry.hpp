#pragma once

#include <array>
#include <cstdint>

#include "landaulab/common.hpp"

namespace landaulab {

enum class FluxMode { AdjustLength, AdjustField };

// Finite-volume arena: an L x L torus threaded by an integer number of flux
// quanta, discretized on an N x N grid.
//
// Invariants enforced at construction:
//   - n_phi = B L^2 / (2 pi) is a positive integer (magnetic-periodic
//     boundary conditions exist only at integer flux),
//   - N >= 4 n_phi (flux per plaquette stays small),
//   - a sqrt(B) <= 0.5 (the magnetic length is resolved by the grid).
class MagneticTorus {
 public:
  static MagneticTorus make(double field, double side, int grid_per_side);

  double side() const { return side_; }
  double field() const { return field_; }
  int grid_per_side() const { return grid_; }
  int flux_quanta() const { return flux_quanta_; }
  double spacing() const { return side_ / grid_; }
  int sites() const { return grid_ * grid_; }
  double magnetic_length() const { return 1.0 / std::sqrt(field_); }

  // Flux per plaquette in radians: B a^2 = 2 pi n_phi / N^2.
  double plaquette_flux() const;

  int site_index(int i, int j) const;  // x index fastest
  std::array<int, 2> site_coords(int index) const;
  std::array<double, 2> site_position(int index) const;

  // Minimal-image displacement/distance on the torus.
  double wrap_delta(double d) const;
  double distance(const std::array<double, 2>& p,
                  const std::array<double, 2>& q) const;
  double distance_to(int site, const std::array<double, 2>& point) const;

  // Unit-cell structure (side-1 cells). Aligned means the side length is an
  // integer and the grid is commensurate with it.
  int cells_per_side() const;
  bool cells_aligned() const;
  int steps_per_cell() const;  // grid steps per unit cell; throws if unaligned

 private:
  MagneticTorus(double field, double side, int grid, int flux_quanta)
      : field_(field), side_(side), grid_(grid), flux_quanta_(flux_quanta) {}

  double field_;
  double side_;
  int grid_;
  int flux_quanta_;
};

struct FluxQuantization {
  double side;
  double field;
  int flux_quanta;
  FluxMode mode;
};

// Returns the smallest L >= L_request at fixed B with B L^2/(2 pi) integral.
FluxQuantization quantize_flux(double field, double side_request);

// Alternate mode for parameter scans: keeps L fixed and moves B to the
// nearest positive integer-flux value.
FluxQuantization quantize_flux_fixed_length(double side, double field_request);

}  // namespace landaulab
