#include "landaulab/geometry.hpp"

#include <cmath>

namespace landaulab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kFluxTol = 1e-9;
}  // namespace

MagneticTorus MagneticTorus::make(double field, double side,
                                  int grid_per_side) {
  if (!(field > 0.0) || !(side > 0.0)) {
    throw std::invalid_argument("MagneticTorus: field and side must be > 0");
  }
  if (grid_per_side < 2) {
    throw std::invalid_argument("MagneticTorus: need at least a 2x2 grid");
  }
  const double flux = field * side * side / kTwoPi;
  const double rounded = std::round(flux);
  if (rounded < 0.5 || std::abs(flux - rounded) > kFluxTol * std::max(1.0, flux)) {
    throw GuardError("MagneticTorus: B L^2/(2 pi) = " + std::to_string(flux) +
                     " is not a positive integer; quantize the flux first");
  }
  const int n_phi = static_cast<int>(rounded);
  if (grid_per_side < 4 * n_phi) {
    throw GuardError("MagneticTorus: resolution guard N >= 4 n_phi violated (N=" +
                     std::to_string(grid_per_side) +
                     ", n_phi=" + std::to_string(n_phi) + ")");
  }
  const double a = side / grid_per_side;
  if (a * std::sqrt(field) > 0.5 + 1e-12) {
    throw GuardError(
        "MagneticTorus: resolution guard a sqrt(B) <= 0.5 violated (a sqrt(B)=" +
        std::to_string(a * std::sqrt(field)) + ")");
  }
  return MagneticTorus(field, side, grid_per_side, n_phi);
}

double MagneticTorus::plaquette_flux() const {
  return kTwoPi * flux_quanta_ / (static_cast<double>(grid_) * grid_);
}

int MagneticTorus::site_index(int i, int j) const {
  const int n = grid_;
  i = ((i % n) + n) % n;
  j = ((j % n) + n) % n;
  return i + n * j;
}

std::array<int, 2> MagneticTorus::site_coords(int index) const {
  return {index % grid_, index / grid_};
}

std::array<double, 2> MagneticTorus::site_position(int index) const {
  const auto c = site_coords(index);
  const double a = spacing();
  return {c[0] * a, c[1] * a};
}

double MagneticTorus::wrap_delta(double d) const {
  d = std::fmod(d, side_);
  if (d < -0.5 * side_) d += side_;
  if (d >= 0.5 * side_) d -= side_;
  return d;
}

double MagneticTorus::distance(const std::array<double, 2>& p,
                               const std::array<double, 2>& q) const {
  const double dx = wrap_delta(p[0] - q[0]);
  const double dy = wrap_delta(p[1] - q[1]);
  return std::hypot(dx, dy);
}

double MagneticTorus::distance_to(int site,
                                  const std::array<double, 2>& point) const {
  return distance(site_position(site), point);
}

int MagneticTorus::cells_per_side() const {
  return static_cast<int>(std::ceil(side_ - 1e-9));
}

bool MagneticTorus::cells_aligned() const {
  const double rounded = std::round(side_);
  if (std::abs(side_ - rounded) > 1e-12 * std::max(1.0, side_)) return false;
  const int l = static_cast<int>(rounded);
  return l >= 1 && grid_ % l == 0;
}

int MagneticTorus::steps_per_cell() const {
  if (!cells_aligned()) {
    throw GuardError("MagneticTorus: unit cells are not grid-aligned (L=" +
                     std::to_string(side_) + ", N=" + std::to_string(grid_) +
                     ")");
  }
  return grid_ / static_cast<int>(std::round(side_));
}

FluxQuantization quantize_flux(double field, double side_request) {
  if (!(field > 0.0) || !(side_request > 0.0)) {
    throw std::invalid_argument("quantize_flux: inputs must be > 0");
  }
  const double flux_request = field * side_request * side_request / kTwoPi;
  // Smallest integer k >= flux_request, modulo a relative tolerance so an
  // already-quantized request maps to itself.
  double k = std::ceil(flux_request - kFluxTol * std::max(1.0, flux_request));
  if (k < 1.0) k = 1.0;
  const double side = std::sqrt(kTwoPi * k / field);
  return {side, field, static_cast<int>(k), FluxMode::AdjustLength};
}

FluxQuantization quantize_flux_fixed_length(double side,
                                            double field_request) {
  if (!(side > 0.0) || !(field_request > 0.0)) {
    throw std::invalid_argument("quantize_flux_fixed_length: inputs must be > 0");
  }
  double k = std::round(field_request * side * side / kTwoPi);
  if (k < 1.0) k = 1.0;
  const double field = kTwoPi * k / (side * side);
  return {side, field, static_cast<int>(k), FluxMode::AdjustField};
}

}  // namespace landaulab
