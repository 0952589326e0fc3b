#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "landaulab/geometry.hpp"

namespace landaulab {

enum class ProfileShape { SquareIndicator, DiscIndicator, CosineBump };

// Single-site bump u, sandwiched between floor * chi(inner) and
// cap * chi(outer). Radii are half-widths in physical length units; bumps sit
// on the integer lattice and the unit cell centered at i is [i-1/2, i+1/2)^2.
struct SingleSiteProfile {
  ProfileShape shape = ProfileShape::SquareIndicator;
  double inner_radius = 0.45;
  double outer_radius = 0.45;
  double floor = 1.0;
  double cap = 1.0;

  void validate() const;
  // Bump value at displacement (dx, dy) from its center (not wrapped).
  double evaluate(double dx, double dy) const;

  static SingleSiteProfile square(double radius, double amplitude = 1.0);
  static SingleSiteProfile disc(double radius, double amplitude = 1.0);
  static SingleSiteProfile cosine(double outer, double amplitude = 1.0);
};

std::string to_string(ProfileShape shape);

using DensityFn = std::function<double(double)>;

struct RescaleProvenance {
  double lambda = 1.0;
  double cutoff = 1.0;       // b
  double normalizer = 1.0;   // c_{b,lambda}
  std::string base_name;
};

// Common distribution of the couplings, supported in [-M1, M2] with bounded
// density. Sampling goes through the quantile function so a single uniform
// draw per site fixes the coupling.
class CouplingLaw {
 public:
  static CouplingLaw uniform(double m1, double m2);
  static CouplingLaw truncated_density(const DensityFn& density, double m1,
                                       double m2, const std::string& name);

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double sup_density() const { return sup_density_; }
  double mean() const { return mean_; }
  const std::string& name() const { return name_; }

  double density(double u) const;
  double quantile(double unit) const;  // unit in [0,1)
  // nu([lo, hi]) by quadrature of the density (relative error ~1e-8).
  double mass(double lo, double hi) const;

  const std::optional<RescaleProvenance>& rescale() const { return rescale_; }
  void set_rescale(const RescaleProvenance& p) { rescale_ = p; }

 private:
  CouplingLaw() = default;
  void build_quantile_table(int resolution);

  std::string name_;
  bool is_uniform_ = false;
  double m1_ = 0.0, m2_ = 0.0;
  double sup_density_ = 0.0;
  double mean_ = 0.0;
  DensityFn density_;
  std::vector<double> cdf_grid_;  // abscissae
  std::vector<double> cdf_;       // cumulative values at the abscissae
  std::optional<RescaleProvenance> rescale_;
};

// Named base densities available to configs ("gaussian" takes sigma,
// "uniform" is 1/2 on [-1,1]).
DensityFn make_base_density(const std::string& name, double parameter);

// rho_lambda(u) = c_{b,lambda} lambda^-1 rho(u/lambda) restricted to [-b, b],
// with c chosen so the law has total mass one (quadrature, rel. err <= 1e-8).
CouplingLaw rescaled_law(const DensityFn& base_density, double lambda, double b,
                         const std::string& base_name = "base");

struct DisorderRealization {
  std::uint64_t seed = 0;
  int realization_index = 0;
  int cells_per_side = 0;
  std::vector<double> couplings;   // cell-major: c1 + cells*c2
  RealVector potential;            // per grid site, after normalization
  double normalization_factor = 1.0;
  double m1 = 0.0, m2 = 0.0;

  double coupling(int c1, int c2) const;
};

// One coupling per unit cell, drawn i.i.d. through the counter-based
// generator keyed on (seed, realization, cell); bumps are wrapped
// periodically across the torus boundary and the assembled sum is scaled so
// sup_x sum_i u(x-i) = 1 (factor recorded).
DisorderRealization sample_disorder(std::uint64_t seed, int realization,
                                    const CouplingLaw& law,
                                    const SingleSiteProfile& profile,
                                    const MagneticTorus& torus);

// tau_a omega: couplings shifted by `a` unit cells (cyclically), potential
// reassembled. Supports the covariance tests.
DisorderRealization shift_realization(const DisorderRealization& base,
                                      int a1, int a2,
                                      const SingleSiteProfile& profile,
                                      const MagneticTorus& torus);

// sup-normalization factor and potential assembly, shared by the samplers.
RealVector assemble_potential(const std::vector<double>& couplings,
                              int cells_per_side,
                              const SingleSiteProfile& profile,
                              const MagneticTorus& torus,
                              double* normalization_factor);

}  // namespace landaulab
