#include "landaulab/disorder.hpp"

#include <algorithm>
#include <cmath>

#include "landaulab/quadrature.hpp"
#include "landaulab/rng.hpp"

namespace landaulab {

void SingleSiteProfile::validate() const {
  if (!(inner_radius > 0.0) || !(outer_radius >= inner_radius) ||
      !std::isfinite(outer_radius)) {
    throw std::invalid_argument(
        "SingleSiteProfile: need 0 < inner_radius <= outer_radius < inf");
  }
  if (!(floor > 0.0) || !(cap >= floor) || !std::isfinite(cap)) {
    throw std::invalid_argument(
        "SingleSiteProfile: need 0 < floor <= cap < inf");
  }
  if (shape == ProfileShape::CosineBump) {
    const double at_inner =
        cap * std::pow(std::cos(M_PI * inner_radius / (2.0 * outer_radius)), 4.0);
    if (floor > at_inner + 1e-12) {
      throw std::invalid_argument(
          "SingleSiteProfile: floor exceeds the bump value at inner_radius");
    }
  }
}

double SingleSiteProfile::evaluate(double dx, double dy) const {
  switch (shape) {
    case ProfileShape::SquareIndicator: {
      const double r = std::max(std::abs(dx), std::abs(dy));
      return r <= outer_radius ? cap : 0.0;
    }
    case ProfileShape::DiscIndicator: {
      return std::hypot(dx, dy) <= outer_radius ? cap : 0.0;
    }
    case ProfileShape::CosineBump: {
      const double r = std::hypot(dx, dy);
      if (r >= outer_radius) return 0.0;
      const double c = std::cos(M_PI * r / (2.0 * outer_radius));
      return cap * c * c * c * c;  // C^2 across the support edge
    }
  }
  return 0.0;
}

SingleSiteProfile SingleSiteProfile::square(double radius, double amplitude) {
  SingleSiteProfile p{ProfileShape::SquareIndicator, radius, radius, amplitude,
                      amplitude};
  p.validate();
  return p;
}

SingleSiteProfile SingleSiteProfile::disc(double radius, double amplitude) {
  SingleSiteProfile p{ProfileShape::DiscIndicator, radius, radius, amplitude,
                      amplitude};
  p.validate();
  return p;
}

SingleSiteProfile SingleSiteProfile::cosine(double outer, double amplitude) {
  SingleSiteProfile p{ProfileShape::CosineBump, 0.5 * outer, outer,
                      amplitude * 0.25, amplitude};
  p.validate();
  return p;
}

std::string to_string(ProfileShape shape) {
  switch (shape) {
    case ProfileShape::SquareIndicator: return "square_indicator";
    case ProfileShape::DiscIndicator: return "disc_indicator";
    case ProfileShape::CosineBump: return "cosine_bump";
  }
  return "?";
}

CouplingLaw CouplingLaw::uniform(double m1, double m2) {
  if (!(m1 + m2 > 0.0) || m1 < 0.0 || m2 < 0.0) {
    throw std::invalid_argument("CouplingLaw::uniform: need M1+M2 > 0, Mj >= 0");
  }
  CouplingLaw law;
  law.name_ = "uniform";
  law.is_uniform_ = true;
  law.m1_ = m1;
  law.m2_ = m2;
  law.sup_density_ = 1.0 / (m1 + m2);
  law.mean_ = 0.5 * (m2 - m1);
  return law;
}

CouplingLaw CouplingLaw::truncated_density(const DensityFn& density, double m1,
                                           double m2, const std::string& name) {
  if (!(m1 + m2 > 0.0) || m1 < 0.0 || m2 < 0.0) {
    throw std::invalid_argument("CouplingLaw: need M1+M2 > 0, Mj >= 0");
  }
  CouplingLaw law;
  law.name_ = name;
  law.m1_ = m1;
  law.m2_ = m2;
  law.density_ = density;
  law.build_quantile_table(4096);
  return law;
}

void CouplingLaw::build_quantile_table(int resolution) {
  const double lo = -m1_, hi = m2_;
  const double h = (hi - lo) / resolution;
  cdf_grid_.resize(resolution + 1);
  cdf_.resize(resolution + 1);
  cdf_[0] = 0.0;
  cdf_grid_[0] = lo;
  double sup = 0.0;
  double mean_acc = 0.0;
  for (int k = 1; k <= resolution; ++k) {
    const double a = lo + (k - 1) * h;
    const double b = lo + k * h;
    const double fa = density_(a);
    const double fm = density_(0.5 * (a + b));
    const double fb = density_(b);
    const double piece = h / 6.0 * (fa + 4.0 * fm + fb);
    cdf_grid_[k] = b;
    cdf_[k] = cdf_[k - 1] + piece;
    sup = std::max({sup, fa, fm, fb});
    mean_acc += piece * 0.5 * (a + b);
  }
  const double total = cdf_.back();
  if (!(total > 0.0)) {
    throw std::invalid_argument("CouplingLaw: density integrates to zero");
  }
  if (std::abs(total - 1.0) > 1e-4) {
    throw std::invalid_argument(
        "CouplingLaw: density mass deviates from 1 by more than 1e-4 (" +
        std::to_string(total) + ")");
  }
  for (double& v : cdf_) v /= total;
  sup_density_ = sup / total;
  mean_ = mean_acc / total;
}

double CouplingLaw::density(double u) const {
  if (u < -m1_ || u > m2_) return 0.0;
  if (is_uniform_) return 1.0 / (m1_ + m2_);
  return density_(u);
}

double CouplingLaw::quantile(double unit) const {
  unit = std::clamp(unit, 0.0, 1.0 - 1e-16);
  if (is_uniform_) {
    return -m1_ + unit * (m1_ + m2_);
  }
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), unit);
  const std::size_t k = std::min<std::size_t>(
      cdf_.size() - 1, static_cast<std::size_t>(it - cdf_.begin()));
  const std::size_t k0 = k == 0 ? 0 : k - 1;
  const double c0 = cdf_[k0], c1 = cdf_[k];
  const double g0 = cdf_grid_[k0], g1 = cdf_grid_[k];
  if (c1 <= c0) return g0;
  return g0 + (unit - c0) / (c1 - c0) * (g1 - g0);
}

double CouplingLaw::mass(double lo, double hi) const {
  lo = std::max(lo, -m1_);
  hi = std::min(hi, m2_);
  if (!(hi > lo)) return 0.0;
  if (is_uniform_) return (hi - lo) / (m1_ + m2_);
  return quad::adaptive_simpson([this](double u) { return density(u); }, lo,
                                hi, 1e-9);
}

DensityFn make_base_density(const std::string& name, double parameter) {
  if (name == "gaussian") {
    const double sigma = parameter > 0.0 ? parameter : 1.0;
    return [sigma](double u) {
      return std::exp(-0.5 * u * u / (sigma * sigma)) /
             (sigma * std::sqrt(2.0 * M_PI));
    };
  }
  if (name == "uniform") {
    const double half = parameter > 0.0 ? parameter : 1.0;
    return [half](double u) { return std::abs(u) <= half ? 0.5 / half : 0.0; };
  }
  throw ConfigError("unknown base density: " + name);
}

CouplingLaw rescaled_law(const DensityFn& base_density, double lambda, double b,
                         const std::string& base_name) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("rescaled_law: lambda must be > 0");
  }
  if (!(b > 0.0)) {
    throw std::invalid_argument("rescaled_law: cutoff b must be > 0");
  }
  // c_{b,lambda} = 1 / integral_{-b}^{b} lambda^-1 rho(u/lambda) du.
  const double mass = quad::adaptive_simpson(
      [&](double v) { return base_density(v); }, -b / lambda, b / lambda, 1e-9);
  if (!(mass > 0.0)) {
    throw std::invalid_argument("rescaled_law: base density has no mass in cutoff");
  }
  const double c = 1.0 / mass;
  DensityFn density = [base_density, lambda, c](double u) {
    return c / lambda * base_density(u / lambda);
  };
  CouplingLaw law = CouplingLaw::truncated_density(
      density, b, b, "rescaled(" + base_name + ")");
  law.set_rescale({lambda, b, c, base_name});
  return law;
}

double DisorderRealization::coupling(int c1, int c2) const {
  const int n = cells_per_side;
  c1 = ((c1 % n) + n) % n;
  c2 = ((c2 % n) + n) % n;
  return couplings[static_cast<std::size_t>(c1) + static_cast<std::size_t>(n) * c2];
}

RealVector assemble_potential(const std::vector<double>& couplings,
                              int cells_per_side,
                              const SingleSiteProfile& profile,
                              const MagneticTorus& torus,
                              double* normalization_factor) {
  const int n = torus.grid_per_side();
  const double a = torus.spacing();
  const double side = torus.side();
  RealVector weighted = RealVector::Zero(torus.sites());
  RealVector envelope = RealVector::Zero(torus.sites());

  // Scan each bump over the grid sites inside its (wrapped) support box.
  const int reach = static_cast<int>(std::ceil(profile.outer_radius / a)) + 1;
  for (int c2 = 0; c2 < cells_per_side; ++c2) {
    for (int c1 = 0; c1 < cells_per_side; ++c1) {
      const double w =
          couplings[static_cast<std::size_t>(c1) +
                    static_cast<std::size_t>(cells_per_side) * c2];
      const double cx = static_cast<double>(c1);
      const double cy = static_cast<double>(c2);
      const int i0 = static_cast<int>(std::floor(cx / a));
      const int j0 = static_cast<int>(std::floor(cy / a));
      for (int dj = -reach; dj <= reach; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
          const int i = ((i0 + di) % n + n) % n;
          const int j = ((j0 + dj) % n + n) % n;
          double dx = i * a - cx;
          double dy = j * a - cy;
          dx -= side * std::round(dx / side);
          dy -= side * std::round(dy / side);
          const double u = profile.evaluate(dx, dy);
          if (u == 0.0) continue;
          const int s = i + n * j;
          weighted(s) += w * u;
          envelope(s) += u;
        }
      }
    }
  }

  const double sup = envelope.maxCoeff();
  if (!(sup > 0.0)) {
    throw GuardError("assemble_potential: profile support misses every grid site");
  }
  const double factor = 1.0 / sup;
  if (normalization_factor != nullptr) *normalization_factor = factor;
  return weighted * factor;
}

DisorderRealization sample_disorder(std::uint64_t seed, int realization,
                                    const CouplingLaw& law,
                                    const SingleSiteProfile& profile,
                                    const MagneticTorus& torus) {
  profile.validate();
  const int cells = torus.cells_per_side();
  if (cells < 2) {
    throw std::invalid_argument("sample_disorder: need at least 2x2 unit cells");
  }
  DisorderRealization r;
  r.seed = seed;
  r.realization_index = realization;
  r.cells_per_side = cells;
  r.m1 = law.m1();
  r.m2 = law.m2();
  r.couplings.resize(static_cast<std::size_t>(cells) * cells);
  for (int c2 = 0; c2 < cells; ++c2) {
    for (int c1 = 0; c1 < cells; ++c1) {
      const double u = rng::site_uniform(seed, realization, c1, c2);
      r.couplings[static_cast<std::size_t>(c1) +
                  static_cast<std::size_t>(cells) * c2] = law.quantile(u);
    }
  }
  r.potential = assemble_potential(r.couplings, cells, profile, torus,
                                   &r.normalization_factor);
  return r;
}

DisorderRealization shift_realization(const DisorderRealization& base, int a1,
                                      int a2, const SingleSiteProfile& profile,
                                      const MagneticTorus& torus) {
  DisorderRealization r = base;
  const int n = base.cells_per_side;
  for (int c2 = 0; c2 < n; ++c2) {
    for (int c1 = 0; c1 < n; ++c1) {
      // (tau_a omega)_i = omega_{i-a}
      r.couplings[static_cast<std::size_t>(c1) + static_cast<std::size_t>(n) * c2] =
          base.coupling(c1 - a1, c2 - a2);
    }
  }
  r.potential = assemble_potential(r.couplings, n, profile, torus,
                                   &r.normalization_factor);
  return r;
}

}  // namespace landaulab
