#include "landaulab/localization.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace landaulab {

namespace {

// Unit cell of a site: nearest integer lattice point (cells are
// [i-1/2, i+1/2) squares, wrapped).
int cell_of(double coord, int cells) {
  const int c = static_cast<int>(std::llround(coord));
  return (c % cells + cells) % cells;
}

std::vector<std::vector<int>> cell_site_lists(const MagneticTorus& torus) {
  const int cells = torus.cells_per_side();
  std::vector<std::vector<int>> lists(static_cast<std::size_t>(cells) * cells);
  for (int s = 0; s < torus.sites(); ++s) {
    const auto pos = torus.site_position(s);
    const int c1 = cell_of(pos[0], cells);
    const int c2 = cell_of(pos[1], cells);
    lists[c1 + cells * c2].push_back(s);
  }
  return lists;
}

}  // namespace

DecayProfile decay_profile(const FermiProjection& p,
                           const MagneticTorus& torus) {
  const int cells = torus.cells_per_side();
  if (cells < 4) {
    throw std::invalid_argument("decay_profile: need at least 4x4 unit cells");
  }
  DecayProfile profile;
  if (p.rank() == 0) return profile;  // empty: undefined for rank zero
  if (p.dimension() != torus.sites()) {
    throw std::invalid_argument("decay_profile: projection/torus mismatch");
  }

  const auto lists = cell_site_lists(torus);
  const int ncells = static_cast<int>(lists.size());
  const int r = p.rank();

  // ||chi_x P chi_y||_2^2 = tr(A_x A_y) with A_c = Phi_c^dag Phi_c.
  std::vector<Matrix> gram(ncells);
  for (int c = 0; c < ncells; ++c) {
    Matrix rows(static_cast<Eigen::Index>(lists[c].size()), r);
    for (std::size_t k = 0; k < lists[c].size(); ++k) {
      rows.row(static_cast<Eigen::Index>(k)) = p.basis.row(lists[c][k]);
    }
    gram[c] = rows.adjoint() * rows;
  }

  // Key: squared center distance in cell units (integral by construction).
  std::map<long long, double> max_by_dist2;
  for (int cy = 0; cy < ncells; ++cy) {
    const int y1 = cy % cells, y2 = cy / cells;
    for (int cx = cy; cx < ncells; ++cx) {
      const int x1 = cx % cells, x2 = cx / cells;
      int d1 = std::abs(x1 - y1);
      d1 = std::min(d1, cells - d1);
      int d2 = std::abs(x2 - y2);
      d2 = std::min(d2, cells - d2);
      const long long dist2 = static_cast<long long>(d1) * d1 +
                              static_cast<long long>(d2) * d2;
      const double hs2 = std::real(
          (gram[cx].array() * gram[cy].array().conjugate()).sum());
      const double value = std::sqrt(std::max(0.0, hs2));
      auto [it, fresh] = max_by_dist2.try_emplace(dist2, value);
      if (!fresh && value > it->second) it->second = value;
    }
  }

  for (const auto& [dist2, value] : max_by_dist2) {
    profile.distance.push_back(std::sqrt(static_cast<double>(dist2)));
    profile.value.push_back(value);
  }

  // Least-squares exponential fit over d in [2, L/2 - 1].
  const double d_lo = 2.0;
  const double d_hi = 0.5 * cells - 1.0 + 1e-9;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < profile.distance.size(); ++k) {
    const double d = profile.distance[k];
    if (d < d_lo || d > d_hi || profile.value[k] <= 0.0) continue;
    const double y = std::log(profile.value[k]);
    sx += d;
    sy += y;
    sxx += d * d;
    sxy += d * y;
    ++n;
  }
  profile.fit_points = n;
  if (n >= 2) {
    const double det = n * sxx - sx * sx;
    if (det > 0.0) {
      const double slope = (n * sxy - sx * sy) / det;
      const double intercept = (sy - slope * sx) / n;
      profile.fit_rate = -slope;
      profile.fit_log_amplitude = intercept;
      double ss = 0.0;
      for (std::size_t k = 0; k < profile.distance.size(); ++k) {
        const double d = profile.distance[k];
        if (d < d_lo || d > d_hi || profile.value[k] <= 0.0) continue;
        const double e = std::log(profile.value[k]) - (intercept + slope * d);
        ss += e * e;
      }
      profile.fit_residual = std::sqrt(ss / n);
      profile.fit_ok = std::isfinite(profile.fit_rate);
    }
  }
  return profile;
}

bool passes_decay_gate(const DecayProfile& profile, const MagneticTorus& torus,
                       const DecayGate& gate) {
  if (!profile.fit_ok || profile.fit_rate <= 0.0) return false;
  if (profile.fit_residual >= gate.residual_fraction * profile.fit_rate) {
    return false;
  }
  return profile.fit_rate * torus.side() >= gate.min_rate_length;
}

SudecWeights sudec_weights(const SpectralDecomposition& spec, double lo,
                           double hi, const MagneticTorus& torus) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument("sudec_weights: decomposition has no vectors");
  }
  const int dim = torus.sites();
  if (spec.dimension() != dim) {
    throw std::invalid_argument("sudec_weights: decomposition/torus mismatch");
  }
  const std::array<double, 2> center{0.5 * torus.side(), 0.5 * torus.side()};
  RealVector w4(dim);  // <x>_c^{-4}
  for (int s = 0; s < dim; ++s) {
    const double d = torus.distance_to(s, center);
    const double x2 = 1.0 + d * d;
    w4(s) = 1.0 / (x2 * x2);
  }

  SudecWeights out;
  for (int n = 0; n < spec.dimension(); ++n) {
    const double e = spec.eigenvalues(n);
    if (e < lo || e > hi) continue;
    double alpha = 0.0;
    for (int s = 0; s < dim; ++s) {
      alpha += w4(s) * std::norm(spec.eigenvectors(s, n));
    }
    out.eigenindex.push_back(n);
    out.alpha.push_back(alpha);
    out.alpha_sum += alpha;
  }
  // mu(I) = tr{ w^2 P_I w^2 } evaluated from the diagonal of P_I.
  double mu = 0.0;
  for (int s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (const int n : out.eigenindex) {
      diag += std::norm(spec.eigenvectors(s, n));
    }
    mu += w4(s) * diag;
  }
  out.mu = mu;
  return out;
}

RealVector eigenfunction_cell_norms(const SpectralDecomposition& spec, int n,
                                    const MagneticTorus& torus) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument(
        "eigenfunction_cell_norms: decomposition has no vectors");
  }
  const auto lists = cell_site_lists(torus);
  RealVector norms(static_cast<Eigen::Index>(lists.size()));
  for (std::size_t c = 0; c < lists.size(); ++c) {
    double acc = 0.0;
    for (const int s : lists[c]) acc += std::norm(spec.eigenvectors(s, n));
    norms(static_cast<Eigen::Index>(c)) = std::sqrt(acc);
  }
  return norms;
}

double participation_ratio(const SpectralDecomposition& spec, int n) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument(
        "participation_ratio: decomposition has no vectors");
  }
  double p2 = 0.0, p4 = 0.0;
  for (int s = 0; s < spec.dimension(); ++s) {
    const double a2 = std::norm(spec.eigenvectors(s, n));
    p2 += a2;
    p4 += a2 * a2;
  }
  return p2 * p2 / p4;
}

ProxyIntervalPair proxy_intervals(const std::vector<double>& energies,
                                  const std::vector<bool>& gate_pass) {
  if (energies.size() != gate_pass.size()) {
    throw std::invalid_argument("proxy_intervals: size mismatch");
  }
  ProxyIntervalPair out;
  const std::size_t n = energies.size();
  if (n == 0) return out;
  std::size_t lo_end = 0;
  while (lo_end < n && gate_pass[lo_end]) ++lo_end;
  if (lo_end > 0) {
    out.lower_found = true;
    out.lower_lo = energies.front();
    out.lower_hi = energies[lo_end - 1];
  }
  std::size_t hi_begin = n;
  while (hi_begin > lo_end && gate_pass[hi_begin - 1]) --hi_begin;
  if (hi_begin < n) {
    out.upper_found = true;
    out.upper_lo = energies[hi_begin];
    out.upper_hi = energies.back();
  }
  return out;
}

}  // namespace landaulab
