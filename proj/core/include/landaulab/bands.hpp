#pragma once

#include <vector>

#include "landaulab/disorder.hpp"
#include "landaulab/spectral.hpp"

namespace landaulab {

// Landau-level structure of the clean (lambda = 0) operator on a given torus:
// cluster means play the role of the lattice Landau levels B_n^lat, and half
// the cluster spread is the self-calibrated discretization tolerance.
struct CleanReference {
  int flux_quanta = 0;
  int n_bands = 0;
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> eps_disc;  // per band: (max - min) / 2
  double scan_ceiling = 0.0;     // midpoint above the last tracked cluster

  double level(int band) const { return mean.at(band - 1); }     // 1-based
  double epsilon(int band) const { return eps_disc.at(band - 1); }
};

CleanReference build_clean_reference(const MagneticTorus& torus,
                                     const GaugeField& gauge, int n_bands);

struct BandInterval {
  int band = 0;           // 1-based Landau index
  double window_lo = 0.0;  // broadened window [B_n - lambda M1 - eps, ...]
  double window_hi = 0.0;
  double lo = 0.0;         // measured extent of eigenvalues inside the window
  double hi = 0.0;
  int count_window = 0;    // eigenvalues inside the window
  int count_nearest = 0;   // eigenvalues whose nearest clean level is n
  double gap_to_next = 0.0;
};

struct BandReport {
  std::vector<BandInterval> bands;
  bool disjoint = false;       // broadened windows pairwise disjoint
  bool overlap_flag = false;   // !disjoint: the disjoint-bands condition fails
  bool containment_ok = false; // all eigenvalues below ceiling in the union
  double lambda = 0.0;
  double m1 = 0.0, m2 = 0.0;
  double scan_ceiling = 0.0;
  int total_below_ceiling = 0;
};

BandReport band_report(const RealVector& eigenvalues, double lambda,
                       const CouplingLaw& law, const CleanReference& ref);

// Eigenvalue lists for R independent realizations, computed in a fixed
// realization order (parallel-safe, worker-count independent).
std::vector<RealVector> disorder_spectra(const MagneticTorus& torus,
                                         const GaugeField& gauge,
                                         double lambda, const CouplingLaw& law,
                                         const SingleSiteProfile& profile,
                                         int realizations, std::uint64_t seed,
                                         int workers = 1);

struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Monte Carlo statistics of tr P(J): the finite-volume shadow of the Wegner
// bound E{tr P(J)} <= Q ||rho||_inf |J|^q L^2.
struct WegnerStatistic {
  EnergyWindow window;
  double mean_count = 0.0;
  double stderr_count = 0.0;
  double normalized = 0.0;         // mean / (|J| L^2)
  double stderr_normalized = 0.0;
  int realizations = 0;
};

std::vector<WegnerStatistic> wegner_scan(
    const std::vector<RealVector>& spectra,
    const std::vector<EnergyWindow>& windows, double side);

WegnerStatistic wegner_statistic(const MagneticTorus& torus,
                                 const GaugeField& gauge, double lambda,
                                 const CouplingLaw& law,
                                 const SingleSiteProfile& profile,
                                 const EnergyWindow& window, int realizations,
                                 std::uint64_t seed, int workers = 1);

// Disorder-averaged eigenvalue histogram. density = mean count per unit
// energy per unit area; summed over a full band times the bin width it
// integrates to n_phi / L^2.
struct DosHistogram {
  std::vector<double> edges;        // size bins+1
  std::vector<double> mean_count;   // per bin
  std::vector<double> stderr_count;
  std::vector<double> density;
  int realizations = 0;
};

DosHistogram density_of_states(const std::vector<RealVector>& spectra,
                               const std::vector<double>& edges, double side);

}  // namespace landaulab
