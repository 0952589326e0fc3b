#include "landaulab/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landaulab/parallel.hpp"

namespace landaulab {

CleanReference build_clean_reference(const MagneticTorus& torus,
                                     const GaugeField& gauge, int n_bands) {
  if (n_bands < 1) {
    throw std::invalid_argument("build_clean_reference: n_bands >= 1");
  }
  const int q = torus.flux_quanta();
  const HermitianOperator h = build_free_hamiltonian(torus, gauge);
  const SpectralDecomposition spec = eigenvalues_of(h);
  if (spec.dimension() < (n_bands + 1) * q) {
    throw GuardError("build_clean_reference: grid too small for requested bands");
  }

  CleanReference ref;
  ref.flux_quanta = q;
  ref.n_bands = n_bands;
  for (int k = 0; k < n_bands; ++k) {
    const int begin = k * q;
    const int end = begin + q;  // exclusive
    const double lo = spec.eigenvalues(begin);
    const double hi = spec.eigenvalues(end - 1);
    double mean = 0.0;
    for (int i = begin; i < end; ++i) mean += spec.eigenvalues(i);
    mean /= q;
    const double next = spec.eigenvalues(end);
    if (next - hi < 3.0 * (hi - lo)) {
      throw GuardError("build_clean_reference: clean cluster " +
                       std::to_string(k + 1) +
                       " is not separated from the next level");
    }
    ref.mean.push_back(mean);
    ref.min.push_back(lo);
    ref.max.push_back(hi);
    ref.eps_disc.push_back(0.5 * (hi - lo));
  }
  const double last_hi = ref.max.back();
  const double next = spec.eigenvalues(n_bands * q);
  ref.scan_ceiling = 0.5 * (last_hi + next);
  return ref;
}

BandReport band_report(const RealVector& eigenvalues, double lambda,
                       const CouplingLaw& law, const CleanReference& ref) {
  BandReport report;
  report.lambda = lambda;
  report.m1 = law.m1();
  report.m2 = law.m2();
  report.scan_ceiling = ref.scan_ceiling;

  const int n_bands = ref.n_bands;
  report.bands.resize(n_bands);
  for (int k = 0; k < n_bands; ++k) {
    BandInterval& b = report.bands[k];
    b.band = k + 1;
    b.window_lo = ref.mean[k] - lambda * law.m1() - ref.eps_disc[k];
    b.window_hi = ref.mean[k] + lambda * law.m2() + ref.eps_disc[k];
    b.lo = std::numeric_limits<double>::quiet_NaN();
    b.hi = std::numeric_limits<double>::quiet_NaN();
  }

  report.disjoint = true;
  for (int k = 0; k + 1 < n_bands; ++k) {
    if (report.bands[k].window_hi >= report.bands[k + 1].window_lo) {
      report.disjoint = false;
    }
  }
  report.overlap_flag = !report.disjoint;

  bool contained = true;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    const double e = eigenvalues(i);
    if (e > ref.scan_ceiling) break;
    ++report.total_below_ceiling;

    // Nearest clean level (partition used for the counting identity).
    int nearest = 0;
    double best = std::abs(e - ref.mean[0]);
    for (int k = 1; k < n_bands; ++k) {
      const double d = std::abs(e - ref.mean[k]);
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    ++report.bands[nearest].count_nearest;

    bool in_any = false;
    for (int k = 0; k < n_bands; ++k) {
      BandInterval& b = report.bands[k];
      if (e >= b.window_lo && e <= b.window_hi) {
        in_any = true;
        ++b.count_window;
        if (std::isnan(b.lo) || e < b.lo) b.lo = e;
        if (std::isnan(b.hi) || e > b.hi) b.hi = e;
      }
    }
    if (!in_any) contained = false;
  }
  report.containment_ok = contained;

  for (int k = 0; k + 1 < n_bands; ++k) {
    BandInterval& b = report.bands[k];
    const BandInterval& next = report.bands[k + 1];
    if (std::isnan(b.hi) || std::isnan(next.lo)) {
      b.gap_to_next = std::numeric_limits<double>::quiet_NaN();
    } else {
      b.gap_to_next = next.lo - b.hi;
    }
  }
  return report;
}

std::vector<RealVector> disorder_spectra(const MagneticTorus& torus,
                                         const GaugeField& gauge,
                                         double lambda, const CouplingLaw& law,
                                         const SingleSiteProfile& profile,
                                         int realizations, std::uint64_t seed,
                                         int workers) {
  if (realizations < 1) {
    throw std::invalid_argument("disorder_spectra: realizations >= 1");
  }
  std::vector<RealVector> spectra(realizations);
  parallel_for(realizations, workers, [&](int r) {
    const DisorderRealization omega =
        sample_disorder(seed, r, law, profile, torus);
    const HermitianOperator h =
        build_hamiltonian(torus, gauge, omega.potential, lambda);
    spectra[r] = eigenvalues_of(h).eigenvalues;
  });
  return spectra;
}

namespace {

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

MeanStderr reduce(const std::vector<double>& xs) {
  MeanStderr out;
  const int n = static_cast<int>(xs.size());
  if (n == 0) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;  // fixed order
  out.mean = sum / n;
  if (n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_of_mean = std::sqrt(ss / (static_cast<double>(n) * (n - 1)));
  }
  return out;
}

int count_in_window(const RealVector& sorted, double lo, double hi) {
  if (!(hi >= lo)) return 0;
  const double* begin = sorted.data();
  const double* end = begin + sorted.size();
  return static_cast<int>(std::upper_bound(begin, end, hi) -
                          std::lower_bound(begin, end, lo));
}

}  // namespace

std::vector<WegnerStatistic> wegner_scan(
    const std::vector<RealVector>& spectra,
    const std::vector<EnergyWindow>& windows, double side) {
  std::vector<WegnerStatistic> out;
  out.reserve(windows.size());
  const double area = side * side;
  for (const EnergyWindow& w : windows) {
    if (!(w.width() > 0.0)) {
      throw std::invalid_argument("wegner_scan: window must have positive width");
    }
    std::vector<double> counts;
    counts.reserve(spectra.size());
    for (const RealVector& ev : spectra) {
      counts.push_back(count_in_window(ev, w.lo, w.hi));
    }
    const MeanStderr ms = reduce(counts);
    WegnerStatistic stat;
    stat.window = w;
    stat.mean_count = ms.mean;
    stat.stderr_count = ms.stderr_of_mean;
    stat.normalized = ms.mean / (w.width() * area);
    stat.stderr_normalized = ms.stderr_of_mean / (w.width() * area);
    stat.realizations = static_cast<int>(spectra.size());
    out.push_back(stat);
  }
  return out;
}

WegnerStatistic wegner_statistic(const MagneticTorus& torus,
                                 const GaugeField& gauge, double lambda,
                                 const CouplingLaw& law,
                                 const SingleSiteProfile& profile,
                                 const EnergyWindow& window, int realizations,
                                 std::uint64_t seed, int workers) {
  if (realizations < 2) {
    throw std::invalid_argument("wegner_statistic: realizations >= 2");
  }
  const auto spectra = disorder_spectra(torus, gauge, lambda, law, profile,
                                        realizations, seed, workers);
  return wegner_scan(spectra, {window}, torus.side()).front();
}

DosHistogram density_of_states(const std::vector<RealVector>& spectra,
                               const std::vector<double>& edges, double side) {
  if (edges.size() < 2) {
    throw std::invalid_argument("density_of_states: need at least one bin");
  }
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (!(edges[k + 1] > edges[k])) {
      throw std::invalid_argument("density_of_states: edges must increase");
    }
  }
  const std::size_t bins = edges.size() - 1;
  const double area = side * side;
  DosHistogram hist;
  hist.edges = edges;
  hist.realizations = static_cast<int>(spectra.size());
  hist.mean_count.resize(bins);
  hist.stderr_count.resize(bins);
  hist.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    std::vector<double> counts;
    counts.reserve(spectra.size());
    for (const RealVector& ev : spectra) {
      // half-open bins [lo, hi), closed at the top edge of the last bin
      const double lo = edges[b];
      const double hi = edges[b + 1];
      const double* begin = ev.data();
      const double* end = begin + ev.size();
      const double* from = std::lower_bound(begin, end, lo);
      const double* to = (b + 1 == bins) ? std::upper_bound(begin, end, hi)
                                         : std::lower_bound(begin, end, hi);
      counts.push_back(static_cast<double>(to - from));
    }
    const MeanStderr ms = reduce(counts);
    hist.mean_count[b] = ms.mean;
    hist.stderr_count[b] = ms.stderr_of_mean;
    hist.density[b] = ms.mean / ((edges[b + 1] - edges[b]) * area);
  }
  return hist;
}

}  // namespace landaulab
