#include "landaulab/spectral.hpp"

#include <algorithm>
#include <limits>

#include "landaulab/linalg.hpp"

namespace landaulab {

namespace {

void check_input(const HermitianOperator& op, int dimension_cap) {
  if (op.dimension() > dimension_cap) {
    throw GuardError("diagonalize: dimension " + std::to_string(op.dimension()) +
                     " exceeds cap " + std::to_string(dimension_cap));
  }
  if (op.hermiticity_defect() > 1e-12) {
    throw std::invalid_argument("diagonalize: input is not Hermitian");
  }
}

}  // namespace

int SpectralDecomposition::count_at_or_below(double energy) const {
  return static_cast<int>(
      std::upper_bound(eigenvalues.data(), eigenvalues.data() + eigenvalues.size(),
                       energy) -
      eigenvalues.data());
}

int SpectralDecomposition::count_in(double lo, double hi) const {
  if (!(hi >= lo)) return 0;
  const auto* begin = eigenvalues.data();
  const auto* end = begin + eigenvalues.size();
  return static_cast<int>(std::upper_bound(begin, end, hi) -
                          std::lower_bound(begin, end, lo));
}

SpectralDecomposition diagonalize(const HermitianOperator& op,
                                  int dimension_cap) {
  check_input(op, dimension_cap);
  linalg::EigenSystem sys = linalg::eigh(op.matrix);
  SpectralDecomposition spec;
  spec.eigenvalues = std::move(sys.values);
  spec.eigenvectors = std::move(sys.vectors);
  spec.provenance = op.descriptor;
  return spec;
}

SpectralDecomposition eigenvalues_of(const HermitianOperator& op,
                                     int dimension_cap) {
  check_input(op, dimension_cap);
  SpectralDecomposition spec;
  spec.eigenvalues = linalg::eigvalsh(op.matrix);
  spec.provenance = op.descriptor;
  return spec;
}

FermiProjection fermi_projection(const SpectralDecomposition& spec,
                                 double fermi_energy) {
  FermiProjection p = window_projection(
      spec, -std::numeric_limits<double>::infinity(), fermi_energy);
  return p;
}

FermiProjection window_projection(const SpectralDecomposition& spec, double lo,
                                  double hi) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument("window_projection: decomposition has no vectors");
  }
  FermiProjection p;
  p.window_lo = lo;
  p.window_hi = hi;
  std::vector<int> cols;
  for (int n = 0; n < spec.dimension(); ++n) {
    const double e = spec.eigenvalues(n);
    if (e >= lo && e <= hi) cols.push_back(n);
  }
  p.basis.resize(spec.dimension(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    p.basis.col(static_cast<Eigen::Index>(k)) = spec.eigenvectors.col(cols[k]);
  }
  return p;
}

FermiProjection projection_from_columns(const SpectralDecomposition& spec,
                                        const std::vector<int>& columns) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument(
        "projection_from_columns: decomposition has no vectors");
  }
  FermiProjection p;
  p.window_lo = std::numeric_limits<double>::quiet_NaN();
  p.window_hi = std::numeric_limits<double>::quiet_NaN();
  p.basis.resize(spec.dimension(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    p.basis.col(static_cast<Eigen::Index>(k)) = spec.eigenvectors.col(columns[k]);
  }
  return p;
}

}  // namespace landaulab
