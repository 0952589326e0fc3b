#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "landaulab/gauge.hpp"
#include "landaulab/geometry.hpp"
#include "landaulab/hamiltonian.hpp"
#include "landaulab/linalg.hpp"
#include "landaulab/rng.hpp"
#include "landaulab/translations.hpp"

using namespace landaulab;

namespace {

Vector random_state(int dim, std::uint64_t seed) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = cplx(rng::keyed_uniform(seed, 10, i) - 0.5,
                rng::keyed_uniform(seed, 11, i) - 0.5);
  }
  v.normalize();
  return v;
}

DisorderRealization constant_disorder(const MagneticTorus& torus, double value,
                                      const SingleSiteProfile& profile) {
  DisorderRealization r;
  r.cells_per_side = torus.cells_per_side();
  r.couplings.assign(
      static_cast<std::size_t>(r.cells_per_side) * r.cells_per_side, value);
  r.potential = assemble_potential(r.couplings, r.cells_per_side, profile,
                                   torus, &r.normalization_factor);
  return r;
}

}  // namespace

TEST_CASE("quantize_flux_examples") {
  // Even integer flux 2 K_B^2 at K_B = 1: L_B = sqrt(4 pi / B).
  const auto q1 = quantize_flux(M_PI / 2.0, std::sqrt(8.0) - 1e-12);
  CHECK(q1.side == Catch::Approx(2.8284271247461903).epsilon(1e-12));
  CHECK(q1.flux_quanta == 2);

  const auto q2 = quantize_flux(2.0 * M_PI, 1.0);
  CHECK(q2.side == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(q2.flux_quanta == 1);

  // Oracle: smallest k with sqrt(2 pi k) >= 5.
  int k_oracle = 1;
  while (std::sqrt(2.0 * M_PI * k_oracle) < 5.0) ++k_oracle;
  CHECK(k_oracle == 4);
  const auto q3 = quantize_flux(1.0, 5.0);
  CHECK(q3.flux_quanta == k_oracle);
  CHECK(q3.side == Catch::Approx(std::sqrt(8.0 * M_PI)).epsilon(1e-12));
  CHECK(q3.side >= 5.0);

  CHECK_THROWS_AS(quantize_flux(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(quantize_flux(1.0, 0.0), std::invalid_argument);

  const auto q4 = quantize_flux_fixed_length(8.0, 1.5);
  CHECK(q4.side == 8.0);
  CHECK(q4.flux_quanta == 15);
  CHECK(q4.field == Catch::Approx(2.0 * M_PI * 15.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("torus_guards_reject_bad_resolution") {
  // Non-integer flux
  CHECK_THROWS_AS(MagneticTorus::make(1.0, 4.0, 32), GuardError);
  // N < 4 n_phi (n_phi = 4 here)
  CHECK_THROWS_AS(MagneticTorus::make(M_PI / 2.0, 4.0, 12), GuardError);
  // a sqrt(B) > 0.5: B = 2 pi on L = 1 (n_phi = 1) at N = 4 gives 0.63
  CHECK_THROWS_AS(MagneticTorus::make(2.0 * M_PI, 1.0, 4), GuardError);
  const MagneticTorus ok = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  CHECK(ok.flux_quanta() == 4);
  CHECK(ok.steps_per_cell() == 4);
}

TEST_CASE("gauge_plaquettes_and_holonomies") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const double phi = torus.plaquette_flux();
  for (const GaugeField& g :
       {GaugeField::landau(torus), GaugeField::landau_transposed(torus)}) {
    for (int j = 0; j < 16; ++j) {
      for (int i = 0; i < 16; ++i) {
        const cplx p = g.plaquette(i, j);
        CHECK(std::abs(p - std::polar(1.0, phi)) <= 1e-12);
      }
    }
  }
  // Same cycle holonomies in both gauges (gauge-equivalent fields).
  const GaugeField gx = GaugeField::landau(torus);
  const GaugeField gy = GaugeField::landau_transposed(torus);
  for (int k = 0; k < 16; ++k) {
    CHECK(std::abs(gx.holonomy_x(k) - gy.holonomy_x(k)) <= 1e-12);
    CHECK(std::abs(gx.holonomy_y(k) - gy.holonomy_y(k)) <= 1e-12);
  }
  // Ribbon between adjacent rows carries N plaquettes of flux.
  const cplx ratio = gx.holonomy_x(3) / gx.holonomy_x(2);
  CHECK(std::abs(ratio - std::polar(1.0, -16.0 * phi)) <= 1e-12);
}

TEST_CASE("free_hamiltonian_is_hermitian_with_bounded_spectrum") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 20);
  const HermitianOperator h = build_free_hamiltonian(torus);
  CHECK(h.hermiticity_defect() <= 1e-12);
  const RealVector ev = linalg::eigvalsh(h.matrix);
  const double a = torus.spacing();
  CHECK(ev(0) >= -1e-9);
  CHECK(ev(ev.size() - 1) <= 8.0 / (a * a) + 1e-9);
}

TEST_CASE("zero_field_surrogate_is_plain_laplacian") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  GaugeField flat;
  flat.grid = 16;
  flat.link_x.assign(256, cplx(1.0, 0.0));
  flat.link_y.assign(256, cplx(1.0, 0.0));
  const HermitianOperator h = build_free_hamiltonian(torus, flat);
  const auto sys = linalg::eigh(h.matrix);
  CHECK(std::abs(sys.values(0)) <= 1e-10);
  // Ground state is the constant vector.
  const Vector ground = sys.vectors.col(0);
  const cplx first = ground(0);
  for (int s = 0; s < 256; ++s) {
    CHECK(std::abs(ground(s) - first) <= 1e-9);
  }
}

TEST_CASE("clean_landau_clusters_and_degeneracy") {
  // n_phi = 4 on L = 4 at B = pi/2; fine grid for the continuum comparison.
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 32);
  const HermitianOperator h = build_free_hamiltonian(torus);
  const double b = torus.field();
  const RealVector ev = linalg::eigvalsh(h.matrix);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(ev(n) - b) <= 0.03 * b);
  }
  for (int n = 4; n < 8; ++n) {
    CHECK(std::abs(ev(n) - 3.0 * b) <= 0.05 * 3.0 * b);
  }
  // Degeneracy oracle: inertia count below the midpoint 2B.
  CHECK(linalg::count_below(h.matrix, 2.0 * b) == torus.flux_quanta());
}

TEST_CASE("gauge_choices_are_isospectral") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 20);
  const RealVector e1 =
      linalg::eigvalsh(build_free_hamiltonian(torus, GaugeField::landau(torus)).matrix);
  const RealVector e2 = linalg::eigvalsh(
      build_free_hamiltonian(torus, GaugeField::landau_transposed(torus)).matrix);
  CHECK((e1 - e2).cwiseAbs().maxCoeff() <= 1e-9);

  std::vector<cplx> phases(torus.sites());
  for (int s = 0; s < torus.sites(); ++s) {
    phases[s] = std::polar(1.0, 2.0 * M_PI * rng::keyed_uniform(5, 5, s));
  }
  const GaugeField rephased = GaugeField::landau(torus).rephased(phases);
  const RealVector e3 =
      linalg::eigvalsh(build_free_hamiltonian(torus, rephased).matrix);
  CHECK((e1 - e3).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("magnetic_translation_identity_and_unitarity") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const Vector v = random_state(torus.sites(), 77);
  const Vector same = magnetic_translate(torus, 0, 0, v);
  CHECK((same - v).cwiseAbs().maxCoeff() == 0.0);

  const TranslationOp op = make_translation(torus, 1, 0);
  const Matrix u = op.dense();
  CHECK((u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  CHECK(std::abs(magnetic_translate(torus, 2, 1, v).norm() - 1.0) <= 1e-12);
}

TEST_CASE("projective_commutation_phase") {
  // U_a U_b = exp(i B (a1 b2 - a2 b1)) U_b U_a for unit-cell steps.
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const double b = torus.field();
  const Vector v = random_state(torus.sites(), 13);
  const Vector ab = magnetic_translate(torus, 1, 0, magnetic_translate(torus, 0, 1, v));
  const Vector ba = magnetic_translate(torus, 0, 1, magnetic_translate(torus, 1, 0, v));
  const cplx expected = std::polar(1.0, b);
  CHECK((ab - expected * ba).cwiseAbs().maxCoeff() <= 1e-12);

  // General cells: a = (2, 1), b = (1, 3).
  const Vector v2 = random_state(torus.sites(), 14);
  const Vector ab2 =
      magnetic_translate(torus, 2, 1, magnetic_translate(torus, 1, 3, v2));
  const Vector ba2 =
      magnetic_translate(torus, 1, 3, magnetic_translate(torus, 2, 1, v2));
  const cplx expected2 = std::polar(1.0, b * (2.0 * 3.0 - 1.0 * 1.0));
  CHECK((ab2 - expected2 * ba2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("translations_commute_with_free_hamiltonian") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const HermitianOperator h = build_free_hamiltonian(torus);
  for (const auto [a1, a2] : {std::pair{1, 0}, {0, 1}, {2, 3}}) {
    const TranslationOp u = make_translation(torus, a1, a2);
    const Vector v = random_state(torus.sites(), 100 + a1 + 10 * a2);
    const Vector lhs = u.apply(h.matrix * v);
    const Vector rhs = h.matrix * u.apply(v);
    CHECK((lhs - rhs).norm() <= 1e-10 * (h.matrix * v).norm());
  }
}

TEST_CASE("translation_rejects_inadmissible_steps") {
  // n_phi = 1 on L = 2: unit-cell steps need N | n_phi * steps.
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 2.0, 8);
  CHECK(!translation_steps_admissible(torus, 4, 0));
  CHECK_THROWS_AS(make_translation(torus, 1, 0), std::invalid_argument);
  CHECK(translation_steps_admissible(torus, 8, 0));  // full torus wrap
}

TEST_CASE("covariance_periodic_disorder_and_zero_shift") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const GaugeField gauge = GaugeField::landau(torus);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const double lambda = 0.3 * torus.field();

  const DisorderRealization constant = constant_disorder(torus, 0.7, profile);
  const double scale = 8.0 / (torus.spacing() * torus.spacing());
  CHECK(covariance_check(torus, gauge, constant, profile, lambda, 1, 0) <=
        1e-12 * scale);
  CHECK(covariance_check(torus, gauge, constant, profile, lambda, 3, 2) <=
        1e-12 * scale);

  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  const DisorderRealization omega = sample_disorder(5, 0, law, profile, torus);
  CHECK(covariance_check(torus, gauge, omega, profile, lambda, 0, 0) <=
        1e-14 * scale);
}

TEST_CASE("covariance_random_disorder_dense_oracle") {
  // a = (2, 1) on a 32-grid torus; oracle is the explicit dense conjugation.
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 32);
  const GaugeField gauge = GaugeField::landau(torus);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  const double lambda = 0.3 * torus.field();
  const DisorderRealization omega = sample_disorder(9, 4, law, profile, torus);

  const HermitianOperator h =
      build_hamiltonian(torus, gauge, omega.potential, lambda);
  CHECK(h.hermiticity_defect() <= 1e-12);
  const DisorderRealization shifted =
      shift_realization(omega, 2, 1, profile, torus);
  const HermitianOperator h_shifted =
      build_hamiltonian(torus, gauge, shifted.potential, lambda);

  const Matrix u = make_translation(torus, 2, 1).dense();
  const Matrix diff = u * h.matrix * u.adjoint() - h_shifted.matrix;
  const double scale = h.matrix.cwiseAbs().maxCoeff();
  CHECK(diff.cwiseAbs().maxCoeff() <= 1e-10 * scale);

  CHECK(covariance_check(torus, gauge, omega, profile, lambda, 2, 1) <=
        1e-10 * scale);
}
