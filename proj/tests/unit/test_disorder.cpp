#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "landaulab/disorder.hpp"
#include "landaulab/quadrature.hpp"

using namespace landaulab;

TEST_CASE("profile_envelope_on_grid") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 32);
  for (const SingleSiteProfile& p :
       {SingleSiteProfile::square(0.45), SingleSiteProfile::disc(0.45),
        SingleSiteProfile::cosine(0.45)}) {
    const double a = torus.spacing();
    for (int j = -16; j < 16; ++j) {
      for (int i = -16; i < 16; ++i) {
        const double dx = i * a, dy = j * a;
        const double u = p.evaluate(dx, dy);
        CHECK(u >= 0.0);
        CHECK(u <= p.cap + 1e-12);
        const double rinf = std::max(std::abs(dx), std::abs(dy));
        if (rinf > p.outer_radius + 1e-12) {
          CHECK(u == 0.0);
        }
        // floor * chi(inner) <= u for the indicator shapes (sup-norm support)
        if (p.shape == ProfileShape::SquareIndicator &&
            rinf <= p.inner_radius) {
          CHECK(u >= p.floor - 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(SingleSiteProfile::square(-0.1), std::invalid_argument);
  SingleSiteProfile bad = SingleSiteProfile::square(0.45);
  bad.floor = 2.0;  // floor above cap
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("all_mass_at_zero_gives_zero_potential") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  // Uniform law collapsed onto {0} via a vanishing support limit.
  const CouplingLaw law = CouplingLaw::uniform(1e-300, 1e-300);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const DisorderRealization r = sample_disorder(3, 0, law, profile, torus);
  CHECK(r.potential.cwiseAbs().maxCoeff() <= 1e-299);
}

TEST_CASE("square_indicator_pointwise_oracle") {
  // epsilon_u = delta_u = 0.5: piecewise constant per quarter-cell region.
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.5);
  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  const DisorderRealization r = sample_disorder(11, 2, law, profile, torus);

  CHECK(r.potential.minCoeff() >= -1.0 - 1e-12);
  CHECK(r.potential.maxCoeff() <= 1.0 + 1e-12);

  // Direct pointwise oracle: wrapped sum of bumps times the recorded factor.
  const int cells = torus.cells_per_side();
  for (int s = 0; s < torus.sites(); ++s) {
    const auto pos = torus.site_position(s);
    double expected = 0.0;
    for (int c2 = 0; c2 < cells; ++c2) {
      for (int c1 = 0; c1 < cells; ++c1) {
        const double dx = torus.wrap_delta(pos[0] - c1);
        const double dy = torus.wrap_delta(pos[1] - c2);
        expected += r.coupling(c1, c2) * profile.evaluate(dx, dy);
      }
    }
    expected *= r.normalization_factor;
    CHECK(r.potential(s) == Catch::Approx(expected).margin(1e-12));
  }
}

TEST_CASE("sampling_is_deterministic_and_seed_sensitive") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  const DisorderRealization a = sample_disorder(17, 5, law, profile, torus);
  const DisorderRealization b = sample_disorder(17, 5, law, profile, torus);
  REQUIRE(a.couplings.size() == b.couplings.size());
  for (std::size_t k = 0; k < a.couplings.size(); ++k) {
    CHECK(a.couplings[k] == b.couplings[k]);
  }
  CHECK((a.potential - b.potential).cwiseAbs().maxCoeff() == 0.0);

  const DisorderRealization c = sample_disorder(18, 5, law, profile, torus);
  CHECK((a.potential - c.potential).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ergodic_mean_of_couplings") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  double acc = 0.0;
  int count = 0;
  // 16 cells per realization; 640 realizations > 1e4 draws.
  for (int r = 0; r < 640; ++r) {
    const DisorderRealization omega = sample_disorder(123, r, law, profile, torus);
    for (const double w : omega.couplings) {
      acc += w;
      ++count;
    }
  }
  REQUIRE(count >= 10000);
  const double mean = acc / count;
  // uniform[-1,1]: sd = 1/sqrt(3)
  const double sigma = 1.0 / std::sqrt(3.0 * count);
  CHECK(std::abs(mean - law.mean()) <= 3.0 * sigma);
}

TEST_CASE("coupling_shift_matches_shifted_sampling") {
  const MagneticTorus torus = MagneticTorus::make(M_PI / 2.0, 4.0, 16);
  const SingleSiteProfile profile = SingleSiteProfile::square(0.45);
  const CouplingLaw law = CouplingLaw::uniform(1.0, 1.0);
  const DisorderRealization omega = sample_disorder(21, 1, law, profile, torus);
  const DisorderRealization shifted = shift_realization(omega, 1, 2, profile, torus);
  const int cells = torus.cells_per_side();
  for (int c2 = 0; c2 < cells; ++c2) {
    for (int c1 = 0; c1 < cells; ++c1) {
      CHECK(shifted.coupling(c1, c2) == omega.coupling(c1 - 1, c2 - 2));
    }
  }
}

TEST_CASE("rescaled_law_identity_at_lambda_one") {
  // Base already supported inside [-b, b]: c = 1 and the law reproduces it.
  const DensityFn base = make_base_density("uniform", 1.0);  // 1/2 on [-1,1]
  const CouplingLaw law = rescaled_law(base, 1.0, 1.0, "uniform");
  REQUIRE(law.rescale().has_value());
  CHECK(law.rescale()->normalizer == Catch::Approx(1.0).epsilon(1e-8));
  CHECK(law.mass(-1.0, 0.0) == Catch::Approx(0.5).epsilon(1e-7));
  CHECK(law.density(0.3) == Catch::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("rescaled_law_normalizer_range") {
  // Wide Gaussian truncated hard: 1 < c <= 2 for small lambda.
  const DensityFn base = make_base_density("gaussian", 5.0);
  const CouplingLaw law = rescaled_law(base, 0.1, 1.0, "gaussian");
  REQUIRE(law.rescale().has_value());
  const double c = law.rescale()->normalizer;
  CHECK(c > 1.0);
  CHECK(c <= 2.0);
  // Total mass is 1 to quadrature accuracy.
  CHECK(law.mass(-1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("rescaled_tail_mass_is_monotone_in_lambda") {
  const DensityFn base = make_base_density("gaussian", 1.0);
  const double eps = 0.5;
  double previous = 1.0;
  for (const double lambda : {0.5, 0.25, 0.125}) {
    const CouplingLaw law = rescaled_law(base, lambda, 1.0, "gaussian");
    const double outside = 1.0 - law.mass(-eps, eps);
    CHECK(outside < previous);
    previous = outside;
  }
  CHECK_THROWS_AS(rescaled_law(base, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("law_quantile_reproduces_density") {
  const DensityFn base = make_base_density("gaussian", 2.0);
  const CouplingLaw law = rescaled_law(base, 0.8, 1.5, "gaussian");
  // Empirical CDF from quantiles vs direct mass.
  const int n = 4000;
  int below = 0;
  for (int k = 0; k < n; ++k) {
    const double u = (k + 0.5) / n;
    if (law.quantile(u) <= 0.4) ++below;
  }
  const double target = law.mass(-1.5, 0.4);
  CHECK(std::abs(static_cast<double>(below) / n - target) <= 2e-3);
}
