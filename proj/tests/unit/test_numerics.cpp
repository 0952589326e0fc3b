#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "landaulab/linalg.hpp"
#include "landaulab/quadrature.hpp"
#include "landaulab/rng.hpp"

using namespace landaulab;

namespace {

Matrix random_hermitian(int n, std::uint64_t seed) {
  Matrix a(n, n);
  std::uint64_t counter = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double re = rng::keyed_uniform(seed, 1, counter++) - 0.5;
      const double im = rng::keyed_uniform(seed, 2, counter++) - 0.5;
      if (i == j) {
        a(i, j) = re;
      } else {
        a(i, j) = cplx(re, im);
        a(j, i) = std::conj(a(i, j));
      }
    }
  }
  return a;
}

}  // namespace

TEST_CASE("eigh_two_by_two_pauli_x") {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  const auto sys = linalg::eigh(a);
  CHECK(sys.values(0) == Catch::Approx(-1.0).margin(1e-14));
  CHECK(sys.values(1) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("eigh_reconstructs_random_matrix") {
  const Matrix a = random_hermitian(64, 7);
  const auto sys = linalg::eigh(a);
  const Matrix recon =
      sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
  const double scale = a.cwiseAbs().maxCoeff();
  CHECK((recon - a).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  const Matrix gram = sys.vectors.adjoint() * sys.vectors;
  CHECK((gram - Matrix::Identity(64, 64)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("eigh_deterministic_phase_convention") {
  const Matrix a = random_hermitian(32, 11);
  const auto s1 = linalg::eigh(a);
  const auto s2 = linalg::eigh(a);
  CHECK((s1.vectors - s2.vectors).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.values - s2.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigvalsh_matches_eigh") {
  const Matrix a = random_hermitian(48, 3);
  const auto sys = linalg::eigh(a);
  const RealVector vals = linalg::eigvalsh(a);
  CHECK((vals - sys.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("inertia_count_matches_eigenvalues") {
  const Matrix a = random_hermitian(40, 19);
  const RealVector vals = linalg::eigvalsh(a);
  for (const double shift : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
    int expected = 0;
    for (int i = 0; i < vals.size(); ++i) {
      if (vals(i) < shift) ++expected;
    }
    CHECK(linalg::count_below(a, shift) == expected);
  }
}

TEST_CASE("power_iteration_estimates_spectral_radius") {
  const Matrix a = random_hermitian(30, 23);
  const RealVector vals = linalg::eigvalsh(a);
  const double radius = std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
  const double estimate = linalg::power_iteration_norm(a, 60);
  CHECK(estimate == Catch::Approx(radius).epsilon(1e-3));
  CHECK(estimate <= radius + 1e-12);
}

TEST_CASE("site_uniform_is_order_free_and_stable") {
  const double v = rng::site_uniform(42, 3, 5, -7);
  CHECK(v == rng::site_uniform(42, 3, 5, -7));
  CHECK(v >= 0.0);
  CHECK(v < 1.0);
  // Distinct keys decorrelate.
  std::set<double> values;
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      values.insert(rng::site_uniform(42, 3, i, j));
    }
  }
  CHECK(values.size() == 81);
}

TEST_CASE("site_uniform_mean_near_half") {
  double acc = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    acc += rng::site_uniform(1234, k, 0, 0);
  }
  const double mean = acc / n;
  // 3 sigma of a uniform mean: 3 / sqrt(12 n)
  CHECK(std::abs(mean - 0.5) <= 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("adaptive_simpson_polynomial_and_gaussian") {
  const double cubic = quad::adaptive_simpson(
      [](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0, 1e-10);
  // Antiderivative x^4/4 - x^2 + x evaluated exactly.
  CHECK(cubic == Catch::Approx(81.0 / 4.0 - 9.0 + 3.0 - (0.25 - 1.0 - 1.0)).epsilon(1e-12));

  const double gauss = quad::adaptive_simpson(
      [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); },
      -8.0, 8.0, 1e-10);
  CHECK(gauss == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gauss_legendre_integrates_high_degree") {
  const auto& rule = quad::gauss_legendre(40);
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = rule.nodes[k];
    acc += rule.weights[k] * std::pow(x, 20);
  }
  CHECK(acc == Catch::Approx(2.0 / 21.0).epsilon(1e-13));
}

TEST_CASE("log_panels_match_laplace_transform") {
  // (1/T) integral_0^inf cos(w t) e^{-t/T} dt = 1 / (1 + (wT)^2)
  const double T = 37.0;
  const double w = 0.83;
  const double numeric = quad::integrate_log_panels(
      [&](double t) { return std::cos(w * t) * std::exp(-t / T) / T; },
      20.0 * T);
  const double exact = 1.0 / (1.0 + w * w * T * T);
  CHECK(numeric == Catch::Approx(exact).margin(1e-8));
}
