#pragma once

#include "landaulab/disorder.hpp"
#include "landaulab/hamiltonian.hpp"

namespace landaulab {

// Unitary magnetic translation: a permutation of the grid combined with the
// field-dependent phase that keeps the free Hamiltonian invariant. On the
// torus such translations exist only for steps t with n_phi * t / N integral
// per component; unit-cell translations therefore require B L / (2 pi) to be
// an integer.
//
// Orientation convention (fixed by the gauge of GaugeField::landau):
//   U_a U_b = exp(i B (a1 b2 - a2 b1)) U_b U_a
// for a, b measured in unit cells.
struct TranslationOp {
  int grid = 0;
  int shift_x = 0;  // grid steps
  int shift_y = 0;
  std::vector<cplx> phase;  // per target site

  Vector apply(const Vector& v) const;
  Matrix conjugate(const Matrix& h) const;  // U H U*
  Matrix dense() const;
};

// True when a translation by the given number of grid steps per component is
// implementable as a magnetic symmetry.
bool translation_steps_admissible(const MagneticTorus& torus, int steps_x,
                                  int steps_y);

TranslationOp make_translation_steps(const MagneticTorus& torus, int steps_x,
                                     int steps_y);

// Translation by `a` unit cells. Rejects tori whose unit cells are not
// grid-aligned and cell vectors that are not magnetically admissible.
TranslationOp make_translation(const MagneticTorus& torus, int a1, int a2);

Vector magnetic_translate(const MagneticTorus& torus, int a1, int a2,
                          const Vector& v);

// || U_a H_omega U_a* - H_{tau_a omega} || estimated by 20 power-iteration
// steps on the (Hermitian) difference.
double covariance_check(const MagneticTorus& torus, const GaugeField& gauge,
                        const DisorderRealization& realization,
                        const SingleSiteProfile& profile, double lambda,
                        int a1, int a2);

}  // namespace landaulab
