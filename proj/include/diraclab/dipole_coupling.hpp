// Nonminimal induced-moment coupling and its closed-form Hamiltonian
// reduction, with an equivalence oracle between the two routes.
//
// The coupling enters the covariant equation through the contraction
//
//   C = (1/4) eta^{ab} K[m][a] F[b][n] gamma^m gamma^n
//
// summed brute-force over all four indices.  Multiplying the covariant
// equation by gamma^0 to isolate i d/dt puts the interaction into the
// Hamiltonian as +beta C; the closed form of that product is
//
//   beta C = (1/4) beta alphavec . [(alpha_pol + chi)(E x B)]
//            - (1/2) (alpha_pol E^2 + chi B^2) beta.
//
// The permanent-moment term T = (mu/2) Sigma^{b n} F[b][n] enters as
// -beta T = i mu beta (alphavec . E) - mu beta (Sigmavec . B).
//
// Note the cross term carries beta*alpha^i, which is anti-Hermitian; only
// the scalar terms and the permanent-moment Hamiltonian are Hermitian.
// hermiticity_defect() reports the deviation per potential.
#pragma once

#include "diraclab/em_fields.hpp"
#include "diraclab/spinor_algebra.hpp"

namespace diraclab {

struct PotentialMatrix {
  SpinorMatrix value;
  Vec3 electric_field;
  Vec3 magnetic_field;
  DipoleParams params;

  // Max-abs norm of value - value^dagger.
  double hermiticity_defect() const {
    return max_abs_distance(value, value.adjoint());
  }
};

// Brute-force contraction C (see above).  Pre: F, K antisymmetric.
SpinorMatrix contraction_term(const Tensor2& F, const Tensor2& K,
                              const GammaBasis& basis);

// (1/4) beta alphavec . [(alpha_pol + chi)(E x B)]
SpinorMatrix closed_form_cross_term(const Vec3& E, const Vec3& B,
                                    const DipoleParams& params,
                                    const GammaBasis& basis);

// -(1/2) (alpha_pol E^2 + chi B^2) beta
SpinorMatrix closed_form_local_term(const Vec3& E, const Vec3& B,
                                    const DipoleParams& params,
                                    const GammaBasis& basis);

// Cross term plus local term, assembled from explicit dot/cross products.
PotentialMatrix closed_form_potential(const Vec3& E, const Vec3& B,
                                      const DipoleParams& params,
                                      const GammaBasis& basis);

// || beta * contraction_term(F(E,B), K(E,B,params)) - closed form ||.
// The two routes share no algebra beyond the gamma matrices themselves.
double verify_reduction(const Vec3& E, const Vec3& B,
                        const DipoleParams& params, const GammaBasis& basis);

// i mu beta (alphavec . E) - mu beta (Sigmavec . B)
PotentialMatrix magnetic_dipole_hamiltonian(const Vec3& E, const Vec3& B,
                                            double mu, const GammaBasis& basis);

// || -beta * (mu/2) sum_{b,n} sigma_tensor(b,n) F[b][n]  -  closed form ||.
double verify_dipole_reduction(const Vec3& E, const Vec3& B, double mu,
                               const GammaBasis& basis);

// Scalar coefficient of beta contributed by the E^2 term for the Wei
// configuration: -(1/2) alpha_pol lambda^2 / r^2.  Attractive (negative)
// for alpha_pol > 0, lambda != 0, and it scales exactly as 1/r^2.
// Pre: r > 0, Wei configuration.
double effective_inverse_square(const DipoleParams& params,
                                const FieldConfiguration& config, double r);

// The analogous B^2 contribution, -(1/2) chi b0^2; independent of r.
double magnetic_local_term(const DipoleParams& params,
                           const FieldConfiguration& config);

}  // namespace diraclab
