#include "diraclab/dipole_coupling.hpp"

#include <stdexcept>

namespace diraclab {

namespace {

double eta(const GammaBasis& basis, int a, int b) {
  return a == b ? basis.metric[a] : 0.0;
}

}  // namespace

SpinorMatrix contraction_term(const Tensor2& F, const Tensor2& K,
                              const GammaBasis& basis) {
  SpinorMatrix c;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double coeff = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) coeff += eta(basis, a, b) * K(m, a) * F(b, n);
      c += coeff * (basis.gamma(m) * basis.gamma(n));
    }
  c *= 0.25;
  return c;
}

SpinorMatrix closed_form_cross_term(const Vec3& E, const Vec3& B,
                                    const DipoleParams& params,
                                    const GammaBasis& basis) {
  const Vec3 v = (params.alpha_pol + params.chi) * cross(E, B);
  SpinorMatrix alpha_dot = v.x * basis.alpha1 + v.y * basis.alpha2 + v.z * basis.alpha3;
  return 0.25 * (basis.beta * alpha_dot);
}

SpinorMatrix closed_form_local_term(const Vec3& E, const Vec3& B,
                                    const DipoleParams& params,
                                    const GammaBasis& basis) {
  const double scalar = params.alpha_pol * dot(E, E) + params.chi * dot(B, B);
  return (-0.5 * scalar) * basis.beta;
}

PotentialMatrix closed_form_potential(const Vec3& E, const Vec3& B,
                                      const DipoleParams& params,
                                      const GammaBasis& basis) {
  PotentialMatrix p;
  p.value = closed_form_cross_term(E, B, params, basis) +
            closed_form_local_term(E, B, params, basis);
  p.electric_field = E;
  p.magnetic_field = B;
  p.params = params;
  return p;
}

double verify_reduction(const Vec3& E, const Vec3& B,
                        const DipoleParams& params, const GammaBasis& basis) {
  const Tensor2 F = field_tensor(E, B);
  const Tensor2 K = moment_tensor(E, B, params);
  const SpinorMatrix contracted = basis.beta * contraction_term(F, K, basis);
  return max_abs_distance(contracted,
                          closed_form_potential(E, B, params, basis).value);
}

PotentialMatrix magnetic_dipole_hamiltonian(const Vec3& E, const Vec3& B,
                                            double mu, const GammaBasis& basis) {
  SpinorMatrix alpha_dot_e =
      E.x * basis.alpha1 + E.y * basis.alpha2 + E.z * basis.alpha3;
  SpinorMatrix sigma_dot_b =
      B.x * basis.sigma1 + B.y * basis.sigma2 + B.z * basis.sigma3;
  PotentialMatrix p;
  p.value = (Complex{0.0, 1.0} * mu) * (basis.beta * alpha_dot_e) -
            mu * (basis.beta * sigma_dot_b);
  p.electric_field = E;
  p.magnetic_field = B;
  p.params.mu = mu;
  return p;
}

double verify_dipole_reduction(const Vec3& E, const Vec3& B, double mu,
                               const GammaBasis& basis) {
  const Tensor2 F = field_tensor(E, B);
  SpinorMatrix t;
  for (int b = 0; b < 4; ++b)
    for (int n = 0; n < 4; ++n) {
      const double f = F(b, n);
      if (f != 0.0) t += f * sigma_tensor(basis, b, n);
    }
  t *= 0.5 * mu;
  const SpinorMatrix hamiltonian_term = -(basis.beta * t);
  return max_abs_distance(hamiltonian_term,
                          magnetic_dipole_hamiltonian(E, B, mu, basis).value);
}

double effective_inverse_square(const DipoleParams& params,
                                const FieldConfiguration& config, double r) {
  const WeiFields& w = config.wei_fields();
  if (r <= 0.0) throw std::domain_error("effective_inverse_square: requires r > 0");
  return -0.5 * params.alpha_pol * w.lambda * w.lambda / (r * r);
}

double magnetic_local_term(const DipoleParams& params,
                           const FieldConfiguration& config) {
  const WeiFields& w = config.wei_fields();
  return -0.5 * params.chi * w.b0 * w.b0;
}

}  // namespace diraclab
