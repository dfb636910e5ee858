#include "diraclab/em_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace diraclab {

void validate(const DipoleParams& params) {
  if (!std::isfinite(params.mass) || !std::isfinite(params.alpha_pol) ||
      !std::isfinite(params.chi) || !std::isfinite(params.mu))
    throw std::invalid_argument("DipoleParams: entries must be finite");
  if (params.mass < 0.0)
    throw std::invalid_argument("DipoleParams: mass must be >= 0");
}

FieldConfiguration FieldConfiguration::wei(double lambda, double b0) {
  if (!std::isfinite(lambda) || !std::isfinite(b0))
    throw std::invalid_argument("Wei fields: lambda and b0 must be finite");
  FieldConfiguration c;
  c.v_ = WeiFields{lambda, b0};
  return c;
}

FieldConfiguration FieldConfiguration::uniform(const Vec3& E, const Vec3& B) {
  if (!all_finite(E) || !all_finite(B))
    throw std::invalid_argument("Uniform fields: E and B must be finite");
  FieldConfiguration c;
  c.v_ = UniformFields{E, B};
  return c;
}

FieldConfiguration FieldConfiguration::custom(FieldEvaluator evaluator) {
  if (!evaluator)
    throw std::invalid_argument("Custom fields: evaluator must be callable");
  FieldConfiguration c;
  c.v_ = std::move(evaluator);
  return c;
}

FieldSample FieldConfiguration::evaluate(const CylindricalPoint& point) const {
  if (const auto* w = std::get_if<WeiFields>(&v_)) {
    if (point.r <= 0.0)
      throw std::domain_error(
          "Wei fields are singular on the line charge: requires r > 0");
    const double magnitude = w->lambda / point.r;
    return {magnitude * unit_radial(point.phi), Vec3{0.0, 0.0, w->b0}};
  }
  if (const auto* u = std::get_if<UniformFields>(&v_)) return {u->E, u->B};
  return std::get<FieldEvaluator>(v_)(point);
}

FieldSample FieldConfiguration::evaluate_local_cylindrical(
    const CylindricalPoint& point) const {
  if (const auto* w = std::get_if<WeiFields>(&v_)) {
    if (point.r <= 0.0)
      throw std::domain_error(
          "Wei fields are singular on the line charge: requires r > 0");
    return {{w->lambda / point.r, 0.0, 0.0}, {0.0, 0.0, w->b0}};
  }
  return to_local_cylindrical(evaluate(point), point.phi);
}

std::optional<Vec3> FieldConfiguration::uniform_magnetic_field() const {
  if (const auto* w = std::get_if<WeiFields>(&v_)) return Vec3{0.0, 0.0, w->b0};
  if (const auto* u = std::get_if<UniformFields>(&v_)) return u->B;
  return std::nullopt;
}

const WeiFields& FieldConfiguration::wei_fields() const {
  const auto* w = std::get_if<WeiFields>(&v_);
  if (!w) throw std::invalid_argument("field configuration is not the Wei variant");
  return *w;
}

double lambda_from_volume_charge(double rho, double r0) {
  if (r0 < 0.0) throw std::invalid_argument("cylinder radius must be >= 0");
  return rho * r0 * r0 / 2.0;
}

void Tensor2::set_pair(int mu, int nu, double value) {
  if (mu == nu) throw std::invalid_argument("Tensor2: diagonal entries are fixed at 0");
  e_[4 * mu + nu] = value;
  e_[4 * nu + mu] = -value;
}

bool Tensor2::is_antisymmetric(double tol) const {
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu <= mu; ++nu)
      if (std::abs(e_[4 * mu + nu] + e_[4 * nu + mu]) > tol) return false;
  return true;
}

double Tensor2::max_abs_norm() const {
  double n = 0.0;
  for (double v : e_) n = std::max(n, std::abs(v));
  return n;
}

Tensor2 field_tensor(const Vec3& E, const Vec3& B) {
  Tensor2 f;
  f.set_pair(0, 1, -E.x);
  f.set_pair(0, 2, -E.y);
  f.set_pair(0, 3, -E.z);
  f.set_pair(1, 2, B.z);
  f.set_pair(2, 3, B.x);
  f.set_pair(3, 1, B.y);
  return f;
}

Tensor2 moment_tensor(const Vec3& E, const Vec3& B, const DipoleParams& params) {
  Tensor2 k;
  k.set_pair(0, 1, -(params.alpha_pol * E.x));
  k.set_pair(0, 2, -(params.alpha_pol * E.y));
  k.set_pair(0, 3, -(params.alpha_pol * E.z));
  k.set_pair(1, 2, -(params.chi * B.z));
  k.set_pair(2, 3, -(params.chi * B.x));
  k.set_pair(3, 1, -(params.chi * B.y));
  return k;
}

FieldSample to_local_cylindrical(const FieldSample& cartesian, double phi) {
  const Vec3 rhat = unit_radial(phi);
  const Vec3 phihat = unit_azimuthal(phi);
  return {{dot(cartesian.E, rhat), dot(cartesian.E, phihat), cartesian.E.z},
          {dot(cartesian.B, rhat), dot(cartesian.B, phihat), cartesian.B.z}};
}

}  // namespace diraclab
