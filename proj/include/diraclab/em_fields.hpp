// Field configurations and the antisymmetric rank-2 tensors built from
// them: the electromagnetic tensor F and the induced-moment tensor K.
//
// Component conventions (both indices down, index 0 = time):
//   F[0][i] = -E_i            F[i][j] = epsilon_ijk B^k
//   K[0][i] = -alpha_pol E_i  K[i][j] = -chi epsilon_ijk B^k
// with epsilon_123 = +1.  K is equivalently F with E -> P = alpha_pol E
// and B -> -M = -chi B substituted.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <variant>

#include "diraclab/geometry.hpp"

namespace diraclab {

// Particle parameters in natural units (hbar = c = 1).
struct DipoleParams {
  double mass = 0.0;       // m >= 0
  double alpha_pol = 0.0;  // electric polarizability
  double chi = 0.0;        // magnetic susceptibility
  double mu = 0.0;         // permanent magnetic dipole moment
};

// Throws std::invalid_argument on non-finite entries or negative mass.
void validate(const DipoleParams& params);

struct FieldSample {
  Vec3 E;
  Vec3 B;
};

// Radial line-charge field plus a uniform axial magnetic field:
//   E = (lambda / r) rhat,  B = b0 zhat   (r > 0)
struct WeiFields {
  double lambda = 0.0;
  double b0 = 0.0;
};

struct UniformFields {
  Vec3 E;
  Vec3 B;
};

using FieldEvaluator = std::function<FieldSample(const CylindricalPoint&)>;

class FieldConfiguration {
 public:
  static FieldConfiguration wei(double lambda, double b0);
  static FieldConfiguration uniform(const Vec3& E, const Vec3& B);
  static FieldConfiguration custom(FieldEvaluator evaluator);

  // Cartesian E and B at the given point.  The Wei variant rejects
  // r <= 0 (line-charge singularity) with std::domain_error.
  FieldSample evaluate(const CylindricalPoint& point) const;

  // E and B in the local cylindrical frame (radial, azimuthal, axial)
  // at the given point.  Exact for the Wei variant: ((lambda/r, 0, 0),
  // (0, 0, b0)); other variants rotate the Cartesian sample.
  FieldSample evaluate_local_cylindrical(const CylindricalPoint& point) const;

  bool is_wei() const { return std::holds_alternative<WeiFields>(v_); }
  const WeiFields& wei_fields() const;  // throws if not the Wei variant

  // B when it is uniform by construction (Wei: b0 zhat; Uniform: B);
  // nullopt for custom evaluators.
  std::optional<Vec3> uniform_magnetic_field() const;

 private:
  FieldConfiguration() = default;
  std::variant<WeiFields, UniformFields, FieldEvaluator> v_;
};

// lambda = rho * r0^2 / 2 for a uniform volume charge density rho inside
// a cylinder of radius r0.
double lambda_from_volume_charge(double rho, double r0);

// Antisymmetric rank-2 tensor, both indices down, 0 = time.
class Tensor2 {
 public:
  double operator()(int mu, int nu) const { return e_[4 * mu + nu]; }

  // Sets entries (mu, nu) = value and (nu, mu) = -value; mu != nu.
  void set_pair(int mu, int nu, double value);

  bool is_antisymmetric(double tol = 0.0) const;
  double max_abs_norm() const;

  Tensor2& operator+=(const Tensor2& o) {
    for (int k = 0; k < 16; ++k) e_[k] += o.e_[k];
    return *this;
  }
  Tensor2& operator*=(double s) {
    for (double& v : e_) v *= s;
    return *this;
  }

 private:
  std::array<double, 16> e_{};
};

inline Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
inline Tensor2 operator*(double s, Tensor2 t) { return t *= s; }

Tensor2 field_tensor(const Vec3& E, const Vec3& B);
Tensor2 moment_tensor(const Vec3& E, const Vec3& B, const DipoleParams& params);

// Components of a Cartesian sample in the local cylindrical frame at
// azimuth phi: (radial, azimuthal, axial).
FieldSample to_local_cylindrical(const FieldSample& cartesian, double phi);

}  // namespace diraclab
