// Matrix-valued loop integrals and path-ordered holonomies for neutral
// particles carrying induced and permanent dipole moments.
//
// A loop is a circle of radius R about the z-axis at fixed z.  Segment
// boundaries come from a monotone angle map on [0, 1] covering 2 pi; each
// segment contributes W(arc midpoint) . tangent(midpoint) * dtheta, which
// is the midpoint rule for the line integral and is exact whenever the
// tangential component of W is constant along the circle (the Wei
// configuration).  The path-ordered product multiplies later segments on
// the LEFT of earlier ones.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "diraclab/dipole_coupling.hpp"
#include "diraclab/em_fields.hpp"
#include "diraclab/spinor_algebra.hpp"

namespace diraclab {

struct LoopPath {
  double radius = 1.0;
  double center_z = 0.0;
  int orientation = +1;  // +1 counterclockwise (increasing phi), -1 reversed
  int segments = 1000;
  // Strictly monotone map [0,1] -> [0, 2 pi]; empty means uniform.
  std::function<double(double)> angle_map;

  // Angles at the N+1 segment boundaries (unsigned, before orientation).
  // Validates radius, segment count, orientation and monotonicity.
  std::vector<double> partition() const;
};

struct TimeLeg {
  double tau = 0.0;  // interaction time, >= 0
};

// W as three matrix components: the integrand of Phi = closed-loop
// integral of W . dr.
using PhaseIntegrand =
    std::function<std::array<SpinorMatrix, 3>(const CylindricalPoint&)>;

// Induced-moment integrand W_i = (1/4) beta [(alpha_pol + chi)(E x B)]_i.
std::array<SpinorMatrix, 3> induced_integrand(const CylindricalPoint& point,
                                              const FieldConfiguration& config,
                                              const DipoleParams& params,
                                              const GammaBasis& basis);

// Full dipole integrand W_i = beta [mu (Sigmavec x E) +
// (1/4)(alpha_pol + chi)(E x B)]_i, with (Sigmavec x E)_i =
// epsilon_ijk Sigma^j E_k matrix-valued.  Reduces to induced_integrand
// at mu = 0.
std::array<SpinorMatrix, 3> anandan_integrand(const CylindricalPoint& point,
                                              const FieldConfiguration& config,
                                              const DipoleParams& params,
                                              const GammaBasis& basis);

PhaseIntegrand make_induced_integrand(const FieldConfiguration& config,
                                      const DipoleParams& params,
                                      const GammaBasis& basis);
PhaseIntegrand make_anandan_integrand(const FieldConfiguration& config,
                                      const DipoleParams& params,
                                      const GammaBasis& basis);

// Phi = sum over segments of W(midpoint) . dr.
SpinorMatrix loop_phase_integral(const LoopPath& path,
                                 const PhaseIntegrand& integrand);

// U = prod_{k = N..1} exp(i W(midpoint_k) . dr_k), later factors left.
SpinorMatrix path_ordered_holonomy(const LoopPath& path,
                                   const PhaseIntegrand& integrand);

// Max pairwise commutator norm of the segment matrices W . dr.  Pairs are
// taken over all segments up to 768 of them, uniformly subsampled beyond
// that.  Near-zero certifies that the ordered product equals exp(i Phi).
double commutator_certificate(const LoopPath& path,
                              const PhaseIntegrand& integrand);

// mu beta (Sigmavec . B) tau for a particle at rest in a static field.
// Requires a configuration with uniform B (Wei or Uniform) when tau > 0.
SpinorMatrix scalar_ab_phase(const FieldConfiguration& config, double mu,
                             const TimeLeg& leg, const GammaBasis& basis);

struct PhaseResult {
  SpinorMatrix phi;
  SpinorMatrix holonomy;
  std::array<double, 4> eigenphases{};  // principal values in (-pi, pi], sorted
  CommutingDecomposition coefficients;
  double ordering_discrepancy = 0.0;    // || holonomy - exp(i phi) ||
  double commutator_certificate = 0.0;
  double unitarity_defect = 0.0;        // || U^dagger U - I ||
};

// Closed form for the Wei configuration:
//   Phi = 2 pi mu lambda beta Sigma3
//         - (pi/2)(alpha_pol + chi) lambda b0 beta
//         + mu b0 tau beta Sigma3
// The time-leg term keeps the beta factor, consistently with the loop
// terms; see docs/conventions.md.  Rejects non-Wei configurations.
PhaseResult analytic_phase(const FieldConfiguration& config,
                           const DipoleParams& params, const TimeLeg& leg,
                           const GammaBasis& basis);

// Numeric pipeline: integrate the full dipole integrand around the loop,
// add the time-leg phase, form the path-ordered holonomy and diagnostics.
PhaseResult compute_phase(const FieldConfiguration& config,
                          const DipoleParams& params, const LoopPath& path,
                          const TimeLeg& leg, const GammaBasis& basis);

// Eigenvalue phases of a (near-)unitary matrix, principal values in
// (-pi, pi], sorted ascending.
std::array<double, 4> eigenphases(const SpinorMatrix& u);

}  // namespace diraclab
