#include "diraclab/holonomy.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace diraclab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Segment {
  CylindricalPoint midpoint;
  Vec3 delta;  // tangent(midpoint) * dtheta, oriented
};

std::vector<Segment> build_segments(const LoopPath& path) {
  const std::vector<double> theta = path.partition();
  const double sign = static_cast<double>(path.orientation);

  std::vector<Segment> segments;
  segments.reserve(path.segments);
  for (int k = 0; k < path.segments; ++k) {
    const double mid = sign * 0.5 * (theta[k] + theta[k + 1]);
    const double dtheta = sign * (theta[k + 1] - theta[k]);
    Segment s;
    s.midpoint = {path.radius, mid, path.center_z};
    s.delta = (path.radius * dtheta) * unit_azimuthal(mid);
    segments.push_back(s);
  }
  return segments;
}

SpinorMatrix contract(const std::array<SpinorMatrix, 3>& w, const Vec3& delta) {
  return delta.x * w[0] + delta.y * w[1] + delta.z * w[2];
}

std::array<SpinorMatrix, 3> sigma_cross(const Vec3& e, const GammaBasis& g) {
  return {e.z * g.sigma2 - e.y * g.sigma3, e.x * g.sigma3 - e.z * g.sigma1,
          e.y * g.sigma1 - e.x * g.sigma2};
}

}  // namespace

std::vector<double> LoopPath::partition() const {
  if (!(radius > 0.0)) throw std::invalid_argument("LoopPath: radius must be > 0");
  if (segments < 1) throw std::invalid_argument("LoopPath: segments must be >= 1");
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("LoopPath: orientation must be +1 or -1");

  std::vector<double> theta(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    const double u = static_cast<double>(k) / segments;
    theta[k] = angle_map ? angle_map(u) : kTwoPi * u;
  }
  if (std::abs(theta.front()) > 1e-12 || std::abs(theta.back() - kTwoPi) > 1e-12)
    throw std::invalid_argument("LoopPath: angle map must cover [0, 2 pi]");
  for (int k = 0; k < segments; ++k)
    if (!(theta[k + 1] > theta[k]))
      throw std::invalid_argument("LoopPath: angle map must be strictly monotone");
  return theta;
}

std::array<SpinorMatrix, 3> induced_integrand(const CylindricalPoint& point,
                                              const FieldConfiguration& config,
                                              const DipoleParams& params,
                                              const GammaBasis& basis) {
  const FieldSample f = config.evaluate(point);
  const Vec3 v = 0.25 * (params.alpha_pol + params.chi) * cross(f.E, f.B);
  return {v.x * basis.beta, v.y * basis.beta, v.z * basis.beta};
}

std::array<SpinorMatrix, 3> anandan_integrand(const CylindricalPoint& point,
                                              const FieldConfiguration& config,
                                              const DipoleParams& params,
                                              const GammaBasis& basis) {
  const FieldSample f = config.evaluate(point);
  const Vec3 v = 0.25 * (params.alpha_pol + params.chi) * cross(f.E, f.B);
  const std::array<SpinorMatrix, 3> sxe = sigma_cross(f.E, basis);

  std::array<SpinorMatrix, 3> w;
  for (int i = 0; i < 3; ++i)
    w[i] = basis.beta * (params.mu * sxe[i]) + v[i] * basis.beta;
  return w;
}

PhaseIntegrand make_induced_integrand(const FieldConfiguration& config,
                                      const DipoleParams& params,
                                      const GammaBasis& basis) {
  return [config, params, basis](const CylindricalPoint& p) {
    return induced_integrand(p, config, params, basis);
  };
}

PhaseIntegrand make_anandan_integrand(const FieldConfiguration& config,
                                      const DipoleParams& params,
                                      const GammaBasis& basis) {
  return [config, params, basis](const CylindricalPoint& p) {
    return anandan_integrand(p, config, params, basis);
  };
}

SpinorMatrix loop_phase_integral(const LoopPath& path,
                                 const PhaseIntegrand& integrand) {
  SpinorMatrix phi;
  for (const Segment& s : build_segments(path))
    phi += contract(integrand(s.midpoint), s.delta);
  return phi;
}

SpinorMatrix path_ordered_holonomy(const LoopPath& path,
                                   const PhaseIntegrand& integrand) {
  SpinorMatrix u = SpinorMatrix::identity();
  for (const Segment& s : build_segments(path))
    u = exp_i(1.0, contract(integrand(s.midpoint), s.delta)) * u;
  return u;
}

double commutator_certificate(const LoopPath& path,
                              const PhaseIntegrand& integrand) {
  const std::vector<Segment> segments = build_segments(path);
  const std::size_t stride = std::max<std::size_t>(1, segments.size() / 768);

  std::vector<SpinorMatrix> sample;
  for (std::size_t k = 0; k < segments.size(); k += stride)
    sample.push_back(contract(integrand(segments[k].midpoint), segments[k].delta));

  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j)
      worst = std::max(worst, commutator(sample[i], sample[j]).max_abs_norm());
  return worst;
}

SpinorMatrix scalar_ab_phase(const FieldConfiguration& config, double mu,
                             const TimeLeg& leg, const GammaBasis& basis) {
  if (!(leg.tau >= 0.0) || !std::isfinite(leg.tau))
    throw std::invalid_argument("TimeLeg: tau must be finite and >= 0");
  if (leg.tau == 0.0 || mu == 0.0) return SpinorMatrix{};

  const std::optional<Vec3> uniform_b = config.uniform_magnetic_field();
  if (!uniform_b)
    throw std::invalid_argument("scalar_ab_phase: B must be uniform over the leg");

  const Vec3 b = *uniform_b;
  const SpinorMatrix sigma_dot_b =
      b.x * basis.sigma1 + b.y * basis.sigma2 + b.z * basis.sigma3;
  return (mu * leg.tau) * (basis.beta * sigma_dot_b);
}

std::array<double, 4> eigenphases(const SpinorMatrix& u) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = u(r, c);

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m, false);
  std::array<double, 4> phases{};
  for (int k = 0; k < 4; ++k) {
    double p = std::arg(solver.eigenvalues()(k));
    if (p <= -std::numbers::pi) p += kTwoPi;  // principal branch (-pi, pi]
    phases[k] = p;
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

PhaseResult analytic_phase(const FieldConfiguration& config,
                           const DipoleParams& params, const TimeLeg& leg,
                           const GammaBasis& basis) {
  const WeiFields& w = config.wei_fields();
  if (!(leg.tau >= 0.0) || !std::isfinite(leg.tau))
    throw std::invalid_argument("TimeLeg: tau must be finite and >= 0");

  const double c_beta_sigma3 =
      kTwoPi * params.mu * w.lambda + params.mu * w.b0 * leg.tau;
  const double c_beta =
      -0.5 * std::numbers::pi * (params.alpha_pol + params.chi) * w.lambda * w.b0;

  PhaseResult result;
  result.phi = c_beta_sigma3 * (basis.beta * basis.sigma3) + c_beta * basis.beta;
  result.holonomy = exp_i(1.0, result.phi);
  result.eigenphases = eigenphases(result.holonomy);
  result.coefficients = decompose_on_commuting_basis(result.phi);
  result.ordering_discrepancy = 0.0;
  result.commutator_certificate = 0.0;
  result.unitarity_defect = max_abs_distance(
      result.holonomy.adjoint() * result.holonomy, SpinorMatrix::identity());
  return result;
}

PhaseResult compute_phase(const FieldConfiguration& config,
                          const DipoleParams& params, const LoopPath& path,
                          const TimeLeg& leg, const GammaBasis& basis) {
  const PhaseIntegrand integrand = make_anandan_integrand(config, params, basis);

  PhaseResult result;
  const SpinorMatrix leg_phase = scalar_ab_phase(config, params.mu, leg, basis);
  result.phi = loop_phase_integral(path, integrand) + leg_phase;
  result.holonomy = exp_i(1.0, leg_phase) * path_ordered_holonomy(path, integrand);
  result.eigenphases = eigenphases(result.holonomy);
  result.coefficients = decompose_on_commuting_basis(result.phi);
  result.ordering_discrepancy =
      max_abs_distance(result.holonomy, exp_i(1.0, result.phi));
  result.commutator_certificate = commutator_certificate(path, integrand);
  result.unitarity_defect = max_abs_distance(
      result.holonomy.adjoint() * result.holonomy, SpinorMatrix::identity());
  return result;
}

}  // namespace diraclab
