#include "diraclab/factorization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diraclab {

namespace {

constexpr Complex kI{0.0, 1.0};

// 4th-order first-derivative stencils, coefficients over 12 h.
constexpr std::array<double, 5> kCentral{1.0, -8.0, 0.0, 8.0, -1.0};
constexpr std::array<double, 5> kForward{-25.0, 48.0, -36.0, 16.0, -3.0};
constexpr std::array<double, 5> kSkewed{-3.0, -10.0, 18.0, -6.0, 1.0};

Spinor radial_derivative(const SpinorField& f, int i, int j) {
  const int n = f.grid.nr();
  const double scale = 1.0 / (12.0 * f.grid.dr());
  Spinor acc;

  auto add = [&](double c, int ii) {
    if (c == 0.0) return;
    acc += (c * scale) * f.at(ii, j);
  };

  if (i >= 2 && i <= n - 3) {
    for (int k = 0; k < 5; ++k) add(kCentral[k], i - 2 + k);
  } else if (i == 0) {
    for (int k = 0; k < 5; ++k) add(kForward[k], k);
  } else if (i == 1) {
    for (int k = 0; k < 5; ++k) add(kSkewed[k], k);
  } else if (i == n - 2) {
    for (int k = 0; k < 5; ++k) add(-kSkewed[k], n - 1 - k);
  } else {  // i == n - 1
    for (int k = 0; k < 5; ++k) add(-kForward[k], n - 1 - k);
  }
  return acc;
}

Spinor azimuthal_derivative(const SpinorField& f, int i, int j) {
  const int n = f.grid.nphi();
  const double scale = 1.0 / (12.0 * f.grid.dphi());
  Spinor acc;
  for (int k = 0; k < 5; ++k) {
    if (kCentral[k] == 0.0) continue;
    const int jj = ((j - 2 + k) % n + n) % n;
    acc += (kCentral[k] * scale) * f.at(i, jj);
  }
  return acc;
}

// Shared kernel: assembles H psi given per-node derivative callbacks.
template <typename DR, typename DPHI, typename VALUE>
SpinorField assemble_operator(const PolarGrid& grid,
                              const FieldConfiguration& config,
                              const DipoleParams& params,
                              const GammaBasis& basis, bool include_cross,
                              VALUE&& value, DR&& d_r, DPHI&& d_phi) {
  SpinorField out(grid);
  for (int i = 0; i < grid.nr(); ++i) {
    const double r = grid.r(i);
    for (int j = 0; j < grid.nphi(); ++j) {
      const double phi = grid.phi(j);
      const CylindricalPoint point{r, phi, 0.0};
      const FieldSample local = config.evaluate_local_cylindrical(point);

      SpinorMatrix v = closed_form_local_term(local.E, local.B, params, basis);
      if (include_cross)
        v += closed_form_cross_term(local.E, local.B, params, basis);

      const Spinor psi = value(i, j);
      const Spinor radial_arg = d_r(i, j) + (0.5 / r) * psi;

      Spinor node = params.mass * (basis.beta * psi);
      node += (-kI) * (basis.alpha1 * radial_arg);
      node += (-kI * (1.0 / r)) * (basis.alpha2 * d_phi(i, j));
      node += v * psi;
      out.at(i, j) = node;
    }
  }
  return out;
}

SpinorField apply_operator(const SpinorField& field,
                           const FieldConfiguration& config,
                           const DipoleParams& params, const GammaBasis& basis,
                           bool include_cross) {
  return assemble_operator(
      field.grid, config, params, basis, include_cross,
      [&](int i, int j) { return field.at(i, j); },
      [&](int i, int j) { return radial_derivative(field, i, j); },
      [&](int i, int j) { return azimuthal_derivative(field, i, j); });
}

SpinorField apply_operator_analytic(const ManufacturedSpinor& psi,
                                    const PolarGrid& grid,
                                    const FieldConfiguration& config,
                                    const DipoleParams& params,
                                    const GammaBasis& basis,
                                    bool include_cross) {
  return assemble_operator(
      grid, config, params, basis, include_cross,
      [&](int i, int j) { return psi.value(grid.r(i), grid.phi(j)); },
      [&](int i, int j) { return psi.d_r(grid.r(i), grid.phi(j)); },
      [&](int i, int j) { return psi.d_phi(grid.r(i), grid.phi(j)); });
}

}  // namespace

PolarGrid::PolarGrid(double r_min, double r_max, int nr, int nphi)
    : r_min_(r_min), r_max_(r_max), nr_(nr), nphi_(nphi) {
  if (!(r_min > 0.0))
    throw std::invalid_argument("PolarGrid: r_min must be > 0");
  if (!(r_max > r_min))
    throw std::invalid_argument("PolarGrid: r_max must exceed r_min");
  if (nr < 5)
    throw std::invalid_argument("PolarGrid: nr must be >= 5 for the radial stencil");
  if (nphi < 6 || nphi % 2 != 0)
    throw std::invalid_argument("PolarGrid: nphi must be even and >= 6");
  dr_ = (r_max - r_min) / (nr - 1);
  dphi_ = 2.0 * std::numbers::pi / nphi;
}

double SpinorField::max_abs_norm() const {
  double n = 0.0;
  for (const Spinor& s : values) n = std::max(n, s.max_abs_norm());
  return n;
}

double max_abs_distance(const SpinorField& a, const SpinorField& b) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("SpinorField: size mismatch");
  double n = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    n = std::max(n, (a.values[k] - b.values[k]).max_abs_norm());
  return n;
}

ManufacturedSpinor fourier_mode(double offset, double amplitude,
                                double radial_freq, double radial_phase,
                                int ell, const Spinor& direction) {
  auto f = [=](double r) { return offset + amplitude * std::sin(radial_freq * r + radial_phase); };
  auto fprime = [=](double r) { return amplitude * radial_freq * std::cos(radial_freq * r + radial_phase); };
  auto mode = [=](double phi) { return std::exp(kI * (double(ell) * phi)); };

  ManufacturedSpinor m;
  m.value = [=](double r, double phi) { return (f(r) * mode(phi)) * direction; };
  m.d_r = [=](double r, double phi) { return (fprime(r) * mode(phi)) * direction; };
  m.d_phi = [=](double r, double phi) {
    return (kI * double(ell) * f(r) * mode(phi)) * direction;
  };
  return m;
}

SpinorField sample(const ManufacturedSpinor& psi, const PolarGrid& grid) {
  SpinorField out(grid);
  for (int i = 0; i < grid.nr(); ++i)
    for (int j = 0; j < grid.nphi(); ++j)
      out.at(i, j) = psi.value(grid.r(i), grid.phi(j));
  return out;
}

SpinorField apply_full_operator(const SpinorField& field,
                                const FieldConfiguration& config,
                                const DipoleParams& params,
                                const GammaBasis& basis) {
  return apply_operator(field, config, params, basis, true);
}

SpinorField apply_reduced_operator(const SpinorField& field,
                                   const FieldConfiguration& config,
                                   const DipoleParams& params,
                                   const GammaBasis& basis) {
  return apply_operator(field, config, params, basis, false);
}

SpinorField apply_full_operator_analytic(const ManufacturedSpinor& psi,
                                         const PolarGrid& grid,
                                         const FieldConfiguration& config,
                                         const DipoleParams& params,
                                         const GammaBasis& basis) {
  return apply_operator_analytic(psi, grid, config, params, basis, true);
}

SpinorField apply_reduced_operator_analytic(const ManufacturedSpinor& psi,
                                            const PolarGrid& grid,
                                            const FieldConfiguration& config,
                                            const DipoleParams& params,
                                            const GammaBasis& basis) {
  return apply_operator_analytic(psi, grid, config, params, basis, false);
}

PhaseFactorMap::PhaseFactorMap(double coefficient, const GammaBasis& basis)
    : c_(coefficient), beta_(basis.beta) {}

SpinorMatrix PhaseFactorMap::phase_matrix(double phi) const {
  return (c_ * phi) * beta_;
}

SpinorMatrix PhaseFactorMap::operator()(double /*r*/, double phi) const {
  return exp_i(c_ * phi, beta_);
}

PhaseFactorMap phase_factor_field(const FieldConfiguration& config,
                                  const DipoleParams& params,
                                  const GammaBasis& basis) {
  const WeiFields& w = config.wei_fields();
  const double c = -0.25 * (params.alpha_pol + params.chi) * w.lambda * w.b0;
  return PhaseFactorMap(c, basis);
}

double azimuthal_cancellation_residual(const ManufacturedSpinor& psi0,
                                       const FieldConfiguration& config,
                                       const DipoleParams& params,
                                       const GammaBasis& basis,
                                       const PolarGrid& grid) {
  const PhaseFactorMap factor = phase_factor_field(config, params, basis);
  const double c = factor.coefficient();

  double worst = 0.0;
  for (int j = 0; j < grid.nphi(); ++j) {
    const double phi = grid.phi(j);
    const SpinorMatrix u = factor(grid.r(0), phi);
    const SpinorMatrix dphi_factor = (kI * c) * (basis.beta * u);
    for (int i = 0; i < grid.nr(); ++i) {
      const double r = grid.r(i);
      const CylindricalPoint point{r, phi, 0.0};
      const FieldSample local = config.evaluate_local_cylindrical(point);

      // Route 1: the phase-factor derivative inside -i (alpha^2 / r) d/dphi.
      const SpinorMatrix derivative_route =
          (-kI * (1.0 / r)) * (basis.alpha2 * dphi_factor);
      // Route 2: the cross-term potential of the full operator.
      const SpinorMatrix potential_route =
          closed_form_cross_term(local.E, local.B, params, basis) * u;

      const Spinor residual =
          (derivative_route + potential_route) * psi0.value(r, phi);
      worst = std::max(worst, residual.max_abs_norm());
    }
  }
  return worst;
}

FactorizationReport full_factorization_residual(const ManufacturedSpinor& psi0,
                                                const FieldConfiguration& config,
                                                const DipoleParams& params,
                                                const GammaBasis& basis,
                                                const PolarGrid& grid) {
  const PhaseFactorMap factor = phase_factor_field(config, params, basis);
  const double c = factor.coefficient();

  FactorizationReport report;
  for (int j = 0; j < grid.nphi(); ++j) {
    const double phi = grid.phi(j);
    const SpinorMatrix u = factor(grid.r(0), phi);
    const SpinorMatrix dphi_factor = (kI * c) * (basis.beta * u);
    for (int i = 0; i < grid.nr(); ++i) {
      const double r = grid.r(i);
      const CylindricalPoint point{r, phi, 0.0};
      const FieldSample local = config.evaluate_local_cylindrical(point);
      const SpinorMatrix cross =
          closed_form_cross_term(local.E, local.B, params, basis);
      const SpinorMatrix local_scalar =
          closed_form_local_term(local.E, local.B, params, basis);

      const Spinor psi = psi0.value(r, phi);
      const Spinor dr_psi = psi0.d_r(r, phi);
      const Spinor dphi_psi = psi0.d_phi(r, phi);
      const Spinor radial_arg = dr_psi + (0.5 / r) * psi;

      const Spinor mass_term =
          params.mass * ((basis.beta * u - u * basis.beta) * psi);
      const Spinor radial_term =
          (-kI) * ((basis.alpha1 * u - u * basis.alpha1) * radial_arg);
      const Spinor cancellation_term =
          ((-kI * (1.0 / r)) * (basis.alpha2 * dphi_factor) + cross * u) * psi;
      const Spinor transport_term =
          (-kI * (1.0 / r)) * ((basis.alpha2 * u - u * basis.alpha2) * dphi_psi);
      const Spinor local_term = ((local_scalar * u - u * local_scalar) * psi);
      const Spinor total = mass_term + radial_term + cancellation_term +
                           transport_term + local_term;

      report.mass = std::max(report.mass, mass_term.max_abs_norm());
      report.radial = std::max(report.radial, radial_term.max_abs_norm());
      report.azimuthal_cancellation = std::max(report.azimuthal_cancellation,
                                               cancellation_term.max_abs_norm());
      report.azimuthal_transport =
          std::max(report.azimuthal_transport, transport_term.max_abs_norm());
      report.local_scalar = std::max(report.local_scalar, local_term.max_abs_norm());
      report.total = std::max(report.total, total.max_abs_norm());
    }
  }
  return report;
}

Complex grid_inner_product(const SpinorField& a, const SpinorField& b) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("grid_inner_product: size mismatch");
  const PolarGrid& g = a.grid;
  Complex acc = 0.0;
  for (int i = 0; i < g.nr(); ++i) {
    Complex row = 0.0;
    for (int j = 0; j < g.nphi(); ++j) {
      const Spinor& x = a.at(i, j);
      const Spinor& y = b.at(i, j);
      for (int k = 0; k < 4; ++k) row += std::conj(x.c[k]) * y.c[k];
    }
    acc += row * g.r(i);
  }
  return acc * g.dr() * g.dphi();
}

double loglog_slope(const std::vector<std::array<double, 2>>& h_and_error) {
  if (h_and_error.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h_and_error.size());
  for (const auto& p : h_and_error) {
    const double x = std::log(p[0]);
    const double y = std::log(p[1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace diraclab
