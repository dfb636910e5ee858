#include "diraclab/spinor_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace diraclab {

namespace {

using Block = std::array<Complex, 4>;  // 2x2 block, row-major

constexpr Complex kI{0.0, 1.0};

// Assemble a 4x4 matrix from 2x2 blocks [[a, b], [c, d]].
SpinorMatrix from_blocks(const Block& a, const Block& b, const Block& c,
                         const Block& d) {
  SpinorMatrix m;
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col) {
      m(r, col) = a[2 * r + col];
      m(r, col + 2) = b[2 * r + col];
      m(r + 2, col) = c[2 * r + col];
      m(r + 2, col + 2) = d[2 * r + col];
    }
  return m;
}

Block scale(const Block& b, Complex s) {
  return {s * b[0], s * b[1], s * b[2], s * b[3]};
}

}  // namespace

const SpinorMatrix& GammaBasis::gamma(int mu) const {
  switch (mu) {
    case 0: return gamma0;
    case 1: return gamma1;
    case 2: return gamma2;
    case 3: return gamma3;
    default: throw std::out_of_range("gamma index must be 0..3");
  }
}

const SpinorMatrix& GammaBasis::alpha(int i) const {
  switch (i) {
    case 1: return alpha1;
    case 2: return alpha2;
    case 3: return alpha3;
    default: throw std::out_of_range("alpha index must be 1..3");
  }
}

const SpinorMatrix& GammaBasis::sigma(int i) const {
  switch (i) {
    case 1: return sigma1;
    case 2: return sigma2;
    case 3: return sigma3;
    default: throw std::out_of_range("sigma index must be 1..3");
  }
}

GammaBasis build_gamma_basis() {
  const Block id{1.0, 0.0, 0.0, 1.0};
  const Block zero{0.0, 0.0, 0.0, 0.0};
  const std::array<Block, 3> pauli{{
      {0.0, 1.0, 1.0, 0.0},     // sigma^1
      {0.0, -kI, kI, 0.0},      // sigma^2
      {1.0, 0.0, 0.0, -1.0},    // sigma^3
  }};

  GammaBasis g;
  g.beta = from_blocks(id, zero, zero, scale(id, -1.0));
  g.gamma0 = g.beta;

  std::array<SpinorMatrix*, 3> alphas{&g.alpha1, &g.alpha2, &g.alpha3};
  std::array<SpinorMatrix*, 3> gammas{&g.gamma1, &g.gamma2, &g.gamma3};
  std::array<SpinorMatrix*, 3> sigmas{&g.sigma1, &g.sigma2, &g.sigma3};
  for (int i = 0; i < 3; ++i) {
    *alphas[i] = from_blocks(zero, pauli[i], pauli[i], zero);
    *gammas[i] = from_blocks(zero, pauli[i], scale(pauli[i], -1.0), zero);
    *sigmas[i] = from_blocks(pauli[i], zero, zero, pauli[i]);
  }
  return g;
}

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b) {
  return a * b - b * a;
}

SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b) {
  return a * b + b * a;
}

SpinorMatrix sigma_tensor(const GammaBasis& basis, int b, int n) {
  return Complex{0.0, 0.5} * commutator(basis.gamma(b), basis.gamma(n));
}

SpinorMatrix exp_i(double theta, const SpinorMatrix& m) {
  if (!std::isfinite(theta) || !m.all_finite())
    throw std::invalid_argument("exp_i: non-finite input");

  SpinorMatrix a = (kI * theta) * m;

  // Scale so the series argument has max-abs norm below 1/2, sum the
  // series to machine precision, then undo the scaling by squaring.
  int squarings = 0;
  double bound = 4.0 * a.max_abs_norm();  // row-sum bound on the spectral radius
  while (bound > 0.5 && squarings < 60) {
    a *= 0.5;
    bound *= 0.5;
    ++squarings;
  }

  SpinorMatrix result = SpinorMatrix::identity();
  SpinorMatrix term = SpinorMatrix::identity();
  for (int k = 1; k <= 40; ++k) {
    term = term * a;
    term *= 1.0 / k;
    result += term;
    if (term.max_abs_norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

CommutingDecomposition decompose_on_commuting_basis(const SpinorMatrix& m) {
  static const GammaBasis g = build_gamma_basis();
  static const SpinorMatrix identity = SpinorMatrix::identity();
  static const SpinorMatrix beta_sigma3 = g.beta * g.sigma3;

  CommutingDecomposition d;
  d.c_identity = 0.25 * m.trace();
  d.c_beta = 0.25 * (m * g.beta).trace();
  d.c_sigma3 = 0.25 * (m * g.sigma3).trace();
  d.c_beta_sigma3 = 0.25 * (m * beta_sigma3).trace();

  SpinorMatrix reconstructed = d.c_identity * identity + d.c_beta * g.beta +
                               d.c_sigma3 * g.sigma3 +
                               d.c_beta_sigma3 * beta_sigma3;
  d.remainder_norm = max_abs_distance(m, reconstructed);
  return d;
}

}  // namespace diraclab
