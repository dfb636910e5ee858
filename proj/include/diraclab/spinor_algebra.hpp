// Dirac-representation gamma matrices and derived Clifford objects.
//
// Representation, with sigma^i the Pauli matrices:
//
//   gamma^0 = beta = [[I, 0], [0, -I]]
//   gamma^i = beta * alpha^i = [[0, sigma^i], [-sigma^i, 0]]
//   alpha^i = [[0, sigma^i], [sigma^i, 0]]
//   Sigma^i = [[sigma^i, 0], [0, sigma^i]]      (spin vector)
//
// Metric: eta = diag(-1, +1, +1, +1).  With this representation the
// anticommutator works out to {gamma^mu, gamma^nu} = -2 eta^{mu nu} I;
// the sign is derived by multiplication, not assumed, and is asserted
// by the algebra test suite.
#pragma once

#include <array>

#include "diraclab/spinor_matrix.hpp"

namespace diraclab {

struct GammaBasis {
  SpinorMatrix gamma0, gamma1, gamma2, gamma3;
  SpinorMatrix beta;
  SpinorMatrix alpha1, alpha2, alpha3;
  SpinorMatrix sigma1, sigma2, sigma3;
  std::array<double, 4> metric{-1.0, 1.0, 1.0, 1.0};

  const SpinorMatrix& gamma(int mu) const;
  const SpinorMatrix& alpha(int i) const;  // i = 1..3
  const SpinorMatrix& sigma(int i) const;  // i = 1..3
};

GammaBasis build_gamma_basis();

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b);
SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b);

// Spin tensor Sigma^{b n} = (i/2) [gamma^b, gamma^n]; antisymmetric in (b, n).
SpinorMatrix sigma_tensor(const GammaBasis& basis, int b, int n);

// exp(i * theta * m) by scaling-and-squaring of the power series.
// Rejects non-finite theta or matrix entries.
SpinorMatrix exp_i(double theta, const SpinorMatrix& m);

// Trace projection onto the mutually commuting set {I, beta, Sigma3,
// beta*Sigma3}: c_X = Tr(m X) / 4.  The four elements are trace-orthogonal
// and each squares to I, so the projection is exact on their span; anything
// outside the span shows up in remainder_norm instead of failing.
struct CommutingDecomposition {
  Complex c_identity{};
  Complex c_beta{};
  Complex c_sigma3{};
  Complex c_beta_sigma3{};
  double remainder_norm = 0.0;
};

CommutingDecomposition decompose_on_commuting_basis(const SpinorMatrix& m);

}  // namespace diraclab
