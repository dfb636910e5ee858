#include "diraclab/conventions.hpp"

#include <array>
#include <cstdio>

namespace diraclab {

namespace {

constexpr std::string_view kConventions = R"(diraclab convention ledger
==========================

metric            eta = diag(-1, +1, +1, +1)
orientation       epsilon_123 = +1, right-handed Cartesian axes
field tensor      F[0][i] = -E_i, F[i][j] = epsilon_ijk B^k  (indices down)
moment tensor     K[0][i] = -alpha_pol E_i, K[i][j] = -chi epsilon_ijk B^k;
                  equivalently F with E -> alpha_pol E, B -> -chi B
gamma matrices    Dirac representation, gamma^0 = beta = diag(1,1,-1,-1),
                  gamma^i = beta alpha^i, Sigma^i block-diagonal Pauli
clifford sign     {gamma^mu, gamma^nu} = -2 eta^{mu nu} I  (derived from the
                  representation by multiplication, verified for all 16 pairs)
contraction       C = (1/4) eta^{ab} K[m][a] F[b][n] gamma^m gamma^n, all four
                  indices summed over 0..3; no convention flip was needed, the
                  contraction reproduces the closed-form potential as printed
spin tensor       Sigma^{bn} = (i/2)[gamma^b, gamma^n]
hamiltonian form  multiply the covariant equation by gamma^0: the contraction
                  enters as +beta C, the permanent-moment term as -beta T with
                  T = (mu/2) Sigma^{bn} F[b][n]; both verified to < 1e-12
cross term        (1/4) beta (alpha_pol + chi) (E x B) . alphavec; carries
                  beta alpha^i and is therefore anti-Hermitian, while the
                  scalar E^2/B^2 terms and the permanent-moment terms are
                  Hermitian
path ordering     segment k+1 multiplies on the LEFT of segment k; loops run
                  counterclockwise (increasing phi) for orientation +1
loop quadrature   midpoint rule per angular segment:
                  W(arc midpoint) . tangent(midpoint) dtheta
time-leg phase    mu beta (Sigma . B) tau, carrying beta consistently with the
                  loop terms; a beta-free variant of the same term differs by
                  that single factor and can be read off the beta Sigma3
                  coefficient of the decomposition
eigenphases       principal values in (-pi, pi]
polar operators   field components taken in the local cylindrical frame
                  (radial, azimuthal, axial) -> (1, 2, 3), matching the
                  constant-matrix kinetic term; this is what closes the
                  azimuthal cancellation identity pointwise
)";

}  // namespace

std::string_view conventions_text() { return kConventions; }

std::uint64_t conventions_hash() {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : kConventions) {
    h ^= c;
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

std::string conventions_hash_hex() {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(conventions_hash()));
  return std::string(buf.data());
}

}  // namespace diraclab
