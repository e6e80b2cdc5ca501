#pragma once

#include "freeconv/free_conv.hpp"

namespace freeconv {

/// Partial convolution power mu^t, t >= 1: the subordination omega_t and the
/// transformed handle (F for additive powers, eta for multiplicative ones).
struct PowerResult {
  double t = 1.0;
  TransformHandle omega_t;
  TransformHandle transformed;
  std::string branch_note;
  std::shared_ptr<ResidualStats> stats;
};

/// mu^{boxplus t} via the global inverse of H_t(z) = t z + (1-t) F_mu(z);
/// F_t = (t omega_t - id)/(t-1).
PowerResult free_add_power(const Measure& mu, double t,
                           const SolverConfig& cfg = {});

/// Atoms of mu^{boxplus t}: (t p, t m - (t-1)) for atoms with m > (t-1)/t.
AtomReport atoms_add_power(const Measure& mu, double t);

/// mu^{boxtimes t} on the circle via the inverse of
/// Phi_t(z) = z (z/eta)^{t-1}; needs a nonzero first moment, and eta free of
/// zeros on D\{0} unless t >= 2 (then routed through (mu boxtimes mu)^{t/2}).
PowerResult free_mult_power_circle(const Measure& mu, double t,
                                   const SolverConfig& cfg = {});

/// mu^{boxtimes t} on [0,inf) via the strip inversion of Phi_t with the
/// dilation bound k = 2t-1; the fractional power is positive on (-inf,0).
PowerResult free_mult_power_halfline(const Measure& mu, double t,
                                     const SolverConfig& cfg = {});

/// Atoms of mu^{boxtimes t} on [0,inf): (p^t, t m - (t-1)) for positive
/// atoms with m > (t-1)/t.
AtomReport atoms_mult_power_halfline(const Measure& mu, double t);

/// Circle analogue under the principal branch: atom angle a maps to t*a.
AtomReport atoms_mult_power_circle(const Measure& mu, double t);

/// Boolean-to-free bijection Psi_t on R: F-handle of Psi_t(mu), the right
/// inverse of H_t(z) = t z + (1-t) F_mu(z); phi_{Psi_t(mu)} = (1-t)(F_mu-id).
TransformHandle boolean_to_free_add(const Measure& mu, double t,
                                    const SolverConfig& cfg = {});
TransformHandle boolean_to_free_add_transforms(const ComplexFn& F, double t,
                                               const SolverConfig& cfg = {},
                                               std::string label = {});

/// Circle Psi_t: eta-handle of Psi_t(mu), the right inverse of
/// Phi_t(z) = z (z/eta_mu)^{t-1}; mu must be boolean-multiplicatively
/// infinitely divisible (sampled Franz-form checks); Haar maps to Haar.
TransformHandle boolean_to_free_mult_circle(const Measure& mu, double t,
                                            const SolverConfig& cfg = {});

}  // namespace freeconv
