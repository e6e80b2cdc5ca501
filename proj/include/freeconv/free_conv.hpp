#pragma once

#include <array>
#include <functional>
#include <optional>

#include "freeconv/dwolff.hpp"
#include "freeconv/measure.hpp"
#include "freeconv/transforms.hpp"

namespace freeconv {

enum class AtomRule { sum_rule, product_rule, zero_rule, power_rule, jc_detected };

const char* atom_rule_name(AtomRule r);

struct AtomEntry {
  double location;  // point or angle
  double mass;
  AtomRule rule;
};

struct AtomReport {
  std::vector<AtomEntry> entries;
};

/// Subordination pair for a free convolution: evaluable omega_1, omega_2 and
/// the convolved transform (F for additive, eta for multiplicative), plus a
/// pointwise residual probe of the defining equations.
struct SubordinationPair {
  TransformHandle omega1;
  TransformHandle omega2;
  TransformHandle convolved;
  std::function<double(Complex)> residual_probe;
  std::shared_ptr<ResidualStats> stats;
};

/// Free additive convolution on R via the half-plane fixed point
/// f_z(w) = F_nu(F_mu(w) - w + z) - (F_mu(w) - w); point masses
/// short-circuit to the shift formulas.
SubordinationPair free_add(const Measure& mu, const Measure& nu,
                           const SolverConfig& cfg = {});

/// Same solver acting on a pair of F-transforms (self-maps of C+ with
/// F(iy)/iy -> 1).  `shift1/shift2` optionally mark F_j(z) = z - a as a
/// point-mass factor to short-circuit.
SubordinationPair free_add_transforms(const ComplexFn& F1, const ComplexFn& F2,
                                      const SolverConfig& cfg = {},
                                      std::optional<double> shift1 = {},
                                      std::optional<double> shift2 = {});

/// Free multiplicative convolution on [0,inf): h(z) = omega_1(z)/z is the
/// fixed point of f_z(w) = h_nu(z h_mu(z w)).
SubordinationPair free_mult_halfline(const Measure& mu, const Measure& nu,
                                     const SolverConfig& cfg = {});

/// Free multiplicative convolution on the unit circle; zero first moments
/// short-circuit to the Haar measure (eta = 0).
SubordinationPair free_mult_circle(const Measure& mu, const Measure& nu,
                                   const SolverConfig& cfg = {});

/// Closed-form Cauchy transform of
/// (s d_0 + (1-s) d_u) boxplus (t d_0 + (1-t) d_v) and the four real branch
/// points; the square root branch makes G map C+ to -C+.
struct TwoAtomAddOracle {
  std::array<double, 4> roots;
  ComplexFn G;
  ComplexFn omega1;
  /// density of the a.c. part at x (0 outside the support / at roots)
  std::function<double(double)> density;
};

TwoAtomAddOracle two_atom_add_oracle(double s, double u, double t, double v);

/// Closed-form eta of (s d_1 + (1-s) d_u) boxtimes (t d_1 + (1-t) d_v):
/// quartic discriminant coefficients (A,B,C,D; constant term 1) and the
/// evaluable eta with the analytic square root fixed negative on (-inf,0).
struct TwoAtomMultOracle {
  double A, B, C, D;
  ComplexFn eta;
  ComplexFn omega1;
};

TwoAtomMultOracle two_atom_mult_oracle(double s, double u, double t, double v);

/// Atom rule for boxplus: pairs with mu({b}) + nu({c}) > 1.
AtomReport atoms_free_add(const Measure& mu, const Measure& nu);

/// Atom rules for boxtimes on [0,inf) (product rule at uv plus the zero
/// rule max{mu({0}), nu({0})}) and on the circle (angle-sum reading).
AtomReport atoms_free_mult(const Measure& mu, const Measure& nu);

}  // namespace freeconv
