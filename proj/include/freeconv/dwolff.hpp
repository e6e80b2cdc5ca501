#pragma once

#include <optional>

#include "freeconv/transforms.hpp"

namespace freeconv {

struct SolverConfig {
  double tolerance = 1e-13;
  int max_iterations = 10000;
  double newton_switch_radius = 1e-3;
};

/// Result of a Denjoy-Wolff solve: an interior fixed point, or the diagnosed
/// attracting boundary point (a direction/real point, or infinity).
struct FixedPointResult {
  Complex location{};
  bool interior = true;
  bool at_infinity = false;  // boundary result escaped to infinity
  int iterations = 0;
  double residual = 0.0;
};

/// Denjoy-Wolff point of an analytic self-map of the tagged domain.
/// Plain iteration from a fixed seed, switching to damped Newton on
/// f(w) - w near the fixed point; escape toward the boundary is diagnosed
/// from the iterates.
FixedPointResult denjoy_wolff(const ComplexFn& f, DomainTag tag,
                              const SolverConfig& cfg = {},
                              std::optional<Complex> seed = std::nullopt);

/// omega(alpha) with H(omega(alpha)) = alpha for H: C+ -> C with
/// Im H(z) <= Im z and lim H(iy)/(iy) = a > 0 (Denjoy-Wolff point of
/// g_alpha(z) = z + alpha - H(z)).  `validate` samples the hypotheses.
Complex invert_halfplane(const ComplexFn& H, Complex alpha,
                         const SolverConfig& cfg = {}, bool validate = true);

/// omega(alpha) with Phi(omega(alpha)) = alpha for Phi: D -> C meromorphic,
/// Phi(0) = 0, |Phi(z)| >= |z| (Denjoy-Wolff point of g_alpha = alpha z/Phi).
Complex invert_disk(const ComplexFn& Phi, Complex alpha,
                    const SolverConfig& cfg = {}, bool validate = true);

/// A self-map of the slit plane C\[0,inf) together with its lift to the
/// strip |Im| < pi through u(z) = -e^z, and the dilation bound k with
/// Im z <= Im f(z) <= k Im z for the lift f.
struct SlitPlaneMap {
  ComplexFn phi;
  ComplexFn strip_lift;
  double k = 1.0;
};

/// Lift with the principal logarithm; valid when phi does not wind past the
/// cut (k close to 1).  Builders of Phi_t supply an exact lift instead.
SlitPlaneMap make_slitplane_map(ComplexFn phi, double k);

Complex strip_coordinate(Complex slit_point);    // v = log(-z), principal
Complex slit_coordinate(Complex strip_point);    // u = -e^z

/// omega(alpha) with phi(omega(alpha)) = alpha, computed as the strip
/// Denjoy-Wolff point of g(z) = z - tau (f(z) - v(alpha)), tau = pi/(k+pi).
Complex invert_slitplane(const SlitPlaneMap& map, Complex alpha,
                         const SolverConfig& cfg = {}, bool validate = true);

}  // namespace freeconv
