#pragma once

#include "freeconv/free_conv.hpp"

namespace freeconv {

/// Geometric boundary-approach schedule y_k = y0 * 2^{-k}, k = 0..levels-1,
/// with Neville extrapolation to 0 through the `extrap_points` smallest
/// heights.
struct HeightSchedule {
  double y0 = 1e-2;
  int levels = 9;
  int extrap_points = 3;

  std::vector<double> heights() const;
};

struct MassAccount {
  double continuous_mass = 0.0;
  double atomic_mass = 0.0;
  double deficit = 0.0;
};

struct DensityGrid {
  std::vector<double> abscissae;   // increasing points or angles
  std::vector<double> densities;   // >= 0; NaN marks masked points
  AtomReport atoms;
  MassAccount mass_account;
};

/// Boundary density -(1/pi) Im G(x+iy) extrapolated along the schedule;
/// returns +infinity at a detected singular point.
double density_real(const TransformHandle& handle, double x,
                    const HeightSchedule& schedule = {});

/// Atom mass at a via the Julia-Caratheodory limit of F(a+iy)/(iy); zero
/// when F stays away from 0.
double atom_mass_real(const TransformHandle& f_like, double a,
                      const HeightSchedule& schedule = {});

/// Circle density at the measure's own angle theta: radial limit of
/// (1/2pi)(1 + 2 Re psi(r e^{-i theta})) (the d mu(e^{-i t}) orientation
/// reversal is absorbed here).
double density_circle(const TransformHandle& psi_like, double theta,
                      const HeightSchedule& schedule = {});

/// Atom mass at angle alpha via the radial limit of (1-r) psi(r e^{-i alpha}).
double atom_mass_circle(const TransformHandle& psi_like, double alpha,
                        const HeightSchedule& schedule = {});

struct AtomCandidate {
  double location;
  AtomRule rule = AtomRule::jc_detected;
};

struct GridSpec {
  enum class Kind { line, circle };
  Kind kind = Kind::line;
  double lo = -1.0, hi = 1.0;
  int n = 101;                      // points on [lo,hi] (angles for circle)
  HeightSchedule schedule{};
  std::vector<double> mask_points;  // extra exclusion centers (oracle roots)
  double mask_radius = 1e-3;
};

/// Densities over the grid, Julia-Caratheodory masses at the candidate
/// atoms, and trapezoid mass accounting with a sqrt-tail edge correction.
/// The handle may be F/G (line) or psi/eta (circle or half-line measures
/// addressed through G(1/z)).
DensityGrid recover_grid(const TransformHandle& handle, const GridSpec& spec,
                         const std::vector<AtomCandidate>& atom_candidates);

/// Scan a line grid for zeros of F (atom locations) and confirm them by
/// Julia-Caratheodory mass; used when no rule-based candidates exist.
std::vector<AtomCandidate> scan_f_zeros(const TransformHandle& f_like,
                                        double lo, double hi, int n,
                                        const HeightSchedule& schedule = {});

}  // namespace freeconv
