#include "freeconv/recovery.hpp"

#include <cmath>
#include <limits>

namespace freeconv {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// extrapolate f(h) -> h=0 over the `points` smallest heights (stored last)
Complex extrapolate_tail(const std::vector<double>& h,
                         const std::vector<Complex>& f, int points) {
  const int n = static_cast<int>(h.size());
  const int m = std::min(points, n);
  std::vector<double> hh(h.end() - m, h.end());
  std::vector<Complex> ff(f.end() - m, f.end());
  return neville_at_zero(hh, ff);
}

// G on C+ from any line-addressed handle: F/G directly, slit-plane psi/eta
// through G(w) = (psi(1/w) + 1)/w.
Complex g_value(const TransformHandle& handle, Complex z) {
  switch (handle.kind()) {
    case TransformKind::G:
      return handle(z);
    case TransformKind::F:
    case TransformKind::composed:
      return 1.0 / handle(z);
    case TransformKind::psi: {
      if (handle.domain() != DomainTag::slit_plane)
        throw Error(ErrorCode::DomainMismatch,
                    "disk psi handles use the circle recovery path");
      return (handle(1.0 / z) + 1.0) / z;
    }
    case TransformKind::eta: {
      if (handle.domain() != DomainTag::slit_plane)
        throw Error(ErrorCode::DomainMismatch,
                    "disk eta handles use the circle recovery path");
      const Complex e = handle(1.0 / z);
      return (e / (1.0 - e) + 1.0) / z;
    }
  }
  return handle(z);
}

Complex f_value(const TransformHandle& handle, Complex z) {
  if (handle.kind() == TransformKind::F ||
      handle.kind() == TransformKind::composed)
    return handle(z);
  return 1.0 / g_value(handle, z);
}

Complex psi_value(const TransformHandle& handle, Complex z) {
  if (handle.kind() == TransformKind::eta) {
    const Complex e = handle(z);
    return e / (1.0 - e);
  }
  return handle(z);
}

// Boundary values blowing up like y^{-1/2} (branch points) or 1/y (atoms)
// keep growing geometrically as the height halves; analytic limits settle.
bool diverging_tail(const std::vector<Complex>& vals, bool use_imag) {
  const size_t n = vals.size();
  if (n < 3) return false;
  auto part = [use_imag](Complex v) { return use_imag ? v.imag() : v.real(); };
  const double u0 = part(vals[n - 3]);
  const double u1 = part(vals[n - 2]);
  const double u2 = part(vals[n - 1]);
  if (!(u0 > 0.0) || u2 < 1e-3) return false;
  if (u2 > 1e4 && u2 > 1.7 * u1) return true;  // pole-type growth
  return u1 > 1.25 * u0 && u2 > 1.25 * u1 &&
         u2 > 3.0 * std::max(part(vals.front()), 1e-12);
}

}  // namespace

std::vector<double> HeightSchedule::heights() const {
  std::vector<double> h(levels);
  for (int k = 0; k < levels; ++k) h[k] = y0 * std::ldexp(1.0, -k);
  return h;
}

double density_real(const TransformHandle& handle, double x,
                    const HeightSchedule& schedule) {
  const auto hs = schedule.heights();
  std::vector<Complex> vals(hs.size());
  for (size_t k = 0; k < hs.size(); ++k)
    vals[k] = -g_value(handle, Complex(x, hs[k])) / M_PI;

  if (diverging_tail(vals, /*use_imag=*/true))
    return std::numeric_limits<double>::infinity();
  const Complex lim = extrapolate_tail(hs, vals, schedule.extrap_points);
  const double d = lim.imag();
  if (!std::isfinite(d))
    throw Error(ErrorCode::OscillatoryLimit, "density extrapolation diverged");
  return d > 0.0 ? d : 0.0;
}

double atom_mass_real(const TransformHandle& f_like, double a,
                      const HeightSchedule& schedule) {
  const auto hs = schedule.heights();
  std::vector<Complex> ratio(hs.size());
  double min_abs_f = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < hs.size(); ++k) {
    const Complex z(a, hs[k]);
    const Complex F = f_value(f_like, z);
    min_abs_f = std::min(min_abs_f, std::abs(F));
    ratio[k] = F / Complex(0.0, hs[k]);
  }
  // an atom of mass m has |F(a+iy)| ~ y/m; anything larger is no atom
  const double y_min = hs.back();
  if (min_abs_f > std::max(1e-3, 1e3 * y_min)) return 0.0;
  const Complex L = extrapolate_tail(hs, ratio, schedule.extrap_points);
  if (!std::isfinite(L.real()) || !std::isfinite(L.imag()))
    throw Error(ErrorCode::OscillatoryLimit, "mass extrapolation diverged");
  // at an atom the ratio limit is the real Julia-Caratheodory derivative;
  // a diverging imaginary part signals F(a) != 0 instead
  if (std::abs(L.imag()) > 1e-3 * std::max(1.0, std::abs(L.real())))
    return 0.0;
  const double deriv = L.real();
  if (!(deriv > 0.0) || deriv > 1e12) return 0.0;
  const double mass = 1.0 / deriv;
  return mass < 1e-12 ? 0.0 : std::min(mass, 1.0);
}

double density_circle(const TransformHandle& psi_like, double theta,
                      const HeightSchedule& schedule) {
  const auto hs = schedule.heights();
  std::vector<Complex> vals(hs.size());
  for (size_t k = 0; k < hs.size(); ++k) {
    const Complex z = std::polar(1.0 - hs[k], -theta);
    vals[k] = (1.0 + 2.0 * psi_value(psi_like, z).real()) / kTwoPi;
  }
  if (diverging_tail(vals, /*use_imag=*/false))
    return std::numeric_limits<double>::infinity();
  const Complex lim = extrapolate_tail(hs, vals, schedule.extrap_points);
  if (!std::isfinite(lim.real()))
    throw Error(ErrorCode::OscillatoryLimit, "circle density extrapolation diverged");
  return lim.real() > 0.0 ? lim.real() : 0.0;
}

double atom_mass_circle(const TransformHandle& psi_like, double alpha,
                        const HeightSchedule& schedule) {
  const auto hs = schedule.heights();
  std::vector<Complex> vals(hs.size());
  double max_abs_psi = 0.0;
  for (size_t k = 0; k < hs.size(); ++k) {
    const Complex z = std::polar(1.0 - hs[k], -alpha);
    const Complex p = psi_value(psi_like, z);
    max_abs_psi = std::max(max_abs_psi, std::abs(p));
    vals[k] = hs[k] * p;  // (1-r) psi(r e^{-i alpha})
  }
  if (max_abs_psi < 1e3) {
    // psi stays bounded: check the smallest height directly
    if (std::abs(vals.back()) < 1e-6) return 0.0;
  }
  const Complex L = extrapolate_tail(hs, vals, schedule.extrap_points);
  if (!std::isfinite(L.real()))
    throw Error(ErrorCode::OscillatoryLimit, "circle mass extrapolation diverged");
  const double mass = L.real();
  if (!(mass > 1e-12)) return 0.0;
  return std::min(mass, 1.0);
}

namespace {

bool near_any(double x, const std::vector<double>& centers, double radius) {
  for (double c : centers)
    if (std::abs(x - c) <= radius) return true;
  return false;
}

// integral of the piecewise-linear interpolant through the valid samples,
// plus fitted C/sqrt(x-e) tails at support edges where the density blows up
// (at the ends of the grid or interior edges adjacent to zero density).
// Fits whose edge lands on a known atom are rejected: the band edge next to
// an embedded atom sits beyond the atom, not at it, and anchoring there
// overstates the tail.
double trapezoid_mass(const std::vector<double>& x,
                      const std::vector<double>& d,
                      const std::vector<double>& atom_locs = {},
                      double atom_guard = 0.0) {
  std::vector<double> vx, vd;
  for (size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(d[i])) {
      vx.push_back(x[i]);
      vd.push_back(d[i]);
    }
  }
  const size_t n = vx.size();
  if (n < 2) return 0.0;
  double mass = 0.0;
  for (size_t i = 1; i < n; ++i)
    mass += 0.5 * (vd[i] + vd[i - 1]) * (vx[i] - vx[i - 1]);

  const double dx = (x.back() - x.front()) / std::max<size_t>(1, x.size() - 1);
  // tail of C/sqrt(|x - e|) fitted through the two samples nearest an edge;
  // x1 is innermost (largest density), x2 one step away from the edge
  auto edge_tail = [&](double x1, double f1, double x2, double f2) {
    if (!(f1 > f2) || !(f2 > 0.0)) return 0.0;
    const double a1 = f1 * f1, a2 = f2 * f2;
    const double e = (a1 * x1 - a2 * x2) / (a1 - a2);
    if (!std::isfinite(e)) return 0.0;
    const double gap = std::abs(x1 - e);
    if (gap > 5.0 * std::abs(dx) || gap <= 0.0) return 0.0;
    for (double a : atom_locs)
      if (std::abs(e - a) <= atom_guard) return 0.0;
    return 2.0 * f1 * gap;
  };
  mass += edge_tail(vx[0], vd[0], vx[1], vd[1]);
  mass += edge_tail(vx[n - 1], vd[n - 1], vx[n - 2], vd[n - 2]);

  // interior support edges: a near-zero sample next to a decaying blow-up
  for (size_t i = 1; i + 1 < n; ++i) {
    const double f = vd[i];
    if (f <= 0.0) continue;
    const bool zero_left = vd[i - 1] < std::max(1e-8, 0.02 * f);
    const bool zero_right = vd[i + 1] < std::max(1e-8, 0.02 * f);
    if (zero_left && !zero_right && vd[i] > vd[i + 1]) {
      const double tail = edge_tail(vx[i], vd[i], vx[i + 1], vd[i + 1]);
      if (tail > 0.0)  // replace the linear ramp across the edge cell
        mass += tail - 0.5 * (vd[i - 1] + vd[i]) * (vx[i] - vx[i - 1]);
    } else if (zero_right && !zero_left && vd[i] > vd[i - 1]) {
      const double tail = edge_tail(vx[i], vd[i], vx[i - 1], vd[i - 1]);
      if (tail > 0.0)
        mass += tail - 0.5 * (vd[i] + vd[i + 1]) * (vx[i + 1] - vx[i]);
    }
  }
  return mass;
}

}  // namespace

DensityGrid recover_grid(const TransformHandle& handle, const GridSpec& spec,
                         const std::vector<AtomCandidate>& atom_candidates) {
  const bool circle = spec.kind == GridSpec::Kind::circle;
  DensityGrid grid;

  // confirmed atoms first: they define mask zones
  std::vector<double> mask = spec.mask_points;
  for (const auto& cand : atom_candidates) {
    const double mass =
        circle ? atom_mass_circle(handle, cand.location, spec.schedule)
               : atom_mass_real(handle, cand.location, spec.schedule);
    if (mass > 1e-9) {
      grid.atoms.entries.push_back({cand.location, mass, cand.rule});
      mask.push_back(cand.location);
      if (circle) {  // masking must respect the wrap-around
        mask.push_back(cand.location + kTwoPi);
        mask.push_back(cand.location - kTwoPi);
      }
    }
  }

  grid.abscissae.resize(spec.n);
  grid.densities.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double x = circle
                         ? kTwoPi * i / spec.n
                         : spec.lo + (spec.hi - spec.lo) * i /
                               std::max(1, spec.n - 1);
    grid.abscissae[i] = x;
    if (near_any(x, mask, spec.mask_radius)) {
      grid.densities[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double d = circle ? density_circle(handle, x, spec.schedule)
                            : density_real(handle, x, spec.schedule);
    grid.densities[i] =
        std::isinf(d) ? std::numeric_limits<double>::quiet_NaN() : d;
  }

  double atomic = 0.0;
  for (const auto& a : grid.atoms.entries) atomic += a.mass;
  double continuous = 0.0;
  if (circle) {
    // periodic trapezoid over valid samples
    std::vector<double> vx, vd;
    for (int i = 0; i < spec.n; ++i) {
      if (std::isfinite(grid.densities[i])) {
        vx.push_back(grid.abscissae[i]);
        vd.push_back(grid.densities[i]);
      }
    }
    if (vx.size() >= 2) {
      for (size_t i = 1; i < vx.size(); ++i)
        continuous += 0.5 * (vd[i] + vd[i - 1]) * (vx[i] - vx[i - 1]);
      continuous +=
          0.5 * (vd.front() + vd.back()) * (kTwoPi - (vx.back() - vx.front()));
    }
  } else {
    std::vector<double> atom_locs;
    for (const auto& a : grid.atoms.entries) atom_locs.push_back(a.location);
    const double dx =
        (spec.hi - spec.lo) / std::max(1, spec.n - 1);
    continuous = trapezoid_mass(grid.abscissae, grid.densities, atom_locs,
                                std::max(spec.mask_radius, 0.75 * dx));
  }
  grid.mass_account = {continuous, atomic, 1.0 - continuous - atomic};
  return grid;
}

std::vector<AtomCandidate> scan_f_zeros(const TransformHandle& f_like,
                                        double lo, double hi, int n,
                                        const HeightSchedule& schedule) {
  std::vector<AtomCandidate> found;
  const auto hs = schedule.heights();
  const double y = hs.back();
  const double dx = (hi - lo) / std::max(1, n - 1);
  auto absF = [&](double x) { return std::abs(f_value(f_like, Complex(x, y))); };
  double prev_here = absF(lo);
  for (int i = 1; i + 1 < n; ++i) {
    const double x = lo + dx * i;
    const double here = absF(x);
    const double next = absF(x + dx);
    // local minimum of |F| small enough to suggest a nearby zero; the
    // sampled value sits up to dx/2 away, so the gate scales with dx too
    if (here <= prev_here && here <= next && here < 10.0 * (dx + y)) {
      // golden-section refine the minimum of |F(x+iy)|
      double a = x - dx, b = x + dx;
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = b - gr * (b - a), d = a + gr * (b - a);
      double fc = absF(c), fd = absF(d);
      for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
          b = d; d = c; fd = fc;
          c = b - gr * (b - a);
          fc = absF(c);
        } else {
          a = c; c = d; fc = fd;
          d = a + gr * (b - a);
          fd = absF(d);
        }
      }
      const double loc = 0.5 * (a + b);
      if (absF(loc) > 50.0 * y) continue;  // shallow dip, not a zero
      bool dup = false;
      for (const auto& f : found)
        if (std::abs(f.location - loc) < 2.0 * dx) dup = true;
      if (!dup) found.push_back({loc, AtomRule::jc_detected});
    }
    prev_here = here;
  }
  return found;
}

}  // namespace freeconv
