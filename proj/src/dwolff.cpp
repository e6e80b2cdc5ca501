#include "freeconv/dwolff.hpp"

#include <cmath>
#include <limits>

namespace freeconv {

namespace {

constexpr double kEscapeRadius = 1e12;     // half-plane escape
constexpr double kDiskEdge = 1e-12;        // 1-|w| below this counts as edge
constexpr double kStripEscape = 60.0;      // |Re| escape on the strip
constexpr int kEscapeStreak = 20;

bool inside(DomainTag tag, Complex w) {
  switch (tag) {
    case DomainTag::upper_halfplane: return w.imag() > 0.0;
    case DomainTag::unit_disk: return std::abs(w) < 1.0;
    case DomainTag::strip: return std::abs(w.imag()) < M_PI;
    case DomainTag::slit_plane:
      return !(w.imag() == 0.0 && w.real() >= 0.0);
  }
  return false;
}

Complex default_seed(DomainTag tag) {
  switch (tag) {
    case DomainTag::upper_halfplane: return kI;
    case DomainTag::unit_disk: return Complex(0.3, 0.3);
    case DomainTag::strip: return Complex(0.0, 0.0);  // lift of -1
    case DomainTag::slit_plane: return Complex(-1.0, 0.0);
  }
  return kI;
}

// a converged iterate that sits on (or beyond) the edge of the domain is an
// attracting boundary point, not an interior fixed point.  Beyond ~1e8 the
// residual of a parabolic escape like w - 1/w saturates below the ulp of w
// and reads as zero, so large "fixed points" are classified as infinity.
FixedPointResult classify(DomainTag tag, Complex w, int iterations,
                          double residual) {
  FixedPointResult out{w, true, false, iterations, residual};
  switch (tag) {
    case DomainTag::upper_halfplane:
    case DomainTag::slit_plane:
      if (std::abs(w) > 1e8) {
        out.interior = false;
        out.at_infinity = true;
        out.location = w / std::abs(w);
      } else if (tag == DomainTag::upper_halfplane &&
                 w.imag() <= 1e-11 * std::max(1.0, std::abs(w))) {
        out.interior = false;
      }
      break;
    case DomainTag::unit_disk:
      if (1.0 - std::abs(w) <= 1e-11) out.interior = false;
      break;
    case DomainTag::strip:
      if (std::abs(w.real()) > kStripEscape) {
        out.interior = false;
        out.at_infinity = true;
      }
      break;
  }
  return out;
}

// Damped Newton on r(w) = f(w) - w from w; returns true on improvement.
// On the strip the iterate may sit on the real axis (real fixed points);
// domain membership is checked with `inside`.
bool newton_polish(const ComplexFn& f, DomainTag tag, Complex& w,
                   double& residual, double tol, int max_steps) {
  bool improved_any = false;
  for (int it = 0; it < max_steps; ++it) {
    const Complex r = f(w) - w;
    const double rn = std::abs(r);
    if (rn < residual) {
      residual = rn;
      improved_any = true;
    }
    if (rn <= tol) {
      // polish: one or two extra steps while they still help
      for (int extra = 0; extra < 2; ++extra) {
        const Complex rr = f(w) - w;
        const Complex d =
            complex_derivative([&](Complex x) { return f(x) - x; }, w);
        if (d == Complex{}) break;
        const Complex cand = w - rr / d;
        if (!inside(tag, cand)) break;
        const double rc = std::abs(f(cand) - cand);
        if (rc >= residual) break;
        w = cand;
        residual = rc;
      }
      return true;
    }
    const Complex d =
        complex_derivative([&](Complex x) { return f(x) - x; }, w);
    if (d == Complex{} || !std::isfinite(std::abs(d))) return improved_any;
    Complex step = -r / d;
    bool accepted = false;
    for (int k = 0; k < 10; ++k) {
      const Complex cand = w + step;
      if (inside(tag, cand)) {
        const double rc = std::abs(f(cand) - cand);
        if (std::isfinite(rc) && rc < rn) {
          w = cand;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) return improved_any;
  }
  return improved_any;
}

}  // namespace

FixedPointResult denjoy_wolff(const ComplexFn& f, DomainTag tag,
                              const SolverConfig& cfg,
                              std::optional<Complex> seed) {
  Complex w = seed.value_or(default_seed(tag));
  if (!inside(tag, w) && tag != DomainTag::strip)
    throw Error(ErrorCode::SolverFailure, "seed outside the domain");

  int escape_streak = 0;
  double window_best = std::numeric_limits<double>::infinity();
  int since_newton_try = 0;
  double residual = std::numeric_limits<double>::infinity();

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Complex next = f(w);
    residual = std::abs(next - w);

    if (!std::isfinite(residual))
      throw Error(ErrorCode::SolverFailure, "iteration produced non-finite value");

    // boundary escape diagnosis
    bool near_edge = false;
    switch (tag) {
      case DomainTag::upper_halfplane:
        near_edge = std::abs(next) > kEscapeRadius;
        break;
      case DomainTag::unit_disk:
        near_edge = 1.0 - std::abs(next) < kDiskEdge;
        break;
      case DomainTag::strip:
        near_edge = std::abs(next.real()) > kStripEscape;
        break;
      case DomainTag::slit_plane:
        near_edge = std::abs(next) > kEscapeRadius;
        break;
    }
    escape_streak = near_edge ? escape_streak + 1 : 0;
    if (escape_streak >= kEscapeStreak) {
      FixedPointResult out;
      out.interior = false;
      out.iterations = it + 1;
      out.residual = residual;
      if (tag == DomainTag::unit_disk) {
        out.location = next / std::abs(next);  // escape direction on T
      } else {
        out.at_infinity = true;
        out.location = next / std::abs(next);
      }
      return out;
    }

    w = next;
    ++since_newton_try;

    if (residual <= cfg.tolerance) {
      double res = residual;
      newton_polish(f, tag, w, res, cfg.tolerance, 3);
      return classify(tag, w, it + 1, res);
    }

    // switch to Newton near the fixed point, or periodically on stall
    const bool stalled =
        since_newton_try >= 50 && residual > 0.5 * window_best;
    if (residual < cfg.newton_switch_radius || stalled) {
      double res = residual;
      Complex w_try = w;
      if (newton_polish(f, tag, w_try, res, cfg.tolerance, 60) &&
          res <= cfg.tolerance) {
        return classify(tag, w_try, it + 1, res);
      }
      if (res < residual) {  // keep partial Newton progress
        w = w_try;
        residual = res;
      }
      since_newton_try = 0;
      window_best = residual;
    }
    if (since_newton_try == 1) window_best = residual;
    window_best = std::min(window_best, residual);
  }
  throw Error(ErrorCode::MaxIterations,
              "no convergence or diagnosed escape after " +
                  std::to_string(cfg.max_iterations) + " iterations");
}

Complex invert_halfplane(const ComplexFn& H, Complex alpha,
                         const SolverConfig& cfg, bool validate) {
  if (alpha.imag() < 0.0)
    return std::conj(invert_halfplane(H, std::conj(alpha), cfg, validate));
  if (validate) {
    for (Complex z : {Complex(0, 1), Complex(2, 1), Complex(-1, 3),
                      Complex(0.5, 0.1), Complex(-3, 0.2), Complex(0, 10)}) {
      if (H(z).imag() > z.imag() + 1e-9 * std::max(1.0, std::abs(z)))
        throw Error(ErrorCode::NotAdmissible, "Im H(z) > Im z at a sample");
    }
    const Complex a = H(Complex(0, 1e8)) / Complex(0, 1e8);
    if (!(a.real() > 1e-8))
      throw Error(ErrorCode::NotAdmissible, "lim H(iy)/(iy) not positive");
  }
  auto g = [&](Complex z) { return z + alpha - H(z); };
  const FixedPointResult r = denjoy_wolff(g, DomainTag::upper_halfplane, cfg);
  if (!r.interior) {
    if (alpha.imag() > 0.0)
      throw Error(ErrorCode::SolverFailure,
                  "interior inversion escaped to the boundary");
    return r.location;  // real alpha may have a real Denjoy-Wolff point
  }
  return r.location;
}

Complex invert_disk(const ComplexFn& Phi, Complex alpha,
                    const SolverConfig& cfg, bool validate) {
  if (std::abs(alpha) > 1.0)
    throw Error(ErrorCode::DomainMismatch, "alpha outside the closed disk");
  if (alpha == Complex{}) return {};
  bool admissible = true;
  if (validate) {
    for (int k = 0; k < 16; ++k) {
      const Complex z = std::polar(0.15 + 0.05 * k, 0.39 * k + 0.1);
      if (std::abs(Phi(z)) < std::abs(z) * (1.0 - 1e-9)) {
        admissible = false;
        break;
      }
    }
  }
  auto g = [&](Complex z) {
    if (std::abs(z) < 1e-100) z = Complex(1e-100, 0.0);
    return alpha * z / Phi(z);
  };
  try {
    const FixedPointResult r = denjoy_wolff(g, DomainTag::unit_disk, cfg);
    if (!r.interior) {
      if (std::abs(alpha) < 1.0)
        throw Error(ErrorCode::SolverFailure,
                    "interior inversion escaped to the boundary");
      return r.location;
    }
    return r.location;
  } catch (const Error&) {
    if (!admissible)
      throw Error(ErrorCode::NotAdmissible,
                  "|Phi(z)| >= |z| fails at a sample and the solve failed");
    throw;
  }
}

SlitPlaneMap make_slitplane_map(ComplexFn phi, double k) {
  SlitPlaneMap map;
  map.phi = phi;
  map.strip_lift = [phi](Complex z) {
    return strip_coordinate(phi(slit_coordinate(z)));
  };
  map.k = k;
  return map;
}

Complex strip_coordinate(Complex slit_point) { return std::log(-slit_point); }

Complex slit_coordinate(Complex strip_point) { return -std::exp(strip_point); }

Complex invert_slitplane(const SlitPlaneMap& map, Complex alpha,
                         const SolverConfig& cfg, bool validate) {
  // real-symmetric maps reflect: omega(conj alpha) = conj omega(alpha)
  if (alpha.imag() < 0.0)
    return std::conj(invert_slitplane(map, std::conj(alpha), cfg, validate));
  if (alpha.imag() == 0.0 && alpha.real() >= 0.0)
    throw Error(ErrorCode::DomainMismatch, "alpha on the cut [0,inf)");
  if (validate) {
    for (Complex z : {Complex(-1.0, 0.5), Complex(0.5, 2.0),
                      Complex(2.0, 1.0), Complex(-4.0, 3.0)}) {
      const Complex fz = map.strip_lift(z);
      const double tol = 1e-8 * std::max(1.0, std::abs(z));
      if (fz.imag() < z.imag() - tol ||
          fz.imag() > map.k * z.imag() + tol)
        throw Error(ErrorCode::NotAdmissible,
                    "strip lift violates Im z <= Im f <= k Im z");
      if (std::abs(map.strip_lift(Complex(z.real(), 0.0)).imag()) > 1e-9)
        throw Error(ErrorCode::NotAdmissible, "lift not real on the axis");
    }
  }
  const double tau = M_PI / (map.k + M_PI);
  const Complex va = strip_coordinate(alpha);
  auto g = [&](Complex z) { return z - tau * (map.strip_lift(z) - va); };
  const FixedPointResult r = denjoy_wolff(g, DomainTag::strip, cfg);
  if (!r.interior)
    throw Error(ErrorCode::SolverFailure, "strip iteration escaped");
  return slit_coordinate(r.location);
}

}  // namespace freeconv
