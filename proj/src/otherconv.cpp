#include "freeconv/otherconv.hpp"

#include <cmath>
#include <limits>

namespace freeconv {

TransformHandle boolean_add_transforms(const ComplexFn& F1,
                                       const ComplexFn& F2) {
  return TransformHandle(TransformKind::F, DomainTag::upper_halfplane,
                         [F1, F2](Complex z) { return F1(z) + F2(z) - z; },
                         "F of boolean additive convolution");
}

TransformHandle boolean_add(const Measure& mu, const Measure& nu) {
  if (mu.domain() == Domain::circle || nu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "boolean addition needs line measures");
  return boolean_add_transforms(
      [mu](Complex z) { return f_transform(mu, z); },
      [nu](Complex z) { return f_transform(nu, z); });
}

TransformHandle boolean_mult_circle(const Measure& mu, const Measure& nu) {
  if (mu.domain() != Domain::circle || nu.domain() != Domain::circle)
    throw Error(ErrorCode::DomainMismatch,
                "boolean multiplication needs circle measures");
  return TransformHandle(
      TransformKind::eta, DomainTag::unit_disk,
      [mu, nu](Complex z) {
        if (std::abs(z) < 1e-150) return Complex{};
        return eta_transform(mu, z) * eta_transform(nu, z) / z;
      },
      "eta of boolean multiplicative convolution");
}

TransformHandle monotone_add(const Measure& mu, const Measure& nu) {
  if (mu.domain() == Domain::circle || nu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "monotone addition needs line measures");
  return TransformHandle(
      TransformKind::F, DomainTag::upper_halfplane,
      [mu, nu](Complex z) { return f_transform(mu, f_transform(nu, z)); },
      "F of monotone additive convolution");
}

TransformHandle monotone_mult_halfline(const Measure& mu, const Measure& nu) {
  if (mu.domain() != Domain::halfline || nu.domain() != Domain::halfline)
    throw Error(ErrorCode::DomainMismatch,
                "monotone multiplication needs half-line measures");
  return TransformHandle(
      TransformKind::eta, DomainTag::slit_plane,
      [mu, nu](Complex z) { return eta_transform(mu, eta_transform(nu, z)); },
      "eta of monotone multiplicative convolution");
}

AbelEstimate abel_estimate(const ComplexFn& F, const DomainPoint& z,
                           long n_max) {
  if (z.tag != DomainTag::upper_halfplane)
    throw Error(ErrorCode::DomainMismatch, "Abel estimate needs a C+ point");
  if (n_max < 2) throw Error(ErrorCode::BadParameters, "n_max too small");

  // transport to the right half-plane
  auto f = [&F](Complex w) { return -kI * F(kI * w); };
  const Complex w0 = -kI * z.value;

  Complex base = Complex(1.0, 0.0);      // z_n, orbit of 1
  Complex base_next = f(base);           // z_{n+1}
  Complex orbit = w0;                    // f^n(w0)
  Complex orbit_next = f(w0);            // f^{n+1}(w0): h_n at f(w0)

  Complex h_prev{};
  Complex best_value{}, best_next{};
  long best_n = -1;
  double best_q = 1.0;
  Complex last_value{}, last_next{};
  double last_q = 1.0;
  bool have_prev = false;
  double mid_diff = std::numeric_limits<double>::infinity();
  double final_diff = std::numeric_limits<double>::infinity();
  long growth_streak = 0;
  double prev_diff = std::numeric_limits<double>::infinity();

  for (long n = 0; n < n_max; ++n) {
    const Complex step = base_next - base;
    if (step == Complex{})
      throw Error(ErrorCode::NonConvergent, "base orbit reached a fixed point");
    const Complex h_n = (orbit - base) / step;
    const Complex h_n_at_f = (orbit_next - base) / step;
    const double q = std::abs(step / (base_next + std::conj(base)));
    last_value = h_n;
    last_next = h_n_at_f;
    last_q = q;

    if (have_prev) {
      const double diff = std::abs(h_n - h_prev);
      if (diff < 1e-8) {  // keep the largest stabilized n
        best_value = h_n;
        best_next = h_n_at_f;
        best_n = n;
        best_q = q;
      }
      growth_streak = (diff > prev_diff * (1.0 + 1e-12)) ? growth_streak + 1 : 0;
      if (growth_streak > 50 && diff > 1.0)
        throw Error(ErrorCode::NonConvergent,
                    "Abel estimates oscillate with growing increments");
      prev_diff = diff;
      if (n == n_max / 2) mid_diff = diff;
      final_diff = diff;
    }
    h_prev = h_n;
    have_prev = true;

    if (n + 1 < n_max) {
      base = base_next;
      base_next = f(base_next);
      orbit = orbit_next;
      orbit_next = f(orbit_next);
      if (!std::isfinite(base_next.real()) || !std::isfinite(orbit_next.real()))
        throw Error(ErrorCode::NonConvergent, "orbit left the domain");
    }
  }
  AbelEstimate out;
  if (best_n >= 0) {
    out.value = best_value;
    out.n_used = best_n;
    out.residual = std::abs(best_next - best_value - 1.0);
    out.last_q = best_q;
    return out;
  }
  if (!(final_diff < mid_diff))  // not even drifting toward a limit
    throw Error(ErrorCode::NonConvergent,
                "estimates did not stabilize and are not contracting");
  out.value = last_value;
  out.n_used = n_max - 1;
  out.residual = std::abs(last_next - last_value - 1.0);
  out.last_q = last_q;
  return out;
}

}  // namespace freeconv
