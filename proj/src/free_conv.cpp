#include "freeconv/free_conv.hpp"

#include <cmath>

namespace freeconv {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

TransformHandle id_shift_handle(double a, std::string note) {
  return TransformHandle(TransformKind::composed, DomainTag::upper_halfplane,
                         [a](Complex z) { return z - a; }, std::move(note));
}

}  // namespace

const char* atom_rule_name(AtomRule r) {
  switch (r) {
    case AtomRule::sum_rule: return "sum_rule";
    case AtomRule::product_rule: return "product_rule";
    case AtomRule::zero_rule: return "zero_rule";
    case AtomRule::power_rule: return "power_rule";
    case AtomRule::jc_detected: return "jc_detected";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// free additive convolution
// ---------------------------------------------------------------------------

SubordinationPair free_add_transforms(const ComplexFn& F1, const ComplexFn& F2,
                                      const SolverConfig& cfg,
                                      std::optional<double> shift1,
                                      std::optional<double> shift2) {
  auto stats = std::make_shared<ResidualStats>();

  if (shift1 || shift2) {
    // delta_a factor: F_{mu#nu}(z) = F_other(z - a).  The point-mass slot
    // carries the composed subordination F_other(z-a)+a; the other slot is
    // the plain shift z-a, so that F_1(omega_1) = F_2(omega_2) holds.
    const bool first = shift1.has_value();
    const double a = first ? *shift1 : *shift2;
    const ComplexFn other = first ? F2 : F1;
    TransformHandle w_shift = id_shift_handle(a, "subordination, shift");
    TransformHandle w_composed(
        TransformKind::composed, DomainTag::upper_halfplane,
        [other, a](Complex z) { return other(z - a) + a; },
        "subordination, point-mass factor");
    TransformHandle conv(TransformKind::F, DomainTag::upper_halfplane,
                         [other, a](Complex z) { return other(z - a); },
                         "F of free additive convolution (shifted factor)",
                         false, stats);
    SubordinationPair pair;
    pair.omega1 = first ? w_composed : w_shift;
    pair.omega2 = first ? w_shift : w_composed;
    pair.convolved = conv;
    pair.stats = stats;
    pair.residual_probe = [F1, F2, o1 = pair.omega1, o2 = pair.omega2,
                           conv](Complex z) {
      const Complex lhs = F1(o1(z));
      const Complex rhs = F2(o2(z));
      return std::max(std::abs(lhs - rhs),
                      std::abs(o1(z) + o2(z) - z - conv(z)));
    };
    return pair;
  }

  auto solve_omega1 = [F1, F2, cfg, stats](Complex z) -> Complex {
    const bool lower = z.imag() < 0.0;
    const Complex zz = lower ? std::conj(z) : z;
    auto f_z = [&](Complex w) {
      const Complex u = F1(w) - w;
      return F2(u + zz) - u;
    };
    const FixedPointResult r =
        denjoy_wolff(f_z, DomainTag::upper_halfplane, cfg, zz + kI);
    if (!r.interior)
      throw Error(ErrorCode::SolverFailure,
                  "additive subordination escaped at an interior point");
    stats->record(r.residual);
    return lower ? std::conj(r.location) : r.location;
  };

  TransformHandle omega1(TransformKind::composed, DomainTag::upper_halfplane,
                         solve_omega1, "omega_1 of free additive convolution",
                         /*memoize=*/true, stats);
  TransformHandle omega2(TransformKind::composed, DomainTag::upper_halfplane,
                         [F1, omega1](Complex z) {
                           const Complex w = omega1(z);
                           return F1(w) + z - w;
                         },
                         "omega_2 of free additive convolution", false, stats);
  TransformHandle conv(TransformKind::F, DomainTag::upper_halfplane,
                       [F1, omega1](Complex z) { return F1(omega1(z)); },
                       "F of free additive convolution", false, stats);
  SubordinationPair pair;
  pair.omega1 = omega1;
  pair.omega2 = omega2;
  pair.convolved = conv;
  pair.stats = stats;
  pair.residual_probe = [F1, F2, omega1, omega2, conv](Complex z) {
    const Complex lhs = F1(omega1(z));
    const Complex rhs = F2(omega2(z));
    return std::max(std::abs(lhs - rhs),
                    std::abs(omega1(z) + omega2(z) - z - conv(z)));
  };
  return pair;
}

SubordinationPair free_add(const Measure& mu, const Measure& nu,
                           const SolverConfig& cfg) {
  if (mu.domain() == Domain::circle || nu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "boxplus needs line measures");
  std::optional<double> s1, s2;
  if (mu.is_point_mass()) s1 = mu.atoms()[0].position;
  if (nu.is_point_mass()) s2 = nu.atoms()[0].position;
  if (s1 && s2) {
    // delta_{a+b}: handle both shifts exactly
    const double a = *s1, b = *s2;
    auto stats = std::make_shared<ResidualStats>();
    SubordinationPair pair;
    pair.omega1 = id_shift_handle(b, "subordination, point mass");
    pair.omega2 = id_shift_handle(a, "subordination, point mass");
    pair.convolved = TransformHandle(
        TransformKind::F, DomainTag::upper_halfplane,
        [a, b](Complex z) { return z - a - b; }, "F of delta_{a+b}", false,
        stats);
    pair.stats = stats;
    pair.residual_probe = [](Complex) { return 0.0; };
    return pair;
  }
  return free_add_transforms([mu](Complex w) { return f_transform(mu, w); },
                             [nu](Complex w) { return f_transform(nu, w); },
                             cfg, s1, s2);
}

// ---------------------------------------------------------------------------
// free multiplicative convolution, half-line
// ---------------------------------------------------------------------------

namespace {

// eta(z)/z with the removable singularity at 0 patched by the first moment.
// The direct quotient is cancellation-free for the finite transform sums, so
// the patch is needed only essentially at z = 0.
Complex eta_over_id(const ComplexFn& eta, Complex eta_prime0, Complex z) {
  if (std::abs(z) < 1e-150) return eta_prime0;
  return eta(z) / z;
}

}  // namespace

SubordinationPair free_mult_halfline(const Measure& mu, const Measure& nu,
                                     const SolverConfig& cfg) {
  if (mu.domain() != Domain::halfline || nu.domain() != Domain::halfline)
    throw Error(ErrorCode::DomainMismatch, "boxtimes here needs [0,inf) measures");
  auto stats = std::make_shared<ResidualStats>();

  const bool mu_zero = mu.is_point_mass() && mu.atoms()[0].position == 0.0;
  const bool nu_zero = nu.is_point_mass() && nu.atoms()[0].position == 0.0;
  if (mu_zero || nu_zero) {
    SubordinationPair pair;
    auto zero = [](Complex) { return Complex{}; };
    pair.omega1 = TransformHandle(TransformKind::composed,
                                  DomainTag::slit_plane, zero, "omega_1 = 0");
    pair.omega2 = TransformHandle(TransformKind::composed,
                                  DomainTag::slit_plane, zero, "omega_2 = 0");
    pair.convolved = TransformHandle(TransformKind::eta, DomainTag::slit_plane,
                                     zero, "eta of delta_0", false, stats);
    pair.stats = stats;
    pair.residual_probe = [](Complex) { return 0.0; };
    return pair;
  }

  auto eta1 = [mu](Complex z) { return eta_transform(mu, z); };
  auto eta2 = [nu](Complex z) { return eta_transform(nu, z); };

  // point mass delta_a: omega_1(z) = eta_nu(a z)/a, omega_2(z) = a z
  std::optional<double> pm1, pm2;
  if (mu.is_point_mass()) pm1 = mu.atoms()[0].position;
  if (nu.is_point_mass()) pm2 = nu.atoms()[0].position;
  if (pm1 || pm2) {
    // delta_a factor: eta_3(z) = eta_other(a z); the point-mass slot carries
    // eta_other(a z)/a, the other slot the dilation a z.
    const bool first = pm1.has_value();
    const double a = first ? *pm1 : *pm2;
    const ComplexFn other = first ? ComplexFn(eta2) : ComplexFn(eta1);
    TransformHandle w_dil(TransformKind::composed, DomainTag::slit_plane,
                          [a](Complex z) { return a * z; },
                          "subordination, dilation");
    TransformHandle w_composed(
        TransformKind::composed, DomainTag::slit_plane,
        [other, a](Complex z) { return other(a * z) / a; },
        "subordination, point-mass factor");
    TransformHandle conv(TransformKind::eta, DomainTag::slit_plane,
                         [other, a](Complex z) { return other(a * z); },
                         "eta of free multiplicative convolution (point mass)",
                         false, stats);
    SubordinationPair pair;
    pair.omega1 = first ? w_composed : w_dil;
    pair.omega2 = first ? w_dil : w_composed;
    pair.convolved = conv;
    pair.stats = stats;
    pair.residual_probe = [eta1, eta2, o1 = pair.omega1, o2 = pair.omega2,
                           conv](Complex z) {
      const Complex lhs = eta1(o1(z));
      return std::max(std::abs(lhs - eta2(o2(z))),
                      std::abs(lhs - o1(z) * o2(z) / z));
    };
    return pair;
  }

  // h(z) = omega_1(z)/z is the Denjoy-Wolff point of w -> h2(z*h1(z*w)).
  auto solve_h = [eta1, eta2, cfg, stats](Complex z) -> Complex {
    if (z.imag() == 0.0 && z.real() >= 0.0)
      throw Error(ErrorCode::DomainMismatch, "point on the cut [0,inf)");
    auto h1 = [&](Complex w) { return eta1(w) / w; };
    auto h2 = [&](Complex w) { return eta2(w) / w; };
    if (z.imag() == 0.0 && z.real() < 0.0) {
      // real fixed point of the real-analytic restriction
      auto f_x = [&](Complex w) { return h2(z * h1(z * w)); };
      double w = 1.0, residual = 1.0;
      for (int it = 0; it < cfg.max_iterations; ++it) {
        const double next = f_x(Complex(w, 0.0)).real();
        residual = std::abs(next - w);
        w = next;
        if (residual <= cfg.tolerance) break;
        if (it % 40 == 39) {  // Newton acceleration on the real axis
          const double h = 1e-7 * std::max(1.0, std::abs(w));
          const double fp = (f_x(Complex(w + h, 0.0)).real() -
                             f_x(Complex(w - h, 0.0)).real()) /
                            (2.0 * h);
          if (std::abs(1.0 - fp) > 1e-12) {
            const double cand = w - (w - f_x(Complex(w, 0.0)).real()) / (1.0 - fp);
            if (cand > 0.0 &&
                std::abs(f_x(Complex(cand, 0.0)).real() - cand) < residual)
              w = cand;
          }
        }
      }
      if (residual > 1e3 * cfg.tolerance)
        throw Error(ErrorCode::SolverFailure,
                    "real-axis multiplicative subordination stalled");
      stats->record(residual);
      return Complex(w, 0.0);
    }
    const bool lower = z.imag() < 0.0;
    const Complex zz = lower ? std::conj(z) : z;
    auto f_z = [&](Complex w) { return h2(zz * h1(zz * w)); };
    const FixedPointResult r =
        denjoy_wolff(f_z, DomainTag::upper_halfplane, cfg);
    if (!r.interior)
      throw Error(ErrorCode::SolverFailure,
                  "multiplicative subordination escaped");
    stats->record(r.residual);
    return lower ? std::conj(r.location) : r.location;
  };

  TransformHandle omega1(TransformKind::composed, DomainTag::slit_plane,
                         [solve_h](Complex z) { return z * solve_h(z); },
                         "omega_1 of free multiplicative convolution",
                         /*memoize=*/true, stats);
  TransformHandle omega2(TransformKind::composed, DomainTag::slit_plane,
                         [eta1, omega1](Complex z) {
                           const Complex w = omega1(z);
                           return z * eta1(w) / w;
                         },
                         "omega_2 of free multiplicative convolution", false,
                         stats);
  TransformHandle conv(TransformKind::eta, DomainTag::slit_plane,
                       [eta1, omega1](Complex z) { return eta1(omega1(z)); },
                       "eta of free multiplicative convolution", false, stats);
  SubordinationPair pair;
  pair.omega1 = omega1;
  pair.omega2 = omega2;
  pair.convolved = conv;
  pair.stats = stats;
  pair.residual_probe = [eta1, eta2, omega1, omega2](Complex z) {
    const Complex lhs = eta1(omega1(z));
    return std::max(std::abs(lhs - eta2(omega2(z))),
                    std::abs(lhs - omega1(z) * omega2(z) / z));
  };
  return pair;
}

// ---------------------------------------------------------------------------
// free multiplicative convolution, circle
// ---------------------------------------------------------------------------

SubordinationPair free_mult_circle(const Measure& mu, const Measure& nu,
                                   const SolverConfig& cfg) {
  if (mu.domain() != Domain::circle || nu.domain() != Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "boxtimes here needs circle measures");
  auto stats = std::make_shared<ResidualStats>();

  const Complex m1 = mu.first_moment();
  const Complex m2 = nu.first_moment();
  const bool z1 = std::abs(m1) < 1e-12;
  const bool z2 = std::abs(m2) < 1e-12;

  auto haar_pair = [&stats]() {
    SubordinationPair pair;
    auto zero = [](Complex) { return Complex{}; };
    pair.omega1 = TransformHandle(TransformKind::composed,
                                  DomainTag::unit_disk, zero, "omega_1 = 0");
    pair.omega2 = TransformHandle(TransformKind::composed,
                                  DomainTag::unit_disk, zero, "omega_2 = 0");
    pair.convolved =
        TransformHandle(TransformKind::eta, DomainTag::unit_disk, zero,
                        "eta of the Haar measure", false, stats);
    pair.stats = stats;
    pair.residual_probe = [](Complex) { return 0.0; };
    return pair;
  };

  // a Haar factor absorbs; both first moments vanishing gives Haar too.
  // Quadrature Haars have |eta(z)| ~ |z|^n, so sample well inside the disk.
  auto is_haar = [](const Measure& m) {
    for (int k = 0; k < 8; ++k)
      if (std::abs(eta_transform(m, std::polar(0.7, 0.7 * k))) > 1e-8)
        return false;
    return true;
  };
  if (is_haar(mu) || is_haar(nu)) return haar_pair();
  if (z1 && z2) return haar_pair();

  auto eta_mu_fn = [mu](Complex z) { return eta_transform(mu, z); };
  auto eta_nu_fn = [nu](Complex z) { return eta_transform(nu, z); };

  // rotation factor delta_{e^{i a}}: eta(z) = eta_other(e^{i a} z)
  auto rotation_pair = [&](double angle, const ComplexFn& other,
                           bool first) -> SubordinationPair {
    const Complex w = std::polar(1.0, angle);
    TransformHandle w_rot(TransformKind::composed, DomainTag::unit_disk,
                          [w](Complex z) { return w * z; },
                          "subordination, rotation");
    TransformHandle w_composed(
        TransformKind::composed, DomainTag::unit_disk,
        [other, w](Complex z) { return other(w * z) / w; },
        "subordination, point-mass factor");
    TransformHandle conv(TransformKind::eta, DomainTag::unit_disk,
                         [other, w](Complex z) { return other(w * z); },
                         "eta of free multiplicative convolution (rotation)",
                         false, stats);
    SubordinationPair pair;
    pair.omega1 = first ? w_composed : w_rot;
    pair.omega2 = first ? w_rot : w_composed;
    pair.convolved = conv;
    pair.stats = stats;
    pair.residual_probe = [eta_mu_fn, eta_nu_fn, o1 = pair.omega1,
                           o2 = pair.omega2](Complex z) {
      if (std::abs(z) < 1e-14) return 0.0;
      const Complex lhs = eta_mu_fn(o1(z));
      return std::max(std::abs(lhs - eta_nu_fn(o2(z))),
                      std::abs(lhs - o1(z) * o2(z) / z));
    };
    return pair;
  };
  if (mu.is_point_mass())
    return rotation_pair(mu.atoms()[0].position, eta_nu_fn, true);
  if (nu.is_point_mass())
    return rotation_pair(nu.atoms()[0].position, eta_mu_fn, false);

  // when one first moment vanishes it must sit in the inner slot of
  // f_z(w) = w eta_in-role... the fixed point exists whenever eta_1'(0) may
  // vanish but eta_2'(0) != 0 is not required; swap so that the solved
  // omega matches eta_mu when possible.
  const bool swap = z2 && !z1;  // put the zero-moment factor first
  const ComplexFn e1 = swap ? ComplexFn(eta_nu_fn) : ComplexFn(eta_mu_fn);
  const ComplexFn e2 = swap ? ComplexFn(eta_mu_fn) : ComplexFn(eta_nu_fn);
  const Complex d1 = swap ? m2 : m1;

  auto solve_omega = [e1, e2, d1, cfg, stats](Complex z) -> Complex {
    if (std::abs(z) < 1e-14) return Complex{};
    // f_z(w) = w * eta2(z eta1(w)/w) / eta1(w) = eta2(z r1)/r1, r1 = eta1(w)/w
    auto f_z = [&](Complex w) {
      const Complex r1 = eta_over_id(e1, d1, w);
      return e2(z * r1) / r1;
    };
    const FixedPointResult r = denjoy_wolff(f_z, DomainTag::unit_disk, cfg);
    if (!r.interior)
      throw Error(ErrorCode::SolverFailure, "disk subordination escaped");
    stats->record(r.residual);
    return r.location;
  };

  TransformHandle omega_solved(TransformKind::composed, DomainTag::unit_disk,
                               solve_omega,
                               "omega of circle free multiplicative convolution",
                               /*memoize=*/true, stats);
  TransformHandle omega_other(
      TransformKind::composed, DomainTag::unit_disk,
      [e1, d1, omega_solved](Complex z) {
        const Complex w = omega_solved(z);
        return z * eta_over_id(e1, d1, w);
      },
      "omega-tilde of circle free multiplicative convolution", false, stats);
  TransformHandle conv(TransformKind::eta, DomainTag::unit_disk,
                       [e1, omega_solved](Complex z) {
                         return e1(omega_solved(z));
                       },
                       "eta of circle free multiplicative convolution", false,
                       stats);
  SubordinationPair pair;
  pair.omega1 = swap ? omega_other : omega_solved;
  pair.omega2 = swap ? omega_solved : omega_other;
  pair.convolved = conv;
  pair.stats = stats;
  pair.residual_probe = [eta_mu_fn, eta_nu_fn, o1 = pair.omega1,
                         o2 = pair.omega2](Complex z) {
    if (std::abs(z) < 1e-14) return 0.0;
    const Complex lhs = eta_mu_fn(o1(z));
    return std::max(std::abs(lhs - eta_nu_fn(o2(z))),
                    std::abs(lhs - o1(z) * o2(z) / z));
  };
  return pair;
}

// ---------------------------------------------------------------------------
// two-atom closed forms
// ---------------------------------------------------------------------------

TwoAtomAddOracle two_atom_add_oracle(double s, double u, double t, double v) {
  if (!(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0))
    throw Error(ErrorCode::BadWeights, "weights must lie in (0,1)");
  if (!(u > 0.0 && v > 0.0))
    throw Error(ErrorCode::BadWeights, "atom separations must be positive");

  const double inner_rad = std::sqrt(t * s * (1.0 - t) * (1.0 - s));
  const double base = (u - v) * (u - v) + 4.0 * u * v * (t + s - 2.0 * s * t);
  const double ip = base + 8.0 * u * v * inner_rad;
  const double im = base - 8.0 * u * v * inner_rad;
  if (im < -1e-12 * std::max(1.0, base))
    throw Error(ErrorCode::BadWeights, "inner radical negative");
  std::array<double, 4> roots = {
      0.5 * (u + v + std::sqrt(std::max(0.0, ip))),
      0.5 * (u + v - std::sqrt(std::max(0.0, ip))),
      0.5 * (u + v + std::sqrt(std::max(0.0, im))),
      0.5 * (u + v - std::sqrt(std::max(0.0, im)))};
  std::sort(roots.begin(), roots.end());

  auto sqrt_branch = [roots](Complex z) {
    return upper_halfplane_sqrt_poly4(std::span<const double>(roots), z);
  };
  auto omega1 = [s, u, t, v, sqrt_branch](Complex z) {
    const Complex N =
        z * z - z * (u * (1.0 - 2.0 * s) + v) - u * v * (s + t - 1.0);
    const Complex D = z - t * v - (1.0 - s) * u;
    const Complex sig = sqrt_branch(z);
    if (std::abs(N + sig) >= std::abs(N - sig)) return (N + sig) / (2.0 * D);
    // rationalized form via the root product s u z (z - v)/D
    return 2.0 * s * u * z * (z - v) / (N - sig);
  };
  auto G = [s, u, omega1](Complex z) {
    const Complex w = omega1(z);
    return s / w + (1.0 - s) / (w - u);
  };
  auto density = [G, roots](double x) {
    for (double r : roots)
      if (std::abs(x - r) < 1e-12) return 0.0;
    const double d = -G(Complex(x, 0.0)).imag() / M_PI;
    return d > 0.0 ? d : 0.0;
  };
  return {roots, G, omega1, density};
}

TwoAtomMultOracle two_atom_mult_oracle(double s, double u, double t, double v) {
  if (!(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0))
    throw Error(ErrorCode::BadWeights, "weights must lie in (0,1)");
  if (!(u > 0.0 && v > 0.0))
    throw Error(ErrorCode::BadWeights, "atom positions must be positive");
  if (std::abs(u - 1.0) < 1e-12 || std::abs(v - 1.0) < 1e-12)
    throw Error(ErrorCode::BadWeights,
                "second atom must differ from the one at 1");

  const double A = u * u * v * v;
  const double D =
      -2.0 * ((u + v) +
              (u - 1.0) * (v - 1.0) * (t * (1.0 - s) + s * (1.0 - t)));
  const double B = u * v * D;
  const double C = (u * u + v * v) * (t + s - 1.0) * (t + s - 1.0) +
                   2.0 * (s * (1.0 - s) + t * (1.0 - t)) *
                       (u + v - 2.0 * u * v + u * u * v + u * v * v) +
                   4.0 * u * v + (u * u * v * v + 1.0) * (s - t) * (s - t);

  SlitPlaneSqrt sigma({A, B, C, D, 1.0});
  auto omega1 = [s, u, t, v, sigma](Complex z) {
    const Complex M =
        z * z * u * v + z * ((v - u) * (s + t - 1.0) + (t - s) * (u * v - 1.0)) -
        1.0;
    const Complex a =
        u * z * (1.0 - t + t * v) - (1.0 - s + s * u);
    const Complex sig = sigma(z);
    if (std::abs(M - sig) >= std::abs(M + sig)) return (M - sig) / (2.0 * a);
    const Complex c = z * (v * z * (s + (1.0 - s) * u) -
                           (v + t * (1.0 - v)));
    return 2.0 * c / (M + sig);
  };
  auto eta = [s, u, omega1](Complex z) {
    const Complex w = omega1(z);
    return w * (s + (1.0 - s) * u - u * w) /
           (1.0 - w * (s * u + 1.0 - s));
  };
  return {A, B, C, D, eta, omega1};
}

// ---------------------------------------------------------------------------
// atom rules
// ---------------------------------------------------------------------------

AtomReport atoms_free_add(const Measure& mu, const Measure& nu) {
  AtomReport report;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      const double m = a.mass + b.mass - 1.0;
      if (m > 0.0)
        report.entries.push_back({a.position + b.position, m,
                                  AtomRule::sum_rule});
    }
  }
  return report;
}

AtomReport atoms_free_mult(const Measure& mu, const Measure& nu) {
  if (mu.domain() == Domain::real || nu.domain() == Domain::real)
    throw Error(ErrorCode::DomainMismatch,
                "multiplicative atom rules need half-line or circle measures");
  AtomReport report;
  if (mu.domain() == Domain::circle) {
    // circle rule read as the angle-sum analogue of the half-line rule
    for (const auto& a : mu.atoms()) {
      for (const auto& b : nu.atoms()) {
        const double m = a.mass + b.mass - 1.0;
        if (m > 0.0) {
          double ang = std::fmod(a.position + b.position, kTwoPi);
          if (ang < 0.0) ang += kTwoPi;
          report.entries.push_back({ang, m, AtomRule::product_rule});
        }
      }
    }
    return report;
  }
  const double zero_mass =
      std::max(mu.atom_mass_at(0.0), nu.atom_mass_at(0.0));
  if (zero_mass > 0.0)
    report.entries.push_back({0.0, zero_mass, AtomRule::zero_rule});
  for (const auto& a : mu.atoms()) {
    if (a.position == 0.0) continue;
    for (const auto& b : nu.atoms()) {
      if (b.position == 0.0) continue;
      const double m = a.mass + b.mass - 1.0;
      if (m > 0.0)
        report.entries.push_back({a.position * b.position, m,
                                  AtomRule::product_rule});
    }
  }
  return report;
}

}  // namespace freeconv
