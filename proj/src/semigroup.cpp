#include "freeconv/semigroup.hpp"

#include <cmath>

namespace freeconv {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_exponent(double t) {
  if (!(t >= 1.0)) throw Error(ErrorCode::BadExponent, "need t >= 1");
  if (t > 1.0 && t < 1.0 + 1e-6)
    throw Error(ErrorCode::BadExponent,
                "t this close to 1 loses all precision in (t omega - z)/(t-1)");
}

PowerResult identity_power(TransformHandle transformed, std::string note) {
  PowerResult out;
  out.t = 1.0;
  out.omega_t = TransformHandle(TransformKind::composed, transformed.domain(),
                                [](Complex z) { return z; }, "identity");
  out.transformed = std::move(transformed);
  out.branch_note = std::move(note);
  out.stats = std::make_shared<ResidualStats>();
  return out;
}

// winding number of eta along |z| = r; equals the zero count inside
int zero_count_in_disk(const ComplexFn& eta, double r, int samples = 4096) {
  double total = 0.0;
  Complex prev = eta(Complex(r, 0.0));
  for (int k = 1; k <= samples; ++k) {
    const Complex w = eta(std::polar(r, kTwoPi * k / samples));
    if (w == Complex{} || prev == Complex{}) return -1;
    total += std::arg(w / prev);
    prev = w;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace

// ---------------------------------------------------------------------------
// additive powers and Psi_t
// ---------------------------------------------------------------------------

PowerResult free_add_power(const Measure& mu, double t,
                           const SolverConfig& cfg) {
  if (mu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "additive powers need line measures");
  check_exponent(t);
  if (t == 1.0) return identity_power(f_handle(mu), "t = 1");

  auto F = [mu](Complex z) { return f_transform(mu, z); };
  auto H = [F, t](Complex z) { return t * z + (1.0 - t) * F(z); };
  auto stats = std::make_shared<ResidualStats>();

  TransformHandle omega_t(
      TransformKind::composed, DomainTag::upper_halfplane,
      [H, cfg, stats](Complex z) {
        const Complex w = invert_halfplane(H, z, cfg, /*validate=*/false);
        stats->record(std::abs(H(w) - z));
        return w;
      },
      "omega_t of the additive power", /*memoize=*/true, stats);
  TransformHandle F_t(TransformKind::F, DomainTag::upper_halfplane,
                      [omega_t, t](Complex z) {
                        return (t * omega_t(z) - z) / (t - 1.0);
                      },
                      "F of the additive power", false, stats);
  PowerResult out;
  out.t = t;
  out.omega_t = omega_t;
  out.transformed = F_t;
  out.branch_note = "";
  out.stats = stats;
  return out;
}

AtomReport atoms_add_power(const Measure& mu, double t) {
  if (!(t >= 1.0)) throw Error(ErrorCode::BadExponent, "need t >= 1");
  AtomReport report;
  const double threshold = (t - 1.0) / t;
  for (const auto& a : mu.atoms()) {
    if (a.mass > threshold)
      report.entries.push_back(
          {t * a.position, t * a.mass - (t - 1.0), AtomRule::power_rule});
  }
  return report;
}

TransformHandle boolean_to_free_add_transforms(const ComplexFn& F, double t,
                                               const SolverConfig& cfg,
                                               std::string label) {
  if (!(t > 1.0)) throw Error(ErrorCode::BadExponent, "Psi_t needs t > 1");
  auto H = [F, t](Complex z) { return t * z + (1.0 - t) * F(z); };
  std::string provenance = "F of Psi_t image (t = " + std::to_string(t) + ")";
  if (t == 2.0) provenance += ", the Bercovici-Pata bijection";
  if (!label.empty()) provenance += ", " + label;
  return TransformHandle(TransformKind::F, DomainTag::upper_halfplane,
                         [H, cfg](Complex z) {
                           return invert_halfplane(H, z, cfg,
                                                   /*validate=*/false);
                         },
                         provenance, /*memoize=*/true);
}

TransformHandle boolean_to_free_add(const Measure& mu, double t,
                                    const SolverConfig& cfg) {
  if (mu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "Psi_t here needs a line measure");
  return boolean_to_free_add_transforms(
      [mu](Complex z) { return f_transform(mu, z); }, t, cfg);
}

// ---------------------------------------------------------------------------
// multiplicative powers
// ---------------------------------------------------------------------------

namespace {

// Phi_t(z) = z (z/eta(z))^{t-1} on the disk, the fractional power anchored at
// the principal log of 1/eta'(0); returns the inverted eta-power machinery.
struct DiskPhi {
  ComplexFn eta;
  Complex eta_prime0;
  double t;

  Complex log_over(Complex z) const {
    auto g = [this](Complex w) {
      if (std::abs(w) < 1e-150) return 1.0 / eta_prime0;
      return w / eta(w);
    };
    return radial_log(g, 1.0 / eta_prime0, z);
  }
  Complex operator()(Complex z) const {
    if (std::abs(z) < 1e-150) return Complex{};
    return z * std::exp((t - 1.0) * log_over(z));
  }
};

PowerResult mult_power_circle_from_eta(const ComplexFn& eta,
                                       Complex eta_prime0, double t,
                                       std::string note,
                                       const SolverConfig& cfg) {
  auto stats = std::make_shared<ResidualStats>();
  DiskPhi phi{eta, eta_prime0, t};
  TransformHandle omega_t(
      TransformKind::composed, DomainTag::unit_disk,
      [phi, cfg, stats](Complex z) {
        const Complex w = invert_disk(phi, z, cfg, /*validate=*/false);
        stats->record(std::abs(phi(w) - z));
        return w;
      },
      "omega_t of the circle multiplicative power", /*memoize=*/true, stats);
  TransformHandle eta_t(TransformKind::eta, DomainTag::unit_disk,
                        [eta, omega_t](Complex z) { return eta(omega_t(z)); },
                        "eta of the circle multiplicative power", false, stats);
  PowerResult out;
  out.t = t;
  out.omega_t = omega_t;
  out.transformed = eta_t;
  out.branch_note = std::move(note);
  out.stats = stats;
  return out;
}

PowerResult haar_power(double t) {
  PowerResult out;
  out.t = t;
  auto zero = [](Complex) { return Complex{}; };
  out.omega_t = TransformHandle(TransformKind::composed, DomainTag::unit_disk,
                                zero, "omega_t = 0 (Haar)");
  out.transformed = TransformHandle(TransformKind::eta, DomainTag::unit_disk,
                                    zero, "eta of the Haar measure");
  out.branch_note = "Haar measure is absorbing; eta = 0";
  out.stats = std::make_shared<ResidualStats>();
  return out;
}

}  // namespace

PowerResult free_mult_power_circle(const Measure& mu, double t,
                                   const SolverConfig& cfg) {
  if (mu.domain() != Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "circle powers need circle measures");
  check_exponent(t);

  const Complex m1 = mu.first_moment();
  if (std::abs(m1) < 1e-12) {
    if (t >= 2.0 - 1e-12) return haar_power(t);
    throw Error(ErrorCode::ZeroFirstMoment,
                "zero first moment: powers are defined only for t >= 2");
  }
  if (t == 1.0) return identity_power(eta_handle(mu), "t = 1");

  auto eta = [mu](Complex z) { return eta_transform(mu, z); };
  const int zeros = zero_count_in_disk(eta, 0.99);
  if (zeros != 1) {
    // eta vanishes away from 0; mu boxtimes mu is free of such zeros, so
    // route t >= 2 through it
    if (t < 2.0 - 1e-12)
      throw Error(ErrorCode::ZeroOfEta,
                  "eta vanishes on D\\{0}; need t >= 2 to route via mu^2");
    SubordinationPair sq = free_mult_circle(mu, mu, cfg);
    if (t == 2.0) {
      PowerResult out;
      out.t = t;
      out.omega_t = sq.omega1;  // omega of one square factor
      out.transformed = sq.convolved;
      out.branch_note = "routed through mu boxtimes mu at t = 2";
      out.stats = sq.stats;
      return out;
    }
    TransformHandle eta_sq = sq.convolved;
    PowerResult inner = mult_power_circle_from_eta(
        [eta_sq](Complex z) { return eta_sq(z); }, m1 * m1, t / 2.0,
        "routed through (mu boxtimes mu)^{t/2}; inner log anchored at the "
        "square's first moment",
        cfg);
    inner.t = t;
    return inner;
  }
  return mult_power_circle_from_eta(
      eta, m1, t,
      "log(z/eta) anchored at the principal log of 1/eta'(0)", cfg);
}

PowerResult free_mult_power_halfline(const Measure& mu, double t,
                                     const SolverConfig& cfg) {
  if (mu.domain() != Domain::halfline)
    throw Error(ErrorCode::DomainMismatch,
                "half-line powers need half-line measures");
  if (mu.is_point_mass() && mu.atoms()[0].position == 0.0)
    throw Error(ErrorCode::DeltaZero, "delta_0 has no multiplicative powers");
  check_exponent(t);
  if (t == 1.0) return identity_power(eta_handle(mu), "t = 1");

  auto eta = [mu](Complex z) { return eta_transform(mu, z); };
  auto stats = std::make_shared<ResidualStats>();

  // strip lift of Phi_t(z) = z (z/eta)^{t-1}: f(s) = s + (t-1) Log(u/eta(u)),
  // u = -e^s; Log principal since arg(z/eta) in (-pi,0] on C+.
  SlitPlaneMap map;
  map.k = 2.0 * t - 1.0;
  map.phi = [eta, t](Complex z) {
    return z * std::exp((t - 1.0) * std::log(z / eta(z)));
  };
  map.strip_lift = [eta, t](Complex s) {
    const Complex u = slit_coordinate(s);
    return s + (t - 1.0) * std::log(u / eta(u));
  };

  TransformHandle omega_t(
      TransformKind::composed, DomainTag::slit_plane,
      [map, cfg, stats](Complex z) {
        const Complex w = invert_slitplane(map, z, cfg, /*validate=*/false);
        stats->record(std::abs(map.phi(w) - z));
        return w;
      },
      "omega_t of the half-line multiplicative power", /*memoize=*/true,
      stats);
  TransformHandle eta_t(TransformKind::eta, DomainTag::slit_plane,
                        [eta, omega_t](Complex z) { return eta(omega_t(z)); },
                        "eta of the half-line multiplicative power", false,
                        stats);
  PowerResult out;
  out.t = t;
  out.omega_t = omega_t;
  out.transformed = eta_t;
  out.branch_note = "(z/eta)^{t-1} on the principal branch, positive on (-inf,0)";
  out.stats = stats;
  return out;
}

AtomReport atoms_mult_power_halfline(const Measure& mu, double t) {
  if (!(t >= 1.0)) throw Error(ErrorCode::BadExponent, "need t >= 1");
  AtomReport report;
  const double threshold = (t - 1.0) / t;
  for (const auto& a : mu.atoms()) {
    if (a.position > 0.0 && a.mass > threshold)
      report.entries.push_back({std::pow(a.position, t),
                                t * a.mass - (t - 1.0), AtomRule::power_rule});
  }
  return report;
}

AtomReport atoms_mult_power_circle(const Measure& mu, double t) {
  if (!(t >= 1.0)) throw Error(ErrorCode::BadExponent, "need t >= 1");
  AtomReport report;
  const double threshold = (t - 1.0) / t;
  for (const auto& a : mu.atoms()) {
    if (a.mass > threshold) {
      // principal representative in (-pi,pi], matching the solver's branch
      const double rep =
          a.position > M_PI ? a.position - kTwoPi : a.position;
      double ang = std::fmod(t * rep, kTwoPi);
      if (ang < 0.0) ang += kTwoPi;
      report.entries.push_back({ang, t * a.mass - (t - 1.0),
                                AtomRule::power_rule});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// circle Psi_t
// ---------------------------------------------------------------------------

TransformHandle boolean_to_free_mult_circle(const Measure& mu, double t,
                                            const SolverConfig& cfg) {
  if (mu.domain() != Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "circle Psi_t needs a circle measure");
  if (!(t > 1.0)) throw Error(ErrorCode::BadExponent, "Psi_t needs t > 1");

  auto eta = [mu](Complex z) { return eta_transform(mu, z); };

  // Haar: eta = 0, Psi_t fixes it
  double eta_sup = 0.0;
  for (int k = 0; k < 32; ++k)
    eta_sup = std::max(eta_sup, std::abs(eta(std::polar(0.9, 0.2 + 0.19 * k))));
  if (eta_sup < 1e-11) {
    return TransformHandle(TransformKind::eta, DomainTag::unit_disk,
                           [](Complex) { return Complex{}; },
                           "eta of Psi_t(Haar) = Haar");
  }

  const Complex m1 = mu.first_moment();
  if (std::abs(m1) < 1e-12)
    throw Error(ErrorCode::NotBooleanInfDiv,
                "zero first moment but eta != 0: not boolean infinitely divisible");
  // Franz form: eta/id nonvanishing on D and |eta(z)| <= |z|
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(0.12 + 0.0136 * k, 0.37 * k);
    if (std::abs(eta(z)) > std::abs(z) * (1.0 + 1e-9))
      throw Error(ErrorCode::NotBooleanInfDiv, "|eta(z)| > |z| at a sample");
  }
  auto eta_over = [&](Complex z) {
    if (std::abs(z) < 1e-150) return m1;
    return eta(z) / z;
  };
  if (zero_count_in_disk(eta_over, 0.99) != 0)
    throw Error(ErrorCode::NotBooleanInfDiv,
                "eta/id vanishes inside the disk: not of the exponential form");

  DiskPhi phi{eta, m1, t};
  std::string provenance =
      "eta of circle Psi_t image (t = " + std::to_string(t) + ")";
  return TransformHandle(TransformKind::eta, DomainTag::unit_disk,
                         [phi, cfg](Complex z) {
                           if (std::abs(z) < 1e-150) return Complex{};
                           return invert_disk(phi, z, cfg, /*validate=*/false);
                         },
                         provenance, /*memoize=*/true);
}

}  // namespace freeconv
