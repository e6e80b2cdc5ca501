#include "freeconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "freeconv/numerics.hpp"

namespace freeconv {

namespace {

constexpr double kMassTol = 1e-10;
constexpr double kPositionTol = 1e-12;
constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

void check_position(Domain domain, double p) {
  if (!std::isfinite(p))
    throw Error(ErrorCode::InvalidSupport, "non-finite position");
  if (domain == Domain::halfline && p < 0.0)
    throw Error(ErrorCode::InvalidSupport,
                "negative position on the half-line");
}

}  // namespace

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::real: return "real";
    case Domain::halfline: return "halfline";
    case Domain::circle: return "circle";
  }
  return "?";
}

Measure::Measure(Domain domain, std::vector<Atom> atoms,
                 std::vector<QuadNode> nodes)
    : domain_(domain), atoms_(std::move(atoms)), nodes_(std::move(nodes)) {
  double mass = 0.0;
  for (auto& a : atoms_) {
    check_position(domain_, a.position);
    if (domain_ == Domain::circle) a.position = wrap_angle(a.position);
    if (!(a.mass > 0.0))
      throw Error(ErrorCode::NonUnitMass, "atom mass must be positive");
    mass += a.mass;
  }
  for (const auto& n : nodes_) {
    check_position(domain_, n.position);
    if (!(n.weight > 0.0))
      throw Error(ErrorCode::NonUnitMass, "quadrature weight must be positive");
    mass += n.weight;
  }
  if (std::abs(mass - 1.0) > kMassTol)
    throw Error(ErrorCode::NonUnitMass,
                "total mass " + std::to_string(mass) + " != 1");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.position < y.position; });
  for (size_t i = 1; i < atoms_.size(); ++i) {
    if (std::abs(atoms_[i].position - atoms_[i - 1].position) <= kPositionTol)
      throw Error(ErrorCode::DuplicatePosition,
                  "atoms closer than 1e-12 at " +
                      std::to_string(atoms_[i].position));
  }
}

double Measure::atom_mass_at(double position, double tol) const {
  for (const auto& a : atoms_)
    if (std::abs(a.position - position) <= tol) return a.mass;
  return 0.0;
}

double Measure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  for (const auto& n : nodes_) m += n.weight;
  return m;
}

std::complex<double> Measure::first_moment() const {
  std::complex<double> m = 0.0;
  if (domain_ == Domain::circle) {
    for (const auto& a : atoms_) m += a.mass * std::polar(1.0, a.position);
    for (const auto& n : nodes_) m += n.weight * std::polar(1.0, n.position);
  } else {
    for (const auto& a : atoms_) m += a.mass * a.position;
    for (const auto& n : nodes_) m += n.weight * n.position;
  }
  return m;
}

Measure make_atomic(const std::vector<Atom>& atoms, Domain domain) {
  return Measure(domain, atoms, {});
}

namespace {

Measure interval_family(Domain domain, double a, double b, int n,
                        int kind /*0=uniform GL, 1=arcsine T, 2=semicircle U*/) {
  if (!(a < b)) throw Error(ErrorCode::BadParameters, "need a < b");
  if (domain == Domain::circle)
    throw Error(ErrorCode::BadParameters, "interval family on the circle");
  if (domain == Domain::halfline && a < 0.0)
    throw Error(ErrorCode::InvalidSupport, "interval leaves the half-line");
  if (n < 2) throw Error(ErrorCode::BadParameters, "node count too small");

  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<QuadNode> nodes(n);
  switch (kind) {
    case 0: {  // uniform density 1/(b-a): Gauss-Legendre
      std::vector<double> x, w;
      gauss_legendre(n, x, w);
      for (int i = 0; i < n; ++i)
        nodes[i] = {mid + half * x[i], 0.5 * w[i]};
      break;
    }
    case 1: {  // arcsine density 1/(pi sqrt((x-a)(b-x))): Chebyshev-Gauss
      for (int i = 0; i < n; ++i) {
        const double th = M_PI * (i + 0.5) / n;
        nodes[i] = {mid + half * std::cos(th), 1.0 / n};
      }
      break;
    }
    case 2: {  // semicircle density (2/pi r^2) sqrt(r^2-(x-c)^2): Chebyshev-U
      for (int i = 1; i <= n; ++i) {
        const double th = M_PI * i / (n + 1.0);
        nodes[i - 1] = {mid + half * std::cos(th),
                        2.0 / (n + 1.0) * std::sin(th) * std::sin(th)};
      }
      break;
    }
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const QuadNode& x, const QuadNode& y) {
              return x.position < y.position;
            });
  return Measure(domain, {}, std::move(nodes));
}

}  // namespace

Measure make_named(const NamedFamily& family, Domain domain, int node_count) {
  return std::visit(
      [&](const auto& f) -> Measure {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Semicircle>) {
          if (!(f.radius > 0.0))
            throw Error(ErrorCode::BadParameters, "semicircle radius <= 0");
          return interval_family(domain, f.center - f.radius,
                                 f.center + f.radius, node_count, 2);
        } else if constexpr (std::is_same_v<T, Arcsine>) {
          return interval_family(domain, f.a, f.b, node_count, 1);
        } else if constexpr (std::is_same_v<T, UniformInterval>) {
          return interval_family(domain, f.a, f.b, node_count, 0);
        } else if constexpr (std::is_same_v<T, HaarCircle>) {
          if (domain != Domain::circle)
            throw Error(ErrorCode::BadParameters,
                        "haar_circle needs the circle domain");
          std::vector<QuadNode> nodes(node_count);
          for (int i = 0; i < node_count; ++i)
            nodes[i] = {2.0 * M_PI * (i + 0.5) / node_count,
                        1.0 / node_count};
          return Measure(domain, {}, std::move(nodes));
        } else {  // PointMass
          return make_atomic({{f.position, 1.0}}, domain);
        }
      },
      family);
}

Measure pushforward_affine(const Measure& mu, double scale, double shift) {
  if (mu.domain() == Domain::circle) {
    if (std::abs(scale - 1.0) > 1e-12)
      throw Error(ErrorCode::SupportViolation,
                  "circle pushforward is a rotation; scale must be 1");
    std::vector<Atom> atoms = mu.atoms();
    std::vector<QuadNode> nodes = mu.continuous();
    for (auto& a : atoms) a.position = wrap_angle(a.position + shift);
    for (auto& n : nodes) n.position = wrap_angle(n.position + shift);
    return Measure(Domain::circle, std::move(atoms), std::move(nodes));
  }
  if (mu.domain() == Domain::halfline) {
    if (!(scale > 0.0) || shift < 0.0)
      throw Error(ErrorCode::SupportViolation,
                  "half-line pushforward needs scale > 0 and shift >= 0");
  }
  if (scale == 0.0)
    throw Error(ErrorCode::SupportViolation, "zero scale collapses support");
  std::vector<Atom> atoms = mu.atoms();
  std::vector<QuadNode> nodes = mu.continuous();
  for (auto& a : atoms) a.position = scale * a.position + shift;
  for (auto& n : nodes) n.position = scale * n.position + shift;
  return Measure(mu.domain(), std::move(atoms), std::move(nodes));
}

}  // namespace freeconv
