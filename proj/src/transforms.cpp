#include "freeconv/transforms.hpp"

#include <bit>
#include <cmath>

namespace freeconv {

namespace {

struct KeyHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
    size_t h = std::hash<uint64_t>{}(k.first);
    h ^= std::hash<uint64_t>{}(k.second) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
    return h;
  }
};

std::pair<uint64_t, uint64_t> point_key(Complex z) {
  return {std::bit_cast<uint64_t>(z.real()), std::bit_cast<uint64_t>(z.imag())};
}

}  // namespace

const char* domain_tag_name(DomainTag t) {
  switch (t) {
    case DomainTag::upper_halfplane: return "upper_halfplane";
    case DomainTag::unit_disk: return "unit_disk";
    case DomainTag::slit_plane: return "slit_plane";
    case DomainTag::strip: return "strip";
  }
  return "?";
}

DomainPoint DomainPoint::upper(Complex z) {
  if (!(z.imag() > 0.0))
    throw Error(ErrorCode::DomainMismatch, "point not in the upper half-plane");
  return {z, DomainTag::upper_halfplane};
}

DomainPoint DomainPoint::disk(Complex z) {
  if (!(std::abs(z) < 1.0))
    throw Error(ErrorCode::DomainMismatch, "point not in the unit disk");
  return {z, DomainTag::unit_disk};
}

DomainPoint DomainPoint::slit(Complex z) {
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw Error(ErrorCode::DomainMismatch, "point on the cut [0,inf)");
  return {z, DomainTag::slit_plane};
}

DomainPoint DomainPoint::strip(Complex z) {
  if (!(std::abs(z.imag()) < M_PI))
    throw Error(ErrorCode::DomainMismatch, "point not in the strip |Im| < pi");
  return {z, DomainTag::strip};
}

void ResidualStats::record(double r) {
  evaluations.fetch_add(1, std::memory_order_relaxed);
  double cur = max_residual.load(std::memory_order_relaxed);
  while (r > cur &&
         !max_residual.compare_exchange_weak(cur, r, std::memory_order_relaxed))
    ;
}

struct TransformHandle::Memo {
  std::mutex mutex;
  std::unordered_map<std::pair<uint64_t, uint64_t>, Complex, KeyHash> table;
};

TransformHandle::TransformHandle(TransformKind kind, DomainTag tag,
                                 ComplexFn fn, std::string provenance,
                                 bool memoize,
                                 std::shared_ptr<ResidualStats> stats)
    : kind_(kind),
      tag_(tag),
      fn_(std::move(fn)),
      provenance_(std::move(provenance)),
      stats_(std::move(stats)) {
  if (memoize) memo_ = std::make_shared<Memo>();
}

Complex TransformHandle::operator()(Complex z) const {
  if (!memo_) return fn_(z);
  const auto key = point_key(z);
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->table.find(key);
    if (it != memo_->table.end()) return it->second;
  }
  const Complex value = fn_(z);
  std::lock_guard lock(memo_->mutex);
  memo_->table.emplace(key, value);
  return value;
}

std::vector<Complex> NontangentialPath::points() const {
  std::vector<Complex> pts;
  pts.reserve(heights.size());
  for (double h : heights) pts.emplace_back(base_point, h);
  return pts;
}

Complex cauchy_transform(const Measure& mu, Complex z) {
  if (mu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch,
                "Cauchy transform is for line measures");
  Complex acc = 0.0;
  for (const auto& a : mu.atoms()) acc += a.mass / (z - a.position);
  for (const auto& n : mu.continuous()) acc += n.weight / (z - n.position);
  return acc;
}

Complex f_transform(const Measure& mu, Complex z) {
  return 1.0 / cauchy_transform(mu, z);
}

Complex psi_transform(const Measure& mu, Complex z) {
  Complex acc = 0.0;
  if (mu.domain() == Domain::circle) {
    for (const auto& a : mu.atoms()) {
      const Complex t = std::polar(1.0, a.position);
      acc += a.mass * z * t / (1.0 - z * t);
    }
    for (const auto& n : mu.continuous()) {
      const Complex t = std::polar(1.0, n.position);
      acc += n.weight * z * t / (1.0 - z * t);
    }
  } else if (mu.domain() == Domain::halfline) {
    for (const auto& a : mu.atoms())
      acc += a.mass * z * a.position / (1.0 - z * a.position);
    for (const auto& n : mu.continuous())
      acc += n.weight * z * n.position / (1.0 - z * n.position);
  } else {
    throw Error(ErrorCode::DomainMismatch,
                "psi is for half-line or circle measures");
  }
  return acc;
}

Complex eta_transform(const Measure& mu, Complex z) {
  const Complex p = psi_transform(mu, z);
  return p / (1.0 + p);
}

namespace {

void require_tag(const DomainPoint& z, DomainTag want) {
  if (z.tag != want)
    throw Error(ErrorCode::DomainMismatch,
                std::string("expected a ") + domain_tag_name(want) + " point");
}

}  // namespace

Complex eval_G(const Measure& mu, const DomainPoint& z) {
  if (mu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "G undefined for circle measures");
  if (z.tag != DomainTag::upper_halfplane && z.tag != DomainTag::slit_plane)
    throw Error(ErrorCode::DomainMismatch, "G needs a half-plane point");
  return cauchy_transform(mu, z.value);
}

Complex eval_F(const Measure& mu, const DomainPoint& z) {
  if (mu.domain() == Domain::circle)
    throw Error(ErrorCode::DomainMismatch, "F undefined for circle measures");
  if (z.tag != DomainTag::upper_halfplane && z.tag != DomainTag::slit_plane)
    throw Error(ErrorCode::DomainMismatch, "F needs a half-plane point");
  return 1.0 / cauchy_transform(mu, z.value);
}

Complex eval_psi(const Measure& mu, const DomainPoint& z) {
  if (mu.domain() == Domain::halfline)
    require_tag(z, DomainTag::slit_plane);
  else if (mu.domain() == Domain::circle)
    require_tag(z, DomainTag::unit_disk);
  else
    throw Error(ErrorCode::DomainMismatch, "psi needs half-line or circle");
  return psi_transform(mu, z.value);
}

Complex eval_eta(const Measure& mu, const DomainPoint& z) {
  const Complex p = eval_psi(mu, z);
  return p / (1.0 + p);
}

TransformHandle g_handle(const Measure& mu) {
  return TransformHandle(TransformKind::G, DomainTag::upper_halfplane,
                         [mu](Complex z) { return cauchy_transform(mu, z); },
                         "G of " + std::string(domain_name(mu.domain())) +
                             " measure");
}

TransformHandle f_handle(const Measure& mu) {
  return TransformHandle(TransformKind::F, DomainTag::upper_halfplane,
                         [mu](Complex z) { return f_transform(mu, z); },
                         "F of " + std::string(domain_name(mu.domain())) +
                             " measure");
}

TransformHandle psi_handle(const Measure& mu) {
  const DomainTag tag = mu.domain() == Domain::circle ? DomainTag::unit_disk
                                                      : DomainTag::slit_plane;
  return TransformHandle(TransformKind::psi, tag,
                         [mu](Complex z) { return psi_transform(mu, z); },
                         "psi of measure");
}

TransformHandle eta_handle(const Measure& mu) {
  const DomainTag tag = mu.domain() == Domain::circle ? DomainTag::unit_disk
                                                      : DomainTag::slit_plane;
  return TransformHandle(TransformKind::eta, tag,
                         [mu](Complex z) { return eta_transform(mu, z); },
                         "eta of measure");
}

TransformHandle psi_from_eta(const TransformHandle& eta) {
  return TransformHandle(TransformKind::psi, eta.domain(),
                         [eta](Complex z) {
                           const Complex e = eta(z);
                           return e / (1.0 - e);
                         },
                         "psi from " + eta.provenance(), false, eta.stats());
}

TransformHandle f_from_eta_halfline(const TransformHandle& eta) {
  return TransformHandle(TransformKind::F, DomainTag::upper_halfplane,
                         [eta](Complex w) {
                           const Complex e = eta(1.0 / w);
                           const Complex psi = e / (1.0 - e);
                           return w / (psi + 1.0);
                         },
                         "F from " + eta.provenance(), false, eta.stats());
}

NevanlinnaData nevanlinna_read(const ComplexFn& F, double y0) {
  const Complex Fi = F(kI);
  if (!(Fi.imag() > 0.0))
    throw Error(ErrorCode::NotSelfMap, "Im F(i) <= 0");
  // b = lim F(iy)/(iy), extrapolated in h = 1/y; k = 0 gives the smallest
  // h and the 3-term extrapolation uses those.
  std::vector<double> h;
  std::vector<Complex> vals;
  for (int k = 0; k <= 6; ++k) {
    const double y = y0 * std::ldexp(1.0, -k);
    h.push_back(1.0 / y);
    vals.push_back(F(Complex(0.0, y)) / Complex(0.0, y));
  }
  const Complex b = neville_at_zero(std::span<const double>(h.data(), 3),
                                    std::span<const Complex>(vals.data(), 3));
  return {Fi.real(), b.real(), Fi.imag() - b.real()};
}

Complex voiculescu_phi_of(const ComplexFn& F, Complex z, double tol,
                          int max_iter) {
  Complex w = z;  // seed at z: F(w) ~ w near infinity
  double best = std::abs(F(w) - z);
  for (int it = 0; it < max_iter; ++it) {
    const Complex r = F(w) - z;
    if (std::abs(r) <= tol) return w - z;
    const Complex d = complex_derivative(F, w);
    if (d == Complex{})
      throw Error(ErrorCode::InversionDiverged, "flat derivative");
    Complex step = -r / d;
    // damped: keep the iterate in C+ and the residual decreasing
    bool accepted = false;
    for (int k = 0; k < 30; ++k) {
      const Complex cand = w + step;
      if (cand.imag() > 0.0) {
        const double res = std::abs(F(cand) - z);
        if (res < best || res <= tol) {
          w = cand;
          best = res;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted)
      throw Error(ErrorCode::InversionDiverged,
                  "Newton inversion stalled outside the invertibility cone");
  }
  throw Error(ErrorCode::InversionDiverged, "Newton inversion ran out of iterations");
}

Complex voiculescu_phi(const Measure& mu, const DomainPoint& z) {
  require_tag(z, DomainTag::upper_halfplane);
  return voiculescu_phi_of([&mu](Complex w) { return f_transform(mu, w); },
                           z.value);
}

Complex sigma_of_eta(const ComplexFn& eta, double z, double tol) {
  if (!(z < 0.0))
    throw Error(ErrorCode::OutsideInversionInterval, "need z < 0");
  auto eval = [&](double w) { return eta(Complex(w, 0.0)).real(); };
  // eta is increasing on (-inf,0) with eta(0-) = 0: bracket by doubling,
  // then bracket-guarded Newton
  double lo = -1.0;
  double flo = eval(lo);
  int guard = 0;
  while (flo > z) {
    lo *= 4.0;
    flo = eval(lo);
    if (++guard > 200 || !std::isfinite(flo))
      throw Error(ErrorCode::OutsideInversionInterval,
                  std::to_string(z) + " below the range of eta on (-inf,0)");
  }
  double hi = 0.0;
  double w = 0.5 * lo;
  double fw = eval(w);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fw - z) <= tol * std::max(1.0, std::abs(z)))
      return Complex(w / z, 0.0);
    if (fw < z)
      lo = w;
    else
      hi = w;
    const double h = 1e-7 * std::max(1e-3, std::abs(w));
    const double deriv = (eval(w + h) - eval(w - h)) / (2.0 * h);
    double cand = deriv > 0.0 ? w - (fw - z) / deriv : lo;
    if (!(cand > lo) || !(cand < hi)) cand = 0.5 * (lo + hi);
    w = cand;
    fw = eval(w);
  }
  if (std::abs(fw - z) > 1e-9)
    throw Error(ErrorCode::OutsideInversionInterval,
                "eta inversion did not meet tolerance");
  return Complex(w / z, 0.0);
}

Complex sigma_transform(const Measure& mu, double z) {
  if (mu.domain() != Domain::halfline)
    throw Error(ErrorCode::DomainMismatch, "Sigma is for half-line measures");
  if (mu.is_point_mass() && mu.atoms()[0].position == 0.0)
    throw Error(ErrorCode::OutsideInversionInterval, "Sigma undefined for delta_0");
  return sigma_of_eta([&mu](Complex w) { return eta_transform(mu, w); }, z);
}

}  // namespace freeconv
