#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/numerics.hpp"

namespace freeconv {

enum class DomainTag { upper_halfplane, unit_disk, slit_plane, strip };

const char* domain_tag_name(DomainTag t);

/// A point strictly inside one of the four evaluation domains.
struct DomainPoint {
  Complex value;
  DomainTag tag;

  static DomainPoint upper(Complex z);  // Im z > 0
  static DomainPoint disk(Complex z);   // |z| < 1
  static DomainPoint slit(Complex z);   // z not in [0, inf)
  static DomainPoint strip(Complex z);  // |Im z| < pi
};

enum class TransformKind { G, F, psi, eta, composed };

/// Worst subordination / inversion residual seen while evaluating a handle.
struct ResidualStats {
  std::atomic<double> max_residual{0.0};
  std::atomic<long> evaluations{0};

  void record(double r);
};

/// An evaluable analytic transform.  Evaluation is pure; handles built from
/// fixed-point solves memoize per evaluation point (thread-safe).
class TransformHandle {
 public:
  TransformHandle() = default;
  TransformHandle(TransformKind kind, DomainTag tag, ComplexFn fn,
                  std::string provenance, bool memoize = false,
                  std::shared_ptr<ResidualStats> stats = nullptr);

  Complex operator()(Complex z) const;

  TransformKind kind() const { return kind_; }
  DomainTag domain() const { return tag_; }
  const std::string& provenance() const { return provenance_; }
  const std::shared_ptr<ResidualStats>& stats() const { return stats_; }

  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  struct Memo;
  TransformKind kind_ = TransformKind::composed;
  DomainTag tag_ = DomainTag::upper_halfplane;
  ComplexFn fn_;
  std::string provenance_;
  std::shared_ptr<Memo> memo_;
  std::shared_ptr<ResidualStats> stats_;
};

/// Nontangential approach path inside a Stolz cone at a boundary point.
struct NontangentialPath {
  double base_point;
  double aperture;               // > 0
  std::vector<double> heights;   // strictly decreasing, positive

  /// Path points base + h*(i + 0)... staying inside the aperture cone.
  std::vector<Complex> points() const;
};

// Raw transform sums over the measure representation.  Defined for any z off
// the support/cut; reflection G(conj z) = conj G(z) holds per term.
Complex cauchy_transform(const Measure& mu, Complex z);   // G
Complex f_transform(const Measure& mu, Complex z);        // F = 1/G
Complex psi_transform(const Measure& mu, Complex z);      // psi
Complex eta_transform(const Measure& mu, Complex z);      // eta = psi/(1+psi)

// Spec-surface evaluators with domain checking.
Complex eval_G(const Measure& mu, const DomainPoint& z);
Complex eval_F(const Measure& mu, const DomainPoint& z);
Complex eval_psi(const Measure& mu, const DomainPoint& z);
Complex eval_eta(const Measure& mu, const DomainPoint& z);

// Handle factories.
TransformHandle g_handle(const Measure& mu);
TransformHandle f_handle(const Measure& mu);
TransformHandle psi_handle(const Measure& mu);
TransformHandle eta_handle(const Measure& mu);

/// psi = eta/(1-eta) pointwise.
TransformHandle psi_from_eta(const TransformHandle& eta);

/// F on C+ from a half-line eta-handle via G(w) = (psi(1/w)+1)/w.
TransformHandle f_from_eta_halfline(const TransformHandle& eta);

/// Nevanlinna data (a, b, rho(R)) of an analytic self-map of C+.  The
/// linear coefficient b is extrapolated from F(iy)/(iy) along the
/// geometric schedule y = y0 * 2^{-k}, k = 0..6.
struct NevanlinnaData {
  double a;
  double b;
  double rho_mass;
};

NevanlinnaData nevanlinna_read(const ComplexFn& F, double y0 = 1e3);

/// phi(z) = F^{-1}(z) - z by damped Newton inversion of F near infinity.
Complex voiculescu_phi(const Measure& mu, const DomainPoint& z);
Complex voiculescu_phi_of(const ComplexFn& F, Complex z,
                          double tol = 1e-12, int max_iter = 200);

/// Sigma(z) = eta^{-1}(z)/z for z < 0 near 0 (half-line measures).
Complex sigma_transform(const Measure& mu, double z);
Complex sigma_of_eta(const ComplexFn& eta, double z, double tol = 1e-12);

}  // namespace freeconv
