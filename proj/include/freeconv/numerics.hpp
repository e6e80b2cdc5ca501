#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace freeconv {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;

inline constexpr Complex kI{0.0, 1.0};

/// Neville polynomial extrapolation of f(h) to h = 0.
Complex neville_at_zero(std::span<const double> h, std::span<const Complex> f);

/// Symmetric finite-difference derivative, step scaled to |z|.
Complex complex_derivative(const ComplexFn& f, Complex z,
                           double rel_step = 1e-7);

/// All roots of a monic-normalizable polynomial c[0]*z^n + ... + c[n]
/// (Durand-Kerner iteration; c[0] must be nonzero).
std::vector<Complex> polynomial_roots(std::span<const double> coeffs);

/// Analytic square root of the quartic q4 z^4 + ... + q0 on the slit plane
/// C\[0,inf), branch fixed real-negative on (-inf,0).  The quartic must be
/// positive somewhere on (-inf,0); roots in [0,inf) are handled exactly,
/// complex roots fall back to path continuation from a negative anchor.
class SlitPlaneSqrt {
 public:
  explicit SlitPlaneSqrt(const std::array<double, 5>& coeffs);
  Complex operator()(Complex z) const;

 private:
  Complex eval_poly(Complex z) const;
  Complex track_from_anchor(Complex z) const;

  std::array<double, 5> c_;
  std::vector<double> real_roots_;   // used when all roots are real >= 0
  bool product_form_ = false;
};

/// Analytic square root of prod_j (z - r_j) with real r_j on the upper
/// half-plane (continued to the closed plane minus the roots), branch ~ z^2
/// at i*infinity.  Used by the additive two-atom oracle.
Complex upper_halfplane_sqrt_poly4(std::span<const double> roots, Complex z);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Unwrapped log of g along the radial path from 0 to z in the unit disk.
/// `at_zero` is the (finite, nonzero) limit of g at 0; the branch is the
/// principal log at that anchor.  g must be nonvanishing on the path.
Complex radial_log(const ComplexFn& g, Complex g_at_zero, Complex z,
                   int min_steps = 24);

}  // namespace freeconv
