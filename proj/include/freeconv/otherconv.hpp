#pragma once

#include "freeconv/measure.hpp"
#include "freeconv/transforms.hpp"

namespace freeconv {

/// Boolean additive convolution: F handle F_mu + F_nu - id.
TransformHandle boolean_add(const Measure& mu, const Measure& nu);
TransformHandle boolean_add_transforms(const ComplexFn& F1, const ComplexFn& F2);

/// Boolean multiplicative convolution on the circle: eta = eta_mu eta_nu/id.
TransformHandle boolean_mult_circle(const Measure& mu, const Measure& nu);

/// Monotone additive convolution: F_{mu |> nu} = F_mu o F_nu (order matters).
TransformHandle monotone_add(const Measure& mu, const Measure& nu);

/// Monotone multiplicative convolution on [0,inf): eta_mu o eta_nu.
TransformHandle monotone_mult_halfline(const Measure& mu, const Measure& nu);

/// Abel-function estimate h_n(z) = (f^n(z) - z_n)/(z_{n+1} - z_n) on the
/// right half-plane, orbit z_n = f^n(1), for the transported map
/// f(w) = -i F(i w).
struct AbelEstimate {
  Complex value;
  long n_used = 0;
  double residual = 0.0;  // |h(f(z)) - h(z) - 1| at n_used
  double last_q = 0.0;    // contraction diagnostic |q_n|; ~0 in the
                          // translation-type regime the estimator assumes
};

AbelEstimate abel_estimate(const ComplexFn& F, const DomainPoint& z,
                           long n_max);

}  // namespace freeconv
