#include "freeconv/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace freeconv {

Complex neville_at_zero(std::span<const double> h, std::span<const Complex> f) {
  const size_t n = h.size();
  std::vector<Complex> p(f.begin(), f.end());
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = 0; i + level < n; ++i) {
      const double hi = h[i], hj = h[i + level];
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  }
  return p.empty() ? Complex{} : p[0];
}

Complex complex_derivative(const ComplexFn& f, Complex z, double rel_step) {
  const double h = rel_step * std::max(1.0, std::abs(z));
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

std::vector<Complex> polynomial_roots(std::span<const double> coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1 || coeffs[0] == 0.0)
    throw std::invalid_argument("polynomial_roots: degenerate polynomial");
  std::vector<Complex> c(deg + 1);
  for (int i = 0; i <= deg; ++i) c[i] = coeffs[i] / coeffs[0];

  auto eval = [&](Complex z) {
    Complex acc = 1.0;
    for (int i = 1; i <= deg; ++i) acc = acc * z + c[i];
    return acc;
  };

  // radius bound, Cauchy
  double radius = 0.0;
  for (int i = 1; i <= deg; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1.0 + radius;

  std::vector<Complex> r(deg);
  const Complex spread{0.4, 0.9};
  Complex seed = 1.0;
  for (int i = 0; i < deg; ++i) {
    seed *= spread;
    r[i] = radius * seed / std::abs(seed);
  }
  for (int iter = 0; iter < 600; ++iter) {
    double move = 0.0;
    for (int i = 0; i < deg; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= (r[i] - r[j]);
      if (denom == Complex{}) denom = 1e-300;
      const Complex step = eval(r[i]) / denom;
      r[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14 * radius) break;
  }
  return r;
}

SlitPlaneSqrt::SlitPlaneSqrt(const std::array<double, 5>& coeffs) : c_(coeffs) {
  const std::array<double, 5> poly = {c_[0], c_[1], c_[2], c_[3], c_[4]};
  auto roots = polynomial_roots(std::span<const double>(poly));
  bool all_real_nonneg = true;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real())) ||
        r.real() < -1e-9)
      all_real_nonneg = false;
  }
  if (all_real_nonneg) {
    product_form_ = true;
    for (const auto& r : roots) real_roots_.push_back(std::max(0.0, r.real()));
    std::sort(real_roots_.begin(), real_roots_.end());
  }
}

Complex SlitPlaneSqrt::eval_poly(Complex z) const {
  Complex acc = c_[0];
  for (int i = 1; i <= 4; ++i) acc = acc * z + c_[i];
  return acc;
}

Complex SlitPlaneSqrt::operator()(Complex z) const {
  if (z.imag() < 0.0) return std::conj((*this)(std::conj(z)));
  if (product_form_) {
    // sqrt(c0) * prod csqrt(z - r_j) is analytic off [0,inf) and positive on
    // (-inf,0); the wanted branch is its negative.
    Complex prod = std::sqrt(Complex(c_[0], 0.0));
    for (double r : real_roots_) prod *= std::sqrt(z - r);
    return -prod;
  }
  return track_from_anchor(z);
}

Complex SlitPlaneSqrt::track_from_anchor(Complex z) const {
  // L-shaped path from a far negative anchor: vertical to Im z, then
  // horizontal to z; sqrt continued by nearest-branch selection.
  const double x0 = -(2.0 + std::abs(z));
  Complex cur_pos{x0, 0.0};
  const double p0 = eval_poly(cur_pos).real();
  if (!(p0 > 0.0)) throw std::runtime_error("slit sqrt: anchor not positive");
  Complex w = -std::sqrt(p0);

  auto advance = [&](Complex target, int steps) {
    for (int k = 1; k <= steps; ++k) {
      const Complex p =
          cur_pos + (target - cur_pos) * (double(k) / double(steps));
      const Complex s = std::sqrt(eval_poly(p));
      w = (std::abs(s - w) <= std::abs(s + w)) ? s : -s;
    }
    cur_pos = target;
  };
  advance(Complex{x0, z.imag()}, 64);
  advance(z, 256);
  return w;
}

Complex upper_halfplane_sqrt_poly4(std::span<const double> roots, Complex z) {
  if (z.imag() < 0.0) {
    return std::conj(
        upper_halfplane_sqrt_poly4(roots, std::conj(z)));
  }
  Complex prod = 1.0;
  for (double r : roots) prod *= std::sqrt(z - r);
  return prod;  // ~ z^2 at i*infinity
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[n - 1 - i] = weights[i];
  }
}

Complex radial_log(const ComplexFn& g, Complex g_at_zero, Complex z,
                   int min_steps) {
  int steps = std::max(min_steps, 8);
  Complex result{};
  for (int attempt = 0; attempt < 7; ++attempt, steps *= 2) {
    const bool last = (attempt == 6);
    Complex w_prev = g_at_zero;
    double arg = std::arg(g_at_zero);
    bool resolved = true;
    for (int k = 1; k <= steps; ++k) {
      const Complex w = g(z * (double(k) / double(steps)));
      const double d = std::arg(w / w_prev);
      if (std::abs(d) > 1.2 && !last) {  // step too coarse to trust winding
        resolved = false;
        break;
      }
      arg += d;
      w_prev = w;
    }
    result = Complex(std::log(std::abs(w_prev)), arg);
    if (resolved) return result;
  }
  return result;
}

}  // namespace freeconv
