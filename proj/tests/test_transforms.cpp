#include <doctest.h>

#include <thread>

#include "freeconv/free_conv.hpp"
#include "freeconv/transforms.hpp"
#include "test_support.hpp"

using namespace freeconv;
using freeconv::testing::bernoulli;
using freeconv::testing::random_atomic;

TEST_SUITE_BEGIN("transforms");

TEST_CASE("Cauchy transform point values") {
  const Measure d0 = make_atomic({{0.0, 1.0}}, Domain::real);
  CHECK(std::abs(eval_G(d0, DomainPoint::upper(kI)) - Complex(0, -1)) < 1e-15);

  const Measure b = bernoulli();
  CHECK(std::abs(eval_G(b, DomainPoint::upper(Complex(0, 2))) -
                 Complex(0, -0.4)) < 1e-15);
}

TEST_CASE("z G(z) -> 1 at infinity") {
  for (const Measure& m :
       {bernoulli(), make_named(Semicircle{0.0, 2.0}, Domain::real, 256)}) {
    const Complex z(0.0, 1e6);
    CHECK(std::abs(z * cauchy_transform(m, z) - 1.0) < 1e-5);
    CHECK(std::abs(f_transform(m, z) / z - 1.0) < 1e-5);
  }
}

TEST_CASE("F point values") {
  const Measure b = bernoulli();
  CHECK(std::abs(eval_F(b, DomainPoint::upper(Complex(0, 2))) -
                 Complex(0, 2.5)) < 1e-15);
  const Measure da = make_atomic({{1.5, 1.0}}, Domain::real);
  CHECK(std::abs(eval_F(da, DomainPoint::upper(Complex(0.3, 0.7))) -
                 Complex(-1.2, 0.7)) < 1e-15);
}

TEST_CASE("psi values and identities") {
  const Measure d1 = make_atomic({{1.0, 1.0}}, Domain::halfline);
  CHECK(std::abs(eval_psi(d1, DomainPoint::slit(Complex(-1.0, 0.0))) -
                 Complex(-0.5, 0.0)) < 1e-15);

  // haar: psi vanishes on the disk
  const Measure haar = make_named(HaarCircle{}, Domain::circle, 512);
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    const Complex z = testing::random_disk(rng, 0.9);
    CHECK(std::abs(psi_transform(haar, z)) < 1e-10);
  }

  // Re psi >= -1/2 on the disk for circle measures
  const Measure c = random_atomic(rng, 3, Domain::circle, 0.0, 2.0 * M_PI);
  for (int k = 0; k < 100; ++k) {
    const Complex z = testing::random_disk(rng);
    CHECK(psi_transform(c, z).real() >= -0.5 - 1e-12);
  }

  // half-line identity G(1/z) = z (psi(z) + 1)
  const Measure h = random_atomic(rng, 3, Domain::halfline, 0.1, 5.0);
  for (int k = 0; k < 100; ++k) {
    const Complex z = testing::random_slit(rng);
    const Complex lhs = cauchy_transform(h, 1.0 / z);
    const Complex rhs = z * (psi_transform(h, z) + 1.0);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("eta values") {
  const Measure da = make_atomic({{2.5, 1.0}}, Domain::halfline);
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Complex z = testing::random_slit(rng, 0.5);
    CHECK(std::abs(eta_transform(da, z) - 2.5 * z) < 1e-12);
  }
  const double theta = 1.1;
  const Measure dc = make_atomic({{theta, 1.0}}, Domain::circle);
  for (int k = 0; k < 20; ++k) {
    const Complex z = testing::random_disk(rng);
    CHECK(std::abs(eta_transform(dc, z) - std::polar(1.0, theta) * z) < 1e-12);
  }
  const Measure haar = make_named(HaarCircle{}, Domain::circle, 512);
  CHECK(std::abs(eta_transform(haar, Complex(0.4, 0.2))) < 1e-10);
}

TEST_CASE("reflection symmetry") {
  std::mt19937 rng(23);
  const Measure m = random_atomic(rng, 4, Domain::real, -3.0, 3.0);
  const Measure h = random_atomic(rng, 3, Domain::halfline, 0.2, 4.0);
  for (int k = 0; k < 50; ++k) {
    const Complex z = testing::random_upper(rng);
    CHECK(std::abs(cauchy_transform(m, std::conj(z)) -
                   std::conj(cauchy_transform(m, z))) < 1e-14);
    CHECK(std::abs(psi_transform(h, std::conj(-z)) -
                   std::conj(psi_transform(h, -z))) < 1e-14);
    CHECK(std::abs(eta_transform(h, std::conj(-z)) -
                   std::conj(eta_transform(h, -z))) < 1e-14);
  }
}

TEST_CASE("Im F(z) >= Im z, equality only for point masses") {
  std::mt19937 rng(31);
  const Measure m = random_atomic(rng, 3, Domain::real, -2.0, 2.0);
  const Measure pm = make_atomic({{0.7, 1.0}}, Domain::real);
  for (int k = 0; k < 200; ++k) {
    const Complex z = testing::random_upper(rng);
    CHECK(f_transform(m, z).imag() >= z.imag() - 1e-13);
    CHECK(f_transform(m, z).imag() > z.imag() + 1e-12);  // strict, not delta
    CHECK(std::abs(f_transform(pm, z).imag() - z.imag()) < 1e-13);
  }
}

TEST_CASE("circle Schwarz bound |eta(z)| <= |z|") {
  std::mt19937 rng(41);
  const Measure c = random_atomic(rng, 2, Domain::circle, 0.0, 6.0);
  for (int k = 0; k < 100; ++k) {
    const Complex z = testing::random_disk(rng);
    const double ratio = std::abs(eta_transform(c, z)) / std::abs(z);
    CHECK(ratio <= 1.0 + 1e-13);
    CHECK(ratio < 1.0 - 1e-10);  // equality would force a point mass
  }
}

TEST_CASE("nevanlinna_read") {
  auto data = nevanlinna_read([](Complex z) { return z - 1.0 / z; });
  CHECK(std::abs(data.a - 0.0) < 1e-9);
  CHECK(std::abs(data.b - 1.0) < 1e-9);
  CHECK(std::abs(data.rho_mass - 1.0) < 1e-9);

  data = nevanlinna_read([](Complex z) { return z + 5.0; });
  CHECK(std::abs(data.a - 5.0) < 1e-9);
  CHECK(std::abs(data.b - 1.0) < 1e-9);
  CHECK(std::abs(data.rho_mass) < 1e-9);

  data = nevanlinna_read([](Complex z) { return 2.0 * z; });
  CHECK(std::abs(data.a) < 1e-9);
  CHECK(std::abs(data.b - 2.0) < 1e-9);
  CHECK(std::abs(data.rho_mass) < 1e-9);

  CHECK_THROWS_AS(nevanlinna_read([](Complex) { return Complex(1.0, -1.0); }),
                  Error);
}

TEST_CASE("voiculescu_phi point mass and semicircle") {
  const Measure da = make_atomic({{1.3, 1.0}}, Domain::real);
  const Complex z(0.0, 10.0);
  CHECK(std::abs(voiculescu_phi(da, DomainPoint::upper(z)) - 1.3) < 1e-11);

  // oracle: invert the moment series F(w) ~ w - 1/w - 1/w^3 - 2/w^5 - ...
  // built from the first 8 semicircle moments (Catalan numbers)
  const double cat[] = {1, 1, 2, 5, 14};  // m_0, m_2, m_4, m_6, m_8
  auto G_series = [&](Complex w) {
    Complex acc = 0.0;
    for (int k = 0; k <= 4; ++k) acc += cat[k] / std::pow(w, 2 * k + 1);
    return acc;
  };
  auto F_series = [&](Complex w) { return 1.0 / G_series(w); };
  Complex w_oracle = z;
  for (int it = 0; it < 200; ++it) w_oracle = z + (w_oracle - F_series(w_oracle));
  const Complex phi_oracle = w_oracle - z;

  const Measure sc = make_named(Semicircle{0.0, 2.0}, Domain::real, 512);
  const Complex phi = voiculescu_phi(sc, DomainPoint::upper(z));
  // the truncated series itself carries ~ m_10/|z|^9 = 4e-8 of error
  CHECK(std::abs(phi - phi_oracle) < 1e-7);
  CHECK(std::abs(phi - 1.0 / z) < 1e-8);  // R-transform of the semicircle
}

TEST_CASE("phi is additive under free convolution") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    const Measure mu = random_atomic(rng, 2, Domain::real, -1.5, 1.5);
    const Measure nu = random_atomic(rng, 3, Domain::real, -1.0, 2.0);
    const SubordinationPair conv = free_add(mu, nu);
    const Complex z(0.0, 10.0);
    const Complex sum = voiculescu_phi(mu, DomainPoint::upper(z)) +
                        voiculescu_phi(nu, DomainPoint::upper(z));
    const Complex both = voiculescu_phi_of(
        [&conv](Complex w) { return conv.convolved(w); }, z);
    CHECK(std::abs(sum - both) < 1e-9);
  }
}

TEST_CASE("sigma transform") {
  const Measure da = make_atomic({{2.0, 1.0}}, Domain::halfline);
  CHECK(std::abs(sigma_transform(da, -0.1) - 0.5) < 1e-10);

  // independent oracle: plain bisection on (-inf, 0)
  const Measure m = make_atomic({{1.0, 0.5}, {2.0, 0.5}}, Domain::halfline);
  const double z = -0.01;
  double lo = -4.0, hi = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eta_transform(m, Complex(mid, 0.0)).real() < z)
      lo = mid;
    else
      hi = mid;
  }
  const double oracle = 0.5 * (lo + hi) / z;
  CHECK(std::abs(sigma_transform(m, z) - oracle) < 1e-10);

  CHECK_THROWS_AS(sigma_transform(m, -1e6), Error);
}

TEST_CASE("sigma is multiplicative under boxtimes") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 3; ++trial) {
    const Measure mu = random_atomic(rng, 2, Domain::halfline, 0.3, 3.0);
    const Measure nu = random_atomic(rng, 2, Domain::halfline, 0.5, 2.5);
    const SubordinationPair conv = free_mult_halfline(mu, nu);
    const double z = -0.05;
    const Complex lhs = sigma_of_eta(
        [&conv](Complex w) { return conv.convolved(w); }, z);
    const Complex rhs = sigma_transform(mu, z) * sigma_transform(nu, z);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("nontangential paths stay in their cone") {
  NontangentialPath path{1.5, 2.0, {0.5, 0.25, 0.125, 0.0625}};
  for (const Complex z : path.points()) {
    CHECK(z.imag() > 0.0);
    CHECK(std::abs(z.real() - path.base_point) <= path.aperture * z.imag());
  }
}

TEST_CASE("memoized handles are thread-safe and order-independent") {
  std::mt19937 rng(61);
  const Measure mu = random_atomic(rng, 2, Domain::real, -1.0, 1.0);
  const Measure nu = random_atomic(rng, 2, Domain::real, -1.0, 1.0);
  const SubordinationPair conv = free_add(mu, nu);

  std::vector<Complex> pts;
  for (int k = 0; k < 64; ++k) pts.push_back(testing::random_upper(rng));
  std::vector<Complex> seq(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) seq[i] = conv.omega1(pts[i]);

  std::vector<Complex> par(pts.size());
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (size_t i = w; i < pts.size(); i += 4) par[i] = conv.omega1(pts[i]);
    });
  }
  for (auto& t : workers) t.join();
  for (size_t i = 0; i < pts.size(); ++i) CHECK(seq[i] == par[i]);
}

TEST_SUITE_END();
