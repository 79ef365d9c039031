#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cavphase/core_model.hpp"

using namespace cavphase;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.1, 3), det(-5, 5), phase(-10, 10);
  SystemParams p;
  p.g_sqrt_n = rate(rng);
  p.omega1 = rate(rng);
  p.omega2 = rate(rng);
  p.omega_t = rate(rng);
  p.kappa = rate(rng);
  p.gamma3 = rate(rng);
  p.gamma4 = rate(rng);
  p.gamma12 = rate(rng) / 30;
  p.delta1 = det(rng);
  p.delta2 = det(rng);
  p.delta_t = det(rng);
  p.delta_ac = det(rng);
  p.phi1 = phase(rng);
  p.phi2 = phase(rng);
  return p;
}

}  // namespace

TEST_CASE("coefficients at the default resonant point") {
  const auto [a, b, c] = coefficients_abc(SystemParams{}, 0.0);
  CHECK(a == std::complex<double>(0, 0.001));
  CHECK(b == std::complex<double>(0, 1));
  CHECK(c == std::complex<double>(0, 1));
}

TEST_CASE("coefficient real parts cancel") {
  SystemParams p;
  p.delta1 = 1;
  CHECK(coefficients_abc(p, 1.0).a.real() == 0);

  SystemParams q;
  q.delta2 = 1;
  q.delta_t = 3;
  const auto c = coefficients_abc(q, 2.0).c;
  CHECK(c.real() == 0);
  CHECK(c.imag() == q.gamma3);
}

// Expected values below come from an independent numpy LU solve of the
// weak-probe coherence system, chi = g^2 N rho13 / (g alpha).
TEST_CASE("susceptibility matches frozen linear-solve values") {
  SystemParams p;
  auto chi = susceptibility(p, 0.0);
  CHECK(chi.real() == Approx(0.2499998751249375).epsilon(1e-12));
  CHECK(chi.imag() == Approx(0.25024987500006246).epsilon(1e-12));

  p.phi1 = kPi / 2;
  chi = susceptibility(p, 0.0);
  CHECK(std::abs(chi.real()) < 1e-15);
  CHECK(chi.imag() == Approx(0.5).epsilon(1e-12));

  p.phi1 = 0.3;
  chi = susceptibility(p, 1.0);
  CHECK(chi.real() == Approx(-7.584160391624832e-05).epsilon(1e-9));
  CHECK(chi.imag() == Approx(0.9172320082733402).epsilon(1e-12));

  SystemParams q;
  q.g_sqrt_n = 1.3;
  q.omega1 = 0.7;
  q.omega2 = 1.9;
  q.omega_t = 0.4;
  q.gamma12 = 0.02;
  q.gamma3 = 1.2;
  q.gamma4 = 0.8;
  q.delta1 = 0.3;
  q.delta2 = -0.5;
  q.delta_t = 0.9;
  q.phi1 = 1.1;
  chi = susceptibility(q, 0.6);
  CHECK(chi.real() == Approx(0.650780410149705).epsilon(1e-12));
  CHECK(chi.imag() == Approx(0.6751406098136808).epsilon(1e-12));
}

TEST_CASE("no atoms, no susceptibility") {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 20; ++n) {
    auto p = random_params(rng);
    p.g_sqrt_n = 0;
    CHECK(susceptibility(p, 0.7) == std::complex<double>(0, 0));
  }
}

TEST_CASE("resonant phi1 = pi/2 makes chi purely imaginary for unequal decay rates") {
  SystemParams p;
  p.phi1 = kPi / 2;
  p.gamma3 = 1.4;
  p.gamma4 = 0.6;
  const auto chi = susceptibility(p, 0.0);
  const double expected = (1 + p.gamma12 * p.gamma4) /
                          (p.gamma12 + p.gamma4 + p.gamma3 + p.gamma12 * p.gamma3 * p.gamma4);
  CHECK(std::abs(chi.real()) < 1e-15);
  CHECK(chi.imag() == Approx(expected).epsilon(1e-13));
}

TEST_CASE("susceptibility guards its pole") {
  SystemParams p;
  p.omega1 = p.omega2 = p.omega_t = 0;
  p.gamma3 = 1e-14;
  p.gamma4 = 1e-14;
  p.gamma12 = 1e-14;
  CHECK_THROWS_AS(susceptibility(p, 0.0), NearSingular);
}

TEST_CASE("cavity response") {
  SystemParams p;
  p.g_sqrt_n = 0;
  CHECK(cavity_response(p, 0.0) == std::complex<double>(1, 0));
  const auto r = cavity_response(p, p.kappa);
  CHECK(r.real() == Approx(0.5).epsilon(1e-15));
  CHECK(r.imag() == Approx(0.5).epsilon(1e-15));

  SystemParams d;
  d.phi1 = kPi / 2;
  const auto r2 = cavity_response(d, 0.0);
  CHECK(r2.real() == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(r2.imag()) < 1e-15);

  // Pole: chi = 0 and kappa - i Delta_c can only vanish if kappa does, so
  // fake it with an explicit chi.
  CHECK_THROWS_AS(cavity_response(p, 0.0, std::complex<double>(0, -1)), NearSingular);
}

TEST_CASE("intensity ratios at named operating points") {
  SUBCASE("phi2 = pi empties the cavity") {
    std::mt19937_64 rng(2);
    for (int n = 0; n < 50; ++n) {
      auto p = random_params(rng);
      p.phi2 = kPi;
      const auto rec = intensity_ratios(p, 3.0 * std::sin(n));
      CHECK(rec.i_c < 1e-12);
      CHECK(rec.i_out_r == Approx(1).epsilon(1e-12));
      CHECK(rec.i_out_l == Approx(1).epsilon(1e-12));
      CHECK(rec.i_total == Approx(2).epsilon(1e-12));
    }
  }
  SUBCASE("empty resonant cavity, in-phase drive") {
    SystemParams p;
    p.g_sqrt_n = 0;
    const auto rec = intensity_ratios(p, 0.0);
    CHECK(rec.i_c == Approx(4).epsilon(1e-15));
    CHECK(rec.i_out_r == Approx(1).epsilon(1e-15));
    CHECK(rec.i_out_l == Approx(1).epsilon(1e-15));
    CHECK(rec.i_total == Approx(2).epsilon(1e-15));
  }
  SUBCASE("coherent absorber point") {
    SystemParams p;
    p.phi1 = kPi / 2;
    const auto rec = intensity_ratios(p, 0.0);
    CHECK(rec.i_out_r == Approx(1.0 / 9).epsilon(1e-12));
    CHECK(rec.i_out_l == Approx(1.0 / 9).epsilon(1e-12));
    CHECK(rec.i_c == Approx(16.0 / 9).epsilon(1e-12));
    CHECK(rec.absorption == Approx(8.0 / 9).epsilon(1e-12));
    CHECK(absorption_of(rec) == Approx(8.0 / 9).epsilon(1e-12));
  }
  SUBCASE("general point, frozen from numpy") {
    SystemParams q;
    q.g_sqrt_n = 1.3;
    q.omega1 = 0.7;
    q.omega2 = 1.9;
    q.omega_t = 0.4;
    q.gamma12 = 0.02;
    q.gamma3 = 1.2;
    q.gamma4 = 0.8;
    q.delta1 = 0.3;
    q.delta2 = -0.5;
    q.delta_t = 0.9;
    q.phi1 = 1.1;
    q.kappa = 1.7;
    q.delta_ac = 0.2;
    q.phi2 = 0.9;
    const auto rec = intensity_ratios(q, 0.6);
    CHECK(rec.i_c == Approx(1.3895188742872566).epsilon(1e-12));
    CHECK(rec.i_out_r == Approx(0.8630459057238563).epsilon(1e-12));
    CHECK(rec.i_out_l == Approx(0.03328277647153483).epsilon(1e-11));
  }
}

TEST_CASE("absorption_of") {
  IntensityRecord rec;
  rec.i_total = 2;
  CHECK(absorption_of(rec) == 0);
  rec.i_total = 0;
  CHECK(absorption_of(rec) == 1);
  rec.i_total = 2 + 1e-12;
  CHECK(absorption_of(rec) == Approx(0).epsilon(1e-11));
  rec.i_total = 2.1;
  CHECK_THROWS_AS(absorption_of(rec), PassivityViolation);
}

TEST_CASE("invariants over random parameters") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 500; ++n) {
    const SystemParams p = random_params(rng);
    const double dp = std::uniform_real_distribution<double>(-5, 5)(rng);
    const auto rec = intensity_ratios(p, dp);

    CHECK(rec.i_total == rec.i_out_r + rec.i_out_l);
    CHECK(rec.i_total >= 0);
    CHECK(rec.i_total <= 4);

    SystemParams shifted = p;
    shifted.phi1 += 2 * kPi;
    shifted.phi2 += 2 * kPi;
    const auto s = intensity_ratios(shifted, dp);
    CHECK(std::abs(s.i_c - rec.i_c) <= 1e-12);
    CHECK(std::abs(s.i_out_r - rec.i_out_r) <= 1e-12);
    CHECK(std::abs(s.i_out_l - rec.i_out_l) <= 1e-12);

    SystemParams reflected = p;
    reflected.phi1 = 2 * kPi - p.phi1;
    CHECK(std::abs(susceptibility(reflected, dp) - susceptibility(p, dp)) <=
          1e-13 * std::abs(susceptibility(p, dp)));

    SystemParams mirrored = p;
    mirrored.phi2 = -p.phi2;
    CHECK(std::abs(intensity_ratios(mirrored, dp).i_out_r - rec.i_out_l) <= 1e-12);

    for (double phi2 : {0.0, kPi}) {
      SystemParams q = p;
      q.phi2 = phi2;
      const auto e = intensity_ratios(q, dp);
      CHECK(std::abs(e.i_out_r - e.i_out_l) <= 1e-12);
    }

    SystemParams empty = p;
    empty.g_sqrt_n = 0;
    CHECK(std::abs(intensity_ratios(empty, dp).i_total - 2) <= 1e-12);
  }
}

TEST_CASE("passive over the default grid") {
  SystemParams p;
  double worst = 0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j < 36; ++j)
      for (int k = 0; k < 36; ++k) {
        p.phi1 = 2 * kPi * j / 36;
        p.phi2 = 2 * kPi * k / 36;
        worst = std::min(worst, intensity_ratios(p, -5 + 0.1 * i).absorption);
      }
  CHECK(worst >= -1e-9);
}

TEST_CASE("extended precision agrees with double") {
  SystemParams p;
  p.phi1 = 0.7;
  p.phi2 = 1.9;
  const auto lo = intensity_ratios(p, 0.4);
  const auto hi = intensity_ratios(p.cast<long double>(), 0.4L);
  CHECK(std::abs(static_cast<double>(hi.i_out_r) - lo.i_out_r) <= 1e-13);
  CHECK(std::abs(static_cast<double>(hi.i_c) - lo.i_c) <= 1e-13);
}

TEST_CASE("parameter validation") {
  SystemParams p;
  CHECK_NOTHROW(validate(p));
  p.gamma12 = -1;
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("gamma12"), ValidationError);
  p = {};
  p.kappa = 0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.phi1 = std::nan("");
  CHECK_THROWS_AS(validate(p), ValidationError);
}
