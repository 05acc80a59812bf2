#include <doctest.h>

#include <cmath>
#include <random>

#include "dseries/asymptotic.hpp"
#include "dseries/error.hpp"
#include "dseries/periodic_bernoulli.hpp"

using namespace dseries;

namespace {

// zeta'(2), zeta'(4): 25-digit reference values.
constexpr double kZetaPrime2 = -0.9375482543158437537025741;
constexpr double kZetaPrime4 = -0.06891126589612537984882937;
const double kZeta2 = M_PI * M_PI / 6.0;
const double kZeta4 = std::pow(M_PI, 4) / 90.0;

KernelSpec spec(unsigned m, KernelKind kind) { return {m, kind, nullptr}; }

/// Pole order of G at s = -l from the factor census: Gamma is simple, P vanishes
/// when l = m - 1 (mod 2), and K(s + m) has its own poles or zeros.
int census(unsigned m, unsigned l, KernelKind kind) {
  const bool p_zero = (l % 2) == ((m - 1) % 2);
  const bool trivial_zero = l >= m + 2 && (l - m) % 2 == 0;
  int k_order = 0;
  switch (kind) {
    case KernelKind::Zeta:
      k_order = l + 1 == m ? 1 : trivial_zero ? -1 : 0;
      break;
    case KernelKind::ZetaPrimeOverZeta:
      k_order = (l + 1 == m || trivial_zero) ? 1 : 0;
      break;
    case KernelKind::ZetaPrimeOverZetaSquared:
      k_order = trivial_zero ? 2 : 0;
      break;
  }
  return std::max(0, 1 + k_order - (p_zero ? 1 : 0));
}

}  // namespace

TEST_CASE("constant_C") {
  CHECK(constant_C(1) == 0.0);
  CHECK(constant_C(3) == 0.0);
  CHECK(std::abs(constant_C(2)) == doctest::Approx(std::abs(kZetaPrime2) / (M_PI * M_PI * kZeta2)).epsilon(1e-12));
  CHECK(std::abs(constant_C(2)) == doctest::Approx(0.0577494).epsilon(1e-5));
  // Oracle-resolved sign: C_k = B_k zeta'(k) / zeta(k)^2.
  CHECK(constant_C(2) == doctest::Approx(kZetaPrime2 / (6.0 * kZeta2 * kZeta2)).epsilon(1e-12));
  CHECK(constant_C(4) == doctest::Approx(-kZetaPrime4 / (30.0 * kZeta4 * kZeta4)).epsilon(1e-11));
}

TEST_CASE("contour_laurent on Gamma alone") {
  const auto g = [](Complex s) { return gamma_complex(s); };
  const auto a = contour_laurent(g, -1.0, 0.25, 256);
  CHECK(std::abs(a.c_m1 - Complex(-1.0)) < 1e-12);
  CHECK(a.order() == 1);
  const auto b = contour_laurent(g, -2.0, 0.25, 256);
  CHECK(std::abs(b.c_m1 - Complex(0.5)) < 1e-12);
  // Regular point: c0 is the value.
  const auto c = contour_laurent(g, 2.5, 0.25, 128);
  CHECK(c.order() == 0);
  CHECK(std::abs(c.c0 - gamma_complex(2.5)) < 1e-12);
  CHECK_THROWS_AS(contour_laurent(g, -1.0, 0.25, 100), Error);
  CHECK_THROWS_AS(contour_laurent(g, -1.0, 0.25, 32), Error);
  // A radius reaching the neighbouring pole breaks geometric convergence.
  CHECK_THROWS_AS(contour_laurent(g, -1.0, 0.999, 64), Error);
}

TEST_CASE("laurent_extract examples") {
  const auto c0 = laurent_extract(spec(2, KernelKind::ZetaPrimeOverZeta), 0.0);
  CHECK(std::abs(c0.c_m1.real() - constant_C(2)) < 1e-8);
  CHECK(std::abs(c0.c_m1.imag()) < 1e-14);

  // m = 3, s = -2: P(-2) = 0 cancels the Gamma pole, leaving the zeta'/zeta pole simple.
  for (double r : {0.1, 0.05}) {
    const auto c = laurent_extract(spec(3, KernelKind::ZetaPrimeOverZeta), -2.0, r);
    CHECK(c.order() == 1);
    CHECK(c.c_m1.real() == doctest::Approx(1.5).epsilon(1e-9));
  }
}

TEST_CASE("pole isolation") {
  try {
    laurent_extract(spec(2, KernelKind::ZetaPrimeOverZeta), 0.0, 0.6);
    FAIL("expected configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
  // Near the first zero without a table.
  try {
    laurent_extract(spec(2, KernelKind::ZetaPrimeOverZeta), Complex(-1.5, 14.1), 0.1);
    FAIL("expected configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
  auto table = std::make_shared<const std::vector<double>>(std::vector<double>{14.134725141734693790, 21.022039638771554993});
  KernelSpec with_table{2, KernelKind::ZetaPrimeOverZeta, table};
  CHECK_THROWS_AS(laurent_extract(with_table, Complex(-1.5, 14.0), 0.1), Error);
  CHECK_NOTHROW(laurent_extract(with_table, Complex(-1.5, 14.134725141734693790), 0.25));
  // The zeta kernel has no poles at zeros.
  CHECK(pole_catalog(spec(2, KernelKind::Zeta), Complex(-1.5, 14.1), 1.0).empty());
}

TEST_CASE("pole-order census") {
  for (unsigned m : {2u, 3u, 4u}) {
    for (auto kind : {KernelKind::Zeta, KernelKind::ZetaPrimeOverZeta, KernelKind::ZetaPrimeOverZetaSquared}) {
      for (unsigned l = 0; l <= m + 3; ++l) {
        const auto c = laurent_extract(spec(m, kind), -static_cast<double>(l));
        INFO("m = " << m << ", kernel " << to_string(kind) << ", s = -" << l);
        CHECK(c.order() == census(m, l, kind));
        if (census(m, l, kind) <= 1) CHECK(std::abs(c.c_m2) <= std::max(1e-8 * std::abs(c.c_m1), c.noise(-2)));
      }
    }
  }
}

TEST_CASE("coefficients are radius independent") {
  for (auto kind : {KernelKind::ZetaPrimeOverZeta, KernelKind::ZetaPrimeOverZetaSquared}) {
    for (unsigned l = 0; l <= 7; ++l) {
      const auto a = laurent_extract(spec(3, kind), -static_cast<double>(l), 0.25, 256);
      const auto b = laurent_extract(spec(3, kind), -static_cast<double>(l), 0.125, 512);
      for (auto [x, y, j] : {std::tuple{a.c_m1, b.c_m1, -1}, {a.c_m2, b.c_m2, -2}, {a.c_m3, b.c_m3, -3}}) {
        CHECK(std::abs(x - y) <= 1e-8 * std::abs(x) + a.noise(j) + b.noise(j));
      }
    }
  }
}

TEST_CASE("zeta-kernel residue model reproduces the Bernoulli polynomial") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (unsigned k = 2; k <= 6; ++k) {
    const auto model = build_upsilon(k, spec(k, KernelKind::Zeta), 2);
    CHECK(std::abs(model.C - BernoulliTable::standard().value(k)) < 1e-14);
    for (int i = 0; i < 20; ++i) {
      const double x = u(rng);
      CHECK(std::abs(model.evaluate(x) - pb_closed(k, x)) < 1e-13);
    }
  }
}

TEST_CASE("build_upsilon for the log-derivative kernel") {
  const auto m2 = build_upsilon(2, spec(2, KernelKind::ZetaPrimeOverZeta), 0);
  REQUIRE(m2.poly.size() == 1);
  CHECK(m2.C == doctest::Approx(constant_C(2)).epsilon(1e-10));
  // P vanishes at s = 1 - k, so the pole there is simple and the log coefficient is zero.
  CHECK(std::abs(m2.h_dot()) < 1e-12);
  CHECK(m2.trailing.size() == 1);

  const auto m3 = build_upsilon(3, spec(3, KernelKind::ZetaPrimeOverZeta), 2);
  REQUIRE(m3.poly.size() == 2);
  CHECK(std::abs(m3.poly[0].r) < 1e-12);
  CHECK(std::abs(m3.poly[1].r) < 1e-12);
  CHECK(m3.poly[1].p == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(std::abs(m3.C) < 1e-15);
  // Trailing census: s = -k simple, s = -k-2l double for l >= 1, q_l = 0.
  CHECK(std::abs(m3.trailing[0].r()) < 1e-12);
  CHECK(std::abs(m3.trailing[1].r()) > 1.0);
  for (const auto& t : m3.trailing) CHECK(std::abs(t.q()) < 1e-12);

  for (const auto& model : {m2, m3}) {
    CHECK(std::abs(model.upsilon(1e-12)) < 1e-11);
    CHECK(std::abs(model.evaluate(1e-12) - model.C) < 1e-11);
  }
  CHECK_THROWS_AS(build_upsilon(1, spec(1, KernelKind::ZetaPrimeOverZeta), 0), Error);
  CHECK_THROWS_AS(build_upsilon(3, spec(3, KernelKind::ZetaPrimeOverZeta), 5), Error);
  CHECK_THROWS_AS(build_upsilon(3, spec(2, KernelKind::ZetaPrimeOverZeta), 1), Error);
}

TEST_CASE("squared kernel carries log^2 terms at trivial zeros") {
  const auto m = build_upsilon(3, spec(3, KernelKind::ZetaPrimeOverZetaSquared), 1);
  CHECK(std::abs(m.trailing[1].even.t) > 1.0);
  CHECK(std::abs(m.C) < 1e-15);
  const auto m2 = build_upsilon(2, spec(2, KernelKind::ZetaPrimeOverZetaSquared), 0);
  CHECK(m2.C == doctest::Approx(kZetaPrime2 / (6.0 * std::pow(kZeta2, 3))).epsilon(1e-10));
}

TEST_CASE("fit_upsilon") {
  std::vector<Sample> s;
  for (int i = 0; i < 12; ++i) {
    const double x = std::pow(10.0, -3.0 + 2.0 * i / 11.0);
    s.push_back({x, 0.3 + 2.0 * x - 5.0 * x * std::log(x)});
  }
  const auto m = fit_upsilon(s, 2);
  CHECK(m.method == ModelMethod::Fit);
  CHECK(m.C == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m.poly[0].p == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m.h_dot() == doctest::Approx(-5.0).epsilon(1e-12));

  std::vector<Sample> flat(12, Sample{0.01, 1.0});
  try {
    fit_upsilon(flat, 2);
    FAIL("expected fitting error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Fitting);
  }
  CHECK_THROWS_AS(fit_upsilon(std::span(s).first(7), 2), Error);
}

TEST_CASE("residual exponent on synthetic data") {
  std::vector<double> xs, pure, wavy;
  for (int i = 0; i < 201; ++i) {
    const double x = std::pow(10.0, -4.0 + 3.0 * i / 200.0);
    xs.push_back(x);
    pure.push_back(0.7 * std::pow(x, 2.5));
    wavy.push_back(std::pow(x, 2.5) * (1.0 + std::cos(10.0 * std::log(x))) / 2.0);
  }
  const auto a = envelope_exponent(xs, pure);
  CHECK(a.exponent == doctest::Approx(2.5).epsilon(1e-6));
  const auto b = envelope_exponent(xs, wavy);
  CHECK(std::abs(b.exponent - 2.5) < 0.1);

  UpsilonModel zero;
  zero.k = 3;
  const auto r = residual_exponent(xs, pure, zero);
  CHECK(r.exponent == doctest::Approx(2.5).epsilon(1e-6));
  REQUIRE(r.residuals.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(r.residuals[i] == r.samples[i] - r.model[i]);

  std::vector<double> zeros(xs.size(), 0.0);
  try {
    residual_exponent(xs, zeros, zero);
    FAIL("expected insufficient precision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientPrecision);
  }
  std::vector<double> huge_tails(xs.size(), 1.0);
  CHECK_THROWS_AS(residual_exponent(xs, pure, zero, huge_tails), Error);
  CHECK_THROWS_AS(envelope_exponent(std::span(xs).first(5), std::span(pure).first(5)), Error);
}
