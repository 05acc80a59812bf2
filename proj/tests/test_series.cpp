#include <doctest.h>

#include <cmath>
#include <random>

#include "dseries/error.hpp"
#include "dseries/series.hpp"
#include "oracles.hpp"

using namespace dseries;

namespace {

// zeta'(2), 25 digits from an arbitrary-precision evaluation.
constexpr double kZetaPrime2 = -0.9375482543158437537025741;
const double kZeta2 = M_PI * M_PI / 6.0;
const double kZeta4 = std::pow(M_PI, 4) / 90.0;

TruncationPlan plan_for(std::uint64_t N, std::uint64_t chunk = 1 << 16, unsigned workers = 1) {
  TruncationPlan p;
  p.N = N;
  p.chunk = chunk;
  p.workers = workers;
  return p;
}

double eq22_oracle(double x) { return std::cos(2 * M_PI * x) / (M_PI * M_PI) + 0.5 / (M_PI * M_PI); }

double b1(double y) { return y - std::floor(y) - 0.5; }

}  // namespace

TEST_CASE("brute-force agreement on a short range") {
  const std::uint64_t N = 3000;
  const double x = 0.2718281828;
  struct Case {
    SeriesSpec spec;
    double (*weight)(std::uint64_t);
  };
  const Case cases[] = {
      {SeriesSpec::theorem(Coefficient::MuLog, 3),
       [](std::uint64_t n) { return oracle::mobius(n) * std::log(double(n)); }},
      {SeriesSpec::theorem(Coefficient::Lambda, 2), [](std::uint64_t n) { return oracle::von_mangoldt(n); }},
      {SeriesSpec::theorem(Coefficient::MuStarMuLog, 4),
       [](std::uint64_t n) { return 0.5 * oracle::mobius_square_conv(n) * std::log(double(n)); }},
      {SeriesSpec::mu_squared_b1(), [](std::uint64_t n) { return double(oracle::mobius(n)); }},
      {SeriesSpec::mu_square_squared_b1(),
       [](std::uint64_t n) { return double(oracle::mobius(n) * oracle::mobius(n)); }},
  };
  for (const auto& c : cases) {
    double expect = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
      const double y = n * x;
      const double t = y - std::floor(y);
      double b;
      switch (c.spec.bernoulli_order) {
        case 1:
          b = b1(y) * b1(y);
          break;
        case 2:
          b = t * t - t + 1.0 / 6.0;
          break;
        case 3:
          b = t * t * t - 1.5 * t * t + 0.5 * t;
          break;
        default:
          b = t * t * t * t - 2 * t * t * t + t * t - 1.0 / 30.0;
      }
      expect += c.weight(n) * b / std::pow(double(n), c.spec.denominator_power);
    }
    const auto v = eval_series(c.spec, x, plan_for(N, 700));
    CHECK(v.real() == doctest::Approx(expect).epsilon(1e-11));
    CHECK(v.N_used == N);
  }
}

TEST_CASE("MuLog at integer x reduces to B_2 zeta'(2)/zeta(2)^2") {
  const auto v = eval_series(SeriesSpec::theorem(Coefficient::MuLog, 2), 1.0, plan_for(10'000'000, 1 << 18, 0));
  const double expect = kZetaPrime2 / (kZeta2 * kZeta2) / 6.0;
  CHECK(std::abs(v.real() - expect) <= v.error_bound());
  CHECK(std::abs(v.real() - (-0.0577494)) < 1e-6);
}

TEST_CASE("MuStarMuLog and Lambda anchors at x = 0") {
  const auto a =
      eval_series(SeriesSpec::theorem(Coefficient::MuStarMuLog, 2), 0.0, plan_for(2'000'000, 1 << 18, 0));
  CHECK(std::abs(a.real() - kZetaPrime2 / std::pow(kZeta2, 3) / 6.0) <= a.error_bound());
  const auto l = eval_series(SeriesSpec::theorem(Coefficient::Lambda, 2), 0.0, plan_for(2'000'000, 1 << 18, 0));
  CHECK(std::abs(6.0 * l.real() - (-kZetaPrime2 / kZeta2)) <= 6.0 * l.error_bound());
  CHECK(6.0 * l.real() == doctest::Approx(0.569961).epsilon(1e-5));
}

TEST_CASE("odd parity of the k = 3 series") {
  const auto spec = SeriesSpec::theorem(Coefficient::MuLog, 3);
  const double xs[] = {0.37, 0.63};
  const auto v = eval_series_grid(spec, xs, plan_for(1'000'000, 1 << 17, 0));
  CHECK(std::abs(v[1].real() + v[0].real()) <= 2.0 * v[0].error_bound());
}

TEST_CASE("Möbius-weighted squared B̄_1 identity") {
  const auto v = eval_series(SeriesSpec::mu_squared_b1(), 0.1, plan_for(10'000'000, 1 << 18, 0));
  CHECK(std::abs(v.real() - eq22_oracle(0.1)) <= 1e-6 + v.error_bound());
  CHECK(v.tail_bound == doctest::Approx(0.25 / 1e7).epsilon(1e-12));

  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(-1.0 + 2.0 * i / 99.0 + 1e-3);
  const auto grid = eval_series_grid(SeriesSpec::mu_squared_b1(), xs, plan_for(1'000'000, 1 << 17, 0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(grid[i].real() - eq22_oracle(xs[i])) <= 1e-6 + grid[i].error_bound());
  }
}

TEST_CASE("squared-coefficient identity against its Fourier side") {
  const double c0 = 0.25 * kZeta2 / kZeta4;
  const auto at0 = eval_series(SeriesSpec::mu_square_squared_b1(), 0.0, plan_for(1'000'000, 1 << 17, 0));
  CHECK(std::abs(at0.real() - c0) <= at0.error_bound());
  CHECK(at0.real() == doctest::Approx(0.3799545).epsilon(1e-6));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng);
    const auto lhs = eval_series(SeriesSpec::mu_square_squared_b1(), x, plan_for(400'000, 1 << 17, 0));
    const auto rhs = eval_fourier_rhs(x, 400'000);
    const double predicted = kZeta2 / (12.0 * kZeta4) + rhs.real_combined;
    CHECK(std::abs(lhs.real() - predicted) <= lhs.error_bound() + rhs.real_tail_bound + rhs.rounding_bound);
  }
}

TEST_CASE("eval_fourier_rhs examples") {
  const auto a = eval_fourier_rhs(0.0, 1'000'000);
  CHECK(std::abs(a.exponential_sum.real() - 2.5) < 1e-4);
  CHECK(std::abs(a.exponential_sum.real() - 2.5) <= a.tail_bound + a.rounding_bound);
  CHECK(a.tail_bound == doctest::Approx(2.0 * (std::log(1e6) + 2.0) / 1e6).epsilon(1e-12));

  const auto b = eval_fourier_rhs(0.5, 100'000);
  CHECK(std::abs(b.exponential_sum.imag()) <= b.tail_bound);

  const auto c = eval_fourier_rhs(0.3, 1);
  CHECK(std::abs(c.exponential_sum - std::polar(1.0, 2 * M_PI * 0.3)) < 1e-15);
  CHECK_THROWS_AS(eval_fourier_rhs(0.3, 0), Error);
}

TEST_CASE("f(z) on the closed upper half-plane") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Complex z(re(rng), im(rng));
    const auto a = eval_f_complex(z, 20'000);
    const auto b = eval_f_complex(z + 1.0, 20'000);
    CHECK(std::abs(a.value - b.value) < 1e-10);
  }
  const auto far = eval_f_complex(Complex(0.3, 40.0), 1000);
  CHECK(std::abs(far.value - kZeta2 / (12.0 * kZeta4)) < 1e-15);
  CHECK(f_constant_term() == doctest::Approx(0.1266515).epsilon(1e-6));

  const auto fz = eval_f_complex(Complex(0.1, 0.0), 1'000'000);
  const auto lhs = eval_series(SeriesSpec::mu_square_squared_b1(), 0.1, plan_for(1'000'000, 1 << 17, 0));
  CHECK(std::abs(fz.value.real() - lhs.real()) <= fz.tail_bound + lhs.error_bound() + 1e-12);

  try {
    eval_f_complex(Complex(0.1, -0.01), 10);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("validation") {
  try {
    eval_series(SeriesSpec::theorem(Coefficient::MuLog, 1), 0.3, plan_for(10));
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
  CHECK_THROWS_AS(eval_series(SeriesSpec::theorem(Coefficient::Lambda, 1), 0.3, plan_for(10)), Error);
  CHECK_THROWS_AS(eval_series(SeriesSpec::theorem(Coefficient::MuLog, 2), 0.3, plan_for(0)), Error);
  CHECK_THROWS_AS(eval_series({Coefficient::Mu, 2, 2, true}, 0.3, plan_for(10)), Error);
  CHECK_THROWS_AS(eval_series(SeriesSpec::theorem(Coefficient::MuLog, 2), NAN, plan_for(10)), Error);
  CHECK(coefficient_from_string("mu_star_mu_log") == Coefficient::MuStarMuLog);
  CHECK_THROWS_AS(coefficient_from_string("zeta"), Error);
  // Davenport-type k = 1 with mu is allowed but has no absolute tail bound.
  const auto d = eval_series(SeriesSpec::theorem(Coefficient::Mu, 1), 0.3, plan_for(1000));
  CHECK(std::isinf(d.tail_bound));
}

TEST_CASE("determinism across worker counts") {
  const double xs[] = {0.013, 0.37, 0.9};
  for (const auto& spec : {SeriesSpec::theorem(Coefficient::MuLog, 3), SeriesSpec::mu_square_squared_b1(),
                           SeriesSpec{Coefficient::TwoOmega, 1, 2, false}}) {
    const auto one = eval_series_grid(spec, xs, plan_for(500'000, 20'000, 1));
    for (unsigned w : {2u, 8u}) {
      const auto many = eval_series_grid(spec, xs, plan_for(500'000, 20'000, w));
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(one[i].value.real() == many[i].value.real());
        CHECK(one[i].value.imag() == many[i].value.imag());
      }
    }
  }
}

TEST_CASE("tail honesty: |S(N) - S(4N)| <= bound(N)") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(100);
  for (auto& x : xs) x = u(rng);
  const SeriesSpec specs[] = {SeriesSpec::theorem(Coefficient::MuLog, 2), SeriesSpec::theorem(Coefficient::MuLog, 3),
                              SeriesSpec::theorem(Coefficient::Lambda, 2),
                              SeriesSpec::theorem(Coefficient::MuStarMuLog, 3), SeriesSpec::mu_squared_b1(),
                              SeriesSpec::mu_square_squared_b1(), SeriesSpec{Coefficient::TwoOmega, 1, 2, false}};
  for (const auto& spec : specs) {
    for (std::uint64_t N : {1ull, 7ull, 2000ull}) {
      const auto a = eval_series_grid(spec, xs, plan_for(N, 512));
      const auto b = eval_series_grid(spec, xs, plan_for(4 * N, 512));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(std::abs(a[i].value - b[i].value) <= a[i].tail_bound + a[i].rounding_bound + b[i].rounding_bound);
      }
    }
  }
}

TEST_CASE("weight tails dominate brute-force partial tails") {
  const std::uint64_t M = 400'000;
  for (std::uint64_t N : {1ull, 2ull, 10ull, 1000ull}) {
    for (unsigned p : {2u, 3u}) {
      double one = 0, lg = 0, d = 0, dlg = 0;
      for (std::uint64_t n = N + 1; n <= M; ++n) {
        const double nd = double(n), w = std::pow(nd, -double(p)), L = std::log(nd);
        unsigned divisors = 1;
        for (auto [q, e] : oracle::factor(n)) divisors *= e + 1;
        one += w;
        lg += L * w;
        d += divisors * w;
        dlg += 0.5 * divisors * L * w;
      }
      CHECK(weight_tail(Coefficient::Mu, p, N) >= one);
      CHECK(weight_tail(Coefficient::MuLog, p, N) >= lg);
      CHECK(weight_tail(Coefficient::TwoOmega, p, N) >= d);
      CHECK(weight_tail(Coefficient::MuStarMuLog, p, N) >= dlg);
    }
  }
  CHECK(std::isinf(weight_tail(Coefficient::Mu, 1, 10)));
}
