#include "dseries/periodic_bernoulli.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dseries/error.hpp"
#include "dseries/special.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double snap(double f) { return f >= 1.0 - 1e-15 ? 0.0 : f; }

}  // namespace

double frac_part(double x) { return snap(x - std::floor(x)); }

double frac_product(std::uint64_t n, double x) {
  const double nd = static_cast<double>(n);
  const double p = nd * x;
  const double e = std::fma(nd, x, -p);
  double f = p - std::floor(p);
  f += e;
  return snap(f - std::floor(f));
}

BernoulliPolynomial::BernoulliPolynomial(unsigned m) : m_(m) {
  require(m >= 1 && m <= kMaxOrder, ErrorKind::InvalidArgument,
          "Bernoulli order m = " + std::to_string(m) + " outside 1..32");
  const auto& bt = BernoulliTable::standard();
  Rational binom = 1;
  for (unsigned j = 0; j <= m; ++j) {
    const Rational c = binom * bt.exact(m - j);
    coef_[j] = c.convert_to<double>();
    mass_ += std::abs(coef_[j]);
    binom = binom * (m - j) / (j + 1);
  }
  if (m == 1) {
    sup_ = 0.5;
  } else {
    sup_ = 2.0 * std::tgamma(m + 1.0) * zeta(static_cast<double>(m)).real() / std::pow(kTwoPi, m);
  }
}

double BernoulliPolynomial::operator()(double t) const noexcept {
  double acc = coef_[m_];
  for (unsigned j = m_; j-- > 0;) acc = acc * t + coef_[j];
  return acc;
}

double pb_closed(unsigned m, double x) {
  require(std::isfinite(x), ErrorKind::InvalidArgument, "x must be finite");
  return BernoulliPolynomial(m).periodic(x);
}

PeriodicBernoulliEval pb_fourier(unsigned m, double x, std::uint64_t N) {
  require(m >= 1 && m <= BernoulliPolynomial::kMaxOrder, ErrorKind::InvalidArgument,
          "Bernoulli order m = " + std::to_string(m) + " outside 1..32");
  require(N >= 1, ErrorKind::InvalidArgument, "Fourier truncation N must be >= 1");
  require(std::isfinite(x), ErrorKind::InvalidArgument, "x must be finite");
  const double t = frac_part(x);
  const double dist = std::min(t, 1.0 - t);
  if (m == 1 && dist < 1e-6) {
    fail(ErrorKind::Domain,
         "Fourier series of B̄_1 converges to the midpoint at integers; x = " + std::to_string(x));
  }

  const double phase = 0.25 * m;  // pi m / 2 in turns
  KahanSum sum;
  double abs_sum = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double turns = frac_product(n, t) - phase;
    const double term = std::cos(kTwoPi * turns) / std::pow(static_cast<double>(n), m);
    sum.add(term);
    abs_sum += std::abs(term);
  }
  const double scale = 2.0 * std::tgamma(m + 1.0) / std::pow(kTwoPi, m);

  PeriodicBernoulliEval out;
  out.m = m;
  out.x = x;
  out.value = -scale * sum.value();
  out.method = PbMethod::Fourier;
  out.fourier_N = N;
  const double nd = static_cast<double>(N);
  if (m == 1) {
    out.tail_bound = 1.0 / (kPi * nd * dist);
  } else {
    out.tail_bound = scale / ((m - 1.0) * std::pow(nd, m - 1.0));
  }
  out.rounding_bound =
      4.0 * kEps * (scale * abs_sum + BernoulliPolynomial(m).coefficient_mass());
  return out;
}

}  // namespace dseries
