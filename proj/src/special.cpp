#include "dseries/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dseries/error.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

using namespace std::complex_literals;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kHalfLogTwoPi = 0.918938533204672741780329736405617640;

bool near_nonpositive_integer(Complex s) {
  if (s.real() > 0.5) return false;
  const double k = std::round(s.real());
  return std::abs(s - Complex(k, 0.0)) < 1e-12;
}

/// log sin(pi z), modulo 2*pi*i, without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| tiny here.
  return -1.0i * kPi * z + std::log(0.5i) + std::log(1.0 - std::exp(2.0i * kPi * z));
}

Complex lanczos_log_gamma(Complex z) {
  // Re z >= 1/2.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex digamma_asymptotic(Complex z) {
  // Re z >= 10 here.
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  const auto& bt = BernoulliTable::standard();
  Complex series = 0.0;
  Complex pw = inv2;
  for (unsigned k = 1; k <= 8; ++k) {
    series += bt.value(2 * k) / (2.0 * k) * pw;
    pw *= inv2;
  }
  return std::log(z) - 0.5 * inv - series;
}

Complex trigamma_asymptotic(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  const auto& bt = BernoulliTable::standard();
  Complex series = 0.0;
  Complex pw = inv2 * inv;
  for (unsigned k = 1; k <= 8; ++k) {
    series += bt.value(2 * k) * pw;
    pw *= inv2;
  }
  return inv + 0.5 * inv2 + series;
}

Jet inverse_linear(Complex d) {
  const Complex inv = 1.0 / d;
  return {inv, -inv * inv, inv * inv * inv};
}

/// n^{-s} as a jet around s.
Jet power_jet(double log_n, Complex s) {
  const Complex v = std::exp(-s * log_n);
  return {v, -log_n * v, 0.5 * log_n * log_n * v};
}

/// Euler-Maclaurin evaluation; accurate for Re s >= -1/2 with the cutoff used here.
Jet zeta_euler_maclaurin(Complex s) {
  const auto& bt = BernoulliTable::standard();
  const double t = std::abs(s.imag());
  auto cutoff = static_cast<std::uint64_t>(
      std::max({20.0, std::ceil(2.0 * t), std::ceil(std::abs(s)) + 10.0}));

  for (int attempt = 0; attempt < 6; ++attempt, cutoff *= 2) {
    ComplexKahanSum a0, a1, a2;
    for (std::uint64_t n = 1; n < cutoff; ++n) {
      const double ln = std::log(static_cast<double>(n));
      const Jet p = power_jet(ln, s);
      a0.add(p.c0);
      a1.add(p.c1);
      a2.add(p.c2);
    }
    const double big_n = static_cast<double>(cutoff);
    const double log_n = std::log(big_n);
    const Jet n_pow = power_jet(log_n, s);  // N^{-s}
    Jet tail = (big_n * n_pow) * inverse_linear(s - 1.0);
    tail = tail + 0.5 * n_pow;

    // Rising factorial s (s+1) ... (s+2j-2) as a jet, multiplied by N^{-s-2j+1}.
    Jet rising{s, 1.0, 0.0};
    double n_scale = 1.0 / big_n;
    bool converged = false;
    Jet acc = Jet{a0.value(), a1.value(), a2.value()} + tail;
    const unsigned max_j = bt.max_index() / 2 - 1;
    for (unsigned j = 1; j <= max_j; ++j) {
      const double coef = bt.value(2 * j) / std::tgamma(2.0 * j + 1.0);
      const Jet term = (coef * n_scale) * (rising * n_pow);
      acc = acc + term;
      // Next rising factor (s+2j-1)(s+2j) and remainder bound of the truncated expansion.
      const Jet next_rising = rising * Jet{s + (2.0 * j - 1.0), 1.0, 0.0} * Jet{s + 2.0 * j, 1.0, 0.0};
      const double sigma_term = s.real() + 2.0 * j + 1.0;
      if (sigma_term > 0.0) {
        // Size of the next term over all jet components, so that a vanishing
        // value (e.g. at s = 0) does not hide large derivative terms.
        const Jet next = (std::abs(bt.value(2 * j + 2)) / std::tgamma(2.0 * j + 3.0) * n_scale /
                          (big_n * big_n)) *
                         (next_rising * n_pow);
        const double bound = (std::abs(next.c0) + std::abs(next.c1) + std::abs(next.c2)) *
                             std::abs(s + (2.0 * j + 1.0)) / sigma_term;
        const double scale = std::max({1.0, std::abs(acc.c0), std::abs(acc.c1), std::abs(acc.c2)});
        if (bound <= 1e-16 * scale) {
          converged = true;
          break;
        }
      }
      rising = next_rising;
      n_scale /= big_n * big_n;
    }
    if (converged) return acc;
  }
  fail(ErrorKind::Numeric, "Euler-Maclaurin expansion of zeta did not converge at s = (" +
                               std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
}

/// zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s), as jets.
Jet zeta_reflected(Complex s) {
  const Complex b = 1.0 - s;
  const Complex log_a = s * kLogTwoPi - std::log(kPi) + log_gamma_complex(b);
  const Complex a = std::exp(log_a);
  const Complex l1 = kLogTwoPi - digamma(b);
  const Complex l1p = trigamma(b);
  const Jet factor{a, a * l1, 0.5 * a * (l1 * l1 + l1p)};
  const Complex u = 0.5 * kPi * s;
  const Jet sine{std::sin(u), 0.5 * kPi * std::cos(u), -0.125 * kPi * kPi * std::sin(u)};
  const Jet z = zeta_euler_maclaurin(b);
  const Jet flipped{z.c0, -z.c1, z.c2};
  return factor * sine * flipped;
}

}  // namespace

BernoulliTable::BernoulliTable(unsigned max_index) {
  exact_.resize(max_index + 1);
  rounded_.resize(max_index + 1);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0.
  exact_[0] = 1;
  for (unsigned m = 1; m <= max_index; ++m) {
    Rational acc = 0;
    boost::multiprecision::cpp_int binom = 1;  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      acc += Rational(binom) * exact_[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    exact_[m] = -acc / Rational(m + 1);
  }
  for (unsigned j = 0; j <= max_index; ++j) rounded_[j] = exact_[j].convert_to<double>();
}

const Rational& BernoulliTable::exact(unsigned j) const {
  require(j < exact_.size(), ErrorKind::InvalidArgument,
          "Bernoulli index " + std::to_string(j) + " above table maximum " +
              std::to_string(exact_.size() - 1));
  return exact_[j];
}

double BernoulliTable::value(unsigned j) const {
  require(j < rounded_.size(), ErrorKind::InvalidArgument,
          "Bernoulli index " + std::to_string(j) + " above table maximum " +
              std::to_string(rounded_.size() - 1));
  return rounded_[j];
}

const BernoulliTable& BernoulliTable::standard() {
  static const BernoulliTable table(64);
  return table;
}

Rational bernoulli_number(unsigned j) { return BernoulliTable::standard().exact(j); }

Jet zeta_jet(Complex s, const ZetaOptions& options) {
  require(std::isfinite(s.real()) && std::isfinite(s.imag()), ErrorKind::InvalidArgument,
          "zeta argument must be finite");
  if (s == Complex(1.0, 0.0)) fail(ErrorKind::Pole, "zeta has a pole at s = 1");
  require(std::abs(s.imag()) <= options.max_height, ErrorKind::UnsupportedRange,
          "|Im s| = " + std::to_string(std::abs(s.imag())) + " above max height " +
              std::to_string(options.max_height));
  if (s.real() < -0.5) return zeta_reflected(s);
  return zeta_euler_maclaurin(s);
}

Complex zeta_with_derivatives(Complex s, int order, const ZetaOptions& options) {
  require(order >= 0 && order <= 2, ErrorKind::InvalidArgument, "zeta derivative order must be 0, 1 or 2");
  return zeta_jet(s, options).derivative(order);
}

Complex zeta_log_deriv(Complex s, const ZetaOptions& options) {
  const Jet z = zeta_jet(s, options);
  if (std::abs(z.c0) < 1e-10) {
    fail(ErrorKind::NearSingularity, "|zeta(s)| < 1e-10 at s = (" + std::to_string(s.real()) + ", " +
                                         std::to_string(s.imag()) + "); use contour extraction");
  }
  return z.c1 / z.c0;
}

Complex gamma_complex(Complex s) {
  if (near_nonpositive_integer(s)) {
    fail(ErrorKind::Pole, "Gamma has a pole at s = " + std::to_string(std::round(s.real())));
  }
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * gamma_complex(1.0 - s));
  return std::exp(lanczos_log_gamma(s));
}

Complex log_gamma_complex(Complex s) {
  if (near_nonpositive_integer(s)) {
    fail(ErrorKind::Pole, "Gamma has a pole at s = " + std::to_string(std::round(s.real())));
  }
  if (s.real() < 0.5) return std::log(kPi) - log_sin_pi(s) - lanczos_log_gamma(1.0 - s);
  return lanczos_log_gamma(s);
}

Complex digamma(Complex s) {
  if (near_nonpositive_integer(s)) fail(ErrorKind::Pole, "digamma pole");
  if (s.real() < 0.5) {
    const Complex cot = std::cos(kPi * s) / std::sin(kPi * s);
    return digamma(1.0 - s) - kPi * cot;
  }
  Complex shift = 0.0;
  while (s.real() < 10.0) {
    shift -= 1.0 / s;
    s += 1.0;
  }
  return shift + digamma_asymptotic(s);
}

Complex trigamma(Complex s) {
  if (near_nonpositive_integer(s)) fail(ErrorKind::Pole, "trigamma pole");
  if (s.real() < 0.5) {
    const Complex sn = std::sin(kPi * s);
    return kPi * kPi / (sn * sn) - trigamma(1.0 - s);
  }
  Complex shift = 0.0;
  while (s.real() < 10.0) {
    shift += 1.0 / (s * s);
    s += 1.0;
  }
  return shift + trigamma_asymptotic(s);
}

}  // namespace dseries
