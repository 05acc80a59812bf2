#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <vector>

namespace dseries {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr double kLogTwoPi = 1.837877066409345483560659472811235280;

/// Exact Bernoulli numbers B_0..B_max with B_1 = -1/2, plus rounded copies.
class BernoulliTable {
 public:
  explicit BernoulliTable(unsigned max_index = 64);

  unsigned max_index() const noexcept { return static_cast<unsigned>(exact_.size()) - 1; }
  const Rational& exact(unsigned j) const;
  double value(unsigned j) const;

  static const BernoulliTable& standard();

 private:
  std::vector<Rational> exact_;
  std::vector<double> rounded_;
};

/// B_j from the standard table (j <= 64).
Rational bernoulli_number(unsigned j);

/// Taylor jet of an analytic function at a point: f(s0 + h) ~ c0 + c1 h + c2 h^2.
struct Jet {
  Complex c0{}, c1{}, c2{};

  Complex derivative(int order) const { return order == 0 ? c0 : order == 1 ? c1 : 2.0 * c2; }

  friend Jet operator+(const Jet& a, const Jet& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
  }
  friend Jet operator*(Complex k, const Jet& a) { return {k * a.c0, k * a.c1, k * a.c2}; }
};

struct ZetaOptions {
  double max_height = 500.0;
};

/// zeta(s) with its first two derivatives as a Taylor jet.
Jet zeta_jet(Complex s, const ZetaOptions& options = {});

/// zeta(s), zeta'(s) or zeta''(s) for order 0, 1, 2.
Complex zeta_with_derivatives(Complex s, int order, const ZetaOptions& options = {});

inline Complex zeta(Complex s) { return zeta_with_derivatives(s, 0); }

/// zeta'(s)/zeta(s). Throws NearSingularity when |zeta(s)| < 1e-10.
Complex zeta_log_deriv(Complex s, const ZetaOptions& options = {});

/// Gamma(s) by the Lanczos approximation (g = 7, 9 terms), reflection below Re s = 1/2.
Complex gamma_complex(Complex s);

/// A logarithm of Gamma(s), correct modulo 2*pi*i; safe for large |Im s|.
Complex log_gamma_complex(Complex s);

Complex digamma(Complex s);
Complex trigamma(Complex s);

}  // namespace dseries
