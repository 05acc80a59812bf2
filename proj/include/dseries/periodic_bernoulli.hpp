#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace dseries {

/// {x} = x - floor(x), with results within 1e-15 of 1 snapped to 0.
double frac_part(double x);

/// {n x} computed from the exact product n*x (two-product), so the result is
/// accurate to about one ulp even when n x is large.
double frac_product(std::uint64_t n, double x);

/// B_m(t) on [0, 1) as a polynomial with coefficients C(m,j) B_{m-j}, each
/// rounded once from exact rationals.
class BernoulliPolynomial {
 public:
  static constexpr unsigned kMaxOrder = 32;

  explicit BernoulliPolynomial(unsigned m);

  unsigned order() const noexcept { return m_; }
  /// B_m(t), no reduction of t.
  double operator()(double t) const noexcept;
  /// Periodic version B̄_m(x) = B_m({x}).
  double periodic(double x) const noexcept { return (*this)(frac_part(x)); }
  /// sum_j |C(m,j) B_{m-j}|, a scale for the evaluation rounding error.
  double coefficient_mass() const noexcept { return mass_; }
  /// sup |B̄_m|: 1/2 for m = 1, else 2 m! zeta(m) / (2 pi)^m.
  double sup_norm() const noexcept { return sup_; }

 private:
  unsigned m_;
  std::array<double, kMaxOrder + 1> coef_{};  // coef_[j] multiplies t^j
  double mass_ = 0.0;
  double sup_ = 0.0;
};

enum class PbMethod { ClosedForm, Fourier };

struct PeriodicBernoulliEval {
  unsigned m = 1;
  double x = 0.0;
  double value = 0.0;
  PbMethod method = PbMethod::ClosedForm;
  std::optional<std::uint64_t> fourier_N;
  std::optional<double> tail_bound;
  /// Floating-point allowance for comparing against the closed form.
  double rounding_bound = 0.0;
};

/// B̄_m(x) from the Bernoulli-polynomial closed form. 1 <= m <= 32.
double pb_closed(unsigned m, double x);

/// Partial Fourier sum -2 m! (2 pi)^{-m} sum_{n<=N} cos(2 pi n x - pi m / 2) / n^m
/// with a bound on the omitted tail. For m = 1, x may not lie within 1e-6 of an integer.
PeriodicBernoulliEval pb_fourier(unsigned m, double x, std::uint64_t N);

}  // namespace dseries
