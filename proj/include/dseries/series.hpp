#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dseries/special.hpp"

namespace dseries {

/// Arithmetic weight a(n) of a series.
enum class Coefficient {
  MuLog,        // mu(n) log n
  Mu,           // mu(n)
  MuSquare,     // mu(n)^2
  Lambda,       // von Mangoldt
  TwoOmega,     // 2^omega(n), exponential kernel
  MuStarMuLog,  // (mu*mu)(n) log(n) / 2
};

std::string to_string(Coefficient c);
Coefficient coefficient_from_string(const std::string& name);

/// sum_n a(n) K(n x) / n^denominator_power with K = B̄_k, B̄_1^2 or e^{2 pi i .}.
struct SeriesSpec {
  Coefficient coefficient = Coefficient::MuLog;
  unsigned bernoulli_order = 2;
  unsigned denominator_power = 2;
  bool squared_b1 = false;

  /// Series a(n) B̄_k(n x) / n^k with the default weight for k.
  static SeriesSpec theorem(Coefficient c, unsigned k) { return {c, k, k, false}; }
  /// sum mu(n) B̄_1(n x)^2 / n^2.
  static SeriesSpec mu_squared_b1() { return {Coefficient::Mu, 1, 2, true}; }
  /// sum (mu(n) B̄_1(n x) / n)^2.
  static SeriesSpec mu_square_squared_b1() { return {Coefficient::MuSquare, 1, 2, true}; }

  void validate() const;
};

struct TruncationPlan {
  std::uint64_t N = 1'000'000;
  std::uint64_t chunk = std::uint64_t{1} << 18;
  unsigned workers = 0;  // 0: default_workers()
};

struct SeriesValue {
  Complex value{};         // imaginary part is zero for real kernels
  bool complex_valued = false;
  std::uint64_t N_used = 0;
  double tail_bound = 0.0;      // bound on the omitted n > N terms
  double rounding_bound = 0.0;  // floating-point allowance on the partial sum
  SeriesSpec spec;
  Complex x{};

  double real() const noexcept { return value.real(); }
  /// tail_bound + rounding_bound.
  double error_bound() const noexcept { return tail_bound + rounding_bound; }
};

SeriesValue eval_series(const SeriesSpec& spec, double x, const TruncationPlan& plan);

/// Same series at many x; each sieve segment is produced once and reused.
std::vector<SeriesValue> eval_series_grid(const SeriesSpec& spec, std::span<const double> xs,
                                          const TruncationPlan& plan);

/// Fourier side of the (mu(n) B̄_1(n x) / n)^2 identity.
struct FourierSideValue {
  Complex exponential_sum{};  // sum_{n<=N} 2^omega(n) n^{-2} e^{2 pi i n x}
  double real_combined = 0.0;  // (1/pi^2) sum_{n<=N} 2^omega(n) n^{-2} cos(2 pi n x)
  std::uint64_t N_used = 0;
  double tail_bound = 0.0;       // for exponential_sum
  double real_tail_bound = 0.0;  // for real_combined
  double rounding_bound = 0.0;
};

FourierSideValue eval_fourier_rhs(double x, std::uint64_t N, unsigned workers = 0);

/// f(z) = zeta(2)/(12 zeta(4)) + (1/pi^2) sum 2^omega(n) e^{2 pi i n z} / n^2 for Im z >= 0.
/// On the real axis its real part is sum (mu(n) B̄_1(n z) / n)^2.
struct FComplexValue {
  Complex value{};
  std::uint64_t N_used = 0;
  double tail_bound = 0.0;
};

FComplexValue eval_f_complex(Complex z, std::uint64_t N, unsigned workers = 0);

/// Constant term zeta(2) / (12 zeta(4)) = 5 / (4 pi^2) of f.
double f_constant_term();

/// sum_{n>N} w(n) / n^p for the crude weight w of each coefficient
/// (1, log n, d(n), d(n) log(n) / 2). Infinite when p <= 1.
double weight_tail(Coefficient c, unsigned p, std::uint64_t N);

}  // namespace dseries
