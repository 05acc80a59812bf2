#pragma once

#include <cstdint>

#include "dseries/kernel.hpp"

namespace dseries {

/// Vertical line s = c + i t, |t| <= T, for the inverse-Mellin integral of G(s) x^{-s}.
struct LineIntegralSpec {
  double c = 0.5;
  double T = 500.0;
  std::uint64_t steps = 200'000;  // Simpson intervals on [-T, T], even
  unsigned m = 2;
  double x = 0.3;
  KernelKind kernel = KernelKind::Zeta;
  unsigned workers = 0;
};

struct LineIntegralResult {
  /// -(m!/2 pi i) \int P Gamma (2 pi x)^{-s} K(s+m) ds: comparable to (2 pi i)^m times the series.
  Complex normalized{};
  /// normalized / (2 pi i)^m: comparable to the series itself (B̄_m(x) for the zeta kernel).
  Complex series_units{};
  double integrand_at_T = 0.0;  // |integrand| at t = T
};

LineIntegralResult line_integral(const LineIntegralSpec& spec);

/// |x^{-s} G(s)| at s = c + i t, in series units.
double line_integrand_magnitude(const LineIntegralSpec& spec, double t);

}  // namespace dseries
