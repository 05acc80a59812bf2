#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dseries/asymptotic.hpp"
#include "dseries/kernel.hpp"
#include "dseries/series.hpp"

namespace dseries {

/// Ordinates gamma_j of zeros 1/2 + i gamma_j, ascending.
struct ZeroTable {
  std::vector<double> ordinates;
  std::string source;

  std::size_t size() const noexcept { return ordinates.size(); }
};

struct ZeroLoadOptions {
  std::size_t spot_checks = 10;     // leading entries revalidated with zeta
  double spot_tolerance = 1e-6;     // on |zeta(1/2 + i gamma)|
};

/// Plain text, one ordinate per line, '#' comments and blank lines ignored.
ZeroTable load_zeros(const std::string& path, const ZeroLoadOptions& options = {});
ZeroTable parse_zeros(std::istream& in, const std::string& source, const ZeroLoadOptions& options = {});

struct ZeroSumValue {
  double value = 0.0;
  double imag_part = 0.0;  // of the conjugate-pair-combined sum
  std::size_t zeros_used = 0;
  std::vector<double> per_zero;  // 2 |residue| per zero: the pair term amplitude
  KernelKind kernel = KernelKind::ZetaPrimeOverZeta;
};

/// Sum over the first J zeros (and conjugates) of the residues of G(s) x^{-s} at s = rho - k.
/// Per-zero coefficients are computed once; evaluate() then costs O(J) per x.
class ZeroSum {
 public:
  ZeroSum(unsigned k, KernelKind kind, const ZeroTable& table, std::size_t J, unsigned workers = 0);

  /// Sum over the first `J` zeros (all of them by default).
  ZeroSumValue evaluate(double x, std::size_t J = static_cast<std::size_t>(-1)) const;
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  struct Term {
    Complex pole;  // rho - k, upper half-plane
    Complex c_m1;
    Complex c_m2;
  };
  unsigned k_;
  KernelKind kind_;
  std::vector<Term> terms_;
};

ZeroSumValue zero_sum(unsigned k, double x, const ZeroTable& table, std::size_t J, KernelKind kind);

struct ExplicitCheckReport {
  unsigned k = 0;
  KernelKind kernel = KernelKind::ZetaPrimeOverZeta;
  std::vector<double> xs;
  std::vector<std::size_t> J_values;
  std::vector<std::vector<double>> discrepancy;  // [J index][x index]
  std::vector<double> l2;                        // sqrt(sum_x discrepancy^2) per J
};

/// discrepancy = series - (C + Upsilon + trailing + zero sum over J zeros).
ExplicitCheckReport explicit_check(unsigned k, std::span<const double> xs, const ZeroTable& table,
                                   std::span<const std::size_t> J_values, const UpsilonModel& model,
                                   std::span<const SeriesValue> series);

/// Series coefficient whose inverse-Mellin integrand carries the given kernel.
Coefficient series_coefficient(KernelKind kind);

}  // namespace dseries
