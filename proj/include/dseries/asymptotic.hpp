#pragma once

#include <span>
#include <string>
#include <vector>

#include "dseries/kernel.hpp"

namespace dseries {

/// (p + r log x + t log^2 x) x^power, one residue of G(s) x^{-s} at s = -power.
struct PowerLogTerm {
  unsigned power = 0;
  double p = 0.0;
  double r = 0.0;
  double t = 0.0;  // only non-zero at triple poles

  double evaluate(double x) const;
};

/// Trailing pair of the residue expansion: the x^{k+2l} term from s = -k-2l
/// (p_l, r_l) and the x^{k+2l+1} term from s = -k-2l-1 (q_l).
struct TrailingTerm {
  unsigned l = 0;
  PowerLogTerm even;
  PowerLogTerm odd;

  double p() const { return even.p; }
  double r() const { return even.r; }
  double q() const { return odd.p; }
};

enum class ModelMethod { Residue, Fit };

/// C + Upsilon(x) + trailing series.
struct UpsilonModel {
  unsigned k = 2;
  KernelKind kernel = KernelKind::ZetaPrimeOverZeta;
  double C = 0.0;
  std::vector<PowerLogTerm> poly;  // powers 1..k-1
  std::vector<TrailingTerm> trailing;
  unsigned L_max = 0;
  ModelMethod method = ModelMethod::Residue;
  std::vector<LaurentCoefficients> extractions;  // residue method only, s = 0, -1, -2, ...

  /// Log coefficient of x^{k-1}.
  double h_dot() const;
  double upsilon(double x) const;
  double trailing_sum(double x) const;
  /// C + Upsilon(x) + trailing(x).
  double evaluate(double x) const;
};

/// Small-x limit constant for the zeta'/zeta integrand: 0 for odd k, else
/// -2 k! (2 pi i)^{-k} zeta'(k)/zeta(k) = B_k zeta'(k) / zeta(k)^2.
double constant_C(unsigned k);

/// Residue-built model from contour extraction at s = 0, -1, ..., -(k + 2 L_max + 1).
UpsilonModel build_upsilon(unsigned k, const KernelSpec& kernel, unsigned L_max, double radius = 0.25,
                           unsigned nodes = 256);

struct Sample {
  double x = 0.0;
  double value = 0.0;
};

/// Least squares on {1, x, ..., x^{k-1}, x^{k-1} log x}. Needs >= 2k+4 samples over >= 1 decade.
UpsilonModel fit_upsilon(std::span<const Sample> samples, unsigned k);

struct ResidualReport {
  unsigned k = 0;
  KernelKind kernel = KernelKind::ZetaPrimeOverZeta;
  std::vector<double> xs;
  std::vector<double> samples;
  std::vector<double> model;
  std::vector<double> residuals;
  std::vector<double> envelope_x;  // abscissa of each half-decade maximum
  std::vector<double> envelope;    // max |residual| per half-decade
  double exponent = 0.0;
  double exponent_ci = 0.0;  // 95% half-width from the regression
};

/// Residual envelope exponent. Half-decade bins are half-open [a, a + 1/2) starting at
/// log10(min x), the last one closed. `tail_bounds` (optional) flag truncation-dominated data.
ResidualReport residual_exponent(std::span<const double> xs, std::span<const double> samples,
                                 const UpsilonModel& model, std::span<const double> tail_bounds = {});

/// Slope and 95% CI half-width of log(env) against log(x).
ResidualReport envelope_exponent(std::span<const double> xs, std::span<const double> residuals);

}  // namespace dseries
