#include "dseries/asymptotic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "dseries/error.hpp"

namespace dseries {

double PowerLogTerm::evaluate(double x) const {
  const double L = std::log(x);
  return std::pow(x, power) * (p + r * L + t * L * L);
}

double UpsilonModel::h_dot() const {
  for (const auto& term : poly) {
    if (term.power + 1 == k) return term.r;
  }
  return 0.0;
}

double UpsilonModel::upsilon(double x) const {
  double acc = 0.0;
  for (const auto& term : poly) acc += term.evaluate(x);
  return acc;
}

double UpsilonModel::trailing_sum(double x) const {
  double acc = 0.0;
  for (const auto& term : trailing) acc += term.even.evaluate(x) + term.odd.evaluate(x);
  return acc;
}

double UpsilonModel::evaluate(double x) const { return C + upsilon(x) + trailing_sum(x); }

double constant_C(unsigned k) {
  require(k >= 1, ErrorKind::InvalidArgument, "k must be >= 1");
  if (k % 2 == 1) return 0.0;
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // i^{-k}
  const Jet z = zeta_jet(static_cast<double>(k));
  return -2.0 * std::tgamma(k + 1.0) / std::pow(kTwoPi, k) * sign * (z.c1 / z.c0).real();
}

namespace {

PowerLogTerm term_from(const LaurentCoefficients& c, unsigned power) {
  // G(s) x^{-s} at s = -power: x^power (c_{-1} - c_{-2} L + c_{-3} L^2 / 2).
  return {power, c.c_m1.real(), -c.c_m2.real(), 0.5 * c.c_m3.real()};
}

}  // namespace

UpsilonModel build_upsilon(unsigned k, const KernelSpec& kernel, unsigned L_max, double radius, unsigned nodes) {
  require(k >= 2, ErrorKind::InvalidArgument, "build_upsilon needs k >= 2");
  require(L_max <= 4, ErrorKind::InvalidArgument, "L_max must be <= 4");
  require(kernel.m == k, ErrorKind::InvalidArgument, "kernel order m must equal k");

  UpsilonModel model;
  model.k = k;
  model.kernel = kernel.kind;
  model.L_max = L_max;
  model.method = ModelMethod::Residue;
  const unsigned last = k + 2 * L_max + 1;
  for (unsigned l = 0; l <= last; ++l) {
    model.extractions.push_back(laurent_extract(kernel, Complex(-static_cast<double>(l), 0.0), radius, nodes));
  }
  const auto& ex = model.extractions;
  const PowerLogTerm constant = term_from(ex[0], 0);
  model.C = constant.p;
  for (unsigned l = 1; l < k; ++l) model.poly.push_back(term_from(ex[l], l));
  for (unsigned l = 0; l <= L_max; ++l) {
    const unsigned pe = k + 2 * l;
    model.trailing.push_back({l, term_from(ex[pe], pe), term_from(ex[pe + 1], pe + 1)});
  }
  return model;
}

UpsilonModel fit_upsilon(std::span<const Sample> samples, unsigned k) {
  require(k >= 1, ErrorKind::InvalidArgument, "k must be >= 1");
  require(samples.size() >= 2 * k + 4, ErrorKind::InvalidArgument,
          "fit_upsilon needs at least 2k+4 = " + std::to_string(2 * k + 4) + " samples, got " +
              std::to_string(samples.size()));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& s : samples) {
    require(s.x > 0.0 && std::isfinite(s.x) && std::isfinite(s.value), ErrorKind::InvalidArgument,
            "samples need finite x > 0 and finite values");
    lo = std::min(lo, s.x);
    hi = std::max(hi, s.x);
  }
  if (hi < 10.0 * lo * (1.0 - 1e-12)) {
    fail(ErrorKind::Fitting, "degenerate grid: samples span less than one decade of x");
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(k) + 1;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = samples[i].x;
    for (Eigen::Index j = 0; j < cols - 1; ++j) A(i, j) = std::pow(x, static_cast<double>(j));
    A(i, cols - 1) = std::pow(x, k - 1.0) * std::log(x);
    b(i) = samples[i].value;
  }
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    scale(j) = A.col(j).cwiseAbs().maxCoeff();
    require(scale(j) > 0.0, ErrorKind::Fitting, "design column " + std::to_string(j) + " vanishes");
    A.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) {
    fail(ErrorKind::Fitting, "rank-deficient design: rank " + std::to_string(qr.rank()) + " < " +
                                 std::to_string(cols));
  }
  const Eigen::VectorXd coef = qr.solve(b).cwiseQuotient(scale);

  UpsilonModel model;
  model.k = k;
  model.method = ModelMethod::Fit;
  model.C = coef(0);
  for (unsigned l = 1; l < k; ++l) model.poly.push_back({l, coef(l), 0.0, 0.0});
  if (k == 1) {
    // The log column multiplies x^0; report it as a log term of the constant.
    model.poly.push_back({0, 0.0, coef(cols - 1), 0.0});
  } else {
    model.poly.back().r = coef(cols - 1);
  }
  return model;
}

ResidualReport envelope_exponent(std::span<const double> xs, std::span<const double> residuals) {
  require(xs.size() == residuals.size(), ErrorKind::InvalidArgument, "x and residual counts differ");
  require(xs.size() >= 10, ErrorKind::InvalidArgument, "residual_exponent needs >= 10 x values");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : xs) {
    require(x > 0.0 && std::isfinite(x), ErrorKind::InvalidArgument, "x values must be positive");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double a0 = std::log10(lo);
  const double span = std::log10(hi) - a0;
  const int bins = std::max(1, static_cast<int>(std::ceil(span / 0.5 - 1e-9)));

  ResidualReport rep;
  rep.xs.assign(xs.begin(), xs.end());
  rep.residuals.assign(residuals.begin(), residuals.end());
  for (int b = 0; b < bins; ++b) {
    double best = -1.0, best_x = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double pos = (std::log10(xs[i]) - a0) / 0.5;
      const bool inside = pos >= b - 1e-9 && (pos < b + 1 - 1e-9 || (b == bins - 1 && pos <= b + 1 + 1e-9));
      if (inside && std::abs(residuals[i]) > best) {
        best = std::abs(residuals[i]);
        best_x = xs[i];
      }
    }
    if (best < 0.0) continue;
    if (best == 0.0 || !std::isfinite(best)) {
      fail(ErrorKind::InsufficientPrecision, "residual envelope vanishes in a half-decade bin; increase N");
    }
    rep.envelope_x.push_back(best_x);
    rep.envelope.push_back(best);
  }
  const std::size_t n = rep.envelope.size();
  require(n >= 2, ErrorKind::InvalidArgument, "the x-grid must span at least two half-decades");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(rep.envelope_x[i]);
    my += std::log(rep.envelope[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(rep.envelope_x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(rep.envelope[i]) - my);
  }
  require(sxx > 0.0, ErrorKind::Fitting, "envelope abscissae coincide");
  rep.exponent = sxy / sxx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::log(rep.envelope[i]) - (my + rep.exponent * (std::log(rep.envelope_x[i]) - mx));
      ssr += e * e;
    }
    const boost::math::students_t dist(static_cast<double>(n - 2));
    rep.exponent_ci = boost::math::quantile(boost::math::complement(dist, 0.025)) * std::sqrt(ssr / (n - 2) / sxx);
  } else {
    rep.exponent_ci = std::numeric_limits<double>::infinity();
  }
  return rep;
}

ResidualReport residual_exponent(std::span<const double> xs, std::span<const double> samples,
                                 const UpsilonModel& model, std::span<const double> tail_bounds) {
  require(xs.size() == samples.size(), ErrorKind::InvalidArgument, "x and sample counts differ");
  require(tail_bounds.empty() || tail_bounds.size() == xs.size(), ErrorKind::InvalidArgument,
          "tail bound count differs from x count");
  std::vector<double> model_values(xs.size()), residuals(xs.size());
  bool any_resolved = tail_bounds.empty();
  bool any_nonzero = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(xs[i] > 0.0, ErrorKind::InvalidArgument, "x values must be positive");
    model_values[i] = model.evaluate(xs[i]);
    residuals[i] = samples[i] - model_values[i];
    any_nonzero = any_nonzero || residuals[i] != 0.0;
    if (!tail_bounds.empty() && std::abs(residuals[i]) >= 10.0 * tail_bounds[i]) any_resolved = true;
  }
  if (!any_nonzero) fail(ErrorKind::InsufficientPrecision, "all residuals are zero");
  if (!any_resolved) {
    fail(ErrorKind::InsufficientPrecision,
         "residuals are all below 10x the summation tail bounds; increase N");
  }
  ResidualReport rep = envelope_exponent(xs, residuals);
  rep.k = model.k;
  rep.kernel = model.kernel;
  rep.samples.assign(samples.begin(), samples.end());
  rep.model = std::move(model_values);
  return rep;
}

}  // namespace dseries
