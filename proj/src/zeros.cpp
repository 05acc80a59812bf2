#include "dseries/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dseries/error.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ZeroTable parse_zeros(std::istream& in, const std::string& source, const ZeroLoadOptions& options) {
  ZeroTable table;
  table.source = source;
  std::vector<std::size_t> line_of;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size() || !std::isfinite(v) || v <= 0.0) {
      fail(ErrorKind::Ingestion, source + ":" + std::to_string(line_no) + ": not a positive decimal ordinate: '" +
                                     line + "'");
    }
    if (!table.ordinates.empty() && v <= table.ordinates.back()) {
      fail(ErrorKind::Ingestion, source + ":" + std::to_string(line_no) +
                                     ": ordinates must be strictly increasing (" + line + " after " +
                                     std::to_string(table.ordinates.back()) + ")");
    }
    table.ordinates.push_back(v);
    line_of.push_back(line_no);
  }
  if (table.ordinates.empty()) fail(ErrorKind::Ingestion, source + ": no zero ordinates found");

  const std::size_t checks = std::min(options.spot_checks, table.size());
  for (std::size_t j = 0; j < checks; ++j) {
    const double g = table.ordinates[j];
    double mag = 0.0;
    try {
      mag = std::abs(zeta(Complex(0.5, g)));
    } catch (const Error& e) {
      fail(ErrorKind::Ingestion, source + ":" + std::to_string(line_of[j]) + ": cannot evaluate zeta: " + e.what());
    }
    if (mag > options.spot_tolerance) {
      std::ostringstream os;
      os << source << ":" << line_of[j] << ": |zeta(1/2 + i*" << g << ")| = " << mag << " exceeds "
         << options.spot_tolerance;
      fail(ErrorKind::Ingestion, os.str());
    }
  }
  return table;
}

ZeroTable load_zeros(const std::string& path, const ZeroLoadOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Ingestion, "cannot open zero table '" + path + "'");
  return parse_zeros(in, path, options);
}

ZeroSum::ZeroSum(unsigned k, KernelKind kind, const ZeroTable& table, std::size_t J, unsigned workers)
    : k_(k), kind_(kind) {
  require(k >= 2, ErrorKind::InvalidArgument, "zero sums need k >= 2");
  require(J <= table.size(), ErrorKind::InvalidArgument,
          "J = " + std::to_string(J) + " exceeds the " + std::to_string(table.size()) + " tabulated zeros");
  require(kind != KernelKind::Zeta, ErrorKind::InvalidArgument, "the zeta kernel has no poles at zeros");
  terms_.resize(J);
  const auto& g = table.ordinates;
  auto shared = std::make_shared<const std::vector<double>>(g);
  const KernelSpec spec{k, kind, shared};
  parallel_for(J, workers == 0 ? default_workers() : workers, [&](std::size_t j, unsigned) {
    const Complex pole(0.5 - k, g[j]);
    Term& t = terms_[j];
    t.pole = pole;
    if (kind == KernelKind::ZetaPrimeOverZeta) {
      // zeta'/zeta has residue 1 at a simple zero.
      t.c_m1 = archimedean_factor(k, pole);
      t.c_m2 = 0.0;
      return;
    }
    double gap = 2.0 * g[j];
    if (j > 0) gap = std::min(gap, g[j] - g[j - 1]);
    if (j + 1 < g.size()) gap = std::min(gap, g[j + 1] - g[j]);
    const double radius = std::min(0.25, 0.4 * gap);
    const LaurentCoefficients c = laurent_extract(spec, pole, radius, 256);
    t.c_m1 = c.c_m1;
    t.c_m2 = c.c_m2;
  });
}

ZeroSumValue ZeroSum::evaluate(double x, std::size_t J) const {
  require(x > 0.0 && x < 1.0, ErrorKind::InvalidArgument, "zero sums need x in (0, 1)");
  const double L = std::log(x);
  ZeroSumValue out;
  out.kernel = kind_;
  const std::size_t count = std::min(J, terms_.size());
  out.zeros_used = count;
  out.per_zero.reserve(count);
  ComplexKahanSum acc;
  for (std::size_t j = 0; j < count; ++j) {
    const Term& t = terms_[j];
    const Complex upper = std::exp(-t.pole * L) * (t.c_m1 - t.c_m2 * L);
    // G(conj s) = conj G(s), so the conjugate zero contributes the conjugate residue.
    const Complex lower = std::exp(-std::conj(t.pole) * L) * (std::conj(t.c_m1) - std::conj(t.c_m2) * L);
    const Complex pair = upper + lower;
    acc.add(pair);
    out.per_zero.push_back(2.0 * std::abs(upper));
  }
  out.value = acc.value().real();
  out.imag_part = acc.value().imag();
  return out;
}

ZeroSumValue zero_sum(unsigned k, double x, const ZeroTable& table, std::size_t J, KernelKind kind) {
  return ZeroSum(k, kind, table, J).evaluate(x);
}

Coefficient series_coefficient(KernelKind kind) {
  switch (kind) {
    case KernelKind::ZetaPrimeOverZeta:
      return Coefficient::MuLog;
    case KernelKind::ZetaPrimeOverZetaSquared:
      return Coefficient::MuStarMuLog;
    case KernelKind::Zeta:
      break;
  }
  fail(ErrorKind::InvalidArgument, "the zeta kernel has no arithmetic series");
}

ExplicitCheckReport explicit_check(unsigned k, std::span<const double> xs, const ZeroTable& table,
                                   std::span<const std::size_t> J_values, const UpsilonModel& model,
                                   std::span<const SeriesValue> series) {
  require(model.k == k, ErrorKind::InvalidArgument, "model built for k = " + std::to_string(model.k));
  require(series.size() == xs.size(), ErrorKind::InvalidArgument, "one series value per x is required");
  const Coefficient expected = series_coefficient(model.kernel);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const SeriesValue& s = series[i];
    require(s.spec.coefficient == expected && s.spec.bernoulli_order == k && s.spec.denominator_power == k &&
                !s.spec.squared_b1,
            ErrorKind::InvalidArgument,
            "series sample " + std::to_string(i) + " does not match kernel " + to_string(model.kernel) +
                " and k = " + std::to_string(k));
    require(s.x.real() == xs[i], ErrorKind::InvalidArgument, "series sample " + std::to_string(i) + " has a different x");
  }
  std::size_t J_max = 0;
  for (std::size_t J : J_values) J_max = std::max(J_max, J);
  const ZeroSum all(k, model.kernel, table, J_max);

  ExplicitCheckReport rep;
  rep.k = k;
  rep.kernel = model.kernel;
  rep.xs.assign(xs.begin(), xs.end());
  rep.J_values.assign(J_values.begin(), J_values.end());
  for (std::size_t J : J_values) {
    std::vector<double> d(xs.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double zs = all.evaluate(xs[i], J).value;
      d[i] = series[i].real() - (model.evaluate(xs[i]) + zs);
      sq += d[i] * d[i];
    }
    rep.discrepancy.push_back(std::move(d));
    rep.l2.push_back(std::sqrt(sq));
  }
  return rep;
}

}  // namespace dseries
