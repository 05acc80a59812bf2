#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dseries/asymptotic.hpp"
#include "dseries/error.hpp"
#include "dseries/mellin.hpp"
#include "dseries/periodic_bernoulli.hpp"
#include "dseries/series.hpp"
#include "dseries/sieve.hpp"
#include "dseries/summation.hpp"
#include "dseries/zeros.hpp"

#ifndef DSERIES_VERSION
#define DSERIES_VERSION "0.0.0"
#endif
#ifndef DSERIES_DATA_DIR
#define DSERIES_DATA_DIR "data"
#endif

namespace dseries::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunConfig {
  std::string subcommand;
  unsigned k = 3;
  double x_min = 1e-3;
  double x_max = 1e-1;
  unsigned points = 25;
  bool linear = false;
  std::string N_text = "1e7";
  std::uint64_t N = 10'000'000;
  unsigned workers = 0;
  std::uint64_t chunk = std::uint64_t{1} << 18;
  std::string kernel = "mulog";
  std::string zeros;
  std::string format = "both";
  std::string output;
  // eval
  std::string coefficient = "mu_log";
  unsigned power = 0;
  bool squared_b1 = false;
  // upsilon / residual
  unsigned L_max = 4;
  // identities
  unsigned grid = 100;
  // zeros
  std::string J_values = "0,10,25,50,100";
  // mellin
  double x = 0.3;
  double c = 0.5;
  double T = 500.0;
  std::uint64_t steps = 200'000;

  json to_json() const {
    json j;
    j["subcommand"] = subcommand;
    j["k"] = k;
    j["x_min"] = x_min;
    j["x_max"] = x_max;
    j["points"] = points;
    j["linear"] = linear;
    j["N"] = N;
    j["workers"] = workers;
    j["chunk"] = chunk;
    j["kernel"] = kernel;
    j["zeros"] = zeros;
    j["format"] = format;
    j["output"] = output;
    j["coefficient"] = coefficient;
    j["power"] = power;
    j["squared_b1"] = squared_b1;
    j["L_max"] = L_max;
    j["grid"] = grid;
    j["J_values"] = J_values;
    j["x"] = x;
    j["c"] = c;
    j["T"] = T;
    j["steps"] = steps;
    return j;
  }
};

/// CSV text built row by row with 17-digit numbers.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) text_ << (i ? "," : "") << header[i];
    text_ << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << cells[i];
    text_ << "\n";
  }
  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

struct Report {
  std::string csv;
  json results;
  std::string summary;
};

std::uint64_t parse_count(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1.0) || v > 9.0e15 || v != std::floor(v)) {
    fail(ErrorKind::InvalidArgument, flag + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> make_grid(const RunConfig& cfg) {
  require(cfg.points >= 1, ErrorKind::InvalidArgument, "--points must be >= 1");
  require(cfg.x_min > 0.0 && cfg.x_max >= cfg.x_min, ErrorKind::InvalidArgument,
          "--x-min/--x-max must satisfy 0 < x-min <= x-max");
  std::vector<double> xs(cfg.points);
  if (cfg.points == 1) {
    xs[0] = cfg.x_min;
    return xs;
  }
  const double a = std::log10(cfg.x_min), b = std::log10(cfg.x_max);
  for (unsigned i = 0; i < cfg.points; ++i) {
    const double f = static_cast<double>(i) / (cfg.points - 1);
    xs[i] = cfg.linear ? cfg.x_min + (cfg.x_max - cfg.x_min) * f : std::pow(10.0, a + (b - a) * f);
  }
  xs.back() = cfg.x_max;
  return xs;
}

KernelKind parse_kernel(const std::string& name) {
  if (name == "mulog" || name == "lambda") return KernelKind::ZetaPrimeOverZeta;
  if (name == "mustarmu") return KernelKind::ZetaPrimeOverZetaSquared;
  if (name == "zeta") return KernelKind::Zeta;
  return kernel_from_string(name);
}

TruncationPlan plan_of(const RunConfig& cfg) {
  TruncationPlan plan;
  plan.N = cfg.N;
  plan.chunk = cfg.chunk;
  plan.workers = cfg.workers;
  return plan;
}

std::string zero_table_path(const RunConfig& cfg) {
  if (!cfg.zeros.empty()) return cfg.zeros;
  if (const char* env = std::getenv("DSERIES_ZEROS"); env && *env) return env;
  return std::string(DSERIES_DATA_DIR) + "/zeta_zeros_200.txt";
}

std::vector<std::size_t> parse_J_values(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == item.size() && !item.empty(), ErrorKind::InvalidArgument,
            "--J-values: '" + item + "' is not a non-negative integer");
    out.push_back(v);
  }
  require(!out.empty(), ErrorKind::InvalidArgument, "--J-values must list at least one count");
  return out;
}

Report run_eval(const RunConfig& cfg) {
  SeriesSpec spec;
  spec.coefficient = coefficient_from_string(cfg.coefficient);
  spec.bernoulli_order = cfg.k;
  spec.denominator_power = cfg.power == 0 ? cfg.k : cfg.power;
  spec.squared_b1 = cfg.squared_b1;
  const auto xs = make_grid(cfg);
  const auto values = eval_series_grid(spec, xs, plan_of(cfg));
  Csv csv({"x", "value", "imag", "N", "tail_bound", "rounding_bound"});
  json rows = json::array();
  for (const auto& v : values) {
    csv.row({num(v.x.real()), num(v.value.real()), num(v.value.imag()), std::to_string(v.N_used), num(v.tail_bound),
             num(v.rounding_bound)});
    rows.push_back({{"x", v.x.real()}, {"value", v.value.real()}, {"imag", v.value.imag()},
                    {"tail_bound", v.tail_bound}, {"rounding_bound", v.rounding_bound}});
  }
  return {csv.str(), {{"values", rows}}, std::to_string(values.size()) + " series values"};
}

Report run_identities(const RunConfig& cfg) {
  require(cfg.grid >= 2, ErrorKind::InvalidArgument, "--grid must be >= 2");
  std::vector<double> xs(cfg.grid);
  for (unsigned i = 0; i < cfg.grid; ++i) xs[i] = static_cast<double>(i) / cfg.grid;
  const TruncationPlan plan = plan_of(cfg);
  const double pi2 = kPi * kPi;
  const double z2 = kPi * kPi / 6.0, z4 = std::pow(kPi, 4) / 90.0;

  Csv csv({"identity", "x", "lhs", "oracle", "printed", "deviation", "allowance"});
  json list = json::array();

  // B̄_1(x)^2 - 1/12 against its cosine series.
  {
    double worst = 0.0, worst_printed = 0.0, allowance = 0.0;
    bool pass = true;
    for (double x : xs) {
      const double b = pb_closed(1, x);
      const double lhs = b * b - 1.0 / 12.0;
      const auto f = pb_fourier(2, x, cfg.N);  // (1/pi^2) sum cos(2 pi n x) / n^2
      const double allow = 1e-6 + *f.tail_bound + f.rounding_bound;
      const double printed = 0.5 * f.value;  // real part of (1/2pi^2) sum_{n>=1} e^{2 pi i n x}/n^2
      const double dev = std::abs(lhs - f.value);
      worst = std::max(worst, dev);
      worst_printed = std::max(worst_printed, std::abs(lhs - printed));
      allowance = std::max(allowance, allow);
      pass = pass && dev <= allow;
      csv.row({"bernoulli_square", num(x), num(lhs), num(f.value), num(printed), num(dev), num(allow)});
    }
    list.push_back({{"identity", "bernoulli_square"},
                    {"oracle_form", "B1(x)^2 - 1/12 = (1/pi^2) sum_{n>=1} cos(2 pi n x)/n^2"},
                    {"printed_form", "(1/(2 pi^2)) sum_{n>=1} e^{2 pi i n x}/n^2"},
                    {"max_deviation", worst},
                    {"max_deviation_printed", worst_printed},
                    {"allowance", allowance},
                    {"pass", pass}});
  }

  // sum mu(n) B̄_1(n x)^2 / n^2.
  {
    const auto lhs = eval_series_grid(SeriesSpec::mu_squared_b1(), xs, plan);
    double worst = 0.0, worst_printed = 0.0, allowance = 0.0, mean = 0.0, cos_coef = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      const double oracle = std::cos(kTwoPi * x) / pi2 + 0.5 / pi2;
      const double printed = (std::cos(kTwoPi * x) + 1.0) / (2.0 * pi2);
      const double dev = std::abs(lhs[i].real() - oracle);
      const double allow = 1e-6 + lhs[i].error_bound();
      worst = std::max(worst, dev);
      worst_printed = std::max(worst_printed, std::abs(lhs[i].real() - printed));
      allowance = std::max(allowance, allow);
      pass = pass && dev <= allow;
      mean += lhs[i].real() / xs.size();
      cos_coef += 2.0 * lhs[i].real() * std::cos(kTwoPi * x) / xs.size();
      csv.row({"mobius_bernoulli_square", num(x), num(lhs[i].real()), num(oracle), num(printed), num(dev), num(allow)});
    }
    list.push_back({{"identity", "mobius_bernoulli_square"},
                    {"oracle_form", "cos(2 pi x)/pi^2 + 1/(2 pi^2)"},
                    {"printed_form", "(1/(2 pi^2)) (e^{2 pi i x} + 1)"},
                    {"observed_constant", mean},
                    {"observed_cos_coefficient", cos_coef},
                    {"oracle_constant", 0.5 / pi2},
                    {"oracle_cos_coefficient", 1.0 / pi2},
                    {"printed_constant", 0.5 / pi2},
                    {"printed_cos_coefficient", 0.5 / pi2},
                    {"max_deviation", worst},
                    {"max_deviation_printed", worst_printed},
                    {"allowance", allowance},
                    {"pass", pass}});
  }

  // sum (mu(n) B̄_1(n x) / n)^2 against the 2^omega exponential series.
  {
    const auto lhs = eval_series_grid(SeriesSpec::mu_square_squared_b1(), xs, plan);
    const auto rhs = eval_series_grid(SeriesSpec{Coefficient::TwoOmega, 1, 2, false}, xs, plan);
    const double oracle_c = z2 / (12.0 * z4);
    const double printed_c = z2 * z2 / (12.0 * z4);
    double worst = 0.0, worst_printed = 0.0, allowance = 0.0, observed_c = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double series = rhs[i].value.real() / pi2;
      const double oracle = oracle_c + series;
      const double printed = printed_c + 0.5 * series;
      const double dev = std::abs(lhs[i].real() - oracle);
      const double allow = 1e-6 + lhs[i].error_bound() + rhs[i].error_bound() / pi2;
      worst = std::max(worst, dev);
      worst_printed = std::max(worst_printed, std::abs(lhs[i].real() - printed));
      allowance = std::max(allowance, allow);
      pass = pass && dev <= allow;
      observed_c += (lhs[i].real() - series) / xs.size();
      csv.row({"squarefree_bernoulli_square", num(xs[i]), num(lhs[i].real()), num(oracle), num(printed), num(dev),
               num(allow)});
    }
    list.push_back({{"identity", "squarefree_bernoulli_square"},
                    {"oracle_form", "(1/12) zeta(2)/zeta(4) + (1/pi^2) sum 2^omega(n) cos(2 pi n x)/n^2"},
                    {"printed_form", "(1/12) zeta(2)^2/zeta(4) + (1/(2 pi^2)) sum 2^omega(n) e^{2 pi i n x}/n^2"},
                    {"observed_constant", observed_c},
                    {"oracle_constant", oracle_c},
                    {"printed_constant", printed_c},
                    {"value_at_0", lhs[0].real()},
                    {"oracle_value_at_0", 0.25 * z2 / z4},
                    {"max_deviation", worst},
                    {"max_deviation_printed", worst_printed},
                    {"allowance", allowance},
                    {"pass", pass}});
  }
  bool all = true;
  for (const auto& item : list) all = all && item["pass"].get<bool>();
  return {csv.str(), {{"identities", list}, {"all_pass", all}},
          std::string("identity suite: ") + (all ? "all pass" : "deviations above allowance")};
}

UpsilonModel residue_model(const RunConfig& cfg, KernelKind kind) {
  return build_upsilon(cfg.k, KernelSpec{cfg.k, kind, nullptr}, cfg.L_max);
}

json model_json(const UpsilonModel& m) {
  json poly = json::array();
  for (const auto& t : m.poly) poly.push_back({{"power", t.power}, {"p", t.p}, {"r", t.r}, {"t", t.t}});
  json trailing = json::array();
  for (const auto& t : m.trailing) {
    trailing.push_back({{"l", t.l}, {"p", t.p()}, {"r", t.r()}, {"log2", t.even.t}, {"q", t.q()}});
  }
  return {{"method", m.method == ModelMethod::Residue ? "residue" : "fit"},
          {"k", m.k},
          {"kernel", to_string(m.kernel)},
          {"C", m.C},
          {"h_dot", m.h_dot()},
          {"poly", poly},
          {"trailing", trailing}};
}

Report run_upsilon(const RunConfig& cfg) {
  const KernelKind kind = parse_kernel(cfg.kernel);
  const UpsilonModel residue = residue_model(cfg, kind);
  Csv csv({"method", "power", "p", "r", "t"});
  auto add_rows = [&](const UpsilonModel& m, const std::string& name) {
    csv.row({name, "0", num(m.C), "0", "0"});
    for (const auto& t : m.poly) csv.row({name, std::to_string(t.power), num(t.p), num(t.r), num(t.t)});
    for (const auto& t : m.trailing) {
      csv.row({name, std::to_string(t.even.power), num(t.even.p), num(t.even.r), num(t.even.t)});
      csv.row({name, std::to_string(t.odd.power), num(t.odd.p), num(t.odd.r), num(t.odd.t)});
    }
  };
  add_rows(residue, "residue");
  json results{{"residue", model_json(residue)}};
  if (kind != KernelKind::Zeta) {
    const auto xs = make_grid(cfg);
    const auto series = eval_series_grid(SeriesSpec::theorem(series_coefficient(kind), cfg.k), xs, plan_of(cfg));
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < xs.size(); ++i) samples.push_back({xs[i], series[i].real()});
    const UpsilonModel fit = fit_upsilon(samples, cfg.k);
    add_rows(fit, "fit");
    results["fit"] = model_json(fit);
    results["constant_difference"] = fit.C - residue.C;
  }
  return {csv.str(), results, "C = " + num(residue.C)};
}

Report run_residual(const RunConfig& cfg) {
  const KernelKind kind = parse_kernel(cfg.kernel);
  const auto xs = make_grid(cfg);
  const auto series = eval_series_grid(SeriesSpec::theorem(series_coefficient(kind), cfg.k), xs, plan_of(cfg));
  const UpsilonModel model = residue_model(cfg, kind);
  std::vector<double> samples, tails;
  for (const auto& v : series) {
    samples.push_back(v.real());
    tails.push_back(v.error_bound());
  }
  const ResidualReport rep = residual_exponent(xs, samples, model, tails);
  Csv csv({"x", "series", "model", "residual", "tail_bound"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.row({num(xs[i]), num(samples[i]), num(rep.model[i]), num(rep.residuals[i]), num(tails[i])});
  }
  json env = json::array();
  for (std::size_t i = 0; i < rep.envelope.size(); ++i) env.push_back({{"x", rep.envelope_x[i]}, {"max_abs_residual", rep.envelope[i]}});
  json results{{"kernel", to_string(kind)},
               {"exponent", rep.exponent},
               {"exponent_ci", rep.exponent_ci},
               {"expected_exponent", cfg.k - 0.5},
               {"envelope", env},
               {"model", model_json(model)}};
  return {csv.str(), results, "exponent = " + num(rep.exponent) + " +/- " + num(rep.exponent_ci)};
}

Report run_zeros(const RunConfig& cfg) {
  const KernelKind kind = parse_kernel(cfg.kernel);
  const ZeroTable table = load_zeros(zero_table_path(cfg));
  const auto Js = parse_J_values(cfg.J_values);
  const auto xs = make_grid(cfg);
  const auto series = eval_series_grid(SeriesSpec::theorem(series_coefficient(kind), cfg.k), xs, plan_of(cfg));
  const UpsilonModel model = residue_model(cfg, kind);
  const ExplicitCheckReport rep = explicit_check(cfg.k, xs, table, Js, model, series);

  std::vector<std::string> header{"x", "series", "model", "tail_bound"};
  for (std::size_t J : Js) header.push_back("discrepancy_J" + std::to_string(J));
  Csv csv(header);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row{num(xs[i]), num(series[i].real()), num(model.evaluate(xs[i])),
                                 num(series[i].error_bound())};
    for (std::size_t j = 0; j < Js.size(); ++j) row.push_back(num(rep.discrepancy[j][i]));
    csv.row(row);
  }
  json l2 = json::array();
  for (std::size_t j = 0; j < Js.size(); ++j) l2.push_back({{"J", Js[j]}, {"l2", rep.l2[j]}});
  bool monotone = true;
  for (std::size_t j = 0; j + 1 < rep.l2.size(); ++j) monotone = monotone && rep.l2[j + 1] < rep.l2[j];
  json results{{"kernel", to_string(kind)},
               {"zero_table", table.source},
               {"zeros_available", table.size()},
               {"l2", l2},
               {"strictly_decreasing", monotone}};
  return {csv.str(), results, "L2 at J = " + std::to_string(Js.back()) + ": " + num(rep.l2.back())};
}

Report run_mellin(const RunConfig& cfg) {
  LineIntegralSpec spec;
  spec.c = cfg.c;
  spec.T = cfg.T;
  spec.steps = cfg.steps;
  spec.m = cfg.k;
  spec.x = cfg.x;
  spec.kernel = parse_kernel(cfg.kernel);
  spec.workers = cfg.workers;
  const auto r = line_integral(spec);
  Csv csv({"m", "x", "c", "T", "steps", "series_units", "target", "error"});
  json results{{"normalized_re", r.normalized.real()},
               {"normalized_im", r.normalized.imag()},
               {"series_units", r.series_units.real()},
               {"integrand_at_T", r.integrand_at_T}};
  std::string target = "", error = "";
  if (spec.kernel == KernelKind::Zeta) {
    const double b = pb_closed(spec.m, spec.x);
    results["target"] = b;
    results["error"] = r.series_units.real() - b;
    target = num(b);
    error = num(r.series_units.real() - b);
  }
  csv.row({std::to_string(spec.m), num(spec.x), num(spec.c), num(spec.T), std::to_string(spec.steps),
           num(r.series_units.real()), target, error});
  return {csv.str(), results, "line integral = " + num(r.series_units.real())};
}

Report run_selftest(const RunConfig&) {
  struct Check {
    std::string name;
    std::function<bool()> run;
  };
  const std::vector<Check> checks = {
      {"mu(1..10)",
       [] {
         const auto t = build_sieve(10);
         const int want[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
         for (int n = 1; n <= 10; ++n) {
           if (t.mu(n) != want[n - 1]) return false;
         }
         return true;
       }},
      {"omega(1..6)",
       [] {
         const auto t = build_sieve(6);
         const unsigned want[] = {0, 1, 1, 1, 1, 2};
         for (int n = 1; n <= 6; ++n) {
           if (t.omega(n) != want[n - 1]) return false;
         }
         return true;
       }},
      {"lookup_term(60)", [] { const auto t = lookup_term(build_sieve(100), 60); return t.omega == 3 && t.mu == 0; }},
      {"stream batches", [] {
         int batches = 0;
         stream_segments(100, 10, [&](const SieveSegment&) { ++batches; });
         return batches == 10;
       }},
      {"zeta(0) = -1/2", [] { return std::abs(zeta(0.0).real() + 0.5) < 1e-14; }},
      {"zeta(-2) = 0", [] { return std::abs(zeta(-2.0)) < 1e-14; }},
      {"zeta'/zeta(0) = log 2 pi", [] { return std::abs(zeta_log_deriv(0.0).real() - kLogTwoPi) < 1e-12; }},
      {"B1(0.25)", [] { return std::abs(pb_closed(1, 0.25) + 0.25) < 1e-15; }},
      {"B2(0.5)", [] { return std::abs(pb_closed(2, 0.5) + 1.0 / 12.0) < 1e-15; }},
      {"B3(0.25)", [] { return std::abs(pb_closed(3, 0.25) - 0.046875) < 1e-15; }},
      {"Fourier B2(0)", [] { return std::abs(pb_fourier(2, 0.0, 10'000).value - 1.0 / 6.0) < 1e-4; }},
      {"Fourier B1(1/2)", [] { return std::abs(pb_fourier(1, 0.5, 1000).value) < 1e-12; }},
      {"C_1 = C_3 = 0", [] { return constant_C(1) == 0.0 && constant_C(3) == 0.0; }},
      {"Res Gamma(-1)", [] {
         const auto c = contour_laurent([](Complex s) { return gamma_complex(s); }, -1.0, 0.25, 256);
         return std::abs(c.c_m1 + 1.0) < 1e-12;
       }},
      {"single-term exponential series", [] {
         return std::abs(eval_fourier_rhs(0.3, 1).exponential_sum - std::polar(1.0, kTwoPi * 0.3)) < 1e-15;
       }},
      {"synthetic exponent", [] {
         std::vector<double> xs, r;
         for (int i = 0; i < 25; ++i) {
           xs.push_back(std::pow(10.0, -3.0 + 2.0 * i / 24.0));
           r.push_back(0.7 * std::pow(xs.back(), 2.5));
         }
         return std::abs(envelope_exponent(xs, r).exponent - 2.5) < 1e-6;
       }},
  };
  Csv csv({"check", "status"});
  json list = json::array();
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    csv.row({"\"" + c.name + "\"", ok ? "PASS" : "FAIL"});
    list.push_back({{"check", c.name}, {"pass", ok}});
  }
  if (!all) fail(ErrorKind::Numeric, "selftest failed:\n" + csv.str());
  return {csv.str(), {{"checks", list}, {"all_pass", all}}, std::to_string(checks.size()) + " checks passed"};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
  if (!f) fail(ErrorKind::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Periodic-Bernoulli Dirichlet series: evaluation, asymptotics and explicit-formula checks", "dseries"};
  app.set_config("--config", "", "key=value configuration file ('#' comments); flags win");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.allow_config_extras(false);
  app.require_subcommand(1, 1);

  app.add_option("--k", cfg.k, "Bernoulli order k (m for mellin)");
  app.add_option("--x-min", cfg.x_min, "Smallest x of the grid");
  app.add_option("--x-max", cfg.x_max, "Largest x of the grid");
  app.add_option("--points", cfg.points, "Number of grid points");
  app.add_flag("--linear", cfg.linear, "Linear instead of log-spaced grid");
  app.add_option("--N", cfg.N_text, "Series truncation (accepts 1e8)");
  app.add_option("--workers", cfg.workers, "Worker threads (default DSERIES_WORKERS or all cores)");
  app.add_option("--chunk", cfg.chunk, "Terms per reduction chunk");
  app.add_option("--kernel", cfg.kernel, "mulog | mustarmu | zeta (or the full kernel names)");
  app.add_option("--zeros", cfg.zeros, "Zero-ordinate table (default DSERIES_ZEROS or the bundled table)");
  app.add_option("--format", cfg.format, "csv | json | both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--output", cfg.output, "Output prefix; '-' writes to stdout (default: subcommand name)");
  app.add_option("--coefficient", cfg.coefficient, "eval: mu_log | mu | mu_square | lambda | two_omega | mu_star_mu_log");
  app.add_option("--power", cfg.power, "eval: denominator power (default k)");
  app.add_flag("--squared-b1", cfg.squared_b1, "eval: use B̄_1(nx)^2 (requires k = 1)");
  app.add_option("--L-max", cfg.L_max, "Trailing-series length of the residue model");
  app.add_option("--grid", cfg.grid, "identities: grid points on [0, 1)");
  app.add_option("--J-values", cfg.J_values, "zeros: comma-separated zero counts");
  app.add_option("--x", cfg.x, "mellin: x");
  app.add_option("--c", cfg.c, "mellin: line abscissa");
  app.add_option("--T", cfg.T, "mellin: truncation height");
  app.add_option("--steps", cfg.steps, "mellin: Simpson intervals");

  const std::map<std::string, std::string> subcommands = {
      {"eval", "Evaluate a series on an x-grid"},
      {"identities", "Check the squared-Bernoulli identities"},
      {"upsilon", "Residue-built and fitted asymptotic models"},
      {"residual", "Residual envelope exponent of the mu log n series"},
      {"zeros", "Explicit-formula reconstruction over zeta zeros"},
      {"mellin", "Vertical-line Mellin quadrature"},
      {"selftest", "Quick built-in example checks"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.output.empty()) cfg.output = cfg.subcommand;

  try {
    cfg.N = parse_count(cfg.N_text, "--N");
    Report report;
    if (cfg.subcommand == "eval") {
      report = run_eval(cfg);
    } else if (cfg.subcommand == "identities") {
      report = run_identities(cfg);
    } else if (cfg.subcommand == "upsilon") {
      report = run_upsilon(cfg);
    } else if (cfg.subcommand == "residual") {
      report = run_residual(cfg);
    } else if (cfg.subcommand == "zeros") {
      report = run_zeros(cfg);
    } else if (cfg.subcommand == "mellin") {
      report = run_mellin(cfg);
    } else {
      report = run_selftest(cfg);
    }
    json doc{{"tool", "dseries"}, {"version", DSERIES_VERSION}, {"config", cfg.to_json()}, {"results", report.results}};
    const std::string json_text = doc.dump(2) + "\n";
    const bool want_csv = cfg.format != "json", want_json = cfg.format != "csv";
    if (cfg.output == "-") {
      if (want_csv) out << report.csv;
      if (want_json) out << json_text;
    } else {
      if (want_csv) write_file(cfg.output + ".csv", report.csv);
      if (want_json) write_file(cfg.output + ".json", json_text);
      out << cfg.subcommand << ": " << report.summary << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "dseries " << cfg.subcommand << ": " << e.what() << "\n";
    return is_numeric_failure(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "dseries " << cfg.subcommand << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dseries::cli
