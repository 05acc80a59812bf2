#include "dseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "dseries/error.hpp"
#include "dseries/periodic_bernoulli.hpp"
#include "dseries/sieve.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Running state of one partial sum: compensated value plus the absolute
/// sums used for the rounding allowance.
struct Partial {
  ComplexKahanSum sum;
  double abs_terms = 0.0;
  double abs_weights = 0.0;  // sum |a(n)| / n^p

  void merge(const Partial& other) {
    sum.merge(other.sum);
    abs_terms += other.abs_terms;
    abs_weights += other.abs_weights;
  }
};

double coefficient_value(Coefficient c, const SieveSegment& seg, std::size_t i) {
  switch (c) {
    case Coefficient::Mu:
      return seg.mu[i];
    case Coefficient::MuSquare:
      return seg.mu[i] != 0 ? 1.0 : 0.0;
    case Coefficient::MuLog:
      return seg.mu[i] == 0 ? 0.0 : seg.mu[i] * std::log(static_cast<double>(seg.lo + i));
    case Coefficient::Lambda:
      return seg.von_mangoldt(i);
    case Coefficient::TwoOmega:
      return std::ldexp(1.0, seg.omega[i]);
    case Coefficient::MuStarMuLog:
      return seg.mu_conv[i] == 0 ? 0.0
                                 : 0.5 * seg.mu_conv[i] * std::log(static_cast<double>(seg.lo + i));
  }
  return 0.0;
}

double inverse_power(double n, unsigned p) {
  double v = 1.0;
  for (unsigned j = 0; j < p; ++j) v *= n;
  return 1.0 / v;
}

/// Sieves [1, N] in chunks and hands each chunk to `visit(segment, chunk_index)`.
/// Returns after all chunks are done; `visit` writes only chunk-owned state.
template <typename Visit>
void for_each_chunk(std::uint64_t N, std::uint64_t chunk, unsigned workers, Visit&& visit) {
  const SegmentedSieve sieve(N);
  const std::uint64_t count = (N + chunk - 1) / chunk;
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  std::vector<SieveSegment> scratch(threads);
  parallel_for(count, threads, [&](std::size_t c, unsigned w) {
    const std::uint64_t lo = 1 + c * chunk;
    const std::uint64_t hi = std::min(N + 1, lo + chunk);
    sieve.sieve(lo, hi, scratch[w]);
    visit(scratch[w], c);
  });
}

void validate_plan(const TruncationPlan& plan) {
  require(plan.N >= 1, ErrorKind::InvalidArgument, "truncation N must be >= 1");
  require(plan.chunk >= 2, ErrorKind::InvalidArgument, "chunk must be >= 2");
}

unsigned resolve_workers(unsigned requested) { return requested == 0 ? default_workers() : requested; }

double kernel_sup(const SeriesSpec& spec, const std::optional<BernoulliPolynomial>& poly) {
  if (spec.coefficient == Coefficient::TwoOmega) return 1.0;
  if (spec.squared_b1) return 0.25;
  return poly->sup_norm();
}

}  // namespace

std::string to_string(Coefficient c) {
  switch (c) {
    case Coefficient::MuLog:
      return "mu_log";
    case Coefficient::Mu:
      return "mu";
    case Coefficient::MuSquare:
      return "mu_square";
    case Coefficient::Lambda:
      return "lambda";
    case Coefficient::TwoOmega:
      return "two_omega";
    case Coefficient::MuStarMuLog:
      return "mu_star_mu_log";
  }
  return "unknown";
}

Coefficient coefficient_from_string(const std::string& name) {
  for (Coefficient c : {Coefficient::MuLog, Coefficient::Mu, Coefficient::MuSquare, Coefficient::Lambda,
                        Coefficient::TwoOmega, Coefficient::MuStarMuLog}) {
    if (to_string(c) == name) return c;
  }
  fail(ErrorKind::InvalidArgument, "unknown coefficient kind '" + name + "'");
}

void SeriesSpec::validate() const {
  require(denominator_power >= 1, ErrorKind::InvalidArgument, "denominator_power must be >= 1");
  if (coefficient == Coefficient::TwoOmega) {
    require(!squared_b1, ErrorKind::InvalidArgument, "two_omega uses the exponential kernel, not B̄_1^2");
    return;
  }
  require(bernoulli_order >= 1 && bernoulli_order <= BernoulliPolynomial::kMaxOrder,
          ErrorKind::InvalidArgument, "bernoulli_order must be in 1..32");
  require(!squared_b1 || bernoulli_order == 1, ErrorKind::InvalidArgument,
          "squared_b1 requires bernoulli_order = 1");
  const bool log_weight = coefficient == Coefficient::MuLog || coefficient == Coefficient::Lambda ||
                          coefficient == Coefficient::MuStarMuLog;
  if (log_weight && bernoulli_order == 1 && !squared_b1) {
    fail(ErrorKind::Unsupported,
         "k = 1 with a log-weighted coefficient is only conditionally convergent; use k >= 2");
  }
}

double weight_tail(Coefficient c, unsigned p, std::uint64_t N) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  if (p <= 1) return std::numeric_limits<double>::infinity();
  const double q = p - 1.0;
  // I_a(M) = int_M^inf log^a t * t^{-p} dt.
  auto integrals = [q](double m) {
    const double L = std::log(m);
    const double mq = std::pow(m, -q);
    return std::array<double, 3>{mq / q, mq * (L / q + 1.0 / (q * q)),
                                 mq * (L * L / q + 2.0 * L / (q * q) + 2.0 / (q * q * q))};
  };
  const double nd = static_cast<double>(N);
  switch (c) {
    case Coefficient::Mu:
    case Coefficient::MuSquare:
      return integrals(nd)[0];
    case Coefficient::MuLog:
    case Coefficient::Lambda: {
      // log t / t^p decreases for t >= 2 once p >= 2.
      if (N >= 2) return integrals(nd)[1];
      return std::log(2.0) / std::pow(2.0, p) + integrals(2.0)[1];
    }
    case Coefficient::TwoOmega: {
      // Partial summation with sum_{n<=t} d(n) <= t (log t + 1).
      const auto I = integrals(nd);
      return p * (I[1] + I[0]);
    }
    case Coefficient::MuStarMuLog: {
      const auto I = integrals(nd);
      return 0.5 * p * (I[2] + I[1]);
    }
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<SeriesValue> eval_series_grid(const SeriesSpec& spec, std::span<const double> xs,
                                          const TruncationPlan& plan) {
  spec.validate();
  validate_plan(plan);
  for (double x : xs) require(std::isfinite(x), ErrorKind::InvalidArgument, "x must be finite");

  const bool exponential = spec.coefficient == Coefficient::TwoOmega;
  std::optional<BernoulliPolynomial> poly;
  if (!exponential) poly.emplace(spec.bernoulli_order);

  const std::uint64_t chunks = (plan.N + plan.chunk - 1) / plan.chunk;
  std::vector<std::vector<Partial>> partials(chunks, std::vector<Partial>(xs.size()));

  for_each_chunk(plan.N, plan.chunk, resolve_workers(plan.workers),
                 [&](const SieveSegment& seg, std::size_t c) {
                   auto& out = partials[c];
                   for (std::size_t i = 0; i < seg.size(); ++i) {
                     const double a = coefficient_value(spec.coefficient, seg, i);
                     if (a == 0.0) continue;
                     const std::uint64_t n = seg.lo + i;
                     const double w = a * inverse_power(static_cast<double>(n), spec.denominator_power);
                     for (std::size_t j = 0; j < xs.size(); ++j) {
                       const double t = frac_product(n, xs[j]);
                       Complex term;
                       if (exponential) {
                         term = w * std::polar(1.0, kTwoPi * t);
                       } else {
                         const double b = (*poly)(t);
                         term = w * (spec.squared_b1 ? b * b : b);
                       }
                       out[j].sum.add(term);
                       out[j].abs_terms += std::abs(term);
                       out[j].abs_weights += std::abs(w);
                     }
                   }
                 });

  const double tail = kernel_sup(spec, poly) * weight_tail(spec.coefficient, spec.denominator_power, plan.N);
  const double eval_scale =
      exponential ? 8.0 : 4.0 * (spec.bernoulli_order + 2.0) * poly->coefficient_mass();

  std::vector<SeriesValue> values(xs.size());
  std::vector<Partial> column(chunks);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t c = 0; c < chunks; ++c) column[c] = partials[c][j];
    const Partial total = tree_reduce<Partial>(column);
    SeriesValue& v = values[j];
    v.value = total.sum.value();
    v.complex_valued = exponential;
    v.N_used = plan.N;
    v.tail_bound = tail;
    v.rounding_bound = kEps * (4.0 * total.abs_terms + eval_scale * total.abs_weights);
    v.spec = spec;
    v.x = xs[j];
  }
  return values;
}

SeriesValue eval_series(const SeriesSpec& spec, double x, const TruncationPlan& plan) {
  const double xs[] = {x};
  return eval_series_grid(spec, xs, plan).front();
}

FourierSideValue eval_fourier_rhs(double x, std::uint64_t N, unsigned workers) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  TruncationPlan plan;
  plan.N = N;
  plan.workers = workers;
  plan.chunk = std::min<std::uint64_t>(plan.chunk, std::max<std::uint64_t>(N, 2));
  const SeriesValue s = eval_series({Coefficient::TwoOmega, 1, 2, false}, x, plan);
  FourierSideValue out;
  out.exponential_sum = s.value;
  out.real_combined = s.value.real() / (kPi * kPi);
  out.N_used = N;
  out.tail_bound = s.tail_bound;
  out.real_tail_bound = s.tail_bound / (kPi * kPi);
  out.rounding_bound = s.rounding_bound;
  return out;
}

double f_constant_term() { return 5.0 / (4.0 * kPi * kPi); }

FComplexValue eval_f_complex(Complex z, std::uint64_t N, unsigned workers) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorKind::InvalidArgument,
          "z must be finite");
  if (z.imag() < 0.0) {
    fail(ErrorKind::Domain, "f(z) needs Im z >= 0; the exponential series diverges below the real axis");
  }
  const double y = z.imag();
  std::uint64_t used = N;
  if (y > 0.0) {
    // Terms beyond here are below e^{-50} relative to the first.
    used = std::min<std::uint64_t>(N, static_cast<std::uint64_t>(std::ceil(50.0 / (kTwoPi * y))) + 1);
  }
  TruncationPlan plan;
  plan.N = used;
  plan.workers = workers;
  plan.chunk = std::min<std::uint64_t>(plan.chunk, std::max<std::uint64_t>(used, 2));

  const std::uint64_t chunks = (used + plan.chunk - 1) / plan.chunk;
  std::vector<ComplexKahanSum> partials(chunks);
  for_each_chunk(used, plan.chunk, resolve_workers(workers), [&](const SieveSegment& seg, std::size_t c) {
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const std::uint64_t n = seg.lo + i;
      const double nd = static_cast<double>(n);
      const double w = std::ldexp(1.0, seg.omega[i]) / (nd * nd) * std::exp(-kTwoPi * nd * y);
      partials[c].add(w * std::polar(1.0, kTwoPi * frac_product(n, z.real())));
    }
  });
  const Complex sum = tree_reduce<ComplexKahanSum>(partials).value();

  FComplexValue out;
  out.value = f_constant_term() + sum / (kPi * kPi);
  out.N_used = used;
  out.tail_bound = std::exp(-kTwoPi * static_cast<double>(used) * y) *
                   weight_tail(Coefficient::TwoOmega, 2, used) / (kPi * kPi);
  return out;
}

}  // namespace dseries
