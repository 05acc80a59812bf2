#include "dseries/mellin.hpp"

#include <cmath>

#include "dseries/error.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

void validate(const LineIntegralSpec& spec) {
  require(spec.c > 0.0 && spec.c < 1.0, ErrorKind::InvalidArgument, "line abscissa c must lie in (0, 1)");
  require(spec.T > 0.0 && std::isfinite(spec.T), ErrorKind::InvalidArgument, "T must be positive");
  require(spec.steps >= 2 && spec.steps % 2 == 0, ErrorKind::InvalidArgument, "steps must be even and >= 2");
  require(spec.m >= 1, ErrorKind::InvalidArgument, "m must be >= 1");
  require(spec.x > 0.0 && spec.x <= 1.0, ErrorKind::InvalidArgument, "x must lie in (0, 1]");
  if (std::abs(spec.c + spec.m - 1.0) < 1e-3) {
    fail(ErrorKind::Configuration, "the kernel pole at s + m = 1 lies on the integration line");
  }
}

/// G(s) x^{-s} on the line, in series units.
Complex integrand(const LineIntegralSpec& spec, double t) {
  const Complex s(spec.c, t);
  const KernelSpec k{spec.m, spec.kernel, nullptr};
  return kernel_integrand(k, s) * std::exp(-s * std::log(spec.x));
}

}  // namespace

double line_integrand_magnitude(const LineIntegralSpec& spec, double t) {
  validate(spec);
  return std::abs(integrand(spec, t));
}

LineIntegralResult line_integral(const LineIntegralSpec& spec) {
  validate(spec);
  // (1/2 pi i) \int G x^{-s} ds with ds = i dt is (1/2 pi) \int G x^{-s} dt. The
  // integrand is conjugate-symmetric in t, so integrate over [0, T] and double the real part.
  const std::uint64_t half = spec.steps / 2;
  require(half % 2 == 0, ErrorKind::InvalidArgument, "steps must be a multiple of 4 (Simpson on each half)");
  const double h = spec.T / static_cast<double>(half);
  const std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (half + 1 + chunk - 1) / chunk;
  std::vector<ComplexKahanSum> partial(chunks);
  parallel_for(chunks, spec.workers == 0 ? default_workers() : spec.workers, [&](std::size_t c, unsigned) {
    const std::uint64_t lo = c * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(half + 1, lo + chunk);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double w = (i == 0 || i == half) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      partial[c].add(w * integrand(spec, h * static_cast<double>(i)));
    }
  });
  const Complex simpson = tree_reduce<ComplexKahanSum>(partial).value() * (h / 3.0);
  const double value = 2.0 * simpson.real() / kTwoPi;

  LineIntegralResult out;
  out.series_units = value;
  Complex i_pow = 1.0;
  for (unsigned j = 0; j < spec.m; ++j) i_pow *= Complex(0.0, kTwoPi);
  out.normalized = i_pow * value;
  out.integrand_at_T = std::abs(integrand(spec, spec.T));
  return out;
}

}  // namespace dseries
