#include "dseries/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "dseries/error.hpp"
#include "dseries/summation.hpp"

namespace dseries {

namespace {

using namespace std::complex_literals;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFirstZeroHeight = 14.0;

std::string describe(Complex s) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << s.real() << ", " << s.imag() << ")";
  return os.str();
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Zeta:
      return "zeta";
    case KernelKind::ZetaPrimeOverZeta:
      return "zeta_prime_over_zeta";
    case KernelKind::ZetaPrimeOverZetaSquared:
      return "zeta_prime_over_zeta_squared";
  }
  return "unknown";
}

KernelKind kernel_from_string(const std::string& name) {
  for (KernelKind k : {KernelKind::Zeta, KernelKind::ZetaPrimeOverZeta, KernelKind::ZetaPrimeOverZetaSquared}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorKind::InvalidArgument, "unknown kernel '" + name + "'");
}

Complex kernel_normalization(unsigned m) {
  // i^{-m} cycles through 1, -i, -1, i.
  static const Complex inv_i_pow[4] = {1.0, -1.0i, -1.0, 1.0i};
  return -std::tgamma(m + 1.0) / std::pow(kTwoPi, m) * inv_i_pow[m % 4];
}

Complex archimedean_factor(unsigned m, Complex s) {
  const double sign = m % 2 == 0 ? 1.0 : -1.0;
  Complex log_part = log_gamma_complex(s) - s * kLogTwoPi;
  Complex bracket;
  if (s.imag() >= 0.0) {
    // P(s) = e^{-i pi s/2} ((-1)^m + e^{i pi s}); |e^{i pi s}| <= 1 here.
    log_part += -0.5i * kPi * s;
    bracket = sign + std::exp(1.0i * kPi * s);
  } else {
    log_part += 0.5i * kPi * s;
    bracket = 1.0 + sign * std::exp(-1.0i * kPi * s);
  }
  return kernel_normalization(m) * std::exp(log_part) * bracket;
}

Complex kernel_factor(KernelKind kind, Complex w) {
  const Jet z = zeta_jet(w);
  switch (kind) {
    case KernelKind::Zeta:
      return z.c0;
    case KernelKind::ZetaPrimeOverZeta:
      return z.c1 / z.c0;
    case KernelKind::ZetaPrimeOverZetaSquared:
      return z.c1 / (z.c0 * z.c0);
  }
  return 0.0;
}

Complex kernel_integrand(const KernelSpec& kernel, Complex s) {
  return archimedean_factor(kernel.m, s) * kernel_factor(kernel.kind, s + static_cast<double>(kernel.m));
}

double LaurentCoefficients::noise(int j) const { return 1024.0 * kEps * f_max * std::pow(radius, -j); }

int LaurentCoefficients::order() const {
  const double a1 = std::abs(c_m1), a2 = std::abs(c_m2), a3 = std::abs(c_m3);
  if (a3 > std::max(noise(-3), 1e-8 * std::max(a2, a1))) return 3;
  if (a2 > std::max(noise(-2), 1e-8 * a1)) return 2;
  if (a1 > noise(-1)) return 1;
  return 0;
}

Complex LaurentCoefficients::residue_with_power(double x) const {
  const double L = std::log(x);
  return std::exp(-pole * L) * (c_m1 - c_m2 * L + 0.5 * c_m3 * L * L);
}

LaurentCoefficients contour_laurent(const std::function<Complex(Complex)>& f, Complex pole, double radius,
                                    unsigned nodes) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidArgument, "contour radius must be positive");
  require(nodes >= 64 && (nodes & (nodes - 1)) == 0, ErrorKind::InvalidArgument,
          "contour nodes must be a power of two >= 64");
  const unsigned fine = 2 * nodes;
  std::vector<Complex> values(fine);
  std::vector<Complex> offsets(fine);
  for (unsigned q = 0; q < fine; ++q) {
    offsets[q] = std::polar(radius, kTwoPi * q / fine);
    values[q] = f(pole + offsets[q]);
    require(std::isfinite(values[q].real()) && std::isfinite(values[q].imag()), ErrorKind::Numeric,
            "integrand not finite on the contour around " + describe(pole));
  }
  // Coarse rule uses the even nodes; the fine rule uses all of them.
  auto coefficients = [&](unsigned stride) {
    std::array<ComplexKahanSum, 4> acc;  // j = -3, -2, -1, 0
    for (unsigned q = 0; q < fine; q += stride) {
      const Complex h = offsets[q];
      acc[0].add(values[q] * h * h * h);
      acc[1].add(values[q] * h * h);
      acc[2].add(values[q] * h);
      acc[3].add(values[q]);
    }
    const double count = static_cast<double>(fine / stride);
    return std::array<Complex, 4>{acc[0].value() / count, acc[1].value() / count, acc[2].value() / count,
                                  acc[3].value() / count};
  };
  const auto coarse = coefficients(2);
  const auto refined = coefficients(1);

  LaurentCoefficients out;
  out.pole = pole;
  out.radius = radius;
  out.nodes = nodes;
  out.c_m3 = coarse[0];
  out.c_m2 = coarse[1];
  out.c_m1 = coarse[2];
  out.c0 = coarse[3];
  for (const Complex& v : values) out.f_max = std::max(out.f_max, std::abs(v));

  double worst = 0.0;
  for (int idx = 0; idx < 4; ++idx) {
    const int j = idx - 3;
    const double change = std::abs(refined[idx] - coarse[idx]);
    const double allowed = 1e-9 * std::abs(coarse[idx]) + out.noise(j);
    worst = std::max(worst, change / allowed);
  }
  out.doubling_change = worst;
  if (worst > 1.0) {
    std::ostringstream os;
    os << "Laurent coefficients at " << describe(pole) << " unstable under node doubling (" << nodes << " -> "
       << fine << " nodes, radius " << radius << "): change is " << worst
       << "x the allowed 1e-9 relative; try a smaller radius or more nodes";
    fail(ErrorKind::Numeric, os.str());
  }
  return out;
}

std::vector<Complex> pole_catalog(const KernelSpec& kernel, Complex center, double reach) {
  std::vector<Complex> poles;
  // Gamma poles (and the zeta pole at s = 1 - m) on the non-positive integers.
  const double lo = std::floor(center.real() - reach), hi = std::ceil(center.real() + reach);
  if (std::abs(center.imag()) <= reach) {
    for (double n = std::min(hi, 0.0); n >= lo; n -= 1.0) {
      if (std::abs(Complex(n, 0.0) - center) <= reach) poles.emplace_back(n, 0.0);
    }
  }
  if (kernel.kind == KernelKind::Zeta) return poles;

  // Non-trivial zeros of zeta(s + m): Re s in (-m, 1 - m), |Im s| >= 14.
  const double m = kernel.m;
  const bool strip_hit = center.real() + reach > -m && center.real() - reach < 1.0 - m &&
                         std::abs(center.imag()) + reach >= kFirstZeroHeight;
  if (!strip_hit) return poles;
  if (!kernel.zero_ordinates || kernel.zero_ordinates->empty()) {
    fail(ErrorKind::Configuration, "region around " + describe(center) +
                                       " reaches the critical strip; a zero table is needed to certify isolation");
  }
  const auto& gam = *kernel.zero_ordinates;
  require(std::abs(center.imag()) + reach < gam.back(), ErrorKind::Configuration,
          "region around " + describe(center) + " extends above the last tabulated zero");
  for (double g : gam) {
    for (double sign : {1.0, -1.0}) {
      const Complex p(0.5 - m, sign * g);
      if (std::abs(p - center) <= reach) poles.push_back(p);
    }
  }
  return poles;
}

LaurentCoefficients laurent_extract(const KernelSpec& kernel, Complex pole, double radius, unsigned nodes) {
  require(kernel.m >= 1, ErrorKind::InvalidArgument, "kernel order m must be >= 1");
  for (const Complex& p : pole_catalog(kernel, pole, 2.0 * radius)) {
    if (std::abs(p - pole) > 1e-9) {
      fail(ErrorKind::Configuration, "pole at " + describe(p) + " lies within 2*radius = " +
                                         std::to_string(2.0 * radius) + " of " + describe(pole));
    }
  }
  return contour_laurent([&](Complex s) { return kernel_integrand(kernel, s); }, pole, radius, nodes);
}

}  // namespace dseries
