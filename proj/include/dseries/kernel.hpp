#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dseries/special.hpp"

namespace dseries {

/// Dirichlet-series factor K(w) of the inverse-Mellin integrand.
enum class KernelKind {
  Zeta,                      // zeta(w): the single periodic Bernoulli function
  ZetaPrimeOverZeta,         // zeta'/zeta: the mu(n) log n series
  ZetaPrimeOverZetaSquared,  // zeta'/zeta^2: the (mu*mu)(n) log(n) / 2 series
};

std::string to_string(KernelKind kind);
KernelKind kernel_from_string(const std::string& name);

/// Integrand G(s) = N_m P(s) Gamma(s) (2 pi)^{-s} K(s + m) without the x^{-s} factor, where
/// P(s) = e^{i pi s/2} + (-1)^m e^{-i pi s/2} and N_m = -m!/(2 pi i)^m. With this normalization
/// the sum of residues of G(s) x^{-s} is the real series value itself.
struct KernelSpec {
  unsigned m = 2;
  KernelKind kind = KernelKind::ZetaPrimeOverZeta;
  /// Zero ordinates used to certify pole isolation off the real axis; optional.
  std::shared_ptr<const std::vector<double>> zero_ordinates;
};

/// -m!/(2 pi i)^m.
Complex kernel_normalization(unsigned m);

/// N_m P(s) Gamma(s) (2 pi)^{-s}, evaluated in log space so that large |Im s| is safe.
Complex archimedean_factor(unsigned m, Complex s);

/// K(w) for the given kind.
Complex kernel_factor(KernelKind kind, Complex w);

/// G(s) of the spec.
Complex kernel_integrand(const KernelSpec& kernel, Complex s);

/// Laurent coefficients c_j = (1/2 pi i) \oint F(s) (s - s0)^{-j-1} ds, j = -3..0.
struct LaurentCoefficients {
  Complex pole{};
  Complex c_m3{}, c_m2{}, c_m1{}, c0{};
  double radius = 0.25;
  unsigned nodes = 256;
  double f_max = 0.0;          // max |F| on the circle
  double doubling_change = 0;  // max |c_j(2 nodes) - c_j(nodes)| relative to |c_j| + noise

  /// Round-off level of c_j implied by f_max and the radius.
  double noise(int j) const;
  /// Pole order read from which coefficients are significant (0 for a regular point).
  int order() const;

  /// Residue of F(s) x^{-s} at the pole: x^{-s0} (c_{-1} - c_{-2} L + c_{-3} L^2 / 2), L = log x.
  Complex residue_with_power(double x) const;
};

/// Trapezoid rule on a circle; `nodes` must be a power of two >= 64. Coefficients are
/// recomputed with twice the nodes and a numeric error is raised when they move by
/// more than 1e-9 relative (plus round-off).
LaurentCoefficients contour_laurent(const std::function<Complex(Complex)>& f, Complex pole, double radius,
                                    unsigned nodes);

/// Poles of G within `reach` of `center`: s = 0, -1, -2, ... and s = rho - m.
/// Throws Configuration when the region needs zero ordinates that are not supplied.
std::vector<Complex> pole_catalog(const KernelSpec& kernel, Complex center, double reach);

/// contour_laurent on G after checking that no other catalogued pole lies within 2 radius.
LaurentCoefficients laurent_extract(const KernelSpec& kernel, Complex pole, double radius = 0.25,
                                    unsigned nodes = 256);

}  // namespace dseries
