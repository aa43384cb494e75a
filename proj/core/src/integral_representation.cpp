#include "omlab/integral_representation.hpp"

#include <cmath>

#include "omlab/errors.hpp"

namespace omlab {

namespace {

double kernel_value(KernelKind kind, double lambda, double t) {
  const double base = lambda * t / (lambda + t);
  return kind == KernelKind::monotone_kernel ? base : base * t;
}

// Exp-sinh transform lambda = support_lo + exp(kappa*sinh(u)): trapezoid nodes
// cluster double-exponentially at both ends, so integrable endpoint
// singularities (e.g. lambda^{p-2} near 0) and slow polynomial tails are both
// handled at fixed cost. Cut at |u| = 6 keeps lambda in [e^-317, e^317], so
// lambda^q stays inside double range for every attached density (|q| <= 2).
constexpr double kKappa = 1.5707963267948966;  // pi/2
constexpr double kCut = 6.0;
constexpr int kNodes = 257;

}  // namespace

double reconstruct(const IntegralRepresentation& rep, double t) {
  if (t < 0.0) throw PreconditionError("reconstruct: t must be non-negative");
  double value = rep.f0 + rep.beta * t;
  if (rep.kind == KernelKind::convex_kernel) value += rep.gamma * t * t;
  for (const auto& atom : rep.atoms)
    value += atom.weight * kernel_value(rep.kind, atom.lambda, t);
  if (!rep.density) return value;

  if (!(rep.decay_exponent > 1.0))
    throw RepresentationError(
        "integral representation density declares decay exponent <= 1; the kernel integral "
        "diverges");

  const double h = 2.0 * kCut / (kNodes - 1);
  double integral = 0.0;
  double edge_mass = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double u = -kCut + i * h;
    const double e = std::exp(kKappa * std::sinh(u));
    const double lambda = rep.support_lo + e;
    const double rho = rep.density(lambda);
    if (rho < 0.0)
      throw RepresentationError("integral representation density is negative at lambda=" +
                                std::to_string(lambda));
    if (rho == 0.0) continue;
    const double term = kernel_value(rep.kind, lambda, t) * rho * kKappa * std::cosh(u) * e;
    if (!std::isfinite(term))
      throw RepresentationError("density produced a non-finite quadrature term at lambda=" +
                                std::to_string(lambda));
    if (i == 0 || i == kNodes - 1) {
      integral += 0.5 * term;
      edge_mass = std::max(edge_mass, std::abs(term));
    } else {
      integral += term;
    }
  }
  integral *= h;
  // The transformed integrand must be dead at the truncation boundary,
  // otherwise the declared decay is too slow for this rule.
  if (edge_mass * h > 1e-9 * (1.0 + std::abs(integral)))
    throw RepresentationError(
        "integral representation density fails its declared decay: quadrature tail is not "
        "negligible at the truncation boundary");
  return value + integral;
}

}  // namespace omlab
