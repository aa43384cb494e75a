#pragma once

#include <functional>
#include <vector>

namespace omlab {

enum class KernelKind { monotone_kernel, convex_kernel };

// Point mass of the representing measure.
struct Atom {
  double lambda = 0.0;  // location, > 0
  double weight = 0.0;  // mass, > 0
};

// f(t) = f0 + beta*t [+ gamma*t^2] + sum_atoms k(lambda,t)*w + integral k(lambda,t) density(lambda) dlambda,
// with k(lambda,t) = lambda*t/(lambda+t) for the monotone kind and lambda*t^2/(lambda+t)
// for the convex kind.
struct IntegralRepresentation {
  KernelKind kind = KernelKind::monotone_kernel;
  double f0 = 0.0;
  double beta = 0.0;
  double gamma = 0.0;  // used by convex_kernel only
  std::vector<Atom> atoms;
  std::function<double(double)> density;  // empty: purely atomic/affine
  double support_lo = 0.0;                // density lives on [support_lo, inf)
  // Declared tail behavior: density(lambda) = O(lambda^-decay_exponent).
  // Must exceed 1 for the integral against either kernel to converge.
  double decay_exponent = 0.0;
};

// Evaluates the representation at t >= 0 (atoms summed exactly, density
// integrated by exp-sinh double-exponential quadrature).
// Throws RepresentationError when the declared decay is non-integrable or the
// quadrature tail has not decayed at the truncation boundary.
double reconstruct(const IntegralRepresentation& rep, double t);

}  // namespace omlab
