// Computes the same function's integral under several operations, then a
// closed-form profile and a signed (symmetric) integral.

#include <iostream>

#include "sugeno.hpp"

using namespace sugeno;

int main() {
  // Three points with mu({k}) = 0.5, mu of pairs 1, mu(X) = 2.
  const FiniteSpace x(3);
  const MonotoneMeasure mu = MonotoneMeasure::dense(
      x, {ExtReal(0.0), ExtReal(0.5), ExtReal(0.5), ExtReal(1.0), ExtReal(0.5), ExtReal(1.0), ExtReal(1.0), ExtReal(2.0)});
  const DiscreteFunction f{0.75, 0.25, 0.5};

  std::cout << "sugeno    " << sugeno::sugeno(mu, x.full(), f).value << "\n";
  std::cout << "shilkret  " << shilkret(mu, x.full(), f).value << "\n";
  std::cout << "ceil-min  " << generalized_integral(ops::ceil_min(), mu, x.full(), f).value << "\n";

  // Lebesgue measure on [0, 5] with f = x: the profile is t -> 5 - t.
  const IntervalInstance line{IntervalFamily::lebesgue(), Interval::closed(0, 5), PiecewiseMap::identity(Domain::real)};
  const IntegralResult r = integrate_profile(ops::min_op(), profile_of(line), 1e-9);
  std::cout << "sugeno of x on [0,5]: " << r.value << " (error bound " << r.error_bound.value_or(0.0) << ")\n";

  // Signed function: positive part joined with the negated negative part.
  const SignedFunction g{-1.0, 0.3, 1.0};
  std::cout << "symmetric (plus) " << symmetric_integral(ops::plus(), mu, x.full(), g) << "\n";
  std::cout << "symmetric (ovee) " << symmetric_integral(ops::ovee_op(), mu, x.full(), g) << "\n";
  return 0;
}
