// Geometric calculus (alpha = identity, beta = exp) in a few lines: field
// arithmetic on *-points, a series inverse on a sampled function algebra, and
// one axiom suite.

#include <iostream>

#include "starcalc/starcalc.hpp"

using namespace starcalc;

int main() {
  const GeneratorPair geometric = pair_from_names("identity", "exp");

  const auto z = StarComplex::from_preimages(geometric, 3.0, 4.0);
  const auto w = StarComplex::from_preimages(geometric, 1.0, -2.0);
  std::cout << "z       images " << format_images(z) << "\n";
  std::cout << "z * w   preimages " << format_preimages(z * w) << "\n";
  std::cout << "||z||   image " << format_number(c_norm(z).image()) << " (= e^5)\n";

  // f(z) = z + 1 on the disk grid is within the unit ball around 1, so its
  // inverse is the Neumann series sum of (-z)^n.
  const DomainPtr disk = make_disk_domain(geometric, 2, 8);
  const GridAlgebra functions(disk);
  const GridFunction f = functions.add(GridFunction::coordinate(disk), functions.unit());
  const auto inv = neumann_inverse(functions, f);
  std::cout << "1/(z+1) converged=" << std::boolalpha << inv.converged << " after " << inv.terms_used
            << " terms, residual " << format_number(inv.residual.preimage()) << "\n";

  const auto report = run_axiom_suite(Suite::c_star, functions, 200, 1e-9, 7);
  std::cout << emit_report({report}, ReportFormat::text);
  return report.passed ? 0 : 1;
}
