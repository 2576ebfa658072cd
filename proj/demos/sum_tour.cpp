// Walks the main library entry points: build a unit-group context, evaluate a
// Gauss sum by closed form and by brute force, then compare every Jacobi path
// on one pair of characters.

#include <iostream>

#include "charsum/charsum.hpp"

using namespace charsum;

namespace {

void show(const char* label, const SumResult& res) {
  std::cout << "  " << label << ": (" << res.approx.real() << ", " << res.approx.imag() << ")"
            << "  [" << to_string(res.method) << (res.exact ? ", exact" : "") << "]\n";
}

}  // namespace

int main() {
  UnitGroupContext ctx = UnitGroupContext::build(3, 4);
  std::cout << "units mod " << ctx.q() << " are generated by " << ctx.generator_description()
            << "; phi(q) = " << ctx.phi() << "\n\n";

  Character chi = Character::make(ctx, 1);
  std::cout << "Gauss sum of the character with index c = 1:\n";
  show("closed form", gauss_eval(chi, GaussMethod::closed));
  show("brute force", gauss_eval(chi, GaussMethod::brute));

  Character psi = Character::make(ctx, 5);
  JacobiQuery query{{chi, psi}, 3};
  std::cout << "\nJacobi sum J_3 of the characters with indices (1, 5):\n";
  show("closed form ", jacobi_eval(query, JacobiMethod::closed));
  show("gauss ratio ", jacobi_eval(query, JacobiMethod::quotient));
  show("direct (k=2)", jacobi_eval(query, JacobiMethod::direct));
  show("brute force ", jacobi_eval(query, JacobiMethod::brute));

  Character prod = chi * psi;
  std::cout << "\nproduct character has index c = " << prod.c() << " and conductor "
            << prod.conductor() << "\n";
  return 0;
}
