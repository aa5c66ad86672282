// Pull-back by S = x q + s q^2, and reconstruction of S from the pull-back.

#include <iostream>

#include "thickmorph/thickmorph.hpp"

using namespace thickmorph;

int main() {
  ChartPair ch(1, 1, {"s"});
  const Ring r = ch.base();
  GenFunction S(ch, 2);
  S.set({0}, parse_poly("x1", r));
  S.set({0, 0}, parse_poly("s", r));

  const unsigned K = 4;
  const Poly g = parse_poly("y1^2", r);
  std::cout << "y(x)     = " << render_canonical(solve_y_map(S, g, K).components[0]) << "\n";
  std::cout << "Phi*(g)  = " << render_canonical(pullback(S, g, K)) << "\n";

  auto L = Functional::thick(S, K);
  auto check = homomorphism_check(L, g, parse_poly("y1 + 1", r), parse_poly("y1^3", r), K);
  std::cout << "multiplicative differential: " << (check.holds ? "yes" : "no") << "\n";
  std::cout << "associated S:\n" << render_genfunction(associate(L));
}
