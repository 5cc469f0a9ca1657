// Moment and pseudo-moment inequalities for the Motzkin support over the
// unit square, and the one inequality no sums-of-squares argument reaches.

#include <iostream>

#include "tropmom/tropmom.hpp"

int main() {
  using namespace tropmom;
  const PointConfig motzkin(2, {{0, 0}, {1, 1}, {1, 2}, {2, 1}});
  const auto cube = SemialgSpec::cube(2);

  std::cout << "moment cone facets:\n";
  for (const auto& nu : trop_moment_cone(motzkin, cube).cone().ineqs())
    std::cout << "  " << render_binomial(nu, motzkin).str() << "\n";

  const auto pseudo = trop_pseudomoment_cube_stable(motzkin);
  std::cout << "pseudo-moment cone facets (stable, E = cubical hull):\n";
  for (const auto& nu : pseudo.cone.cone.ineqs()) std::cout << "  " << render_binomial(nu, motzkin).str() << "\n";

  std::cout << "gap:\n";
  for (const auto& b : gap_report(motzkin, cube).inequalities) std::cout << "  " << b.str() << "\n";
}
