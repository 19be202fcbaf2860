// Minimal tour: Weyl characters, the chiral Euler character and its q-dimension,
// and the Drinfeld-Sokolov cohomology of a critical-level affine sl2 Verma module.

#include "cbwb/cbwb.hpp"

#include <iostream>

int main()
{
    using namespace cbwb;

    RootSystem a2 = build_root_system("A2");
    FiniteCharacter adj = weyl_character(a2, a2.rho());
    std::cout << "dim V_rho(A2) = " << adj.dimension << ", zero weight multiplicity "
              << adj.multiplicity(a2.zero()) << "\n";

    BwbReport rep = verify_chiral_bwb(a2, a2.rho(), {3, 6});
    std::cout << "chiral BWB at rho, N=3: " << (rep.pass ? "pass" : "FAIL") << ", Euler polynomial "
              << rep.euler_polynomial.str() << "\n";

    QSeries q = q_dim_formula(a2, QDimKind::chiral_euler, a2.rho(), 3);
    std::cout << "q-dimension of the chiral Euler character: " << q.str() << "\n";

    auto M = sl2::build_truncated_verma_sl2(0, -2, 3);
    auto ds = sl2::ds_cohomology(M);
    std::cout << "affine sl2, k=-2, lambda=0: dim H^0 by twisted degree:";
    for (auto h : ds.h_series(0))
        std::cout << ' ' << h;
    std::cout << "\n";
    return rep.pass ? 0 : 1;
}
