#pragma once

// The Weil representation of Sp_{2n}(F_p) on functions on a Lagrangian
// f^n, built from generator operators (twisted substitution, quadratic
// modulation, normalized Fourier transform).  The free normalization
// constants are pinned by searching a small convention space; a candidate
// is accepted only if the full BFS closure of the group is consistent
// (every revisit reproduces the stored matrix).  Also the Heisenberg
// extension used by the Jacobi-group descent.

#include "fjm/oracle/matgroup.hpp"

namespace fjm::oracle {

using Operator = std::vector<cplx>;  // dense dim x dim, row-major

struct WeilData {
    int dim = 0;
    std::vector<cplx> trace;  // per group element
    ClassFunction character;
    std::string convention;                // record of the accepted choice
    std::vector<Operator> matrices;        // per element; only if requested
};

// sp must be the full Sp_{2n}(F_p) matrix group with the standard form
// J = [[0, I], [-I, 0]] on the ordered basis (e_1..e_n, f_1..f_n).
WeilData schrodinger_weil(const MatGroup& sp, int n, const AdditiveCharacter& psi,
                          bool keep_matrices = false);

// Schroedinger representation of the Heisenberg group H(f^n) = f^n x f^n x f
// with central character psi: rho(a, b, z) f(x) = psi(z + b.x) f(x + a).
Operator heisenberg_op(int n, const AdditiveCharacter& psi,
                       const std::vector<long long>& a,
                       const std::vector<long long>& b, long long z);

// Verifies U rho(v) U^{-1} = rho(g v) on generators of H for the Weil
// matrices of sp (throws on failure); g v is the matrix action of g on
// (a, b) rows.  Used to tie the built representation to its psi.
void check_heisenberg_intertwining(const MatGroup& sp, int n,
                                   const AdditiveCharacter& psi,
                                   const WeilData& w);

}  // namespace fjm::oracle
