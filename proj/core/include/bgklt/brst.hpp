#pragma once

#include <map>
#include <vector>

#include "bgklt/currents.hpp"
#include "bgklt/mandelstam.hpp"
#include "bgklt/words.hpp"

namespace bgklt::brst {

using mandelstam::MRat;
using words::Word;

/// Antisymmetric polynomial in the formal vertices V_P: canonically
/// ordered tuples of reduced vertex words with MRat coefficients.
/// Tuples are strictly increasing under the (length, lex) word order;
/// the letter sets within a tuple are pairwise disjoint.
struct GrassmannPoly {
    int degree = 2;
    std::map<std::vector<Word>, MRat> terms;

    bool empty() const { return terms.empty(); }
};

/// Sorts factors into canonical order, tracking the transposition
/// parity in the sign of c; zero for a repeated factor.
void add_term(GrassmannPoly& g, std::vector<Word> factors, const MRat& c);

GrassmannPoly sub(const GrassmannPoly& a, const GrassmannPoly& b);

/// QV_P = sum over splits P = XjY and deshuffles Y = R sh S of
/// (k_X . k_j) V_XR V_jS, every factor reduced to the vertex basis.
GrassmannPoly qv(Word p);
/// Linear extension over word sums (for the Jacobi sweeps).
GrassmannPoly qv(const words::WordSum& s);

/// Q applied to the current: qv acting linearly on m_current(P).
GrassmannPoly qm(Word p);

/// E_P = sum over deconcatenations P = XY of M_X M_Y in the V basis.
GrassmannPoly deconcat_mm(Word p);

/// Degree-3 amplitude assembly E_{1..n-1} M_n; requires n >= 3.
GrassmannPoly amplitude(int n);

/// Q applied to a degree-2 polynomial: Q(V_a V_b) = (QV_a) V_b - V_a (QV_b).
GrassmannPoly qv_on_degree2(const GrassmannPoly& g);

/// True iff qv annihilates every generalized-Jacobi combination
/// A ell(B) C + B ell(A) C over the letters of p.
bool check_jacobi_consistency(Word p);

}  // namespace bgklt::brst
