#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bgklt/currents.hpp"
#include "bgklt/mandelstam.hpp"
#include "bgklt/words.hpp"

namespace bgklt::klt {

using mandelstam::MPoly;
using mandelstam::MRat;
using words::Word;

/// Words with polynomial weights (the S-map image).
using WeightedWordSum = std::map<Word, MPoly>;

void add_to(WeightedWordSum& s, Word w, const MPoly& p);

/// Fixed-letter KLT matrix: strips the last letter j of the left word
/// against k_{iQ}.k_j where the right word splits as QjR. Zero when the
/// words are not permutations of each other.
MPoly s_fixed(Word a, Word b, words::Letter i);

/// Memoized table of fixed-letter entries for sweeps.
class SFixedMemo {
  public:
    explicit SFixedMemo(words::Letter i) : i_(i) {}
    const MPoly& get(Word a, Word b);

  private:
    words::Letter i_;
    std::map<std::pair<Word, Word>, MPoly> memo_;
};

/// Extended KLT matrix with no fixed letter; reduces both slots to the
/// smallest common letter. All pivot choices agree (verified by the
/// harness, not assumed).
MPoly s_extended(Word a, Word b);
MPoly s_extended_pivot(Word a, Word b, words::Letter i);
/// Bilinear extension over word sums.
MPoly s_extended(const words::WordSum& a, const words::WordSum& b);

/// Memoized extended entries on a fixed letter set.
class SExtMemo {
  public:
    const MPoly& get(Word a, Word b);

  private:
    std::map<std::pair<Word, Word>, MPoly> memo_;
};

/// sigma-form S(P|Q) = <ell(P), sigma(Q)>.
MPoly s_sigma_form(Word p, Word q);

/// Weighted concatenation Ai (x)_s jB = s_ij AijB; operands nonempty.
std::pair<Word, MPoly> weighted_concat(Word x, Word y);

/// S-map {A,B} = (-1)^(|B|+1) rho(A) (x)_s ~rho(B).
WeightedWordSum smap(Word a, Word b);
/// Bilinear extension used for nesting.
WeightedWordSum smap(const WeightedWordSum& a, const WeightedWordSum& b);

/// The double-sum form of the S-map; must equal smap.
WeightedWordSum smap_bg_form(Word a, Word b);

/// Nested left-to-right S-map, sigma(P...n) = {sigma(P...n-1), n}.
WeightedWordSum sigma(Word p);
/// sigma applied linearly to a word expansion with MRat coefficients.
currents::WordRatSum sigma(const currents::WordRatSum& s);

/// b applied to the S-map nesting that mirrors the bracketing; claimed
/// equal to the bare bracketing with all poles cancelled.
currents::LieRatSum nested_smap_b(const words::Bracketing& br);
/// The S-map nesting itself.
WeightedWordSum smap_nest(const words::Bracketing& br);

/// Both sides of the grafting identity: b(A) v b(B) and b({A,B}).
struct GraftPair {
    currents::LieRatSum grafted;
    currents::LieRatSum via_smap;
};
GraftPair graft_b(Word a, Word b);

/// V_A = sum_B S(A|B) M_B / |B| reduced to the (|A|-1)! M-basis by
/// Schocker's identity; coefficients of M_{iC} with i minimal.
std::map<Word, MPoly> v_from_m(Word a);

/// Rooted labelled tree extracted from a squarefree KLT monomial.
struct RootedTree {
    words::Letter root;
    std::uint32_t vertex_mask;
    mandelstam::Mono edges;  // sorted svars
};

/// One tree per monomial of p; throws std::domain_error when a monomial
/// violates the tree axioms (square factor, disconnected, wrong count).
std::vector<RootedTree> tree_monomials(const MPoly& p, words::Letter root,
                                       std::uint32_t letters_mask);

/// Shuffle-aware pairing <A, S_P>_s = (-1)^|C| <B, ~C sh D> for A = iB,
/// P = CiD, extended over sigma_s(Q).
MPoly sigma_shuffled_pairing(Word a, Word q);
/// Single pairing <A, S_P>_s.
Rat shuffle_pairing(Word a, Word p);

}  // namespace bgklt::klt
