#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bgklt/mandelstam.hpp"
#include "bgklt/words.hpp"

namespace bgklt::currents {

using mandelstam::MRat;
using words::Word;

/// Linear combination of bracketings with rational-function weights.
struct LieRatSum {
    /// canonical: sorted by bracketing, merged, zero weights dropped
    std::vector<std::pair<words::Bracketing, MRat>> terms;

    static LieRatSum from_terms(std::vector<std::pair<words::Bracketing, MRat>> ts);
};

/// Word expansion with rational-function coefficients.
using WordRatSum = std::map<Word, MRat>;

void add_to(WordRatSum& s, Word w, const MRat& c);
WordRatSum expand(const LieRatSum& s);

/// A formal vertex index: a word in the reduced basis (minimal letter
/// first); at multiplicity n there are (n-1)! of them.
using VWord = Word;
bool is_reduced_vword(VWord w);

/// Berends-Giele current: reduced vertex word -> coefficient.
using Current = std::map<VWord, MRat>;

/// Sum over deconcatenations, phi(P) = (1/s_P) sum phi(X) phi(Y);
/// a single letter maps to 1 and the empty word to 0. The expansion
/// has Catalan(|P|-1) terms.
MRat phi_word(Word p);

/// Two-slot recursion phi(P|Q); zero unless Q is a permutation of P.
MRat phi_pair(Word p, Word q);

/// Scoped memo for sweeps that pin one slot; phi_pair subcalls pair
/// contiguous subwords, so per pinned word the key space stays small.
class PhiMemo {
  public:
    const MRat& get(Word p, Word q);

    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            std::uint64_t h = k.first * 0x9e3779b97f4a7c15ull;
            h ^= k.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };
    using Map =
        std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, MRat, PairHash>;

  private:
    Map memo_;
};

/// phi(P|Q) = <P, b(Q)>.
MRat phi_pair_via_b(Word p, Word q);

/// BG-map entry Phi(A|B)_i = phi(iA|iB); i must not occur in A or B.
MRat phi_cap(Word a, Word b, words::Letter i);

/// Bracketed deconcatenation recursion b(P) = (1/s_P) sum [b(X),b(Y)].
LieRatSum b_word(Word p);

/// Word expansion of b_word.
WordRatSum b_expansion(Word p);

/// Cache of b expansions shared across a sweep.
class BCache {
  public:
    const LieRatSum& get(Word p);
    const WordRatSum& get_expansion(Word p);

  private:
    std::map<Word, LieRatSum> bmemo_;
    std::map<Word, WordRatSum> ememo_;
};

/// Reduction of a vertex index to the reduced basis: brackets are
/// flattened left-first ([X,Y] -> X expand(Y)) and words AiB with i the
/// minimal letter rewritten as -i ell(A) B.
std::map<VWord, Rat> v_reduce(const words::Bracketing& b);
std::map<VWord, Rat> v_reduce(Word w);
std::map<VWord, Rat> v_reduce(const words::WordSum& s);

/// M_P = sum_C phi(P|iC) V_iC with i the minimal letter of P.
Current m_current(Word p);
/// Same current built from b_word plus v_reduce; the two routes are
/// compared by the verification harness.
Current m_current_via_b(Word p);

}  // namespace bgklt::currents
