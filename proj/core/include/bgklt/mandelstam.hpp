#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bgklt/rational.hpp"
#include "bgklt/words.hpp"

namespace bgklt::mandelstam {

/// Mandelstam variable s_ij, i < j, packed as (i << 5) | j.
/// The numeric order of codes is the canonical variable order
/// (s12 < s13 < ... < s23 < ...).
using SVar = std::uint16_t;

inline SVar svar(words::Letter i, words::Letter j) {
    if (i == j) throw std::invalid_argument("s_ii does not exist");
    if (i > j) std::swap(i, j);
    return static_cast<SVar>((i << 5) | j);
}
inline words::Letter svar_lo(SVar v) { return static_cast<words::Letter>(v >> 5); }
inline words::Letter svar_hi(SVar v) { return static_cast<words::Letter>(v & 0x1f); }

/// Squarefree or not, a monomial is the sorted multiset of its SVars.
using Mono = std::vector<SVar>;

Mono mono_mul(const Mono& a, const Mono& b);
/// Graded-lex order used for polynomial leading terms.
bool mono_less(const Mono& a, const Mono& b);

struct MonoCmp {
    bool operator()(const Mono& a, const Mono& b) const { return mono_less(a, b); }
};

/// Exact multivariate polynomial in the s_ij.
using MPoly = std::map<Mono, Rat, MonoCmp>;

void poly_add_term(MPoly& p, const Mono& m, const Rat& c);
MPoly poly_add(const MPoly& a, const MPoly& b);
MPoly poly_sub(const MPoly& a, const MPoly& b);
MPoly poly_mul(const MPoly& a, const MPoly& b);
MPoly poly_scale(const MPoly& a, const Rat& c);
MPoly poly_const(const Rat& c);
MPoly poly_var(SVar v);
inline bool poly_is_zero(const MPoly& p) { return p.empty(); }
/// Exact division a / b; returns nullopt when not divisible.
std::optional<MPoly> poly_div_exact(const MPoly& a, const MPoly& b);

/// A multiparticle pole s_P, keyed by the letter set of P (>= 2 letters),
/// stored as a bitmask.
using Pole = std::uint32_t;

inline int pole_size(Pole p) { return __builtin_popcount(p); }
/// Canonical pole order: by (set size, mask).
bool pole_less(Pole a, Pole b);

/// Sorted multiset of poles (a formal denominator product).
using PoleProd = std::vector<Pole>;

PoleProd pole_mul(const PoleProd& a, const PoleProd& b);
PoleProd pole_lcm(const PoleProd& a, const PoleProd& b);
/// a must divide lcm; returns lcm with a removed.
PoleProd pole_quotient(const PoleProd& lcm, const PoleProd& a);

/// s_P for the letter set of mask: sum of s_ab over pairs in the set.
/// A single letter is massless (zero); the empty set is rejected.
MPoly s_of_letters(std::uint32_t mask);

/// k_A . k_B for disjoint letter sets: sum of s_ab over a in A, b in B.
/// dot(empty, B) = 0.
MPoly dot(std::uint32_t a_mask, std::uint32_t b_mask);

/// One term of a rational function: coeff * num / prod(poles).
/// Terms are kept in a canonical form where any two-letter pole that
/// also divides the numerator monomial has been cancelled.
struct RatTerm {
    Rat coeff;
    Mono num;
    PoleProd den;
    /// fingerprint of (den, num), filled in by canonicalization; used
    /// by MRatSum to group matching terms without vector compares
    std::uint64_t key = 0;
};

/// Exact rational function with formal pole-product denominators;
/// empty term list means zero. Always canonical: terms sorted by
/// (den, num), merged, zero coefficients dropped.
class MRat {
  public:
    MRat() = default;
    static MRat zero() { return MRat(); }
    static MRat one();
    static MRat from_const(const Rat& c);
    static MRat from_poly(const MPoly& p);
    static MRat from_term(const Rat& c, const Mono& m, const PoleProd& d);

    const std::vector<RatTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Builds from an arbitrary term list (canonicalizes).
    static MRat from_terms(std::vector<RatTerm> ts);

  private:
    std::vector<RatTerm> terms_;
};

MRat rat_add(const MRat& a, const MRat& b);
MRat rat_sub(const MRat& a, const MRat& b);
MRat rat_mul(const MRat& a, const MRat& b);
MRat rat_neg(const MRat& a);
MRat rat_scale(const MRat& a, const Rat& c);
MRat rat_mul_poly(const MRat& a, const MPoly& p);
/// Appends pole p to every term's denominator.
MRat rat_div_pole(const MRat& a, Pole p);

/// Accumulator used by the identity sweeps: keeps an unsorted term
/// list and canonicalizes once at the end.
class MRatAcc {
  public:
    void add(const MRat& r, const Rat& scale = 1);
    void add_scaled(const MRat& r, const Rat& c, const Mono& m);
    void add_term(const Rat& c, const Mono& m, const PoleProd& d);
    MRat take();
    void reserve(std::size_t n) { terms_.reserve(n); }

  private:
    std::vector<RatTerm> terms_;
};

/// Exact zero test: groups terms over the least common multiple of the
/// pole products and tests the cleared numerator polynomial for zero.
bool rat_is_zero(const MRat& a);

/// True iff a - b vanishes identically with the s_ij algebraically
/// independent.
bool rat_equal(const MRat& a, const MRat& b);

bool rat_equal_poly(const MRat& a, const MPoly& p);
bool rat_equal_const(const MRat& a, const Rat& c);

/// Assignment of exact rational values to the s_ij.
using EvalPoint = std::map<SVar, Rat>;

/// Draws a point with all poles over letters of `universe_mask` nonzero.
EvalPoint random_eval_point(std::uint32_t universe_mask, std::mt19937_64& rng);

Rat eval_poly(const MPoly& p, const EvalPoint& pt);
/// nullopt when a pole vanishes at pt.
std::optional<Rat> eval_rat(const MRat& a, const EvalPoint& pt);

/// Equality backend for the verification sweeps: exact by default, or
/// probabilistic evaluation at `samples` seeded random points.
class ZeroCheck {
  public:
    ZeroCheck() = default;  // exact
    ZeroCheck(std::uint32_t universe_mask, std::uint64_t seed, int samples = 2);

    bool is_zero(const MRat& a) const;
    bool equal(const MRat& a, const MRat& b) const { return is_zero(rat_sub(a, b)); }
    bool probabilistic() const { return probabilistic_; }

  private:
    bool probabilistic_ = false;
    std::vector<EvalPoint> points_;
};

/// Deferred sum of already-canonical MRats with rational scales. Tests
/// formal cancellation first (no copying, no expansion) and falls back
/// to the exact zero test only for the residue. The source MRats must
/// outlive the check.
class MRatSum {
  public:
    void add(const MRat& r, const Rat& scale = 1);
    bool is_zero_with(const ZeroCheck& zc);
    MRat residual();  // canonical sum; consumes
    bool empty() const { return parts_.empty(); }
    void clear() {
        parts_.clear();
        scales_.clear();
    }

  private:
    struct Part {
        const RatTerm* term;
        std::int32_t scale_idx;  // -1 unit, -2 negated unit, else index
    };
    std::vector<Part> parts_;
    std::vector<Rat> scales_;
};

}  // namespace bgklt::mandelstam
