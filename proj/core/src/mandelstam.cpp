#include "bgklt/mandelstam.hpp"

#include <algorithm>
#include <cassert>

namespace bgklt::mandelstam {

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool mono_less(const Mono& a, const Mono& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void poly_add_term(MPoly& p, const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

MPoly poly_add(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [m, c] : b) poly_add_term(r, m, c);
    return r;
}

MPoly poly_sub(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [m, c] : b) poly_add_term(r, m, -c);
    return r;
}

MPoly poly_mul(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) poly_add_term(r, mono_mul(ma, mb), ca * cb);
    return r;
}

MPoly poly_scale(const MPoly& a, const Rat& c) {
    MPoly r;
    if (c == 0) return r;
    for (const auto& [m, x] : a) r.emplace(m, x * c);
    return r;
}

MPoly poly_const(const Rat& c) {
    MPoly r;
    if (c != 0) r.emplace(Mono{}, c);
    return r;
}

MPoly poly_var(SVar v) {
    MPoly r;
    r.emplace(Mono{v}, 1);
    return r;
}

namespace {

// multiset divisibility of sorted vectors; quotient written to out
bool mono_div(const Mono& a, const Mono& b, Mono& out) {
    out.clear();
    auto it = a.begin();
    for (SVar v : b) {
        it = std::find(it, a.end(), v);
        if (it == a.end()) return false;
        ++it;
    }
    // second pass: subtract multiset b from a
    Mono tmp = a;
    for (SVar v : b) {
        auto jt = std::find(tmp.begin(), tmp.end(), v);
        if (jt == tmp.end()) return false;
        tmp.erase(jt);
    }
    out = std::move(tmp);
    return true;
}

}  // namespace

std::optional<MPoly> poly_div_exact(const MPoly& a, const MPoly& b) {
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    MPoly r = a, q;
    const auto& ltb = *b.rbegin();
    Mono qm;
    while (!r.empty()) {
        const auto& ltr = *r.rbegin();
        if (!mono_div(ltr.first, ltb.first, qm)) return std::nullopt;
        Rat qc = ltr.second / ltb.second;
        poly_add_term(q, qm, qc);
        for (const auto& [m, c] : b) poly_add_term(r, mono_mul(m, qm), -c * qc);
    }
    return q;
}

bool pole_less(Pole a, Pole b) {
    int pa = pole_size(a), pb = pole_size(b);
    if (pa != pb) return pa < pb;
    return a < b;
}

PoleProd pole_mul(const PoleProd& a, const PoleProd& b) {
    PoleProd r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r), pole_less);
    return r;
}

PoleProd pole_lcm(const PoleProd& a, const PoleProd& b) {
    PoleProd r;
    r.reserve(std::max(a.size(), b.size()));
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            r.push_back(a[i]);
            ++i;
            ++j;
        } else if (pole_less(a[i], b[j])) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
}

PoleProd pole_quotient(const PoleProd& lcm, const PoleProd& a) {
    PoleProd r;
    r.reserve(lcm.size() - a.size());
    std::size_t j = 0;
    for (Pole p : lcm) {
        if (j < a.size() && a[j] == p) {
            ++j;
        } else {
            r.push_back(p);
        }
    }
    assert(j == a.size());
    return r;
}

MPoly s_of_letters(std::uint32_t mask) {
    if (mask == 0) throw std::invalid_argument("s of the empty letter set");
    MPoly r;
    for (words::Letter i = 1; i <= words::Word::kMaxLetter; ++i) {
        if (!(mask & (1u << i))) continue;
        for (words::Letter j = i + 1; j <= words::Word::kMaxLetter; ++j) {
            if (!(mask & (1u << j))) continue;
            r.emplace(Mono{svar(i, j)}, 1);
        }
    }
    return r;
}

MPoly dot(std::uint32_t a_mask, std::uint32_t b_mask) {
    if (a_mask & b_mask) throw std::invalid_argument("dot of overlapping letter sets");
    MPoly r;
    for (words::Letter a = 1; a <= words::Word::kMaxLetter; ++a) {
        if (!(a_mask & (1u << a))) continue;
        for (words::Letter b = 1; b <= words::Word::kMaxLetter; ++b) {
            if (!(b_mask & (1u << b))) continue;
            poly_add_term(r, Mono{svar(a, b)}, 1);
        }
    }
    return r;
}

namespace {

SVar pole_to_svar(Pole p) {
    words::Letter i = static_cast<words::Letter>(__builtin_ctz(p));
    words::Letter j = static_cast<words::Letter>(31 - __builtin_clz(p));
    return svar(i, j);
}

// cancels two-letter poles against numerator factors, in place
void cancel_term(RatTerm& t) {
    PoleProd kept;
    kept.reserve(t.den.size());
    for (Pole p : t.den) {
        if (pole_size(p) == 2) {
            SVar v = pole_to_svar(p);
            auto it = std::find(t.num.begin(), t.num.end(), v);
            if (it != t.num.end()) {
                t.num.erase(it);
                continue;
            }
        }
        kept.push_back(p);
    }
    t.den = std::move(kept);
}

bool term_key_less(const RatTerm& a, const RatTerm& b) {
    if (a.den.size() != b.den.size()) return a.den.size() < b.den.size();
    if (a.den != b.den)
        return std::lexicographical_compare(a.den.begin(), a.den.end(), b.den.begin(),
                                            b.den.end(), pole_less);
    return mono_less(a.num, b.num);
}

std::uint64_t term_fingerprint(const RatTerm& t) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ull;
    };
    mix(t.den.size());
    for (Pole p : t.den) mix(p);
    mix(0xffffu);
    for (SVar v : t.num) mix(v);
    return h;
}

}  // namespace

MRat MRat::from_terms(std::vector<RatTerm> ts) {
    std::vector<RatTerm> kept;
    kept.reserve(ts.size());
    for (auto& t : ts) {
        if (t.coeff == 0) continue;
        cancel_term(t);
        kept.push_back(std::move(t));
    }
    std::sort(kept.begin(), kept.end(), term_key_less);
    MRat r;
    for (auto& t : kept) {
        if (!r.terms_.empty() && r.terms_.back().den == t.den && r.terms_.back().num == t.num) {
            r.terms_.back().coeff += t.coeff;
            if (r.terms_.back().coeff == 0) r.terms_.pop_back();
        } else {
            t.key = term_fingerprint(t);
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

MRat MRat::one() { return from_const(1); }

MRat MRat::from_const(const Rat& c) {
    MRat r;
    if (c != 0) r.terms_.push_back({c, {}, {}});
    return r;
}

MRat MRat::from_poly(const MPoly& p) {
    std::vector<RatTerm> ts;
    ts.reserve(p.size());
    for (const auto& [m, c] : p) ts.push_back({c, m, {}});
    return from_terms(std::move(ts));
}

MRat MRat::from_term(const Rat& c, const Mono& m, const PoleProd& d) {
    return from_terms({RatTerm{c, m, d}});
}

MRat rat_add(const MRat& a, const MRat& b) {
    std::vector<RatTerm> ts;
    ts.reserve(a.size() + b.size());
    ts.insert(ts.end(), a.terms().begin(), a.terms().end());
    ts.insert(ts.end(), b.terms().begin(), b.terms().end());
    return MRat::from_terms(std::move(ts));
}

MRat rat_sub(const MRat& a, const MRat& b) { return rat_add(a, rat_neg(b)); }

MRat rat_neg(const MRat& a) {
    std::vector<RatTerm> ts = a.terms();
    for (auto& t : ts) t.coeff = -t.coeff;
    return MRat::from_terms(std::move(ts));
}

MRat rat_scale(const MRat& a, const Rat& c) {
    if (c == 0) return MRat();
    std::vector<RatTerm> ts = a.terms();
    for (auto& t : ts) t.coeff *= c;
    return MRat::from_terms(std::move(ts));
}

MRat rat_mul(const MRat& a, const MRat& b) {
    std::vector<RatTerm> ts;
    ts.reserve(a.size() * b.size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            ts.push_back({ta.coeff * tb.coeff, mono_mul(ta.num, tb.num), pole_mul(ta.den, tb.den)});
    return MRat::from_terms(std::move(ts));
}

MRat rat_mul_poly(const MRat& a, const MPoly& p) {
    std::vector<RatTerm> ts;
    ts.reserve(a.size() * p.size());
    for (const auto& ta : a.terms())
        for (const auto& [m, c] : p) ts.push_back({ta.coeff * c, mono_mul(ta.num, m), ta.den});
    return MRat::from_terms(std::move(ts));
}

MRat rat_div_pole(const MRat& a, Pole p) {
    if (pole_size(p) < 2) throw std::invalid_argument("pole needs at least two letters");
    std::vector<RatTerm> ts = a.terms();
    for (auto& t : ts) {
        auto it = std::upper_bound(t.den.begin(), t.den.end(), p, pole_less);
        t.den.insert(it, p);
    }
    return MRat::from_terms(std::move(ts));
}

void MRatAcc::add(const MRat& r, const Rat& scale) {
    if (scale == 0) return;
    for (const auto& t : r.terms()) {
        terms_.push_back(t);
        if (scale != 1) terms_.back().coeff *= scale;
    }
}

void MRatAcc::add_scaled(const MRat& r, const Rat& c, const Mono& m) {
    if (c == 0) return;
    for (const auto& t : r.terms())
        terms_.push_back({t.coeff * c, mono_mul(t.num, m), t.den});
}

void MRatAcc::add_term(const Rat& c, const Mono& m, const PoleProd& d) {
    if (c == 0) return;
    terms_.push_back({c, m, d});
}

MRat MRatAcc::take() {
    MRat r = MRat::from_terms(std::move(terms_));
    terms_.clear();
    return r;
}

void MRatSum::add(const MRat& r, const Rat& scale) {
    if (scale == 0 || r.empty()) return;
    std::int32_t idx;
    if (scale == 1) {
        idx = -1;
    } else if (scale == -1) {
        idx = -2;
    } else {
        idx = static_cast<std::int32_t>(scales_.size());
        scales_.push_back(scale);
    }
    for (const auto& t : r.terms()) parts_.push_back({&t, idx});
}

namespace {

// the coefficient as a plain machine integer, when it is one
bool small_int_coeff(const Rat& r, long& out) {
    mpq_srcptr q = r.get_mpq_t();
    if (mpz_cmp_ui(mpq_denref(q), 1) != 0) return false;
    if (!mpz_fits_slong_p(mpq_numref(q))) return false;
    long v = mpz_get_si(mpq_numref(q));
    if (v > (1L << 40) || v < -(1L << 40)) return false;
    out = v;
    return true;
}

}  // namespace

MRat MRatSum::residual() {
    std::sort(parts_.begin(), parts_.end(), [](const Part& a, const Part& b) {
        if (a.term->key != b.term->key) return a.term->key < b.term->key;
        return term_key_less(*a.term, *b.term);
    });
    std::vector<RatTerm> residual;
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t j = i;
        long fast = 0;
        bool all_fast = true;
        while (j < parts_.size() && parts_[j].term->key == parts_[i].term->key &&
               parts_[j].term->den == parts_[i].term->den &&
               parts_[j].term->num == parts_[i].term->num) {
            const Part& p = parts_[j];
            long v;
            if (all_fast && p.scale_idx < 0 && small_int_coeff(p.term->coeff, v)) {
                fast += p.scale_idx == -1 ? v : -v;
            } else {
                all_fast = false;
            }
            ++j;
        }
        if (all_fast) {
            if (fast != 0)
                residual.push_back(
                    {Rat(fast), parts_[i].term->num, parts_[i].term->den, parts_[i].term->key});
        } else {
            Rat acc = 0;
            for (std::size_t k = i; k < j; ++k) {
                const Part& p = parts_[k];
                if (p.scale_idx == -1)
                    acc += p.term->coeff;
                else if (p.scale_idx == -2)
                    acc -= p.term->coeff;
                else
                    acc += p.term->coeff * scales_[p.scale_idx];
            }
            if (acc != 0)
                residual.push_back(
                    {std::move(acc), parts_[i].term->num, parts_[i].term->den,
                     parts_[i].term->key});
        }
        i = j;
    }
    parts_.clear();
    scales_.clear();
    return MRat::from_terms(std::move(residual));
}

bool MRatSum::is_zero_with(const ZeroCheck& zc) {
    MRat r = residual();
    if (r.empty()) return true;
    return zc.is_zero(r);
}

// ---------------------------------------------------------------------------
// exact zero test
//
// Terms sharing a pole product are first summed into single fractions.
// Fractions are ordered so that denominators sharing their deepest
// poles sit next to each other, then combined pairwise over least
// common multiples, dividing pole factors out of the numerator after
// each combination so intermediate polynomials stay small.

namespace {

struct Frac {
    MPoly num;
    PoleProd den;
};

// compare denominators outermost pole first
bool den_outer_less(const PoleProd& a, const PoleProd& b) {
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return pole_less(*ib, *ia);  // bigger pole first
    }
    return a.size() < b.size();
}

MPoly expand_pole(Pole p) { return s_of_letters(p); }

MPoly expand_pole_prod(const PoleProd& d) {
    MPoly r = poly_const(1);
    for (Pole p : d) r = poly_mul(r, expand_pole(p));
    return r;
}

void reduce_frac(Frac& f) {
    if (f.num.empty()) {
        f.den.clear();
        return;
    }
    // try the larger pole sets first; two-letter poles reduce by
    // monomial content
    PoleProd kept;
    for (auto it = f.den.rbegin(); it != f.den.rend(); ++it) {
        Pole p = *it;
        if (f.num.empty()) {
            kept.push_back(p);
            continue;
        }
        if (pole_size(p) == 2) {
            SVar v = pole_to_svar(p);
            bool all = true;
            for (const auto& [m, c] : f.num) {
                (void)c;
                if (std::find(m.begin(), m.end(), v) == m.end()) {
                    all = false;
                    break;
                }
            }
            if (all) {
                MPoly reduced;
                for (const auto& [m, c] : f.num) {
                    Mono q = m;
                    q.erase(std::find(q.begin(), q.end(), v));
                    reduced.emplace(std::move(q), c);
                }
                f.num = std::move(reduced);
                continue;
            }
        } else {
            auto q = poly_div_exact(f.num, expand_pole(p));
            if (q) {
                f.num = std::move(*q);
                continue;
            }
        }
        kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), pole_less);
    f.den = std::move(kept);
}

Frac combine(std::vector<Frac>& fs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(fs[lo]);
    std::size_t mid = lo + (hi - lo) / 2;
    Frac a = combine(fs, lo, mid);
    Frac b = combine(fs, mid, hi);
    if (a.num.empty()) return b;
    if (b.num.empty()) return a;
    PoleProd lcm = pole_lcm(a.den, b.den);
    PoleProd qa = pole_quotient(lcm, a.den);
    PoleProd qb = pole_quotient(lcm, b.den);
    MPoly na = qa.empty() ? std::move(a.num) : poly_mul(a.num, expand_pole_prod(qa));
    MPoly nb = qb.empty() ? std::move(b.num) : poly_mul(b.num, expand_pole_prod(qb));
    Frac f{poly_add(na, nb), std::move(lcm)};
    reduce_frac(f);
    return f;
}

}  // namespace

bool rat_is_zero(const MRat& a) {
    if (a.empty()) return true;
    std::vector<Frac> fracs;
    for (const auto& t : a.terms()) {
        if (!fracs.empty() && fracs.back().den == t.den) {
            poly_add_term(fracs.back().num, t.num, t.coeff);
        } else {
            Frac f;
            poly_add_term(f.num, t.num, t.coeff);
            f.den = t.den;
            fracs.push_back(std::move(f));
        }
    }
    // a canonical single fraction is nonzero by construction
    if (fracs.size() == 1) return fracs[0].num.empty();
    std::stable_sort(fracs.begin(), fracs.end(),
                     [](const Frac& x, const Frac& y) { return den_outer_less(x.den, y.den); });
    Frac f = combine(fracs, 0, fracs.size());
    return f.num.empty();
}

bool rat_equal(const MRat& a, const MRat& b) { return rat_is_zero(rat_sub(a, b)); }

bool rat_equal_poly(const MRat& a, const MPoly& p) { return rat_equal(a, MRat::from_poly(p)); }

bool rat_equal_const(const MRat& a, const Rat& c) { return rat_equal(a, MRat::from_const(c)); }

// ---------------------------------------------------------------------------
// evaluation

EvalPoint random_eval_point(std::uint32_t universe_mask, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(1, 9973);
    std::uniform_int_distribution<long> den(1, 64);
    std::vector<words::Letter> letters;
    for (words::Letter l = 1; l <= words::Word::kMaxLetter; ++l)
        if (universe_mask & (1u << l)) letters.push_back(l);
    for (int attempt = 0; attempt < 256; ++attempt) {
        EvalPoint pt;
        for (std::size_t i = 0; i < letters.size(); ++i)
            for (std::size_t j = i + 1; j < letters.size(); ++j) {
                Rat v(num(rng), den(rng));
                v.canonicalize();
                if (rng() & 1) v = -v;
                pt[svar(letters[i], letters[j])] = v;
            }
        // every pole over the universe must be nonzero
        bool ok = true;
        const std::uint32_t n = static_cast<std::uint32_t>(letters.size());
        for (std::uint32_t sub = 1; sub < (1u << n) && ok; ++sub) {
            if (__builtin_popcount(sub) < 2) continue;
            Rat s = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (!(sub & (1u << i))) continue;
                for (std::uint32_t j = i + 1; j < n; ++j)
                    if (sub & (1u << j)) s += pt[svar(letters[i], letters[j])];
            }
            if (s == 0) ok = false;
        }
        if (ok) return pt;
    }
    throw std::runtime_error("failed to sample a pole-free evaluation point");
}

Rat eval_poly(const MPoly& p, const EvalPoint& pt) {
    Rat r = 0;
    for (const auto& [m, c] : p) {
        Rat t = c;
        for (SVar v : m) {
            auto it = pt.find(v);
            if (it == pt.end()) throw std::invalid_argument("evaluation point misses a variable");
            t *= it->second;
        }
        r += t;
    }
    return r;
}

std::optional<Rat> eval_rat(const MRat& a, const EvalPoint& pt) {
    Rat r = 0;
    for (const auto& t : a.terms()) {
        Rat v = t.coeff;
        for (SVar m : t.num) {
            auto it = pt.find(m);
            if (it == pt.end()) throw std::invalid_argument("evaluation point misses a variable");
            v *= it->second;
        }
        for (Pole p : t.den) {
            Rat s = eval_poly(expand_pole(p), pt);
            if (s == 0) return std::nullopt;
            v /= s;
        }
        r += v;
    }
    return r;
}

ZeroCheck::ZeroCheck(std::uint32_t universe_mask, std::uint64_t seed, int samples)
    : probabilistic_(true) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int i = 0; i < samples; ++i) points_.push_back(random_eval_point(universe_mask, rng));
}

bool ZeroCheck::is_zero(const MRat& a) const {
    if (!probabilistic_) return rat_is_zero(a);
    for (const auto& pt : points_) {
        auto v = eval_rat(a, pt);
        if (!v) return rat_is_zero(a);  // pole hit: fall back to exact
        if (*v != 0) return false;
    }
    return true;
}

}  // namespace bgklt::mandelstam
