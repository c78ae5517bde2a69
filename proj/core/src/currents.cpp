#include "bgklt/currents.hpp"

#include <algorithm>

namespace bgklt::currents {

using namespace mandelstam;
using words::Bracketing;
using words::Letter;
using words::WordSum;

LieRatSum LieRatSum::from_terms(std::vector<std::pair<Bracketing, MRat>> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    LieRatSum out;
    for (auto& [br, c] : ts) {
        if (c.empty()) continue;
        if (!out.terms.empty() && out.terms.back().first == br) {
            out.terms.back().second = rat_add(out.terms.back().second, c);
            if (out.terms.back().second.empty()) out.terms.pop_back();
        } else {
            out.terms.emplace_back(br, std::move(c));
        }
    }
    return out;
}

void add_to(WordRatSum& s, Word w, const MRat& c) {
    if (c.empty()) return;
    auto it = s.find(w);
    if (it == s.end()) {
        s.emplace(w, c);
    } else {
        it->second = rat_add(it->second, c);
        if (it->second.empty()) s.erase(it);
    }
}

WordRatSum expand(const LieRatSum& s) {
    std::map<Word, std::vector<mandelstam::RatTerm>> acc;
    for (const auto& [br, c] : s.terms)
        for (const auto& [w, k] : words::expand_bracketing(br)) {
            auto& ts = acc[w];
            for (const auto& t : c.terms()) {
                ts.push_back(t);
                ts.back().coeff *= k;
            }
        }
    WordRatSum out;
    for (auto& [w, ts] : acc) {
        MRat r = MRat::from_terms(std::move(ts));
        if (!r.empty()) out.emplace(w, std::move(r));
    }
    return out;
}

bool is_reduced_vword(VWord w) { return w.empty() || w.front() == w.min_letter(); }

// ---------------------------------------------------------------------------
// phi recursions

namespace {

MRat phi_word_rec(Word p, std::map<Word, MRat>& memo) {
    if (p.empty()) return MRat::zero();
    if (p.size() == 1) return MRat::one();
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    MRatAcc acc;
    for (const auto& [x, y] : words::deconcatenations(p))
        acc.add(rat_mul(phi_word_rec(x, memo), phi_word_rec(y, memo)));
    MRat r = rat_div_pole(acc.take(), p.mask());
    memo.emplace(p, r);
    return r;
}

using PairKey = std::pair<std::uint64_t, std::uint64_t>;

const MRat& phi_pair_rec(Word p, Word q, PhiMemo::Map& memo) {
    static const MRat kZero = MRat::zero();
    static const MRat kOne = MRat::one();
    if (p.empty() || q.empty()) return kZero;
    if (p.mask() != q.mask() || p.size() != q.size()) return kZero;
    if (p.size() == 1) return p == q ? kOne : kZero;
    PairKey key{p.bits(), q.bits()};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    MRatAcc acc;
    for (const auto& [x, y] : words::deconcatenations(p))
        for (const auto& [a, b] : words::deconcatenations(q)) {
            acc.add(rat_mul(phi_pair_rec(x, a, memo), phi_pair_rec(y, b, memo)));
            acc.add(rat_mul(phi_pair_rec(y, a, memo), phi_pair_rec(x, b, memo)), -1);
        }
    MRat r = rat_div_pole(acc.take(), p.mask());
    return memo.emplace(key, std::move(r)).first->second;
}

}  // namespace

MRat phi_word(Word p) {
    std::map<Word, MRat> memo;
    return phi_word_rec(p, memo);
}

MRat phi_pair(Word p, Word q) {
    PhiMemo::Map memo;
    return phi_pair_rec(p, q, memo);
}

const MRat& PhiMemo::get(Word p, Word q) {
    if (p.size() <= 1 || q.size() <= 1) {
        static const MRat kZero = MRat::zero();
        static const MRat kOne = MRat::one();
        if (p.size() == 1 && p == q) return kOne;
        return kZero;
    }
    return phi_pair_rec(p, q, memo_);
}

MRat phi_pair_via_b(Word p, Word q) {
    WordRatSum e = b_expansion(q);
    auto it = e.find(p);
    return it == e.end() ? MRat::zero() : it->second;
}

MRat phi_cap(Word a, Word b, Letter i) {
    if (a.contains(i) || b.contains(i))
        throw std::invalid_argument("phi_cap letter occurs in a word");
    Word ia = Word::of({i}).concat(a);
    Word ib = Word::of({i}).concat(b);
    return phi_pair(ia, ib);
}

// ---------------------------------------------------------------------------
// b recursion

namespace {

const LieRatSum& b_word_rec(Word p, std::map<Word, LieRatSum>& memo) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    std::vector<std::pair<Bracketing, MRat>> ts;
    if (p.size() == 1) {
        ts.emplace_back(Bracketing::leaf(p.front()), MRat::one());
    } else if (p.size() >= 2) {
        for (const auto& [x, y] : words::deconcatenations(p)) {
            const LieRatSum& bx = b_word_rec(x, memo);
            const LieRatSum& by = b_word_rec(y, memo);
            for (const auto& [brx, cx] : bx.terms)
                for (const auto& [bry, cy] : by.terms)
                    ts.emplace_back(Bracketing::pair(brx, bry),
                                    rat_div_pole(rat_mul(cx, cy), p.mask()));
        }
    }
    return memo.emplace(p, LieRatSum::from_terms(std::move(ts))).first->second;
}

}  // namespace

LieRatSum b_word(Word p) {
    // confined per thread, per the module's concurrency contract
    static thread_local std::map<Word, LieRatSum> memo;
    return b_word_rec(p, memo);
}

WordRatSum b_expansion(Word p) { return expand(b_word(p)); }

const LieRatSum& BCache::get(Word p) {
    auto it = bmemo_.find(p);
    if (it != bmemo_.end()) return it->second;
    return bmemo_.emplace(p, b_word(p)).first->second;
}

const WordRatSum& BCache::get_expansion(Word p) {
    auto it = ememo_.find(p);
    if (it != ememo_.end()) return it->second;
    return ememo_.emplace(p, expand(get(p))).first->second;
}

// ---------------------------------------------------------------------------
// vertex basis reduction

namespace {

// Baker flattening: [X,Y] -> flatten(X) . expand(Y)
WordSum flatten(const Bracketing& b) {
    WordSum r;
    if (b.is_leaf()) {
        r.emplace(Word::of({b.letter()}), 1);
        return r;
    }
    WordSum left = flatten(b.left());
    WordSum right = words::expand_bracketing(b.right());
    for (const auto& [x, cx] : left)
        for (const auto& [y, cy] : right) words::add_term(r, x.concat(y), cx * cy);
    return r;
}

// moves the minimal letter to the front: V_AiB = -V_{i ell(A) B}
void reduce_word_into(Word w, const Rat& c, std::map<VWord, Rat>& out) {
    if (w.empty()) return;
    Letter i = w.min_letter();
    int pos = w.find(i);
    if (pos == 0) {
        auto it = out.find(w);
        if (it == out.end()) {
            out.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
        return;
    }
    Word a = w.prefix(pos);
    Word tail = w.suffix_from(pos + 1);
    Word head = Word::of({i});
    for (const auto& [u, k] : words::ell(a))
        reduce_word_into(head.concat(u).concat(tail), -c * k, out);
}

}  // namespace

std::map<VWord, Rat> v_reduce(Word w) {
    std::map<VWord, Rat> out;
    reduce_word_into(w, 1, out);
    return out;
}

std::map<VWord, Rat> v_reduce(const WordSum& s) {
    std::map<VWord, Rat> out;
    for (const auto& [w, c] : s) reduce_word_into(w, c, out);
    return out;
}

std::map<VWord, Rat> v_reduce(const Bracketing& b) { return v_reduce(flatten(b)); }

// ---------------------------------------------------------------------------
// currents

Current m_current(Word p) {
    Current out;
    if (p.empty()) return out;
    Letter i = p.min_letter();
    Word head = Word::of({i});
    std::uint32_t rest = p.mask() & ~(1u << i);
    PhiMemo::Map memo;
    if (p.size() == 1) {
        out.emplace(p, MRat::one());
        return out;
    }
    for (const Word& c : words::all_words(rest)) {
        Word ic = head.concat(c);
        MRat v = phi_pair_rec(p, ic, memo);
        if (!v.empty()) out.emplace(ic, std::move(v));
    }
    return out;
}

Current m_current_via_b(Word p) {
    Current out;
    for (const auto& [br, c] : b_word(p).terms)
        for (const auto& [w, k] : v_reduce(br)) {
            MRat add = rat_scale(c, k);
            auto it = out.find(w);
            if (it == out.end()) {
                out.emplace(w, std::move(add));
            } else {
                it->second = rat_add(it->second, add);
                if (it->second.empty()) out.erase(it);
            }
        }
    return out;
}

}  // namespace bgklt::currents
