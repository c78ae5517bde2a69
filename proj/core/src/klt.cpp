#include "bgklt/klt.hpp"

#include <algorithm>

namespace bgklt::klt {

using namespace mandelstam;
using words::Bracketing;
using words::Letter;
using words::WordSum;

void add_to(WeightedWordSum& s, Word w, const MPoly& p) {
    if (p.empty()) return;
    auto it = s.find(w);
    if (it == s.end()) {
        s.emplace(w, p);
    } else {
        it->second = poly_add(it->second, p);
        if (it->second.empty()) s.erase(it);
    }
}

// ---------------------------------------------------------------------------
// fixed-letter KLT matrix

namespace {

MPoly s_fixed_rec(Word a, Word b, Letter i, std::map<std::pair<Word, Word>, MPoly>* memo) {
    if (a.mask() != b.mask() || a.size() != b.size()) return {};
    if (a.empty()) return poly_const(1);
    if (memo) {
        auto it = memo->find({a, b});
        if (it != memo->end()) return it->second;
    }
    Letter j = a.back();
    int pos = b.find(j);
    Word q = b.prefix(pos);
    Word r = b.suffix_from(pos + 1);
    MPoly factor = dot((1u << i) | q.mask(), 1u << j);
    MPoly res = poly_mul(factor, s_fixed_rec(a.prefix(a.size() - 1), q.concat(r), i, memo));
    if (memo) memo->emplace(std::make_pair(a, b), res);
    return res;
}

}  // namespace

MPoly s_fixed(Word a, Word b, Letter i) {
    if (a.contains(i) || b.contains(i))
        throw std::invalid_argument("fixed letter occurs in a word");
    return s_fixed_rec(a, b, i, nullptr);
}

const MPoly& SFixedMemo::get(Word a, Word b) {
    auto it = memo_.find({a, b});
    if (it != memo_.end()) return it->second;
    MPoly r = s_fixed_rec(a, b, i_, &memo_);
    return memo_.emplace(std::make_pair(a, b), std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// extended KLT matrix

MPoly s_extended_pivot(Word a, Word b, Letter i) {
    if (a.mask() != b.mask() || a.size() != b.size()) return {};
    int pa = a.find(i), pb = b.find(i);
    if (pa < 0 || pb < 0) throw std::invalid_argument("pivot letter missing");
    Word p = a.prefix(pa), q = a.suffix_from(pa + 1);
    Word r = b.prefix(pb), s = b.suffix_from(pb + 1);
    Rat sign = (p.empty() ? -1 : 1) * (r.empty() ? -1 : 1);
    MPoly acc;
    for (const auto& [u, cu] : words::ell(p))
        for (const auto& [v, cv] : words::ell(r)) {
            MPoly e = s_fixed(u.concat(q), v.concat(s), i);
            if (!e.empty()) acc = poly_add(acc, poly_scale(e, sign * cu * cv));
        }
    return acc;
}

MPoly s_extended(Word a, Word b) {
    if (a.mask() != b.mask() || a.size() != b.size()) return {};
    if (a.empty()) return poly_const(1);
    return s_extended_pivot(a, b, a.min_letter());
}

MPoly s_extended(const WordSum& a, const WordSum& b) {
    MPoly acc;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            MPoly e = s_extended(u, v);
            if (!e.empty()) acc = poly_add(acc, poly_scale(e, cu * cv));
        }
    return acc;
}

const MPoly& SExtMemo::get(Word a, Word b) {
    auto it = memo_.find({a, b});
    if (it != memo_.end()) return it->second;
    return memo_.emplace(std::make_pair(a, b), s_extended(a, b)).first->second;
}

MPoly s_sigma_form(Word p, Word q) {
    if (p.size() != q.size()) return {};
    WeightedWordSum sq = sigma(q);
    MPoly acc;
    for (const auto& [w, c] : words::ell(p)) {
        auto it = sq.find(w);
        if (it != sq.end()) acc = poly_add(acc, poly_scale(it->second, c));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// S-map

std::pair<Word, MPoly> weighted_concat(Word x, Word y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("weighted concat of empty word");
    return {x.concat(y), poly_var(svar(x.back(), y.front()))};
}

WeightedWordSum smap(Word a, Word b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("smap of empty word");
    if (a.mask() & b.mask()) throw std::invalid_argument("smap operands share letters");
    Rat sign = (b.size() % 2 == 0) ? -1 : 1;  // (-1)^(|B|+1)
    WeightedWordSum out;
    WordSum ra = words::rho(a);
    WordSum rb = words::rho(b);
    for (const auto& [u, cu] : ra)
        for (const auto& [v, cv] : rb) {
            Word vt = v.reversed();
            auto [w, weight] = weighted_concat(u, vt);
            add_to(out, w, poly_scale(weight, sign * cu * cv));
        }
    return out;
}

WeightedWordSum smap(const WeightedWordSum& a, const WeightedWordSum& b) {
    WeightedWordSum out;
    for (const auto& [wa, pa] : a)
        for (const auto& [wb, pb] : b) {
            MPoly scalep = poly_mul(pa, pb);
            for (const auto& [w, weight] : smap(wa, wb))
                add_to(out, w, poly_mul(weight, scalep));
        }
    return out;
}

WeightedWordSum smap_bg_form(Word a, Word b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("smap of empty word");
    WeightedWordSum out;
    const int na = a.size(), nb = b.size();
    for (int pi = 0; pi < na; ++pi)
        for (int pj = 0; pj < nb; ++pj) {
            int exp = pi - pj + na - 1;
            Rat sign = (exp % 2 == 0) ? 1 : -1;
            MPoly w = poly_var(svar(a.letter(pi), b.letter(pj)));
            WordSum sh1 = words::shuffle(a.prefix(pi), a.suffix_from(pi + 1).reversed());
            WordSum sh2 = words::shuffle(b.prefix(pj).reversed(), b.suffix_from(pj + 1));
            Word mid = Word::of({a.letter(pi), b.letter(pj)});
            for (const auto& [x, cx] : sh1)
                for (const auto& [y, cy] : sh2)
                    add_to(out, x.concat(mid).concat(y), poly_scale(w, sign * cx * cy));
        }
    return out;
}

WeightedWordSum sigma(Word p) {
    if (p.empty()) throw std::invalid_argument("sigma of empty word");
    WeightedWordSum acc;
    acc.emplace(p.prefix(1), poly_const(1));
    for (int k = 1; k < p.size(); ++k) {
        WeightedWordSum next;
        next.emplace(p.sub(k, 1), poly_const(1));
        acc = smap(acc, next);
    }
    return acc;
}

currents::WordRatSum sigma(const currents::WordRatSum& s) {
    std::map<Word, mandelstam::MRatAcc> acc;
    for (const auto& [w, c] : s)
        for (const auto& [sw, weight] : sigma(w)) {
            auto& a = acc[sw];
            for (const auto& [mono, k] : weight) a.add_scaled(c, k, mono);
        }
    currents::WordRatSum out;
    for (auto& [w, a] : acc) {
        MRat r = a.take();
        if (!r.empty()) out.emplace(w, std::move(r));
    }
    return out;
}

WeightedWordSum smap_nest(const Bracketing& br) {
    if (br.is_leaf()) {
        WeightedWordSum out;
        out.emplace(Word::of({br.letter()}), poly_const(1));
        return out;
    }
    return smap(smap_nest(br.left()), smap_nest(br.right()));
}

currents::LieRatSum nested_smap_b(const Bracketing& br) {
    std::vector<std::pair<Bracketing, MRat>> ts;
    for (const auto& [w, weight] : smap_nest(br))
        for (const auto& [b, c] : currents::b_word(w).terms)
            ts.emplace_back(b, rat_mul_poly(c, weight));
    return currents::LieRatSum::from_terms(std::move(ts));
}

GraftPair graft_b(Word a, Word b) {
    GraftPair out;
    std::vector<std::pair<Bracketing, MRat>> lhs;
    currents::LieRatSum ba = currents::b_word(a);
    currents::LieRatSum bb = currents::b_word(b);
    for (const auto& [bra, ca] : ba.terms)
        for (const auto& [brb, cb] : bb.terms)
            lhs.emplace_back(Bracketing::pair(bra, brb), rat_mul(ca, cb));
    out.grafted = currents::LieRatSum::from_terms(std::move(lhs));

    std::vector<std::pair<Bracketing, MRat>> rhs;
    for (const auto& [w, weight] : smap(a, b))
        for (const auto& [br, c] : currents::b_word(w).terms)
            rhs.emplace_back(br, rat_mul_poly(c, weight));
    out.via_smap = currents::LieRatSum::from_terms(std::move(rhs));
    return out;
}

// ---------------------------------------------------------------------------
// V from M

std::map<Word, MPoly> v_from_m(Word a) {
    std::map<Word, MPoly> out;
    if (a.empty()) return out;
    Letter i = a.min_letter();
    Word head = Word::of({i});
    const Rat inv_n(1, a.size());
    for (const Word& b : words::all_words(a.mask())) {
        MPoly s = s_extended(a, b);
        if (s.empty()) continue;
        // Schocker reduction of M_B onto the M_{iC} basis
        int pos = b.find(i);
        std::vector<std::pair<Word, Rat>> basis_terms;
        if (pos == 0) {
            basis_terms.emplace_back(b, 1);
        } else {
            Word x = b.prefix(pos);
            Word y = b.suffix_from(pos + 1);
            Rat sign = (x.size() % 2 == 0) ? 1 : -1;
            for (const auto& [w, c] : words::shuffle(x.reversed(), y))
                basis_terms.emplace_back(head.concat(w), sign * c);
        }
        for (const auto& [w, c] : basis_terms) {
            MPoly add = poly_scale(s, c * inv_n);
            auto it = out.find(w);
            if (it == out.end()) {
                out.emplace(w, std::move(add));
            } else {
                it->second = poly_add(it->second, add);
                if (it->second.empty()) out.erase(it);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// labelled trees

std::vector<RootedTree> tree_monomials(const MPoly& p, Letter root, std::uint32_t letters_mask) {
    std::vector<RootedTree> out;
    const int n = __builtin_popcount(letters_mask);
    for (const auto& [m, c] : p) {
        (void)c;
        for (std::size_t k = 1; k < m.size(); ++k)
            if (m[k] == m[k - 1]) throw std::domain_error("monomial has a square factor");
        if (static_cast<int>(m.size()) != n)
            throw std::domain_error("monomial degree != vertex count - 1");
        std::uint32_t vmask = 1u << root;
        // union-find over letters
        int parent[32];
        for (int v = 0; v < 32; ++v) parent[v] = v;
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (SVar e : m) {
            int u = svar_lo(e), v = svar_hi(e);
            vmask |= (1u << u) | (1u << v);
            parent[find(u)] = find(v);
        }
        if (vmask != (letters_mask | (1u << root)))
            throw std::domain_error("monomial does not cover the vertex set");
        int r = find(root), comps = 0;
        for (int v = 1; v < 32; ++v)
            if ((vmask & (1u << v)) && find(v) != r) ++comps;
        if (comps != 0) throw std::domain_error("monomial graph is disconnected");
        out.push_back({root, vmask, m});
    }
    return out;
}

// ---------------------------------------------------------------------------
// shuffle-aware pairing

Rat shuffle_pairing(Word a, Word p) {
    if (a.empty() || p.empty()) return a == p ? 1 : 0;
    Letter i = a.front();
    int pos = p.find(i);
    if (pos < 0) return 0;
    Word b = a.suffix_from(1);
    Word c = p.prefix(pos);
    Word d = p.suffix_from(pos + 1);
    Rat sign = (c.size() % 2 == 0) ? 1 : -1;
    Rat acc = 0;
    for (const auto& [w, k] : words::shuffle(c.reversed(), d))
        if (w == b) acc += k;
    return sign * acc;
}

MPoly sigma_shuffled_pairing(Word a, Word q) {
    if (a.size() != q.size()) return {};
    MPoly acc;
    for (const auto& [pw, weight] : sigma(q)) {
        Rat v = shuffle_pairing(a, pw);
        if (v != 0) acc = poly_add(acc, poly_scale(weight, v));
    }
    return acc;
}

}  // namespace bgklt::klt
