#include "bgklt/brst.hpp"

#include <algorithm>

namespace bgklt::brst {

using namespace mandelstam;
using words::Letter;
using words::WordSum;

void add_term(GrassmannPoly& g, std::vector<Word> factors, const MRat& c) {
    if (c.empty()) return;
    // insertion sort with parity
    int sign = 1;
    for (std::size_t i = 1; i < factors.size(); ++i)
        for (std::size_t j = i; j > 0 && factors[j] < factors[j - 1]; --j) {
            std::swap(factors[j], factors[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] == factors[i - 1]) return;  // V V = 0
    MRat add = sign == 1 ? c : rat_neg(c);
    auto it = g.terms.find(factors);
    if (it == g.terms.end()) {
        g.terms.emplace(std::move(factors), std::move(add));
    } else {
        it->second = rat_add(it->second, add);
        if (it->second.empty()) g.terms.erase(it);
    }
}

GrassmannPoly sub(const GrassmannPoly& a, const GrassmannPoly& b) {
    GrassmannPoly out;
    out.degree = a.degree;
    out.terms = a.terms;
    for (const auto& [k, c] : b.terms) {
        auto it = out.terms.find(k);
        if (it == out.terms.end()) {
            out.terms.emplace(k, rat_neg(c));
        } else {
            it->second = rat_sub(it->second, c);
            if (it->second.empty()) out.terms.erase(it);
        }
    }
    return out;
}

GrassmannPoly qv(Word p) {
    GrassmannPoly g;
    g.degree = 2;
    for (int jpos = 1; jpos < p.size(); ++jpos) {  // X empty has k_X = 0
        Word x = p.prefix(jpos);
        Letter j = p.letter(jpos);
        Word y = p.suffix_from(jpos + 1);
        MPoly kdot = dot(x.mask(), 1u << j);
        MRat weight = MRat::from_poly(kdot);
        Word jw = Word::of({j});
        for (const auto& [r, s] : words::deshuffle2(y)) {
            auto redl = currents::v_reduce(x.concat(r));
            auto redr = currents::v_reduce(jw.concat(s));
            for (const auto& [u, cu] : redl)
                for (const auto& [v, cv] : redr)
                    add_term(g, {u, v}, rat_scale(weight, cu * cv));
        }
    }
    return g;
}

GrassmannPoly qv(const WordSum& s) {
    GrassmannPoly g;
    g.degree = 2;
    for (const auto& [w, c] : s) {
        GrassmannPoly gw = qv(w);
        for (const auto& [k, x] : gw.terms) add_term(g, k, rat_scale(x, c));
    }
    return g;
}

GrassmannPoly qm(Word p) {
    GrassmannPoly g;
    g.degree = 2;
    if (p.size() < 1) return g;
    for (const auto& [vw, coeff] : currents::m_current(p)) {
        GrassmannPoly gv = qv(vw);
        for (const auto& [k, c] : gv.terms) add_term(g, k, rat_mul(coeff, c));
    }
    return g;
}

GrassmannPoly deconcat_mm(Word p) {
    GrassmannPoly g;
    g.degree = 2;
    for (const auto& [x, y] : words::deconcatenations(p)) {
        currents::Current mx = currents::m_current(x);
        currents::Current my = currents::m_current(y);
        for (const auto& [u, cu] : mx)
            for (const auto& [v, cv] : my) add_term(g, {u, v}, rat_mul(cu, cv));
    }
    return g;
}

GrassmannPoly amplitude(int n) {
    if (n < 3) throw std::invalid_argument("amplitude needs n >= 3");
    GrassmannPoly e = deconcat_mm(words::id_word(n - 1));
    GrassmannPoly g;
    g.degree = 3;
    Word last = Word::of({static_cast<Letter>(n)});
    for (const auto& [k, c] : e.terms) add_term(g, {k[0], k[1], last}, c);
    return g;
}

GrassmannPoly qv_on_degree2(const GrassmannPoly& g) {
    GrassmannPoly out;
    out.degree = 3;
    for (const auto& [k, c] : g.terms) {
        GrassmannPoly qa = qv(k[0]);
        for (const auto& [k2, c2] : qa.terms) add_term(out, {k2[0], k2[1], k[1]}, rat_mul(c, c2));
        GrassmannPoly qb = qv(k[1]);
        for (const auto& [k2, c2] : qb.terms)
            add_term(out, {k[0], k2[0], k2[1]}, rat_neg(rat_mul(c, c2)));
    }
    return out;
}

bool check_jacobi_consistency(Word p) {
    const auto letters = p.letters();
    const int n = p.size();
    if (n < 2) return true;
    // split the letter set into A, B nonempty and C the rest, all orderings
    for (std::uint32_t am = 1; am < (1u << n); ++am) {
        std::uint32_t restm = ((1u << n) - 1) & ~am;
        if (restm == 0) continue;
        for (std::uint32_t bm = restm;; bm = (bm - 1) & restm) {
            if (bm == 0) break;
            std::uint32_t cm = restm & ~bm;
            std::vector<Letter> al, bl, cl;
            for (int i = 0; i < n; ++i) {
                if (am & (1u << i)) al.push_back(letters[i]);
                if (bm & (1u << i)) bl.push_back(letters[i]);
                if (cm & (1u << i)) cl.push_back(letters[i]);
            }
            std::sort(al.begin(), al.end());
            std::sort(bl.begin(), bl.end());
            std::sort(cl.begin(), cl.end());
            do {
                Word a = Word::of(al);
                do {
                    Word b = Word::of(bl);
                    WordSum lb = words::ell(b);
                    WordSum la = words::ell(a);
                    do {
                        Word c = Word::of(cl);
                        WordSum combo;
                        for (const auto& [u, k] : lb) words::add_term(combo, a.concat(u).concat(c), k);
                        for (const auto& [u, k] : la) words::add_term(combo, b.concat(u).concat(c), k);
                        if (!qv(combo).empty()) return false;
                    } while (std::next_permutation(cl.begin(), cl.end()));
                } while (std::next_permutation(bl.begin(), bl.end()));
            } while (std::next_permutation(al.begin(), al.end()));
        }
    }
    return true;
}

}  // namespace bgklt::brst
