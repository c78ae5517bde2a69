#include <doctest.h>

#include <set>

#include "bgklt/brst.hpp"
#include "bgklt/serialize.hpp"

using namespace bgklt;
using namespace bgklt::brst;
using namespace bgklt::mandelstam;
using words::Word;
using words::WordSum;

namespace {
Word w(std::initializer_list<words::Letter> ls) { return Word::of(ls); }
std::uint32_t mask(std::initializer_list<int> ls) {
    std::uint32_t m = 0;
    for (int l : ls) m |= 1u << l;
    return m;
}
}  // namespace

TEST_CASE("QV fixtures") {
    CHECK(qv(w({1})).empty());
    CHECK(io::grassmann_text(qv(w({1, 2}))) == "s12 * V1^V2");
    // QV_123 = (k1.k2)[V1 V23 + V13 V2] + (k12.k3) V12 V3
    GrassmannPoly g = qv(w({1, 2, 3}));
    REQUIRE(g.terms.size() == 3);
    CHECK(rat_equal(g.terms.at({w({1}), w({2, 3})}), MRat::from_poly(poly_var(svar(1, 2)))));
    // V13 V2 canonicalizes to -V2^V13
    CHECK(rat_equal(g.terms.at({w({2}), w({1, 3})}),
                    rat_neg(MRat::from_poly(poly_var(svar(1, 2))))));
    CHECK(rat_equal(g.terms.at({w({3}), w({1, 2})}),
                    rat_neg(MRat::from_poly(dot(mask({1, 2}), mask({3}))))));
    // QV_1234 term count: 4 + 2 + 1 keys
    CHECK(qv(w({1, 2, 3, 4})).terms.size() == 7);
}

TEST_CASE("grassmann canonicalization") {
    GrassmannPoly g;
    g.degree = 2;
    add_term(g, {w({2, 3}), w({1})}, MRat::one());
    // swapped back into order with a sign flip
    REQUIRE(g.terms.size() == 1);
    CHECK(rat_equal(g.terms.at({w({1}), w({2, 3})}), rat_neg(MRat::one())));
    // normalizing twice is the same as once: adding the ordered term cancels
    add_term(g, {w({1}), w({2, 3})}, MRat::one());
    CHECK(g.empty());
    // a repeated factor dies
    add_term(g, {w({1}), w({1})}, MRat::one());
    CHECK(g.empty());
}

TEST_CASE("QM equals the deconcatenation sum at low multiplicity") {
    CHECK(qm(w({1})).empty());
    // QM_12 = M1 M2 = V1 V2
    GrassmannPoly q12 = qm(w({1, 2}));
    GrassmannPoly e12 = deconcat_mm(w({1, 2}));
    REQUIRE(e12.terms.size() == 1);
    CHECK(rat_equal(e12.terms.at({w({1}), w({2})}), MRat::one()));
    for (const auto& [k, c] : sub(q12, e12).terms) {
        (void)k;
        CHECK(rat_is_zero(c));
    }
    for (const auto& [k, c] : sub(qm(w({1, 2, 3})), deconcat_mm(w({1, 2, 3}))).terms) {
        (void)k;
        CHECK(rat_is_zero(c));
    }
    for (const auto& [k, c] : sub(qm(w({1, 2, 3, 4})), deconcat_mm(w({1, 2, 3, 4}))).terms) {
        (void)k;
        CHECK(rat_is_zero(c));
    }
    // non-monotone letters too
    for (const auto& [k, c] : sub(qm(w({3, 1, 2})), deconcat_mm(w({3, 1, 2}))).terms) {
        (void)k;
        CHECK(rat_is_zero(c));
    }
}

TEST_CASE("amplitude assembly") {
    GrassmannPoly a3 = amplitude(3);
    REQUIRE(a3.terms.size() == 1);
    CHECK(rat_equal(a3.terms.at({w({1}), w({2}), w({3})}), MRat::one()));
    CHECK_THROWS_AS(amplitude(2), std::invalid_argument);
    GrassmannPoly a4 = amplitude(4);
    CHECK_FALSE(a4.empty());
    std::uint32_t full = mask({1, 2, 3, 4});
    for (const auto& [k, c] : a4.terms) {
        (void)c;
        std::uint32_t seen = 0;
        for (const auto& vw : k) {
            CHECK((seen & vw.mask()) == 0);
            seen |= vw.mask();
        }
        CHECK(seen == full);
    }
    // E_123 M_4 carries the s12 and s23 poles; s123 enters at n = 5
    // through the M_123 M_4 deconcatenation
    auto poles_of = [](const brst::GrassmannPoly& g) {
        std::set<std::uint32_t> poles;
        for (const auto& [k, c] : g.terms) {
            (void)k;
            for (const auto& t : c.terms())
                for (auto p : t.den) poles.insert(p);
        }
        return poles;
    };
    auto p4 = poles_of(a4);
    CHECK(p4.count(mask({1, 2})));
    CHECK(p4.count(mask({2, 3})));
    CHECK_FALSE(p4.count(mask({1, 2, 3})));
    CHECK(poles_of(amplitude(5)).count(mask({1, 2, 3})));
}

TEST_CASE("jacobi consistency of QV") {
    // qv(12) + qv(21) = 0
    GrassmannPoly g = qv(WordSum{{w({1, 2}), 1}, {w({2, 1}), 1}});
    CHECK(g.empty());
    CHECK(check_jacobi_consistency(w({1, 2})));
    CHECK(check_jacobi_consistency(w({1, 2, 3})));
    CHECK(check_jacobi_consistency(w({1})));
    // the four-letter quartet
    GrassmannPoly quartet = qv(WordSum{{w({1, 2, 3, 4}), 1},
                                       {w({2, 1, 4, 3}), 1},
                                       {w({3, 4, 1, 2}), 1},
                                       {w({4, 3, 2, 1}), 1}});
    CHECK(quartet.empty());
}

TEST_CASE("nilpotency shadow at degree three") {
    // applying qv to both sides of QM_P = E_P gives equal degree-3 objects
    for (auto p : {w({1, 2, 3}), w({1, 2, 3, 4})}) {
        GrassmannPoly lhs = qv_on_degree2(qm(p));
        GrassmannPoly rhs = qv_on_degree2(deconcat_mm(p));
        for (const auto& [k, c] : sub(lhs, rhs).terms) {
            (void)k;
            CHECK(rat_is_zero(c));
        }
    }
}

TEST_CASE("grassmann serialization") {
    GrassmannPoly g = qv(w({1, 2}));
    CHECK(io::grassmann_json(g) ==
          R"([{"coeff":[{"coeff":"1","num":["s12"],"poles":[]}],"v_words":["1","2"]}])");
    CHECK(io::grassmann_latex(g) == "s_{12}\\,V_{1}V_{2}");
}
