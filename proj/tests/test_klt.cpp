#include <doctest.h>

#include "bgklt/klt.hpp"
#include "bgklt/serialize.hpp"

using namespace bgklt;
using namespace bgklt::klt;
using namespace bgklt::mandelstam;
using words::Bracketing;
using words::Word;

namespace {
Word w(std::initializer_list<words::Letter> ls) { return Word::of(ls); }
std::uint32_t mask(std::initializer_list<int> ls) {
    std::uint32_t m = 0;
    for (int l : ls) m |= 1u << l;
    return m;
}
MPoly sv(int i, int j) { return poly_var(svar(i, j)); }
}  // namespace

TEST_CASE("fixed-letter KLT recursion") {
    CHECK(io::poly_text(s_fixed(w({2, 3}), w({2, 3}), 1)) == "s12*s13 + s12*s23");
    CHECK(io::poly_text(s_fixed(w({2, 3}), w({3, 2}), 1)) == "s12*s13");
    CHECK(io::poly_text(s_fixed(w({3, 2}), w({3, 2}), 1)) == "s12*s13 + s13*s23");
    // worked sequence S(243|432)_1 = (k14.k3)(k1.k4)(k1.k2)
    MPoly expect = poly_mul(poly_mul(dot(mask({1, 4}), mask({3})), sv(1, 4)), sv(1, 2));
    CHECK(poly_sub(s_fixed(w({2, 4, 3}), w({4, 3, 2}), 1), expect).empty());
    CHECK(s_fixed(w({2, 3}), w({2, 4}), 1).empty());
    CHECK(io::poly_text(s_fixed(Word{}, Word{}, 1)) == "1");
    CHECK_THROWS_AS(s_fixed(w({1, 2}), w({2, 1}), 1), std::invalid_argument);
    // symmetry in the two slots
    for (const Word& a : words::all_words(mask({2, 3, 4})))
        for (const Word& b : words::all_words(mask({2, 3, 4})))
            CHECK(poly_sub(s_fixed(a, b, 1), s_fixed(b, a, 1)).empty());
}

TEST_CASE("extended KLT matrix") {
    CHECK(io::poly_text(s_extended(w({2, 1, 3}), w({3, 2, 1}))) == "-s12*s23");
    // pivot independence on a worked entry
    CHECK(poly_sub(s_extended_pivot(w({2, 1, 3}), w({3, 2, 1}), 1),
                   s_extended_pivot(w({2, 1, 3}), w({3, 2, 1}), 2))
              .empty());
    // S(213|213) = S(123|123) = S(23|23)_1
    CHECK(poly_sub(s_extended(w({2, 1, 3}), w({2, 1, 3})), s_fixed(w({2, 3}), w({2, 3}), 1))
              .empty());
    CHECK(poly_sub(s_extended(w({1, 2, 3}), w({1, 3, 2})), s_fixed(w({2, 3}), w({3, 2}), 1))
              .empty());
    // S(213|231) = S(23|23)_1 - S(23|32)_1
    CHECK(poly_sub(s_extended(w({2, 1, 3}), w({2, 3, 1})),
                   poly_sub(s_fixed(w({2, 3}), w({2, 3}), 1), s_fixed(w({2, 3}), w({3, 2}), 1)))
              .empty());
    CHECK(s_extended(w({1, 2}), w({1, 3})).empty());
    // reduction to the fixed-letter matrix when first letters agree
    CHECK(poly_sub(s_extended(w({1, 2, 3}), w({1, 3, 2})), s_fixed(w({2, 3}), w({3, 2}), 1))
              .empty());
}

TEST_CASE("change of root fixture") {
    // S(314|314)_2 = S(234|234)_1 - 2 S(234|324)_1 + S(324|324)_1
    MPoly lhs = s_fixed(w({3, 1, 4}), w({3, 1, 4}), 2);
    MPoly rhs = poly_add(
        poly_sub(s_fixed(w({2, 3, 4}), w({2, 3, 4}), 1),
                 poly_scale(s_fixed(w({2, 3, 4}), w({3, 2, 4}), 1), 2)),
        s_fixed(w({3, 2, 4}), w({3, 2, 4}), 1));
    CHECK(poly_sub(lhs, rhs).empty());
}

TEST_CASE("sigma form of the extended matrix") {
    CHECK(io::poly_text(s_sigma_form(w({1, 2, 3}), w({1, 2, 3}))) == "s12*s13 + s12*s23");
    CHECK(io::poly_text(s_sigma_form(w({1, 2}), w({1, 2}))) == "s12");
    CHECK(s_sigma_form(w({1, 2, 3}), w({4, 5, 6})).empty());
    for (const Word& p : words::all_perms(4))
        CHECK(poly_sub(s_sigma_form(p, w({1, 2, 3, 4})), s_extended(p, w({1, 2, 3, 4}))).empty());
}

TEST_CASE("weighted concatenation and the S-map") {
    auto [word12_3, weight] = weighted_concat(w({1, 2}), w({3}));
    CHECK(word12_3 == w({1, 2, 3}));
    CHECK(io::poly_text(weight) == "s23");
    CHECK(weighted_concat(w({2, 1}), w({3})).second == sv(1, 3));
    CHECK_THROWS_AS(weighted_concat(Word{}, w({1})), std::invalid_argument);

    WeightedWordSum s = smap(w({1, 2}), w({3}));
    CHECK(io::weighted_text(s) == "s23*123 - s13*213");
    CHECK(io::weighted_text(smap(w({1}), w({2}))) == "s12*12");
    // eight terms of {123,45}
    WeightedWordSum big = smap(w({1, 2, 3}), w({4, 5}));
    CHECK(big.size() == 8);
    CHECK(io::weighted_text(big) ==
          "s34*12345 - s35*12354 - s24*13245 + s25*13254 - s24*31245 + s25*31254 + s14*32145 - "
          "s15*32154");
    CHECK_THROWS_AS(smap(w({1, 2}), w({2, 3})), std::invalid_argument);
}

TEST_CASE("S-map double-sum form") {
    for (auto [a, b] : {std::pair{w({1, 2}), w({3})}, {w({1}), w({2})}, {w({1, 2}), w({3, 4})},
                        {w({2, 4, 1}), w({3, 5})}}) {
        auto lhs = smap(a, b);
        auto rhs = smap_bg_form(a, b);
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& [word, p] : lhs) CHECK(poly_sub(p, rhs.at(word)).empty());
    }
}

TEST_CASE("sigma map") {
    CHECK(io::weighted_text(sigma(w({1}))) == "1");
    CHECK(io::weighted_text(sigma(w({1, 2}))) == "s12*12");
    CHECK(io::weighted_text(sigma(w({1, 2, 3}))) == "s12*s23*123 - s12*s13*213");
    // last letter of every term is the last letter of the argument
    for (const auto& [word, p] : sigma(w({2, 4, 1, 3}))) {
        (void)p;
        CHECK(word.back() == 3);
    }
}

TEST_CASE("nested S-map reproduces bracketings") {
    // the pole cancellation happens at the word level: s12 s23 b(123)
    // - s12 s13 b(213) expands to the words of [[1,2],3] exactly
    Bracketing b12 = Bracketing::pair(Bracketing::leaf(1), Bracketing::leaf(2));
    auto check_bare = [](const Bracketing& br) {
        currents::WordRatSum diff = currents::expand(nested_smap_b(br));
        for (const auto& [word, k] : words::expand_bracketing(br))
            currents::add_to(diff, word, MRat::from_const(-k));
        for (const auto& [word, c] : diff) {
            (void)word;
            CHECK(rat_is_zero(c));
        }
    };
    Bracketing b123 = Bracketing::pair(b12, Bracketing::leaf(3));
    check_bare(b123);
    // the nesting of [[1,2],3] pairs s12 s23 against b(123) and s12 s13 against b(213)
    WeightedWordSum nest = smap_nest(b123);
    REQUIRE(nest.size() == 2);
    CHECK(io::poly_text(nest.at(w({1, 2, 3}))) == "s12*s23");
    CHECK(io::poly_text(nest.at(w({2, 1, 3}))) == "-s12*s13");
    // [[1,2],[3,4]] needs the four-term expansion of the S-map
    Bracketing b34 = Bracketing::pair(Bracketing::leaf(3), Bracketing::leaf(4));
    check_bare(Bracketing::pair(b12, b34));
    // [1,2] = s12 b(12) on the nose
    currents::LieRatSum single = nested_smap_b(b12);
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].first.str() == "[1,2]");
    CHECK(rat_equal(single.terms[0].second, MRat::one()));
}

TEST_CASE("grafting algebra on the worked example") {
    GraftPair gp = graft_b(w({1, 2, 3}), w({4, 5}));
    // lhs: [[[1,2],3],[4,5]]/(s12 s45 s123) + [[1,[2,3]],[4,5]]/(s23 s45 s123)
    REQUIRE(gp.grafted.terms.size() == 2);
    CHECK(gp.grafted.terms[0].first.str() == "[[1,[2,3]],[4,5]]");
    CHECK(io::rat_text(gp.grafted.terms[0].second) == "1/(s23*s45*s123)");
    CHECK(gp.grafted.terms[1].first.str() == "[[[1,2],3],[4,5]]");
    CHECK(io::rat_text(gp.grafted.terms[1].second) == "1/(s12*s45*s123)");
    // rhs agrees after word expansion
    currents::WordRatSum diff = currents::expand(gp.grafted);
    for (const auto& [word, c] : currents::expand(gp.via_smap))
        currents::add_to(diff, word, rat_neg(c));
    for (const auto& [word, c] : diff) {
        (void)word;
        CHECK(rat_is_zero(c));
    }
}

TEST_CASE("V from M") {
    auto v1 = v_from_m(w({1}));
    REQUIRE(v1.size() == 1);
    CHECK(io::poly_text(v1.at(w({1}))) == "1");
    // V_123 = S(123|123) M_123 + S(123|132) M_132 = (s12 s23 + s12 s13) M123 + s12 s13 M132
    auto v123 = v_from_m(w({1, 2, 3}));
    REQUIRE(v123.size() == 2);
    CHECK(poly_sub(v123.at(w({1, 2, 3})), s_extended(w({1, 2, 3}), w({1, 2, 3}))).empty());
    CHECK(poly_sub(v123.at(w({1, 3, 2})), s_extended(w({1, 2, 3}), w({1, 3, 2}))).empty());
    CHECK(io::poly_text(v123.at(w({1, 2, 3}))) == "s12*s13 + s12*s23");
    CHECK(io::poly_text(v123.at(w({1, 3, 2}))) == "s12*s13");
    // fixed-letter reduction: V_{iA} entries match S(A|B)_i
    auto v1234 = v_from_m(w({1, 2, 3, 4}));
    for (const auto& [mw, coeff] : v1234) {
        CHECK(mw.front() == 1);
        CHECK(poly_sub(coeff, s_fixed(w({2, 3, 4}), mw.suffix_from(1), 1)).empty());
    }
}

TEST_CASE("tree monomials") {
    auto trees = tree_monomials(s_fixed(w({2, 3, 4}), w({4, 2, 3}), 1), 1, mask({2, 3, 4}));
    CHECK(trees.size() == 2);
    auto single = tree_monomials(s_fixed(w({2}), w({2}), 1), 1, mask({2}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].edges == Mono{svar(1, 2)});
    // a square factor violates the axioms
    MPoly bad;
    bad.emplace(Mono{svar(1, 2), svar(1, 2)}, 1);
    CHECK_THROWS_AS(tree_monomials(bad, 1, mask({2})), std::domain_error);
    // a disconnected graph violates the axioms
    MPoly disc;
    disc.emplace(Mono{svar(2, 3), svar(4, 5)}, 1);
    CHECK_THROWS_AS(tree_monomials(disc, 1, mask({2, 3, 4, 5})), std::domain_error);
}

TEST_CASE("shuffle-aware pairing") {
    CHECK(shuffle_pairing(w({1, 2}), w({1, 2})) == 1);
    CHECK(shuffle_pairing(w({1, 2}), w({2, 1})) == -1);
    for (const Word& a : words::all_perms(3))
        for (const Word& p : words::all_perms(3))
            CHECK(shuffle_pairing(a, p) == words::scalar(p, words::ell(a)));
    for (const Word& p : words::all_perms(4))
        CHECK(poly_sub(sigma_shuffled_pairing(p, w({1, 2, 3, 4})),
                       s_sigma_form(p, w({1, 2, 3, 4})))
                  .empty());
}
