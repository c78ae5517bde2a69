#include <doctest.h>

#include "bgklt/currents.hpp"
#include "bgklt/serialize.hpp"

using namespace bgklt;
using namespace bgklt::currents;
using namespace bgklt::mandelstam;
using words::Bracketing;
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

TEST_CASE("phi word expansions") {
    CHECK(io::rat_text(phi_word(w({1}))) == "1");
    CHECK(io::rat_text(phi_word(w({1, 2}))) == "1/s12");
    CHECK(io::rat_text(phi_word(w({1, 2, 3}))) == "1/(s12*s123) + 1/(s23*s123)");
    CHECK(phi_word(Word{}).empty());
    // the five terms of phi(1234)
    MRat phi4 = phi_word(w({1, 2, 3, 4}));
    CHECK(phi4.size() == 5);
    MRat expect;
    for (auto poles : {std::vector<std::uint32_t>{mask({1, 2}), mask({1, 2, 3})},
                       std::vector<std::uint32_t>{mask({2, 3}), mask({1, 2, 3})},
                       std::vector<std::uint32_t>{mask({1, 2}), mask({3, 4})},
                       std::vector<std::uint32_t>{mask({3, 4}), mask({2, 3, 4})},
                       std::vector<std::uint32_t>{mask({2, 3}), mask({2, 3, 4})}}) {
        poles.push_back(mask({1, 2, 3, 4}));
        std::sort(poles.begin(), poles.end(), pole_less);
        expect = rat_add(expect, MRat::from_term(1, {}, poles));
    }
    CHECK(rat_equal(phi4, expect));
}

TEST_CASE("phi pair fixtures") {
    CHECK(io::rat_text(phi_pair(w({1, 2}), w({2, 1}))) == "-1/s12");
    CHECK(io::rat_text(phi_pair(w({1, 2}), w({1, 2}))) == "1/s12");
    CHECK(io::rat_text(phi_pair(w({1, 2, 3}), w({2, 1, 3}))) == "-1/(s12*s123)");
    CHECK(phi_pair(w({1, 2, 3}), w({4, 5, 6})).empty());
    // multiplicity-three table
    CHECK(rat_equal(phi_pair(w({1, 2, 3}), w({1, 2, 3})),
                    rat_add(MRat::from_term(1, {}, {mask({1, 2}), mask({1, 2, 3})}),
                            MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})}))));
    CHECK(io::rat_text(phi_pair(w({1, 2, 3}), w({1, 3, 2}))) == "-1/(s23*s123)");
    CHECK(io::rat_text(phi_pair(w({1, 2, 3}), w({2, 3, 1}))) == "-1/(s23*s123)");
    CHECK(io::rat_text(phi_pair(w({1, 2, 3}), w({3, 1, 2}))) == "-1/(s12*s123)");
    CHECK(rat_equal(phi_pair(w({1, 2, 3}), w({3, 2, 1})), phi_pair(w({1, 2, 3}), w({1, 2, 3}))));
}

TEST_CASE("phi pair via b") {
    CHECK(io::rat_text(phi_pair_via_b(w({2, 1, 3}), w({1, 2, 3}))) == "-1/(s12*s123)");
    CHECK(io::rat_text(phi_pair_via_b(w({1, 2}), w({1, 2}))) == "1/s12");
    for (const Word& p : words::all_perms(4))
        CHECK(rat_equal(phi_pair(p, w({1, 2, 3, 4})), phi_pair_via_b(p, w({1, 2, 3, 4}))));
}

TEST_CASE("phi cap table") {
    CHECK(io::rat_text(phi_cap(w({2}), w({2}), 1)) == "1/s12");
    CHECK(io::rat_text(phi_cap(w({2, 3}), w({3, 2}), 1)) == "-1/(s23*s123)");
    CHECK(rat_equal(phi_cap(w({3, 2}), w({3, 2}), 1),
                    rat_add(MRat::from_term(1, {}, {mask({1, 3}), mask({1, 2, 3})}),
                            MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})}))));
    CHECK_THROWS_AS(phi_cap(w({1, 2}), w({2, 1}), 1), std::invalid_argument);
}

TEST_CASE("b word expansions") {
    LieRatSum b1 = b_word(w({1}));
    REQUIRE(b1.terms.size() == 1);
    CHECK(b1.terms[0].first.str() == "1");
    LieRatSum b12 = b_word(w({1, 2}));
    REQUIRE(b12.terms.size() == 1);
    CHECK(b12.terms[0].first.str() == "[1,2]");
    CHECK(io::rat_text(b12.terms[0].second) == "1/s12");
    LieRatSum b123 = b_word(w({1, 2, 3}));
    REQUIRE(b123.terms.size() == 2);
    // canonical order sorts [1,[2,3]] before [[1,2],3]
    CHECK(b123.terms[0].first.str() == "[1,[2,3]]");
    CHECK(io::rat_text(b123.terms[0].second) == "1/(s23*s123)");
    CHECK(b123.terms[1].first.str() == "[[1,2],3]");
    CHECK(io::rat_text(b123.terms[1].second) == "1/(s12*s123)");
    CHECK(b_word(Word{}).terms.empty());
    CHECK(b_word(w({1, 2, 3, 4})).terms.size() == 5);
    // word expansion of each graded piece is a Lie polynomial:
    // check orthogonality to proper shuffles at the rational level
    WordRatSum e = b_expansion(w({1, 2, 3}));
    MRatSum pairing;
    for (const auto& [word, c] : words::shuffle(w({1}), w({2, 3})))
        if (auto it = e.find(word); it != e.end()) pairing.add(it->second, c);
    CHECK(pairing.is_zero_with(ZeroCheck{}));
}

TEST_CASE("v reduction") {
    // reduction of a nested bracket to the vertex basis
    Bracketing inner = Bracketing::pair(
        Bracketing::pair(Bracketing::leaf(2), Bracketing::leaf(3)), Bracketing::leaf(4));
    Bracketing br = Bracketing::pair(Bracketing::leaf(1), inner);
    auto red = v_reduce(br);
    std::map<Word, Rat> expect = {{w({1, 2, 3, 4}), 1},
                                  {w({1, 3, 2, 4}), -1},
                                  {w({1, 4, 2, 3}), -1},
                                  {w({1, 4, 3, 2}), 1}};
    CHECK(red == expect);
    CHECK(v_reduce(w({2, 1, 3})) == std::map<Word, Rat>{{w({1, 2, 3}), -1}});
    CHECK(v_reduce(w({1, 2, 3})) == std::map<Word, Rat>{{w({1, 2, 3}), 1}});
    // the quartet from the generalized Jacobi identity reduces to zero
    WordSum quartet{{w({1, 2, 3, 4}), 1},
                    {w({2, 1, 4, 3}), 1},
                    {w({3, 4, 1, 2}), 1},
                    {w({4, 3, 2, 1}), 1}};
    CHECK(v_reduce(quartet).empty());
    for (const auto& [word, c] : red) {
        (void)c;
        CHECK(is_reduced_vword(word));
    }
}

TEST_CASE("current fixtures and route agreement") {
    Current m1 = m_current(w({1}));
    REQUIRE(m1.size() == 1);
    CHECK(io::rat_text(m1.at(w({1}))) == "1");
    Current m12 = m_current(w({1, 2}));
    REQUIRE(m12.size() == 1);
    CHECK(io::rat_text(m12.at(w({1, 2}))) == "1/s12");
    Current m123 = m_current(w({1, 2, 3}));
    REQUIRE(m123.size() == 2);
    CHECK(rat_equal(m123.at(w({1, 2, 3})),
                    rat_add(MRat::from_term(1, {}, {mask({1, 2}), mask({1, 2, 3})}),
                            MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})}))));
    CHECK(io::rat_text(m123.at(w({1, 3, 2}))) == "-1/(s23*s123)");
    CHECK(m_current(Word{}).empty());
    // both construction routes agree through multiplicity five
    for (int n = 2; n <= 5; ++n) {
        Word p = words::id_word(n);
        Current a = m_current(p), b = m_current_via_b(p);
        CHECK(a.size() == b.size());
        for (const auto& [vw, c] : a) CHECK(rat_equal(c, b.at(vw)));
        CHECK(a.size() <= [](int k) {
            std::size_t f = 1;
            for (int i = 2; i <= k; ++i) f *= i;
            return f;
        }(n - 1));
    }
    // a non-canonical word too
    Current viaPhi = m_current(w({3, 1, 4, 2}));
    Current viaB = m_current_via_b(w({3, 1, 4, 2}));
    CHECK(viaPhi.size() == viaB.size());
    for (const auto& [vw, c] : viaPhi) CHECK(rat_equal(c, viaB.at(vw)));
}

TEST_CASE("generalized jacobi kills v-reduced combinations") {
    // V_{A ell(B) C} + V_{B ell(A) C} = 0, A=1, B=2, C=34
    WordSum combo;
    for (const auto& [u, k] : words::ell(w({2})))
        words::add_term(combo, w({1}).concat(u).concat(w({3, 4})), k);
    for (const auto& [u, k] : words::ell(w({1})))
        words::add_term(combo, w({2}).concat(u).concat(w({3, 4})), k);
    CHECK(v_reduce(combo).empty());
}
