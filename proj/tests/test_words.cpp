#include <doctest.h>

#include <random>

#include "bgklt/serialize.hpp"
#include "bgklt/words.hpp"

using namespace bgklt;
using namespace bgklt::words;

namespace {
Word w(std::initializer_list<Letter> ls) { return Word::of(ls); }
}  // namespace

TEST_CASE("word construction and ordering") {
    Word a = w({1, 2, 3});
    CHECK(a.size() == 3);
    CHECK(a.letter(0) == 1);
    CHECK(a.back() == 3);
    CHECK(a.mask() == 0b1110u);
    CHECK(Word{} < a);
    CHECK(w({9}) < w({1, 2}));  // length first
    CHECK(w({1, 3}) < w({2, 1}));
    CHECK_THROWS_AS(a.append(2), std::invalid_argument);
    CHECK_THROWS_AS(a.append(0), std::invalid_argument);
    CHECK(a.reversed() == w({3, 2, 1}));
    CHECK(a.sub(1, 2) == w({2, 3}));
}

TEST_CASE("word serialization round trip") {
    CHECK(io::word_str(w({1, 2, 3})) == "123");
    CHECK(io::word_str(w({10, 2, 3})) == "10,2,3");
    CHECK(io::parse_word("123") == w({1, 2, 3}));
    CHECK(io::parse_word("10,2,3") == w({10, 2, 3}));
    CHECK(io::parse_word("e") == Word{});
    CHECK_THROWS_AS(io::parse_word("1x3"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_word("101"), std::invalid_argument);  // 0 is no letter
    // any word survives a round trip
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        Word r;
        for (int i = 0; i < 6; ++i) {
            Letter l = 1 + static_cast<Letter>(rng() % 20);
            if (!r.contains(l)) r = r.append(l);
        }
        CHECK(io::parse_word(io::word_str(r)) == r);
    }
}

TEST_CASE("shuffle product") {
    CHECK(shuffle(Word{}, w({1, 2})) == WordSum{{w({1, 2}), 1}});
    CHECK(shuffle(w({1}), w({2})) == WordSum{{w({1, 2}), 1}, {w({2, 1}), 1}});
    WordSum s = shuffle(w({1, 2}), w({3}));
    CHECK(s == WordSum{{w({1, 2, 3}), 1}, {w({1, 3, 2}), 1}, {w({3, 1, 2}), 1}});
    CHECK_THROWS_AS(shuffle(w({1, 2}), w({2, 3})), std::invalid_argument);
    // |A sh B| = binomial(|A|+|B|, |A|)
    CHECK(shuffle(w({1, 2, 3}), w({4, 5})).size() == 10);
}

TEST_CASE("deconcatenations") {
    auto d = deconcatenations(w({1, 2, 3}));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == std::pair{w({1}), w({2, 3})});
    CHECK(d[1] == std::pair{w({1, 2}), w({3})});
    CHECK(deconcatenations(w({1})).empty());
    CHECK(deconcatenations(Word{}).empty());
}

TEST_CASE("deshuffle2 lists all complementary pairs") {
    auto d = deshuffle2(w({1, 2, 3}));
    REQUIRE(d.size() == 8);
    CHECK(d[0] == std::pair{Word{}, w({1, 2, 3})});
    CHECK(d[1] == std::pair{w({1}), w({2, 3})});
    CHECK(d[2] == std::pair{w({2}), w({1, 3})});
    CHECK(d[3] == std::pair{w({1, 2}), w({3})});
    CHECK(d[4] == std::pair{w({3}), w({1, 2})});
    CHECK(d[5] == std::pair{w({1, 3}), w({2})});
    CHECK(d[6] == std::pair{w({2, 3}), w({1})});
    CHECK(d[7] == std::pair{w({1, 2, 3}), Word{}});
    CHECK(deshuffle2(Word{}) == std::vector{std::pair{Word{}, Word{}}});
    // every pair pairs to 1 against the shuffle
    for (const auto& [r, s] : d) CHECK(scalar(w({1, 2, 3}), shuffle(r, s)) == 1);
}

TEST_CASE("ell bracketing") {
    CHECK(ell(w({1})) == WordSum{{w({1}), 1}});
    CHECK(ell(Word{}) == WordSum{{Word{}, 1}});  // ell of empty is empty word
    CHECK(ell(w({1, 2})) == WordSum{{w({1, 2}), 1}, {w({2, 1}), -1}});
    CHECK(ell(w({1, 2, 3})) == WordSum{{w({1, 2, 3}), 1},
                                       {w({2, 1, 3}), -1},
                                       {w({3, 1, 2}), -1},
                                       {w({3, 2, 1}), 1}});
}

TEST_CASE("rho recursions") {
    CHECK(rho(w({1})) == WordSum{{w({1}), 1}});
    CHECK(rho(w({1, 2})) == WordSum{{w({1, 2}), 1}, {w({2, 1}), -1}});
    CHECK(rho(w({1, 2, 3})) == WordSum{{w({1, 2, 3}), 1},
                                       {w({1, 3, 2}), -1},
                                       {w({3, 1, 2}), -1},
                                       {w({3, 2, 1}), 1}});
    CHECK_THROWS_AS(rho(Word{}), std::invalid_argument);
    CHECK(rho_shuffle_form(w({1, 2})) == rho(w({1, 2})));
    CHECK(rho_shuffle_form(w({1, 2, 3})) == rho(w({1, 2, 3})));
}

TEST_CASE("bracketing expansion") {
    Bracketing b12 = Bracketing::pair(Bracketing::leaf(1), Bracketing::leaf(2));
    Bracketing b123 = Bracketing::pair(b12, Bracketing::leaf(3));
    CHECK(expand_bracketing(b123) == ell(w({1, 2, 3})));
    Bracketing b23 = Bracketing::pair(Bracketing::leaf(2), Bracketing::leaf(3));
    Bracketing b1_23 = Bracketing::pair(Bracketing::leaf(1), b23);
    CHECK(expand_bracketing(b1_23) == WordSum{{w({1, 2, 3}), 1},
                                              {w({1, 3, 2}), -1},
                                              {w({2, 3, 1}), -1},
                                              {w({3, 2, 1}), 1}});
    CHECK(expand_bracketing(Bracketing::leaf(5)) == WordSum{{w({5}), 1}});
    CHECK(b123.str() == "[[1,2],3]");
    CHECK_THROWS_AS(Bracketing::pair(b12, Bracketing::leaf(1)), std::invalid_argument);
}

TEST_CASE("scalar product") {
    CHECK(scalar(w({1, 2, 3}), ell(w({1, 2, 3}))) == 1);
    Bracketing b12 = Bracketing::pair(Bracketing::leaf(1), Bracketing::leaf(2));
    Bracketing b123 = Bracketing::pair(b12, Bracketing::leaf(3));
    CHECK(scalar(w({2, 1, 3}), expand_bracketing(b123)) == -1);
    CHECK(scalar(w({1, 2}), shuffle(w({1}), w({2}))) == 1);
}

TEST_CASE("Ree criterion") {
    CHECK(is_lie(ell(w({1, 2, 3}))));
    CHECK_FALSE(is_lie(WordSum{{w({1, 2}), 1}, {w({2, 1}), 1}}));  // = 1 sh 2
    CHECK(is_lie(WordSum{{w({1}), 1}}));
    CHECK_THROWS_AS(is_lie(WordSum{{w({1}), 1}, {w({1, 2}), 1}}), std::invalid_argument);
    // every bracketing expansion is a Lie polynomial
    std::mt19937 rng(11);
    for (int round = 0; round < 20; ++round) {
        std::vector<Letter> ls = {1, 2, 3, 4, 5};
        std::shuffle(ls.begin(), ls.end(), rng);
        int n = 2 + static_cast<int>(rng() % 4);
        std::vector<Bracketing> parts;
        for (int i = 0; i < n; ++i) parts.push_back(Bracketing::leaf(ls[i]));
        while (parts.size() > 1) {
            std::size_t i = rng() % (parts.size() - 1);
            Bracketing joined = Bracketing::pair(parts[i], parts[i + 1]);
            parts.erase(parts.begin() + i + 1);
            parts[i] = joined;
        }
        CHECK(is_lie(expand_bracketing(parts[0])));
    }
}

TEST_CASE("dynkin pairing fixture") {
    CHECK(scalar(ell(w({1, 2, 3})), rho(w({1, 2, 3}))) == 3);
}
