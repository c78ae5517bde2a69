#include <doctest.h>

#include "bgklt/currents.hpp"
#include "bgklt/pbt.hpp"
#include "bgklt/serialize.hpp"

using namespace bgklt;
using namespace bgklt::pbt;
using words::Word;

namespace {
Word w(std::initializer_list<words::Letter> ls) { return Word::of(ls); }
}  // namespace

TEST_CASE("catalan counts") {
    const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 1; n <= 10; ++n) CHECK(enumerate(n).size() == catalan[n - 1]);
    CHECK_THROWS_AS(enumerate(0), std::out_of_range);
    CHECK_THROWS_AS(enumerate(11), std::out_of_range);
}

TEST_CASE("enumeration order is by left subtree size") {
    auto t3 = enumerate(3);
    REQUIRE(t3.size() == 2);
    CHECK(t3[0].str() == "(*,(*,*))");
    CHECK(t3[1].str() == "((*,*),*)");
    CHECK(t3[1].str_labelled(w({1, 2, 3})) == "((1,2),3)");
    auto t4 = enumerate(4);
    REQUIRE(t4.size() == 5);
    CHECK(t4[0].str() == "(*,(*,(*,*)))");
    CHECK(t4[4].str() == "(((*,*),*),*)");
}

TEST_CASE("phi on single trees") {
    auto t3 = enumerate(3);
    // left comb ((1,2),3): 1/(s12 s123); right comb (1,(2,3)): 1/(s23 s123)
    CHECK(io::rat_text(phi_tree(w({1, 2, 3}), t3[1])) == "1/(s12*s123)");
    CHECK(io::rat_text(phi_tree(w({1, 2, 3}), t3[0])) == "1/(s23*s123)");
    CHECK(io::rat_text(phi_tree(w({1, 2}), enumerate(2)[0])) == "1/s12");
    CHECK_THROWS_AS(phi_tree(w({1, 2}), t3[0]), std::invalid_argument);
}

TEST_CASE("b on single trees") {
    auto t3 = enumerate(3);
    auto [br_left, poles_left] = b_tree(w({1, 2, 3}), t3[1]);
    CHECK(br_left.str() == "[[1,2],3]");
    REQUIRE(poles_left.size() == 2);
    CHECK(io::pole_str(poles_left[0]) == "s12");
    CHECK(io::pole_str(poles_left[1]) == "s123");
    auto [br_right, poles_right] = b_tree(w({1, 2, 3}), t3[0]);
    CHECK(br_right.str() == "[1,[2,3]]");
    CHECK(io::pole_str(poles_right[0]) == "s23");
    auto [br2, poles2] = b_tree(w({1, 2}), enumerate(2)[0]);
    CHECK(br2.str() == "[1,2]");
    REQUIRE(poles2.size() == 1);
    CHECK(io::pole_str(poles2[0]) == "s12");
}

TEST_CASE("grafting") {
    auto t3 = enumerate(3);
    Tree g = graft(t3[1], enumerate(2)[0]);
    CHECK(g.leaves() == 5);
    CHECK(b_tree(w({1, 2, 3, 4, 5}), g).first.str() == "[[[1,2],3],[4,5]]");
    Tree two = graft(Tree::leaf(), Tree::leaf());
    CHECK(two.leaves() == 2);
    CHECK(two.str() == "(*,*)");
}

TEST_CASE("tree sum equals the deconcatenation recursion") {
    for (int n = 1; n <= 6; ++n) {
        Word p = words::id_word(n);
        mandelstam::MRat sum;
        for (const auto& t : enumerate(n)) sum = mandelstam::rat_add(sum, phi_tree(p, t));
        CHECK(mandelstam::rat_equal(sum, currents::phi_word(p)));
    }
}
