#include <doctest.h>

#include <random>

#include "bgklt/mandelstam.hpp"
#include "bgklt/serialize.hpp"

using namespace bgklt;
using namespace bgklt::mandelstam;

namespace {
std::uint32_t mask(std::initializer_list<int> ls) {
    std::uint32_t m = 0;
    for (int l : ls) m |= 1u << l;
    return m;
}
}  // namespace

TEST_CASE("s of a letter set") {
    MPoly s123 = s_of_letters(mask({1, 2, 3}));
    CHECK(io::poly_text(s123) == "s12 + s13 + s23");
    CHECK(s_of_letters(mask({5})).empty());  // massless
    CHECK(io::poly_text(s_of_letters(mask({1, 2}))) == "s12");
    CHECK_THROWS_AS(s_of_letters(0), std::invalid_argument);
    // n(n-1)/2 unit monomials
    for (int n = 1; n <= 8; ++n) {
        std::uint32_t m = 0;
        for (int l = 1; l <= n; ++l) m |= 1u << l;
        MPoly p = s_of_letters(m);
        CHECK(static_cast<int>(p.size()) == n * (n - 1) / 2);
        for (const auto& [mono, c] : p) {
            CHECK(mono.size() == 1);
            CHECK(c == 1);
        }
    }
}

TEST_CASE("dot products") {
    CHECK(io::poly_text(dot(mask({1, 2}), mask({3}))) == "s13 + s23");
    CHECK(dot(0, mask({4})).empty());
    CHECK(io::poly_text(dot(mask({1, 4}), mask({3}))) == "s13 + s34");
    CHECK_THROWS_AS(dot(mask({1, 2}), mask({2})), std::invalid_argument);
}

TEST_CASE("pole bookkeeping in rational terms") {
    MRat one_over_s12 = rat_div_pole(MRat::one(), mask({1, 2}));
    MRat r = rat_div_pole(one_over_s12, mask({1, 2, 3}));
    CHECK(io::rat_text(r) == "1/(s12*s123)");
    MRat sum = rat_add(r, rat_div_pole(rat_div_pole(MRat::one(), mask({2, 3})), mask({1, 2, 3})));
    CHECK(sum.size() == 2);
    CHECK(io::rat_text(sum) == "1/(s12*s123) + 1/(s23*s123)");
    CHECK(rat_add(r, rat_neg(r)).empty());
    // two-letter poles cancel against numerator factors
    MRat x = rat_mul_poly(one_over_s12, poly_var(svar(1, 2)));
    CHECK(io::rat_text(x) == "1");
}

TEST_CASE("exact equality with pole expansion") {
    // phi(123|123) = 1/(s12 s123) + 1/(s23 s123) written differently
    MRat a = MRat::from_term(1, {}, {mask({1, 2}), mask({1, 2, 3})});
    MRat b = MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})});
    MRat lhs = rat_add(a, b);
    // (s12 + s23) / (s12 s23 s123)... times s123 = s12+s13+s23 cross-check:
    // s123/(s12 s23 s123) + s13/(s12 s23 s123) == (s12+s23+s13)/(s12 s23 s123)
    MRat c = MRat::from_term(1, {}, {mask({1, 2}), mask({2, 3})});
    MRat d = MRat::from_term(1, {svar(1, 3)}, {mask({1, 2}), mask({2, 3}), mask({1, 2, 3})});
    MRat rhs = rat_sub(c, d);
    CHECK(rat_equal(lhs, rhs));
    CHECK_FALSE(rat_equal(lhs, c));
    CHECK(rat_is_zero(rat_sub(lhs, rhs)));
}

TEST_CASE("inverse fixture from the 2x2 matrix") {
    // S(23|23)Phi(23|23) + S(23|32)Phi(32|23) = 1 with
    // S(23|23) = s12(s13+s23), S(23|32) = s12 s13,
    // Phi(23|23) = 1/(s12 s123) + 1/(s23 s123), Phi(32|23) = -1/(s23 s123)
    MPoly s2323 = poly_mul(poly_var(svar(1, 2)),
                           poly_add(poly_var(svar(1, 3)), poly_var(svar(2, 3))));
    MPoly s2332 = poly_mul(poly_var(svar(1, 2)), poly_var(svar(1, 3)));
    MRat phi2323 = rat_add(MRat::from_term(1, {}, {mask({1, 2}), mask({1, 2, 3})}),
                           MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})}));
    MRat phi3223 = MRat::from_term(-1, {}, {mask({2, 3}), mask({1, 2, 3})});
    MRat total = rat_add(rat_mul_poly(phi2323, s2323), rat_mul_poly(phi3223, s2332));
    CHECK(rat_equal_const(total, 1));
}

TEST_CASE("polynomial division") {
    MPoly s123 = s_of_letters(mask({1, 2, 3}));
    MPoly prod = poly_mul(s123, s_of_letters(mask({1, 2, 3, 4})));
    auto q = poly_div_exact(prod, s123);
    REQUIRE(q.has_value());
    CHECK(poly_sub(*q, s_of_letters(mask({1, 2, 3, 4}))).empty());
    CHECK_FALSE(poly_div_exact(poly_add(prod, poly_const(1)), s123).has_value());
}

TEST_CASE("evaluation agrees with exact equality") {
    std::mt19937_64 rng(12345);
    const std::uint32_t universe = mask({1, 2, 3, 4, 5});
    for (int round = 0; round < 100; ++round) {
        EvalPoint pt = random_eval_point(universe, rng);
        MRat lhs = rat_add(MRat::from_term(1, {}, {mask({1, 2}), mask({1, 2, 3})}),
                           MRat::from_term(1, {}, {mask({2, 3}), mask({1, 2, 3})}));
        auto v = eval_rat(lhs, pt);
        REQUIRE(v.has_value());
        Rat direct = 1 / (pt[svar(1, 2)] * (pt[svar(1, 2)] + pt[svar(1, 3)] + pt[svar(2, 3)])) +
                     1 / (pt[svar(2, 3)] * (pt[svar(1, 2)] + pt[svar(1, 3)] + pt[svar(2, 3)]));
        CHECK(*v == direct);
    }
}

TEST_CASE("probabilistic zero check falls back consistently") {
    ZeroCheck exact;
    ZeroCheck prob(mask({1, 2, 3, 4}), 42);
    MRat z = rat_sub(MRat::from_term(1, {}, {mask({1, 2})}), MRat::from_term(1, {}, {mask({1, 2})}));
    CHECK(exact.is_zero(z));
    CHECK(prob.is_zero(z));
    MRat nz = MRat::from_term(1, {}, {mask({1, 2})});
    CHECK_FALSE(exact.is_zero(nz));
    CHECK_FALSE(prob.is_zero(nz));
}

TEST_CASE("MRatSum formal cancellation") {
    MRat a = MRat::from_term(2, {svar(1, 2)}, {mask({1, 2, 3})});
    MRat b = MRat::from_term(1, {svar(1, 2)}, {mask({1, 2, 3})});
    MRatSum sum;
    sum.add(a);
    sum.add(b, -2);
    CHECK(sum.is_zero_with(ZeroCheck{}));
    sum.add(a);
    sum.add(b, -1);
    MRat res = sum.residual();
    CHECK(io::rat_text(res) == "s12/s123");
}

TEST_CASE("json schema") {
    MRat r = MRat::from_term(Rat(-1, 2), {svar(1, 2)}, {mask({1, 2, 3})});
    CHECK(io::rat_json(r) == R"([{"coeff":"-1/2","num":["s12"],"poles":["s123"]}])");
    CHECK(io::rat_latex(r) == "-\\frac{1/2\\,s_{12}}{s_{123}}");
}
