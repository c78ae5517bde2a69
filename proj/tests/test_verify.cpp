#include <doctest.h>

#include "bgklt/verify.hpp"

using namespace bgklt;
using namespace bgklt::verify;

TEST_CASE("registry lookup") {
    CHECK_THROWS_AS(run("no-such-identity", Options{}), std::invalid_argument);
    CHECK(registry().size() >= 19);
    for (const auto& id : registry()) {
        CHECK_FALSE(id.name.empty());
        CHECK(id.default_max_n >= 1);
    }
}

TEST_CASE("small sweeps pass") {
    Options o;
    o.max_n = 4;
    for (const char* name : {"alternal", "b-shuffle", "schocker", "inv-fixed", "lie-sym-S",
                             "altS", "rho-shuffle", "smap-equiv", "QM", "phi-sym", "phi-b",
                             "dynkin", "catalan"}) {
        Report r = run(name, o);
        CHECK_MESSAGE(r.ok(), name);
        CHECK(r.cases > 0);
    }
}

TEST_CASE("relat is five exact relations") {
    Report r = run("relat", Options{});
    CHECK(r.ok());
    CHECK(r.cases == 5);
}

TEST_CASE("inv-fixed case count matches the exhaustive sweep") {
    Options o;
    o.max_n = 3;
    Report r = run("inv-fixed", o);
    CHECK(r.ok());
    CHECK(r.cases == 1 + 4 + 36);
}

TEST_CASE("tree census counts") {
    Options o;
    o.max_n = 3;
    Report r = run("tree-census", o);
    CHECK(r.ok());
}

TEST_CASE("parallel sweeps match serial results") {
    Options serial, parallel;
    serial.max_n = parallel.max_n = 4;
    parallel.parallel = true;
    Report a = run("alternal", serial);
    Report b = run("alternal", parallel);
    CHECK(a.cases == b.cases);
    CHECK(a.ok() == b.ok());
}

TEST_CASE("probabilistic mode agrees on true identities") {
    Options o;
    o.max_n = 4;
    o.probabilistic = true;
    o.seed = 7;
    Report r = run("alternal", o);
    CHECK(r.ok());
    CHECK(r.probabilistic);
}
