#include <doctest.h>

#include <stdexcept>

#include <set>

#include "mgwi/rng.hpp"

using namespace mgwi;

TEST_CASE("same seed gives the same stream") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.engine()() == b.engine()());
}

TEST_CASE("child streams depend only on the seed and key") {
    Rng a(7);
    const Rng before = a.child(3);
    for (int i = 0; i < 10; ++i) (void)a.engine()();
    Rng after = a.child(3);
    Rng copy = before.child(0);
    Rng copy2 = after.child(0);
    CHECK(copy.engine()() == copy2.engine()());
    CHECK(a.child(3).seed() == before.seed());
    CHECK(a.child(4).seed() != before.seed());
    CHECK(a.child({1, 2}).seed() != a.child({2, 1}).seed());
}

TEST_CASE("open_uniform stays in (0, 1]") {
    Rng r(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.open_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("derived seeds do not collide over a small grid") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 20; ++s) {
        for (std::uint64_t k = 0; k < 50; ++k) seen.insert(derive_seed(s, {k}));
    }
    CHECK(seen.size() == 1000);
}

TEST_CASE("fnv1a64 known values") {
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
}
