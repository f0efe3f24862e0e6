#include "helpers.hpp"

#include "qnet/lattice.hpp"

using namespace qnet;

TEST_CASE("membership in a rank-deficient lattice") {
    const IntegerLattice l({{2, 0, 2}, {0, 3, 3}, {2, 3, 5}}, 3);
    CHECK(l.rank() == 2);
    CHECK(l.contains({2, 3, 5}));
    CHECK(l.contains({4, -3, 1}));
    CHECK_FALSE(l.contains({1, 0, 1}));
    CHECK_FALSE(l.contains({0, 0, 1}));
}

TEST_CASE("coefficients reproduce the vector") {
    const std::vector<IntVector> gens{{6, 4}, {4, 6}, {2, 0}};
    const IntegerLattice l(gens, 2);
    for (std::int64_t x = -6; x <= 6; ++x) {
        for (std::int64_t y = -6; y <= 6; ++y) {
            const auto c = l.coefficients({x, y});
            CHECK(c.has_value() == (x % 2 == 0 && y % 2 == 0));
            if (!c) continue;
            std::int64_t sx = 0, sy = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                sx += (*c)[i] * gens[i][0];
                sy += (*c)[i] * gens[i][1];
            }
            CHECK(sx == x);
            CHECK(sy == y);
        }
    }
}

TEST_CASE("empty generator list spans zero") {
    const IntegerLattice l({}, 2);
    CHECK(l.rank() == 0);
    CHECK(l.contains({0, 0}));
    CHECK_FALSE(l.contains({0, 1}));
}
