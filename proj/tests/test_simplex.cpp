#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "porec/simplex.hpp"

using namespace porec;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("simple equality LP") {
    // max x0 + 2 x1 s.t. x0 + x1 = 1, x >= 0  ->  x = (0,1), value 2
    auto res = solve_lp_max({{q(1), q(1)}}, {q(1)}, {q(1), q(2)});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == q(2));
    CHECK(res.x[0] == 0);
    CHECK(res.x[1] == 1);
}

TEST_CASE("negative rhs rows handled") {
    // max x0 s.t. -x0 - x1 = -1  (i.e. x0 + x1 = 1)
    auto res = solve_lp_max({{q(-1), q(-1)}}, {q(-1)}, {q(1), q(0)});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == 1);
}

TEST_CASE("infeasible detected") {
    // x0 = 1 and x0 = 2
    auto res = solve_lp_max({{q(1)}, {q(1)}}, {q(1), q(2)}, {q(1)});
    CHECK(res.status == LpStatus::infeasible);
}

TEST_CASE("unbounded detected") {
    // max x0 s.t. x0 - x1 = 0
    auto res = solve_lp_max({{q(1), q(-1)}}, {q(0)}, {q(1), q(0)});
    CHECK(res.status == LpStatus::unbounded);
}

TEST_CASE("redundant rows tolerated") {
    // duplicated constraint
    auto res = solve_lp_max({{q(1), q(1)}, {q(1), q(1)}}, {q(1), q(1)}, {q(3), q(1)});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == q(3));
}

TEST_CASE("exact rational optimum") {
    // max x0/3 + x1/7 on the simplex x0 + x1 + x2 = 1
    auto res = solve_lp_max({{q(1), q(1), q(1)}}, {q(1)}, {q(1, 3), q(1, 7), q(0)});
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == q(1, 3));
}

TEST_CASE("degenerate LP terminates (Bland)") {
    // Klee-Minty-flavoured degenerate system.
    std::vector<std::vector<Rational>> A = {
        {q(1), q(0), q(0), q(1), q(0), q(0)},
        {q(4), q(1), q(0), q(0), q(1), q(0)},
        {q(8), q(4), q(1), q(0), q(0), q(1)},
    };
    std::vector<Rational> b = {q(5), q(25), q(125)};
    std::vector<Rational> c = {q(4), q(2), q(1), q(0), q(0), q(0)};
    auto res = solve_lp_max(A, b, c);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == q(125));
}
