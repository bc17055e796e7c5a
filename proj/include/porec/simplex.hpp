// simplex.hpp
// Exact-rational linear programming: textbook two-phase simplex with
// Bland's anti-cycling rule.  Solves max c.x s.t. A x = b, x >= 0.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace porec {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> x;
};

LpResult solve_lp_max(const std::vector<std::vector<Rational>>& A,
                      const std::vector<Rational>& b,
                      const std::vector<Rational>& c);

}  // namespace porec
