#include "porec/simplex.hpp"

#include <stdexcept>

namespace porec {

namespace {

// Dense tableau simplex.  Rows 0..m-1 hold the constraints, row m holds the
// (maximization) objective as reduced costs; basis[i] is the basic column of
// row i.  Bland's rule: entering = lowest-index column with positive reduced
// cost, leaving = lowest basis index among minimum-ratio rows.
struct Tableau {
    std::vector<std::vector<Rational>> t;  // (m+1) x (n+1), last column is rhs
    std::vector<int> basis;
    int rows, cols;  // constraint rows, structural+artificial columns

    void pivot(int pr, int pc) {
        auto& prow = t[pr];
        const Rational piv = prow[pc];
        for (auto& v : prow) v /= piv;
        for (int i = 0; i <= rows; ++i) {
            if (i == pr) continue;
            const Rational f = t[i][pc];
            if (f == 0) continue;
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * prow[j];
        }
        basis[pr] = pc;
    }

    // Returns false when unbounded.
    bool run(int usable_cols) {
        for (;;) {
            int pc = -1;
            for (int j = 0; j < usable_cols; ++j) {
                if (t[rows][j] > 0) { pc = j; break; }
            }
            if (pc < 0) return true;
            int pr = -1;
            for (int i = 0; i < rows; ++i) {
                if (t[i][pc] <= 0) continue;
                if (pr < 0) { pr = i; continue; }
                const Rational lhs = t[i][cols] * t[pr][pc];
                const Rational rhs = t[pr][cols] * t[i][pc];
                if (lhs < rhs || (lhs == rhs && basis[i] < basis[pr])) pr = i;
            }
            if (pr < 0) return false;
            pivot(pr, pc);
        }
    }
};

}  // namespace

LpResult solve_lp_max(const std::vector<std::vector<Rational>>& A,
                      const std::vector<Rational>& b,
                      const std::vector<Rational>& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_lp_max: ragged constraint matrix");
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("solve_lp_max: rhs size mismatch");

    Tableau tab;
    tab.rows = m;
    tab.cols = n + m;  // structural + one artificial per row
    tab.t.assign(m + 1, std::vector<Rational>(tab.cols + 1, 0));
    tab.basis.resize(m);

    for (int i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (int j = 0; j < n; ++j) tab.t[i][j] = flip ? -A[i][j] : A[i][j];
        tab.t[i][tab.cols] = flip ? -b[i] : b[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }

    // Phase 1: maximize -(sum of artificials).
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= tab.cols; ++j)
            if (j < n || j == tab.cols) tab.t[m][j] += tab.t[i][j];
    if (!tab.run(n)) throw std::logic_error("solve_lp_max: phase 1 unbounded");
    if (tab.t[m][tab.cols] != 0) return {LpStatus::infeasible, 0, {}};

    // Drive any artificial still in the basis out (or drop a redundant row).
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        int pc = -1;
        for (int j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) { pc = j; break; }
        if (pc >= 0) tab.pivot(i, pc);
        // else: redundant row; harmless, leave artificial basic at zero.
    }

    // Phase 2 objective.
    for (int j = 0; j <= tab.cols; ++j) tab.t[m][j] = 0;
    for (int j = 0; j < n; ++j) tab.t[m][j] = c[j];
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) continue;
        const Rational f = tab.t[m][tab.basis[i]];
        if (f == 0) continue;
        for (int j = 0; j <= tab.cols; ++j) tab.t[m][j] -= f * tab.t[i][j];
    }
    if (!tab.run(n)) return {LpStatus::unbounded, 0, {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, 0);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.cols];
    res.value = 0;
    for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

}  // namespace porec
