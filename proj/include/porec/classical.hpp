// classical.hpp
// Classical strategy representation, the closed-form noncontextual bound,
// and an exact LP oracle that rederives it independently.
#pragma once

#include <string>
#include <vector>

#include "porec/simplex.hpp"
#include "porec/zmod.hpp"

namespace porec {

enum class Task { exclusion, retrieval };

Task task_from_string(const std::string& s);
std::string to_string(Task t);

namespace classical {

// Stochastic encoding p(M|x) over a finite message alphabet plus a decoder
// table b(M, y).  Encoding entries are exact rationals; doubles convert
// losslessly on input.
struct ClassicalStrategy {
    int n = 0;
    int m = 0;
    int K = 0;                                     // message alphabet size
    std::vector<std::vector<Rational>> encoding;   // [x.rank()][M]
    std::vector<std::vector<int>> decoder;         // [M][y-1] -> b

    void validate() const;  // throws on malformed strategy
};

struct BoundReport {
    Rational value;
    ClassicalStrategy certificate;
    std::string method;  // "formula" | "lp-oracle"
};

// Theorem-1 value: exclusion 1 - (n-1)/(mn); retrieval 1/n + (n-1)/(nm)
// (single-digit reduction applied to the retrieval objective; the general-m
// retrieval formula is oracle-confirmed at (2,3)).
Rational noncontextual_bound(int n, int m, Task task);

// Max over messages M, reduced masks r, class pairs (k,k') of
// |sum_{C_k} p(M|x) - sum_{C_k'} p(M|x)|.  Zero certifies
// parity-obliviousness.
Rational check_parity_oblivious_classical(const ClassicalStrategy& s);

Rational evaluate_classical_exact(const ClassicalStrategy& s, Task task);
double evaluate_classical(const ClassicalStrategy& s, Task task);

// Exact optimum over parity-oblivious classical strategies with alphabet
// size K: exhaustive enumeration over deterministic decoders (up to message
// relabeling), exact-rational LP over encodings for each.
BoundReport classical_bound_oracle(int n, int m, int K, Task task);

}  // namespace classical
}  // namespace porec
