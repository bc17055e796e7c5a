#include "porec/classical.hpp"

#include <algorithm>
#include <stdexcept>

namespace porec {

Task task_from_string(const std::string& s) {
    if (s == "exclusion") return Task::exclusion;
    if (s == "retrieval") return Task::retrieval;
    throw std::invalid_argument("unknown task: " + s);
}

std::string to_string(Task t) {
    return t == Task::exclusion ? "exclusion" : "retrieval";
}

namespace classical {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t p = 1;
    while (exp-- > 0) p *= base;
    return p;
}

int success_count(const std::vector<int>& decoder_row, const zmod::InputString& x, Task task) {
    int cnt = 0;
    for (int y = 0; y < x.n; ++y) {
        const bool hit = decoder_row[y] == x.digits[y];
        cnt += (task == Task::exclusion) ? !hit : hit;
    }
    return cnt;
}

}  // namespace

void ClassicalStrategy::validate() const {
    if (n < 1 || m < 2 || K < 1) throw std::invalid_argument("ClassicalStrategy: bad sizes");
    const auto total = static_cast<size_t>(ipow(m, n));
    if (encoding.size() != total) throw std::invalid_argument("ClassicalStrategy: encoding rows != m^n");
    for (const auto& row : encoding) {
        if (static_cast<int>(row.size()) != K)
            throw std::invalid_argument("ClassicalStrategy: encoding row size != K");
        Rational sum = 0;
        for (const auto& p : row) {
            if (p < 0) throw std::invalid_argument("ClassicalStrategy: negative probability");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("ClassicalStrategy: encoding row does not sum to 1");
    }
    if (static_cast<int>(decoder.size()) != K)
        throw std::invalid_argument("ClassicalStrategy: decoder rows != K");
    for (const auto& row : decoder) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("ClassicalStrategy: decoder row size != n");
        for (int b : row)
            if (b < 0 || b >= m) throw std::invalid_argument("ClassicalStrategy: decoder value out of range");
    }
}

Rational noncontextual_bound(int n, int m, Task task) {
    if (!zmod::is_prime(m)) throw std::domain_error("noncontextual_bound: m must be prime");
    if (n < 2) throw std::invalid_argument("noncontextual_bound: n must be >= 2");
    if (task == Task::exclusion)
        return 1 - Rational(n - 1, static_cast<std::int64_t>(m) * n);
    return Rational(1, n) + Rational(n - 1, static_cast<std::int64_t>(n) * m);
}

Rational check_parity_oblivious_classical(const ClassicalStrategy& s) {
    s.validate();
    const auto masks = zmod::enumerate_parity_masks(s.n, s.m, /*reduce_by_scalars=*/true);
    Rational worst = 0;
    for (const auto& r : masks) {
        const auto table = zmod::parity_classes(r);
        for (int M = 0; M < s.K; ++M) {
            std::vector<Rational> class_sum(s.m, 0);
            for (int k = 0; k < s.m; ++k)
                for (const auto& x : table.classes[k]) class_sum[k] += s.encoding[x.rank()][M];
            for (int k = 0; k < s.m; ++k)
                for (int k2 = k + 1; k2 < s.m; ++k2)
                    worst = std::max(worst, Rational(abs(class_sum[k] - class_sum[k2])));
        }
    }
    return worst;
}

Rational evaluate_classical_exact(const ClassicalStrategy& s, Task task) {
    s.validate();
    const auto inputs = zmod::enumerate_inputs(s.n, s.m);
    Rational total = 0;
    for (const auto& x : inputs)
        for (int M = 0; M < s.K; ++M)
            total += s.encoding[x.rank()][M] * success_count(s.decoder[M], x, task);
    return total / (Rational(s.n) * static_cast<std::int64_t>(inputs.size()));
}

double evaluate_classical(const ClassicalStrategy& s, Task task) {
    return static_cast<double>(evaluate_classical_exact(s, task));
}

BoundReport classical_bound_oracle(int n, int m, int K, Task task) {
    if (!zmod::is_prime(m)) throw std::domain_error("classical_bound_oracle: m must be prime");
    if (n < 2 || n > 3) throw std::invalid_argument("classical_bound_oracle: n in {2,3} supported");
    if (K < 1 || K > m * m) throw std::invalid_argument("classical_bound_oracle: K must be in [1, m^2]");

    const auto inputs = zmod::enumerate_inputs(n, m);
    const std::int64_t nx = static_cast<std::int64_t>(inputs.size());
    const std::int64_t column_options = ipow(m, n);  // decoder column = map y -> b

    // Decoder columns are interchangeable under message relabeling, so it
    // suffices to enumerate multisets of K columns.
    double multisets = 1.0;
    for (int i = 0; i < K; ++i) multisets *= static_cast<double>(column_options + i) / (i + 1);
    if (multisets > 1e7) throw std::overflow_error("classical_bound_oracle: decoder-space overflow");

    const auto masks = zmod::enumerate_parity_masks(n, m, /*reduce_by_scalars=*/true);
    std::vector<zmod::ParityClassTable> tables;
    for (const auto& r : masks) tables.push_back(zmod::parity_classes(r));

    // Shared constraint matrix: row-stochasticity + parity class-sum
    // equalities (decoder-independent).  Variable index: x.rank()*K + M.
    const int nvars = static_cast<int>(nx) * K;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (std::int64_t xi = 0; xi < nx; ++xi) {
        std::vector<Rational> row(nvars, 0);
        for (int M = 0; M < K; ++M) row[xi * K + M] = 1;
        A.push_back(std::move(row));
        b.emplace_back(1);
    }
    for (int M = 0; M < K; ++M) {
        for (const auto& table : tables) {
            for (int k = 1; k < m; ++k) {
                std::vector<Rational> row(nvars, 0);
                for (const auto& x : table.classes[0]) row[x.rank() * K + M] += 1;
                for (const auto& x : table.classes[k]) row[x.rank() * K + M] -= 1;
                A.push_back(std::move(row));
                b.emplace_back(0);
            }
        }
    }

    const Rational norm = Rational(1, n * nx);
    Rational best = -1;
    std::vector<Rational> best_x;
    std::vector<std::vector<int>> best_decoder;

    // Enumerate nondecreasing K-tuples of column indices.
    std::vector<int> cols(K, 0);
    auto column_of = [&](int code) {
        std::vector<int> row(n);
        for (int y = n - 1; y >= 0; --y) { row[y] = code % m; code /= m; }
        return row;
    };
    for (;;) {
        std::vector<std::vector<int>> decoder;
        for (int M = 0; M < K; ++M) decoder.push_back(column_of(cols[M]));

        std::vector<Rational> c(nvars, 0);
        for (std::int64_t xi = 0; xi < nx; ++xi)
            for (int M = 0; M < K; ++M)
                c[xi * K + M] = success_count(decoder[M], inputs[xi], task);

        LpResult lp = solve_lp_max(A, b, c);
        if (lp.status != LpStatus::optimal)
            throw std::logic_error("classical_bound_oracle: LP not optimal (internal bug)");
        const Rational value = lp.value * norm;
        if (value > best) {
            best = value;
            best_x = std::move(lp.x);
            best_decoder = std::move(decoder);
        }

        // Next nondecreasing tuple.
        int i = K - 1;
        while (i >= 0 && cols[i] == column_options - 1) --i;
        if (i < 0) break;
        const int v = cols[i] + 1;
        for (int j = i; j < K; ++j) cols[j] = v;
    }

    BoundReport report;
    report.value = best;
    report.method = "lp-oracle";
    report.certificate.n = n;
    report.certificate.m = m;
    report.certificate.K = K;
    report.certificate.decoder = best_decoder;
    report.certificate.encoding.assign(nx, std::vector<Rational>(K, 0));
    for (std::int64_t xi = 0; xi < nx; ++xi)
        for (int M = 0; M < K; ++M) report.certificate.encoding[xi][M] = best_x[xi * K + M];
    report.certificate.validate();
    return report;
}

}  // namespace classical
}  // namespace porec
