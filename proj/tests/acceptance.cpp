// Acceptance suite: one PASS/FAIL line per criterion.  Criterion 7 is
// informational and never gates the exit code.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "porec/classical.hpp"
#include "porec/quantum.hpp"
#include "porec/seesaw.hpp"
#include "porec/zmod.hpp"

using namespace porec;
using quantum::Matrix;
using quantum::Vector3;

namespace {

int g_restarts = 100;
std::uint64_t g_seed = 7;
int g_jobs = 1;
bool g_full = false;

const double kSqrt2 = std::sqrt(2.0);
const double kQubitOptimum = 2.0 / 3.0 + 1.0 / (3.0 * kSqrt2);

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

void report(int idx, const Outcome& o, bool gating = true) {
    std::printf("CRITERION %d: %s%s%s\n", idx,
                gating ? (o.pass ? "PASS" : "FAIL") : (o.pass ? "INFO-PASS" : "INFO-FAIL"),
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix haar_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

quantum::PreparationFamily random_states(int n, int m, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    quantum::PreparationFamily P;
    P.n = n;
    P.m = m;
    P.d = d;
    const auto inputs = zmod::enumerate_inputs(n, m);
    P.states.reserve(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) {
        Matrix g(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
        Matrix rho = g * g.adjoint();
        P.states.push_back(rho / rho.trace().real());
    }
    return P;
}

quantum::MeasurementFamily random_povms(int n, int m, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    quantum::MeasurementFamily M;
    M.n = n;
    M.m = m;
    M.d = d;
    for (int y = 0; y < n; ++y) {
        quantum::Povm p;
        p.d = d;
        Matrix total = Matrix::Zero(d, d);
        std::vector<Matrix> raw;
        for (int b = 0; b < m; ++b) {
            Matrix g(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
            raw.push_back(g * g.adjoint());
            total += raw.back();
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(total);
        Matrix s_inv_half = es.operatorInverseSqrt();
        for (auto& e : raw) p.effects.push_back(s_inv_half * e * s_inv_half);
        M.povms.push_back(std::move(p));
    }
    return M;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (int K : {3, 4}) {
        auto rep = classical::classical_bound_oracle(2, 3, K, Task::exclusion);
        o.check(rep.value == Rational(5, 6),
                "oracle(2,3,K=" + std::to_string(K) + ") != 5/6");
    }
    auto ret = classical::classical_bound_oracle(2, 3, 3, Task::retrieval);
    o.check(ret.value == Rational(2, 3), "retrieval oracle(2,3,K=3) != 2/3");
    const double dt = elapsed_s(t0);
    o.check(dt < 60.0, "oracle runtime " + std::to_string(dt) + "s >= 60s");
    if (o.pass) o.detail = "5/6 and 2/3 exact, " + std::to_string(dt) + "s";
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto st = quantum::theorem2_construction();
    const double excl =
        quantum::success_probability(st.preparations, st.measurements, Task::exclusion);
    o.check(std::abs(excl - kQubitOptimum) < 1e-12, "exclusion value off");
    o.check(quantum::parity_deviation(st.preparations) < 1e-12, "parity deviation");

    auto dec = quantum::additive_decomposition(st.preparations);
    o.check(dec.ok, "construction not additive");
    for (auto& v : dec.a) v = -v;
    for (auto& v : dec.b) v = -v;
    auto flipped = quantum::family_from_additive(3, dec.a, dec.b);
    const double retr =
        quantum::success_probability(flipped, st.measurements, Task::retrieval);
    o.check(std::abs(retr - (1.0 / 3.0 + 1.0 / (3.0 * kSqrt2))) < 1e-12, "retrieval value off");
    if (o.pass) o.detail = "value 2/3 + 1/(3 sqrt 2) within 1e-12";
    return o;
}

Outcome criterion3() {
    Outcome o;
    const std::vector<std::pair<int, double>> rounded = {{3, 0.902369}, {5, 0.941421},
                                                         {7, 0.958158}};
    for (auto [m, target6] : rounded) {
        auto st = quantum::theorem3_construction(m);
        const double value =
            quantum::success_probability(st.preparations, st.measurements, Task::exclusion);
        const double bound = quantum::projective_qubit_bound(m);
        o.check(std::abs(value - bound) < 1e-12, "m=" + std::to_string(m) + " construction/bound");
        o.check(std::abs(std::round(value * 1e6) / 1e6 - target6) < 1e-12,
                "m=" + std::to_string(m) + " rounding");
    }
    if (o.pass) o.detail = "m in {3,5,7} match to 1e-12";
    return o;
}

struct TableRun {
    int m, d;
    double target;
    double tol;
    double value = 0;
};

std::vector<TableRun>& table_runs() {
    static std::vector<TableRun> runs = {
        {3, 2, 0.902369, 1e-5}, {3, 3, 0.911306, 1e-3}, {3, 4, 0.916664, 1e-3},
        {5, 2, 0.941421, 1e-5}, {5, 3, 0.946786, 1e-3}, {5, 4, 0.958579, 1e-3},
        {7, 2, 0.958158, 1e-5}, {7, 3, 0.961989, 1e-3}, {7, 4, 0.970413, 1e-3},
    };
    return runs;
}

Outcome criterion4() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (auto& run : table_runs()) {
        seesaw::SeesawConfig cfg;
        cfg.m = run.m;
        cfg.d = run.d;
        cfg.restarts = g_restarts;
        cfg.rng_seed = g_seed;
        cfg.jobs = g_jobs;
        seesaw::SeesawResult res;
        try {
            res = seesaw::run_seesaw(cfg);
        } catch (const std::exception& e) {
            o.check(false, "m=" + std::to_string(run.m) + " d=" + std::to_string(run.d) + ": " +
                               e.what());
            continue;
        }
        run.value = res.best_value;
        const bool ok = res.best_value >= run.target - run.tol;
        o.check(ok, "m=" + std::to_string(run.m) + " d=" + std::to_string(run.d) + " got " +
                        std::to_string(res.best_value) + " < " + std::to_string(run.target));
        if (run.m == 3 && run.d == 2)
            o.check(res.qubit_bound_excess <= 1e-7, "qubit ceiling exceeded");
        std::printf("  seesaw m=%d d=%d  best=%.9f  target=%.6f  [%s]\n", run.m, run.d,
                    res.best_value, run.target, ok ? "ok" : "LOW");
        std::fflush(stdout);
    }
    const double dt = elapsed_s(t0);
    o.check(dt < 1800.0, "runtime " + std::to_string(dt) + "s >= 30 min");
    if (o.pass) o.detail = "all nine cells met, " + std::to_string(dt) + "s";
    return o;
}

Outcome criterion5() {
    Outcome o;
    const std::vector<std::vector<double>> table = {
        {0.2929, 0.3188, 0.3333}, {0.2929, 0.3188, 0.3694}, {0.2929, 0.3187, 0.3693}};
    const auto& runs = table_runs();
    for (size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].value == 0) {
            o.check(false, "see-saw value missing (criterion 4 failed?)");
            break;
        }
        const double wc = quantum::noise_threshold(runs[i].value, 2, runs[i].m);
        const double wc4 = std::round(wc * 1e4) / 1e4;
        const double target = table[i / 3][i % 3];
        o.check(std::abs(wc4 - target) <= 5e-4 + 1e-12,
                "omega_c m=" + std::to_string(runs[i].m) + " d=" + std::to_string(runs[i].d) +
                    " got " + std::to_string(wc4));
    }

    std::mt19937_64 rng(g_seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = (trial % 2 == 0) ? 3 : 5;
        const int d = 2 + trial % 3;
        auto P = random_states(2, m, d, rng);
        auto M = random_povms(2, m, d, rng);
        const double w = uni(rng);
        const double v0 = quantum::success_probability(P, M, Task::exclusion);
        const double v1 = quantum::success_probability(quantum::depolarize(P, 1.0), M,
                                                       Task::exclusion);
        const double vw = quantum::success_probability(quantum::depolarize(P, w), M,
                                                       Task::exclusion);
        worst = std::max(worst, std::abs(vw - ((1 - w) * v0 + w * v1)));
    }
    o.check(worst <= 1e-12, "affinity residual " + std::to_string(worst));
    if (o.pass) o.detail = "thresholds match, affinity residual <= 1e-12";
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (int m : {3, 5, 7, 11})
        o.check(quantum::gap_ratio(m) == Rational(m, 2), "gap_ratio(" + std::to_string(m) + ")");
    if (o.pass) o.detail = "gap ratio m/2 exact for m in {3,5,7,11}";
    return o;
}

Outcome criterion7() {
    Outcome o;
    // The REC/RAC comparison values (7+sqrt2)/9 and (4+sqrt2)/9 are qubit
    // values; at d=3 unconstrained exclusion is perfect (computational-basis
    // measurements plus the basis state avoiding both digits), which the
    // optimizer should find.
    seesaw::SeesawConfig cfg;
    cfg.m = 3;
    cfg.d = 2;
    cfg.parity_constrained = false;
    cfg.restarts = std::min(g_restarts, 20);
    cfg.rng_seed = g_seed;
    cfg.jobs = g_jobs;
    auto excl = seesaw::run_seesaw(cfg);
    o.check(std::abs(excl.best_value - (7 + kSqrt2) / 9) < 1e-4,
            "REC d=2 got " + std::to_string(excl.best_value));
    cfg.task = Task::retrieval;
    auto retr = seesaw::run_seesaw(cfg);
    o.check(std::abs(retr.best_value - (4 + kSqrt2) / 9) < 1e-4,
            "RAC d=2 got " + std::to_string(retr.best_value));
    cfg.task = Task::exclusion;
    cfg.d = 3;
    cfg.restarts = std::min(g_restarts, 5);
    auto perfect = seesaw::run_seesaw(cfg);
    o.check(perfect.best_value > 1.0 - 1e-8,
            "REC d=3 perfect strategy missed: " + std::to_string(perfect.best_value));
    if (g_full) {
        seesaw::SeesawConfig big;
        big.m = 3;
        big.d = 6;
        big.restarts = g_restarts;
        big.rng_seed = g_seed;
        big.jobs = g_jobs;
        auto res = seesaw::run_seesaw(big);
        o.check(res.best_value >= 0.9189, "d=6 got " + std::to_string(res.best_value));
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("d=6 best ") +
                    std::to_string(res.best_value);
    }
    if (o.pass && o.detail.empty())
        o.detail = "qubit REC/RAC values reproduced, d=3 exclusion perfect" +
                   std::string(g_full ? "" : " (d=6 skipped)");
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 rng(42);

    // Fourier round trip.
    {
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<std::complex<double>> f(9);
        for (auto& v : f) v = {uni(rng), uni(rng)};
        auto spec = zmod::fourier_transform(2, 3, f);
        double err = 0;
        for (const auto& x : zmod::enumerate_inputs(2, 3))
            err = std::max(err, std::abs(spec.inverse_at(x)[0] - f[x.rank()]));
        o.check(err < 1e-12, "fourier round trip");
    }
    // Partition/uniformity.
    for (int m : {3, 5}) {
        for (const auto& mask : zmod::enumerate_parity_masks(2, m, true)) {
            auto table = zmod::parity_classes(mask);
            size_t total = 0;
            for (const auto& c : table.classes) {
                o.check(c.size() == static_cast<size_t>(m), "class size");
                total += c.size();
            }
            o.check(total == static_cast<size_t>(m * m), "partition cover");
        }
    }
    // Lemma-1 equivalence, both directions.
    {
        std::uniform_real_distribution<double> uni(-0.3, 0.3);
        std::vector<Vector3> a(3), b(3);
        Vector3 sa = Vector3::Zero(), sb = Vector3::Zero();
        for (int i = 0; i < 2; ++i) {
            a[i] = Vector3(uni(rng), uni(rng), uni(rng));
            b[i] = Vector3(uni(rng), uni(rng), uni(rng));
            sa += a[i];
            sb += b[i];
        }
        a[2] = -sa;
        b[2] = -sb;
        auto P = quantum::family_from_additive(3, a, b);
        o.check(quantum::parity_deviation(P) < 1e-10, "additive => oblivious");
        auto Q = random_states(2, 3, 2, rng);
        if (quantum::parity_deviation(Q) > 1e-6)
            o.check(!quantum::additive_decomposition(Q).ok, "non-oblivious => non-additive");
    }
    // Exclusion/retrieval complementarity and unitary invariance.
    {
        auto P = random_states(2, 3, 3, rng);
        auto M = random_povms(2, 3, 3, rng);
        const double e = quantum::success_probability(P, M, Task::exclusion);
        const double r = quantum::success_probability(P, M, Task::retrieval);
        o.check(std::abs(e + r - 1.0) < 1e-12, "complementarity");
        Matrix u = haar_unitary(3, rng);
        auto P2 = P;
        auto M2 = M;
        for (auto& s : P2.states) s = u * s * u.adjoint();
        for (auto& p : M2.povms)
            for (auto& eff : p.effects) eff = u * eff * u.adjoint();
        o.check(std::abs(quantum::success_probability(P2, M2, Task::exclusion) - e) < 1e-12,
                "unitary invariance");
    }
    // Gauge invariance of the additive reconstruction.
    {
        auto st = quantum::theorem2_construction();
        auto dec = quantum::additive_decomposition(st.preparations);
        const Vector3 shift(0.05, -0.02, 0.01);
        auto a = dec.a;
        auto b = dec.b;
        for (auto& v : a) v += shift;
        for (auto& v : b) v -= shift;
        auto P2 = quantum::family_from_additive(3, a, b);
        double err = 0;
        for (int i = 0; i < 9; ++i)
            err = std::max(err,
                           (P2.states[i] - st.preparations.states[i]).cwiseAbs().maxCoeff());
        o.check(err < 1e-13, "gauge invariance");
    }
    // See-saw determinism (monotone ascent is asserted inside run_seesaw).
    {
        seesaw::SeesawConfig cfg;
        cfg.restarts = 2;
        cfg.max_iters = 60;
        cfg.rng_seed = 5;
        auto r1 = seesaw::run_seesaw(cfg);
        auto r2 = seesaw::run_seesaw(cfg);
        bool same = r1.best_value == r2.best_value && r1.traces.size() == r2.traces.size();
        for (size_t i = 0; same && i < r1.traces.size(); ++i)
            same = r1.traces[i].final_value == r2.traces[i].final_value;
        o.check(same, "determinism");
    }
    if (o.pass) o.detail = "all property suites hold";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    app.add_option("--restarts", g_restarts)->default_val(100);
    app.add_option("--seed", g_seed)->default_val(7);
    app.add_option("--jobs", g_jobs)->default_val(1);
    app.add_flag("--full", g_full, "include the long d=6 informational run");
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    auto gate = [&](int idx, Outcome o) {
        report(idx, o);
        all_pass &= o.pass;
    };
    gate(1, criterion1());
    gate(2, criterion2());
    gate(3, criterion3());
    gate(4, criterion4());
    gate(5, criterion5());
    gate(6, criterion6());
    report(7, criterion7(), false);
    gate(8, criterion8());
    std::printf("ACCEPTANCE: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}
