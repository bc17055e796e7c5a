#include "porec/seesaw.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

namespace porec::seesaw {

using quantum::Matrix;
using quantum::MeasurementFamily;
using quantum::PreparationFamily;
using quantum::Povm;

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t p = 1;
    while (exp-- > 0) p *= base;
    return p;
}

// Score operators A_{b|y}: objective = (1/(n m^n)) sum_{y,b} Tr(M_{b|y} A_{b|y}).
std::vector<std::vector<Matrix>> score_operators(const PreparationFamily& P, Task task) {
    const auto inputs = zmod::enumerate_inputs(P.n, P.m);
    std::vector<std::vector<Matrix>> A(P.n, std::vector<Matrix>(P.m, Matrix::Zero(P.d, P.d)));
    for (const auto& x : inputs)
        for (int y = 0; y < P.n; ++y)
            for (int b = 0; b < P.m; ++b) {
                const bool hit = (x.digits[y] == b);
                if (task == Task::exclusion ? !hit : hit) A[y][b] += P.at(x);
            }
    return A;
}

// Reward operators H_x: objective = (1/(n m^n)) sum_x Tr(rho_x H_x).
std::vector<Matrix> reward_operators(const MeasurementFamily& M, Task task) {
    const auto inputs = zmod::enumerate_inputs(M.n, M.m);
    std::vector<Matrix> H(inputs.size());
    const Matrix eye = Matrix::Identity(M.d, M.d);
    for (const auto& x : inputs) {
        Matrix h = Matrix::Zero(M.d, M.d);
        for (int y = 1; y <= M.n; ++y) {
            const Matrix& eff = M.effect(y, x.digits[y - 1]);
            h += (task == Task::exclusion) ? Matrix(eye - eff) : eff;
        }
        H[x.rank()] = std::move(h);
    }
    return H;
}

double linear_objective(const std::vector<Matrix>& states, const std::vector<Matrix>& H, int n) {
    double s = 0.0;
    for (size_t i = 0; i < states.size(); ++i) s += (states[i] * H[i]).trace().real();
    return s / (static_cast<double>(n) * states.size());
}

Matrix hermitize(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

// Orthogonal projection onto the PSD cone (no trace adjustment).
Matrix psd_part(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
    return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
           es.eigenvectors().adjoint();
}

// Orthogonal projection onto the affine set {Hermitian, mixed Fourier modes
// zero, unit trace per state}.  The additive (ANOVA) projection keeps the
// constant and single-digit modes of x -> rho_x; the subsequent trace fix
// adds a function with no mixed modes, so the composite stays in the set.
void project_parity_affine(std::vector<Matrix>& states, int n, int m, int d) {
    const auto inputs = zmod::enumerate_inputs(n, m);
    const double total = static_cast<double>(states.size());
    Matrix mean = Matrix::Zero(d, d);
    for (auto& s : states) {
        s = hermitize(s);
        mean += s;
    }
    mean /= total;
    // Per-digit conditional means.
    std::vector<std::vector<Matrix>> digit_mean(n, std::vector<Matrix>(m, Matrix::Zero(d, d)));
    for (const auto& x : inputs)
        for (int i = 0; i < n; ++i) digit_mean[i][x.digits[i]] += states[x.rank()];
    const double block = total / m;
    for (auto& per_digit : digit_mean)
        for (auto& g : per_digit) g /= block;
    const Matrix eye = Matrix::Identity(d, d);
    for (const auto& x : inputs) {
        Matrix s = -(n - 1) * mean;
        for (int i = 0; i < n; ++i) s += digit_mean[i][x.digits[i]];
        s += ((1.0 - s.trace().real()) / d) * eye;
        states[x.rank()] = std::move(s);
    }
}

}  // namespace

PreparationFamily project_parity_feasible(const PreparationFamily& P, double tol, int max_iters) {
    PreparationFamily out = P;
    std::vector<Matrix> x = P.states;
    project_parity_affine(x, P.n, P.m, P.d);
    std::vector<Matrix> corr(x.size(), Matrix::Zero(P.d, P.d));
    for (int it = 0; it < max_iters; ++it) {
        double gap = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const Matrix w = x[i] + corr[i];
            const Matrix y = psd_part(w);
            corr[i] = w - y;
            gap = std::max(gap, (x[i] - y).cwiseAbs().maxCoeff());
            x[i] = y;
        }
        project_parity_affine(x, P.n, P.m, P.d);
        if (gap < tol) break;
    }
    // Final cleanup: clip residual negative eigenvalues, renormalize.
    for (auto& s : x) s = quantum::project_to_density(s);
    out.states = std::move(x);
    return out;
}

MeasurementFamily optimize_measurements(const PreparationFamily& P, Task task,
                                        const MeasurementFamily* warm_start) {
    const auto A = score_operators(P, task);
    MeasurementFamily M;
    M.n = P.n;
    M.m = P.m;
    M.d = P.d;
    M.povms.resize(P.n);
    for (int y = 0; y < P.n; ++y) {
        Povm& povm = M.povms[y];
        povm.d = P.d;
        if (warm_start && static_cast<int>(warm_start->povms.size()) == P.n &&
            warm_start->d == P.d) {
            povm.effects = warm_start->povms[y].effects;
        } else {
            povm.effects.assign(P.m, Matrix::Identity(P.d, P.d) / static_cast<double>(P.m));
        }
        // Pairwise Helstrom exchange: re-split each outcome pair's combined
        // effect by the eigenspaces of the score difference until no pair
        // improves.
        for (int pass = 0; pass < 200; ++pass) {
            double improvement = 0.0;
            for (int b = 0; b < P.m; ++b)
                for (int b2 = b + 1; b2 < P.m; ++b2) {
                    const Matrix N = hermitize(povm.effects[b] + povm.effects[b2]);
                    const Matrix D = hermitize(A[y][b] - A[y][b2]);
                    Eigen::SelfAdjointEigenSolver<Matrix> en(N);
                    const Matrix S = en.eigenvectors() *
                                     en.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                                     en.eigenvectors().adjoint();
                    Eigen::SelfAdjointEigenSolver<Matrix> ek(hermitize(S * D * S));
                    Matrix proj = Matrix::Zero(P.d, P.d);
                    for (int i = 0; i < P.d; ++i)
                        if (ek.eigenvalues()[i] > 0)
                            proj += ek.eigenvectors().col(i) * ek.eigenvectors().col(i).adjoint();
                    const Matrix mb = hermitize(S * proj * S);
                    const double delta = ((mb - povm.effects[b]) * D).trace().real();
                    if (delta > 1e-13) {
                        improvement += delta;
                        povm.effects[b] = mb;
                        povm.effects[b2] = hermitize(N - mb);
                    }
                }
            if (improvement < 1e-13) break;
        }
    }
    return M;
}

PreparationFamily optimize_states(const MeasurementFamily& M, bool parity_constrained, Task task,
                                  const PreparationFamily& current, double projection_tol,
                                  int proj_iters, int grad_steps) {
    const auto H = reward_operators(M, task);

    // Unconstrained: top-eigenvector projector of each reward operator.
    PreparationFamily pure;
    pure.n = M.n;
    pure.m = M.m;
    pure.d = M.d;
    pure.states.resize(H.size());
    for (size_t i = 0; i < H.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H[i]));
        const auto v = es.eigenvectors().col(M.d - 1);
        pure.states[i] = v * v.adjoint();
    }
    if (!parity_constrained) return pure;

    // Projected-gradient ascent on the linear objective: each step
    // Pi_C(rho + eta H) is feasible and never decreases the objective; the
    // fixed points are exactly the constrained maximizers.
    PreparationFamily best = current;
    double best_val = linear_objective(best.states, H, M.n);
    constexpr double kEta = 2.0;
    for (int step = 0; step < grad_steps; ++step) {
        PreparationFamily cand = best;
        for (size_t i = 0; i < cand.states.size(); ++i) cand.states[i] += kEta * H[i];
        cand = project_parity_feasible(cand, projection_tol, proj_iters);
        const double val = linear_objective(cand.states, H, M.n);
        if (val <= best_val + 1e-12) break;
        best = std::move(cand);
        best_val = val;
    }
    return best;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix random_gaussian_matrix(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    return g;
}

PreparationFamily random_states(const SeesawConfig& cfg, std::mt19937_64& rng) {
    PreparationFamily P;
    P.n = cfg.n;
    P.m = cfg.m;
    P.d = cfg.d;
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::int64_t total = ipow(cfg.m, cfg.n);
    P.states.reserve(total);
    for (std::int64_t i = 0; i < total; ++i) {
        Eigen::VectorXcd v(cfg.d);
        for (int j = 0; j < cfg.d; ++j) v[j] = std::complex<double>(gauss(rng), gauss(rng));
        v.normalize();
        P.states.push_back(v * v.adjoint());
    }
    if (cfg.parity_constrained) P = project_parity_feasible(P, cfg.projection_tol);
    return P;
}

MeasurementFamily random_measurements(const SeesawConfig& cfg, std::mt19937_64& rng) {
    MeasurementFamily M;
    M.n = cfg.n;
    M.m = cfg.m;
    M.d = cfg.d;
    for (int y = 0; y < cfg.n; ++y) {
        Povm p;
        p.d = cfg.d;
        Matrix sum = Matrix::Zero(cfg.d, cfg.d);
        for (int b = 0; b < cfg.m; ++b) {
            const Matrix g = random_gaussian_matrix(cfg.d, rng);
            p.effects.push_back(g * g.adjoint());
            sum += p.effects.back();
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
        const Matrix inv_sqrt = es.eigenvectors() *
                                es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                                es.eigenvectors().adjoint();
        for (auto& e : p.effects) e = hermitize(inv_sqrt * e * inv_sqrt);
        M.povms.push_back(std::move(p));
    }
    return M;
}

struct RestartOutcome {
    RestartTrace trace;
    quantum::Strategy strategy;
};

RestartOutcome run_restart(const SeesawConfig& cfg, int index) {
    std::mt19937_64 rng(splitmix64(cfg.rng_seed * 0x100000001b3ULL + static_cast<std::uint64_t>(index)));
    RestartOutcome out;
    out.trace.index = index;

    quantum::Strategy st;
    st.preparations = random_states(cfg, rng);
    st.measurements = random_measurements(cfg, rng);

    double value = quantum::success_probability(st.preparations, st.measurements, cfg.task);
    int iters = 0;
    bool converged = false;
    // Main loop with loose projections: the alternation itself corrects
    // residual infeasibility, so tight Dykstra runs here are wasted work.
    const double loose_tol = std::max(cfg.projection_tol, 1e-8);
    std::vector<double> history;
    for (; iters < cfg.max_iters; ++iters) {
        st.measurements = optimize_measurements(st.preparations, cfg.task, &st.measurements);
        const double after_meas =
            quantum::success_probability(st.preparations, st.measurements, cfg.task);
        if (after_meas < value - 1e-10)
            throw std::logic_error("seesaw: objective decreased in measurement step");
        st.preparations = optimize_states(st.measurements, cfg.parity_constrained, cfg.task,
                                          st.preparations, loose_tol, 60, 8);
        const double after_states =
            quantum::success_probability(st.preparations, st.measurements, cfg.task);
        if (after_states < after_meas - 1e-10)
            throw std::logic_error("seesaw: objective decreased in state step");
        history.push_back(after_states);
        const bool stalled =
            history.size() > 20 && after_states - history[history.size() - 21] < 1e-9;
        if (std::abs(after_states - value) < cfg.convergence_tol || stalled) {
            value = after_states;
            converged = true;
            ++iters;
            break;
        }
        value = after_states;
    }
    if (cfg.parity_constrained) {
        // Polish: pin to a tightly feasible point, then a few alternations
        // with tight projections (cheap near convergence), ending on a hard
        // projection so the reported strategy is feasible to high precision.
        st.preparations = project_parity_feasible(st.preparations, 1e-12, 5000);
        st.measurements = optimize_measurements(st.preparations, cfg.task, &st.measurements);
        value = quantum::success_probability(st.preparations, st.measurements, cfg.task);
        quantum::Strategy best_st = st;
        for (int polish = 0; polish < 6; ++polish) {
            st.preparations = optimize_states(st.measurements, true, cfg.task, st.preparations,
                                              1e-11, 300, 4);
            st.preparations = project_parity_feasible(st.preparations, 1e-12, 3000);
            st.measurements = optimize_measurements(st.preparations, cfg.task, &st.measurements);
            const double polished =
                quantum::success_probability(st.preparations, st.measurements, cfg.task);
            // The d=2 cells need ~1e-6 precision, the rest 1e-3; chasing
            // 1e-11-sized gains here burns Dykstra iterations on flat cells.
            if (polished > value + 1e-9) {
                value = polished;
                best_st = st;
            } else {
                value = std::max(value, polished);
                if (polished > value - 1e-12) best_st = st;
                break;
            }
        }
        st = std::move(best_st);
    }
    out.trace.final_value = value;
    out.trace.iterations = iters;
    out.trace.converged = converged;
    out.strategy = std::move(st);
    return out;
}

}  // namespace

SeesawResult run_seesaw(const SeesawConfig& cfg) {
    if (cfg.n != 2 || cfg.d > 8 || (cfg.m != 3 && cfg.m != 5 && cfg.m != 7))
        throw std::invalid_argument("run_seesaw: supported sizes are n=2, m in {3,5,7}, d <= 8");
    if (cfg.restarts < 1 || cfg.convergence_tol <= 0 || cfg.projection_tol <= 0)
        throw std::invalid_argument("run_seesaw: bad config");

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (int i = 0; i < cfg.restarts; ++i) outcomes[i] = run_restart(cfg, i);
    } else {
        std::vector<std::future<void>> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < jobs; ++w)
            workers.push_back(std::async(std::launch::async, [&] {
                for (int i = next.fetch_add(1); i < cfg.restarts; i = next.fetch_add(1))
                    outcomes[i] = run_restart(cfg, i);
            }));
        for (auto& f : workers) f.get();
    }

    SeesawResult res;
    int best_index = 0;
    for (int i = 1; i < cfg.restarts; ++i)
        if (outcomes[i].trace.final_value > outcomes[best_index].trace.final_value) best_index = i;

    const double qubit_projective =
        (cfg.d == 2 && cfg.m >= 3) ? quantum::projective_qubit_bound(cfg.m) : 0.0;
    for (auto& o : outcomes) {
        if (cfg.d == 2 && cfg.parity_constrained && cfg.task == Task::exclusion) {
            const double excess = o.trace.final_value - qubit_projective;
            res.qubit_bound_excess = std::max(res.qubit_bound_excess, excess);
            // Theorem 2 is exact at m=3: any excess falsifies the optimizer.
            if (cfg.m == 3 && excess > 1e-7)
                throw std::logic_error("seesaw: qubit ceiling exceeded at (2,3), d=2");
        }
        res.traces.push_back(o.trace);
    }
    res.best_value = outcomes[best_index].trace.final_value;
    res.best = std::move(outcomes[best_index].strategy);
    res.parity_deviation =
        cfg.parity_constrained ? quantum::parity_deviation(res.best.preparations) : 0.0;
    if (cfg.parity_constrained && res.parity_deviation > 1e-8)
        throw std::logic_error("seesaw: best strategy violates parity feasibility");
    return res;
}

std::vector<std::pair<int, double>> hierarchy_scan(int m, const std::vector<int>& d_list,
                                                   SeesawConfig base) {
    std::vector<std::pair<int, double>> out;
    for (int d : d_list) {
        SeesawConfig cfg = base;
        cfg.m = m;
        cfg.d = d;
        out.emplace_back(d, run_seesaw(cfg).best_value);
    }
    return out;
}

}  // namespace porec::seesaw
