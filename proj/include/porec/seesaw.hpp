// seesaw.hpp
// Alternating maximization of the POREC/PORAC/REC/RAC figure of merit over
// states and measurements at fixed dimension, with and without the
// parity-obliviousness constraint.
#pragma once

#include <cstdint>
#include <vector>

#include "porec/quantum.hpp"

namespace porec::seesaw {

struct SeesawConfig {
    int n = 2;
    int m = 3;
    int d = 2;
    Task task = Task::exclusion;
    bool parity_constrained = true;
    int restarts = 100;
    int max_iters = 500;
    double convergence_tol = 1e-10;
    double projection_tol = 1e-11;
    std::uint64_t rng_seed = 0;
    int jobs = 1;
};

struct RestartTrace {
    int index = 0;
    double final_value = 0;
    int iterations = 0;
    bool converged = false;
};

struct SeesawResult {
    double best_value = 0;
    quantum::Strategy best;
    std::vector<RestartTrace> traces;
    double parity_deviation = 0;   // of the best strategy
    // Largest excess of any restart over the projective qubit bound, logged
    // for d=2 where m-outcome POVM optimality is open (m >= 5).
    double qubit_bound_excess = 0;
};

// Exact inner step for fixed states: per question, iterated pairwise
// Helstrom refinement of the POVM against the score operators.
quantum::MeasurementFamily optimize_measurements(const quantum::PreparationFamily& P, Task task,
                                                 const quantum::MeasurementFamily* warm_start = nullptr);

// State step for fixed measurements.  Unconstrained: exact top-eigenvector
// projectors of the per-state reward operators.  Constrained: conditional
// gradient with candidates projected onto (parity subspace) x (PSD, trace 1)
// by Dykstra alternating projections; never decreases the objective below
// that of `current`.
quantum::PreparationFamily optimize_states(const quantum::MeasurementFamily& M,
                                           bool parity_constrained, Task task,
                                           const quantum::PreparationFamily& current,
                                           double projection_tol = 1e-11, int proj_iters = 2000,
                                           int grad_steps = 12);

// Dykstra projection of an arbitrary Hermitian family onto the intersection
// of the parity-oblivious affine subspace with the product of state sets.
quantum::PreparationFamily project_parity_feasible(const quantum::PreparationFamily& P,
                                                   double tol = 1e-11, int max_iters = 10000);

SeesawResult run_seesaw(const SeesawConfig& cfg);

std::vector<std::pair<int, double>> hierarchy_scan(int m, const std::vector<int>& d_list,
                                                   SeesawConfig base = {});

}  // namespace porec::seesaw
