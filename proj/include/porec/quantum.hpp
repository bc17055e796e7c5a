// quantum.hpp
// Density matrices, POVMs, parity-obliviousness diagnostics, the analytic
// optimal qubit constructions, depolarizing noise, and the dimension
// witness.
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "porec/classical.hpp"
#include "porec/zmod.hpp"

namespace porec::quantum {

using Matrix = Eigen::MatrixXcd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = -1e-10;

bool is_density_matrix(const Matrix& rho, double tol = 1e-10);
bool is_valid_povm(const std::vector<Matrix>& effects, double tol = 1e-10);

// Trace norm via eigenvalues of the Hermitian argument.
double trace_norm(const Matrix& hermitian);

// Clip negative eigenvalues to zero and renormalize the trace to 1.
Matrix project_to_density(const Matrix& rho);

// Map x -> rho_x, total on Z_m^n; states indexed by InputString::rank().
struct PreparationFamily {
    int n = 0;
    int m = 0;
    int d = 0;
    std::vector<Matrix> states;

    const Matrix& at(const zmod::InputString& x) const { return states[x.rank()]; }
    void validate(double tol = 1e-9) const;
};

struct Povm {
    int d = 0;
    std::vector<Matrix> effects;  // m effects, zero effects permitted
};

// One m-outcome POVM per question y in {1..n}.
struct MeasurementFamily {
    int n = 0;
    int m = 0;
    int d = 0;
    std::vector<Povm> povms;  // indexed by y-1

    const Matrix& effect(int y, int b) const { return povms[y - 1].effects[b]; }
    void validate(double tol = 1e-9) const;
};

// Exclusion: (1/(n m^n)) sum_{x,y} (1 - Tr(rho_x M_{x_y|y})); retrieval is
// the complement summand.
double success_probability(const PreparationFamily& P, const MeasurementFamily& M, Task task);

// Uniform average of rho_x over the parity class C_k of the mask.
Matrix class_average(const PreparationFamily& P, const zmod::Mask& mask, int k);

// Max over reduced masks and class pairs of ||rho_k - rho_k'||_1.
double parity_deviation(const PreparationFamily& P);

// Guessing probability 1/2 + (1/4) ||rho_k - rho_k'||_1.
double distinguishability_witness(const PreparationFamily& P, const zmod::Mask& mask, int k, int k2);

// Bloch parametrizations, d = 2 only.
Vector3 qubit_bloch(const Matrix& rho);
Matrix bloch_to_density(const Vector3& v);
struct EffectBloch {
    double weight = 0;   // t = Tr(E)
    Vector3 direction;   // unit vector, or zero when t = 0
};
EffectBloch povm_bloch(const Matrix& effect);
Matrix bloch_to_effect(const EffectBloch& e);

// Zero-sum-gauge decomposition n_{x1 x2} = a_{x1} + b_{x2} of a recentred
// qubit family (d=2, n=2, prime m).  residual is the max reconstruction
// error against the recentred Bloch vectors; ok iff residual <= tol.
struct AdditiveDecomposition {
    std::vector<Vector3> a;  // indexed by x1
    std::vector<Vector3> b;  // indexed by x2
    double residual = 0;
    bool ok = false;
};
AdditiveDecomposition additive_decomposition(const PreparationFamily& P, double tol = 1e-9);

// Build the family n_{x1 x2} = a_{x1} + b_{x2} (d = 2).
PreparationFamily family_from_additive(int m, const std::vector<Vector3>& a,
                                       const std::vector<Vector3>& b);

struct Strategy {
    PreparationFamily preparations;
    MeasurementFamily measurements;
};

// The exact (2,3) qubit optimum: nine states in the Bloch x-z plane with
// complementary Pauli measurements.
Strategy theorem2_construction();

// The (2,m) projective-optimal construction for prime m >= 3.
Strategy theorem3_construction(int m);

// (m-1)/m + 1/(m sqrt 2) for prime m >= 3.
double projective_qubit_bound(int m);

// Numbers a + b*sqrt(2) with rational a, b; lets the gap ratio come out as
// an exact rational.
struct QSqrt2 {
    Rational a, b;
    QSqrt2 operator-(const QSqrt2& o) const { return {a - o.a, b - o.b}; }
    bool is_rational() const { return b == 0; }
};
QSqrt2 projective_qubit_bound_exact(int m);
QSqrt2 noncontextual_bound_exact(int m);  // n = 2

// Delta_POREC / Delta_REC, exactly m/2 in exact arithmetic.
Rational gap_ratio(int m);

PreparationFamily depolarize(const PreparationFamily& P, double omega);

// omega_c = (P_Q - P_NC) / (P_Q - (1 - 1/m)), n = 2.  Throws when P_Q does
// not exceed the noncontextual bound.
double noise_threshold(double p_quantum, int n, int m);

// Certified lower bound on the Hilbert-space dimension from an observed
// (2,3) POREC value: 3 above the exact qubit optimum, 2 above the
// noncontextual bound, else 1.
int dimension_witness(double p_obs, int m = 3);

}  // namespace porec::quantum
