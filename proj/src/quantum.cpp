#include "porec/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace porec::quantum {

namespace {

const std::complex<double> kI{0.0, 1.0};

Matrix pauli(int axis) {
    Matrix s(2, 2);
    switch (axis) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

bool is_density_matrix(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) return false;
    const Matrix h = (rho + rho.adjoint()) / 2.0;
    return hermitian_eigenvalues(h).minCoeff() >= -tol;
}

bool is_valid_povm(const std::vector<Matrix>& effects, double tol) {
    if (effects.empty()) return false;
    const auto d = effects[0].rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : effects) {
        if (e.rows() != d || e.cols() != d) return false;
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
        const Matrix h = (e + e.adjoint()) / 2.0;
        if (hermitian_eigenvalues(h).minCoeff() < -tol) return false;
        sum += e;
    }
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

double trace_norm(const Matrix& hermitian) {
    const Matrix h = (hermitian + hermitian.adjoint()) / 2.0;
    return hermitian_eigenvalues(h).cwiseAbs().sum();
}

Matrix project_to_density(const Matrix& rho) {
    const Matrix h = (rho + rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const double tr = ev.sum();
    if (tr <= 0) throw std::invalid_argument("project_to_density: zero positive part");
    ev /= tr;
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void PreparationFamily::validate(double tol) const {
    if (n < 1 || m < 2 || d < 1) throw std::invalid_argument("PreparationFamily: bad sizes");
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    if (static_cast<std::int64_t>(states.size()) != total)
        throw std::invalid_argument("PreparationFamily: states not total on Z_m^n");
    for (const auto& s : states)
        if (s.rows() != d || !is_density_matrix(s, tol))
            throw std::invalid_argument("PreparationFamily: invalid density matrix");
}

void MeasurementFamily::validate(double tol) const {
    if (static_cast<int>(povms.size()) != n)
        throw std::invalid_argument("MeasurementFamily: need one POVM per question");
    for (const auto& p : povms) {
        if (static_cast<int>(p.effects.size()) != m)
            throw std::invalid_argument("MeasurementFamily: need m effects per POVM");
        if (p.d != d || !is_valid_povm(p.effects, tol))
            throw std::invalid_argument("MeasurementFamily: invalid POVM");
    }
}

double success_probability(const PreparationFamily& P, const MeasurementFamily& M, Task task) {
    if (P.d != M.d || P.n != M.n || P.m != M.m)
        throw std::invalid_argument("success_probability: dimension mismatch");
    const auto inputs = zmod::enumerate_inputs(P.n, P.m);
    double hit = 0.0;
    for (const auto& x : inputs) {
        const Matrix& rho = P.at(x);
        for (int y = 1; y <= P.n; ++y) {
            const std::complex<double> tr = (rho * M.effect(y, x.digits[y - 1])).trace();
            if (std::abs(tr.imag()) > 1e-10)
                throw std::runtime_error("success_probability: non-real Born probability");
            hit += tr.real();
        }
    }
    const double avg_hit = hit / (static_cast<double>(P.n) * inputs.size());
    return task == Task::exclusion ? 1.0 - avg_hit : avg_hit;
}

Matrix class_average(const PreparationFamily& P, const zmod::Mask& mask, int k) {
    const auto table = zmod::parity_classes(mask);
    Matrix avg = Matrix::Zero(P.d, P.d);
    for (const auto& x : table.classes[k]) avg += P.at(x);
    return avg / static_cast<double>(table.classes[k].size());
}

double parity_deviation(const PreparationFamily& P) {
    const auto masks = zmod::enumerate_parity_masks(P.n, P.m, /*reduce_by_scalars=*/true);
    double worst = 0.0;
    for (const auto& r : masks) {
        std::vector<Matrix> avg(P.m);
        for (int k = 0; k < P.m; ++k) avg[k] = class_average(P, r, k);
        for (int k = 0; k < P.m; ++k)
            for (int k2 = k + 1; k2 < P.m; ++k2)
                worst = std::max(worst, trace_norm(avg[k] - avg[k2]));
    }
    return worst;
}

double distinguishability_witness(const PreparationFamily& P, const zmod::Mask& mask, int k, int k2) {
    if (k == k2) throw std::invalid_argument("distinguishability_witness: k == k'");
    return 0.5 + 0.25 * trace_norm(class_average(P, mask, k) - class_average(P, mask, k2));
}

Vector3 qubit_bloch(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("qubit_bloch: d != 2");
    Vector3 v;
    for (int axis = 0; axis < 3; ++axis) v[axis] = (rho * pauli(axis)).trace().real();
    return v;
}

Matrix bloch_to_density(const Vector3& v) {
    Matrix rho = Matrix::Identity(2, 2);
    for (int axis = 0; axis < 3; ++axis) rho += v[axis] * pauli(axis);
    return rho / 2.0;
}

EffectBloch povm_bloch(const Matrix& effect) {
    if (effect.rows() != 2 || effect.cols() != 2) throw std::invalid_argument("povm_bloch: d != 2");
    EffectBloch e;
    e.weight = effect.trace().real();
    Vector3 tv;
    for (int axis = 0; axis < 3; ++axis) tv[axis] = (effect * pauli(axis)).trace().real();
    e.direction = (e.weight > 1e-14) ? Vector3(tv / e.weight) : Vector3(Vector3::Zero());
    return e;
}

Matrix bloch_to_effect(const EffectBloch& e) {
    Matrix eff = Matrix::Identity(2, 2);
    for (int axis = 0; axis < 3; ++axis) eff += e.direction[axis] * pauli(axis);
    return (e.weight / 2.0) * eff;
}

AdditiveDecomposition additive_decomposition(const PreparationFamily& P, double tol) {
    if (P.d != 2 || P.n != 2) throw std::invalid_argument("additive_decomposition: needs d=2, n=2");
    if (!zmod::is_prime(P.m)) throw std::domain_error("additive_decomposition: m must be prime");
    const int m = P.m;
    const auto inputs = zmod::enumerate_inputs(2, m);
    std::vector<Vector3> bloch(inputs.size());
    for (const auto& x : inputs) bloch[x.rank()] = qubit_bloch(P.at(x));

    // Recentre so the ensemble centroid is the maximally mixed state, then
    // split into single-digit means; zero-sum gauge holds by construction.
    Vector3 centroid = Vector3::Zero();
    for (const auto& v : bloch) centroid += v;
    centroid /= static_cast<double>(bloch.size());

    AdditiveDecomposition dec;
    dec.a.assign(m, Vector3::Zero());
    dec.b.assign(m, Vector3::Zero());
    for (int x1 = 0; x1 < m; ++x1)
        for (int x2 = 0; x2 < m; ++x2) {
            const Vector3 v = bloch[x1 * m + x2] - centroid;
            dec.a[x1] += v / m;
            dec.b[x2] += v / m;
        }

    dec.residual = 0.0;
    for (int x1 = 0; x1 < m; ++x1)
        for (int x2 = 0; x2 < m; ++x2) {
            const Vector3 recon = dec.a[x1] + dec.b[x2];
            const Vector3 orig = bloch[x1 * m + x2] - centroid;
            dec.residual = std::max(dec.residual, (recon - orig).cwiseAbs().maxCoeff());
        }
    dec.ok = dec.residual <= tol;
    return dec;
}

PreparationFamily family_from_additive(int m, const std::vector<Vector3>& a,
                                       const std::vector<Vector3>& b) {
    if (static_cast<int>(a.size()) != m || static_cast<int>(b.size()) != m)
        throw std::invalid_argument("family_from_additive: need m digit vectors each");
    PreparationFamily P;
    P.n = 2;
    P.m = m;
    P.d = 2;
    P.states.resize(static_cast<size_t>(m) * m);
    for (int x1 = 0; x1 < m; ++x1)
        for (int x2 = 0; x2 < m; ++x2) {
            const Vector3 v = a[x1] + b[x2];
            if (v.norm() > 1.0 + 1e-10)
                throw std::invalid_argument("family_from_additive: Bloch vector outside the sphere");
            P.states[static_cast<size_t>(x1) * m + x2] = bloch_to_density(v);
        }
    return P;
}

Strategy theorem3_construction(int m) {
    if (!zmod::is_prime(m) || m < 3)
        throw std::domain_error("theorem3_construction: m must be a prime >= 3");
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Vector3> a(m, Vector3::Zero()), b(m, Vector3::Zero());
    a[0] = Vector3(0, 0, -s);
    a[1] = Vector3(0, 0, s);
    b[0] = Vector3(-s, 0, 0);
    b[1] = Vector3(s, 0, 0);

    Strategy st;
    st.preparations = family_from_additive(m, a, b);

    st.measurements.n = 2;
    st.measurements.m = m;
    st.measurements.d = 2;
    const Vector3 dirs[2] = {Vector3(0, 0, 1), Vector3(1, 0, 0)};  // m_1 = z, m_2 = x
    for (int y = 0; y < 2; ++y) {
        Povm p;
        p.d = 2;
        p.effects.assign(m, Matrix::Zero(2, 2));
        p.effects[0] = bloch_to_effect({1.0, dirs[y]});
        p.effects[1] = bloch_to_effect({1.0, -dirs[y]});
        st.measurements.povms.push_back(std::move(p));
    }
    return st;
}

Strategy theorem2_construction() { return theorem3_construction(3); }

double projective_qubit_bound(int m) {
    if (!zmod::is_prime(m) || m < 3)
        throw std::domain_error("projective_qubit_bound: m must be a prime >= 3");
    return static_cast<double>(m - 1) / m + 1.0 / (m * std::sqrt(2.0));
}

QSqrt2 projective_qubit_bound_exact(int m) {
    // (m-1)/m + 1/(m sqrt 2) = (m-1)/m + sqrt(2)/(2m)
    return {Rational(m - 1, m), Rational(1, 2 * static_cast<std::int64_t>(m))};
}

QSqrt2 noncontextual_bound_exact(int m) {
    return {classical::noncontextual_bound(2, m, Task::exclusion), 0};
}

Rational gap_ratio(int m) {
    if (!zmod::is_prime(m) || m < 3) throw std::domain_error("gap_ratio: m must be a prime >= 3");
    const QSqrt2 gap_porec = projective_qubit_bound_exact(m) - noncontextual_bound_exact(m);
    // REC: classical 1 - 1/m^2, qubit projective 1 - (2 - sqrt 2)/m^2.
    const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
    const QSqrt2 gap_rec{Rational(-1, m2), Rational(1, m2)};
    // Division in Q(sqrt 2): (a + b s)/(c + e s) with s^2 = 2.
    const Rational denom = gap_rec.a * gap_rec.a - 2 * gap_rec.b * gap_rec.b;
    const QSqrt2 ratio{(gap_porec.a * gap_rec.a - 2 * gap_porec.b * gap_rec.b) / denom,
                       (gap_porec.b * gap_rec.a - gap_porec.a * gap_rec.b) / denom};
    if (!ratio.is_rational()) throw std::logic_error("gap_ratio: non-rational ratio");
    return ratio.a;
}

PreparationFamily depolarize(const PreparationFamily& P, double omega) {
    if (omega < 0.0 || omega > 1.0) throw std::invalid_argument("depolarize: omega out of [0,1]");
    PreparationFamily out = P;
    const Matrix mixed = Matrix::Identity(P.d, P.d) / static_cast<double>(P.d);
    for (auto& s : out.states) s = (1.0 - omega) * s + omega * mixed;
    return out;
}

double noise_threshold(double p_quantum, int n, int m) {
    const double nc = static_cast<double>(classical::noncontextual_bound(n, m, Task::exclusion));
    if (p_quantum <= nc) throw std::domain_error("noise_threshold: no quantum advantage to protect");
    return (p_quantum - nc) / (p_quantum - (1.0 - 1.0 / m));
}

int dimension_witness(double p_obs, int m) {
    if (m != 3) throw std::invalid_argument("dimension_witness: only the (2,3) witness is defined");
    if (p_obs < 0.0 || p_obs > 1.0) throw std::invalid_argument("dimension_witness: P_obs out of [0,1]");
    const double qubit_optimum = 2.0 / 3.0 + 1.0 / (3.0 * std::sqrt(2.0));
    const double nc = 5.0 / 6.0;
    if (p_obs > qubit_optimum) return 3;
    if (p_obs > nc) return 2;
    return 1;
}

}  // namespace porec::quantum
