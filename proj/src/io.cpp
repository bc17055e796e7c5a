#include "porec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace porec::io {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t p = 1;
    while (exp-- > 0) p *= base;
    return p;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string digits_key(const zmod::InputString& x) {
    std::string key;
    for (int i = 0; i < x.n; ++i) {
        if (i) key += ',';
        key += std::to_string(x.digits[i]);
    }
    return key;
}

}  // namespace

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    using Int = boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rational(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    return Rational(num, den);
}

json matrix_to_json(const quantum::Matrix& mat) {
    json out = json::array();
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j)
            out.push_back({mat(i, j).real(), mat(i, j).imag()});
    return out;
}

quantum::Matrix matrix_from_json(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d * d)
        throw std::invalid_argument("matrix_from_json: expected d*d [re, im] pairs");
    quantum::Matrix mat(d, d);
    int idx = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index jj = 0; jj < d; ++jj, ++idx)
            mat(i, jj) = {j[idx].at(0).get<double>(), j[idx].at(1).get<double>()};
    return mat;
}

json to_json(const StrategyFile& file) {
    json j;
    j["n"] = file.n;
    j["m"] = file.m;
    j["d"] = file.d;
    j["kind"] = file.kind;
    j["task"] = to_string(file.task);
    if (!file.provenance.empty()) j["provenance"] = file.provenance;
    if (file.kind == "quantum") {
        const auto& st = file.quantum_strategy.value();
        json states = json::object();
        for (const auto& x : zmod::enumerate_inputs(file.n, file.m))
            states[digits_key(x)] = matrix_to_json(st.preparations.at(x));
        j["states"] = std::move(states);
        json povms = json::array();
        for (const auto& p : st.measurements.povms) {
            json effects = json::array();
            for (const auto& e : p.effects) effects.push_back(matrix_to_json(e));
            povms.push_back(std::move(effects));
        }
        j["povms"] = std::move(povms);
    } else if (file.kind == "classical") {
        const auto& s = file.classical_strategy.value();
        j["K"] = s.K;
        json enc = json::array();  // flat, x-major then M
        for (const auto& row : s.encoding)
            for (const auto& p : row) enc.push_back(rational_to_string(p));
        j["encoding"] = std::move(enc);
        j["decoder"] = s.decoder;
    } else {
        throw std::invalid_argument("to_json: unknown strategy kind");
    }
    return j;
}

StrategyFile strategy_from_json(const json& j) {
    StrategyFile file;
    file.n = j.at("n").get<int>();
    file.m = j.at("m").get<int>();
    file.d = j.value("d", 0);
    file.kind = j.at("kind").get<std::string>();
    file.task = task_from_string(j.at("task").get<std::string>());
    file.provenance = j.value("provenance", "");
    const std::int64_t total = ipow(file.m, file.n);
    if (file.kind == "quantum") {
        quantum::Strategy st;
        st.preparations.n = file.n;
        st.preparations.m = file.m;
        st.preparations.d = file.d;
        st.preparations.states.resize(total);
        const auto& states = j.at("states");
        for (const auto& x : zmod::enumerate_inputs(file.n, file.m))
            st.preparations.states[x.rank()] = matrix_from_json(states.at(digits_key(x)), file.d);
        st.measurements.n = file.n;
        st.measurements.m = file.m;
        st.measurements.d = file.d;
        for (const auto& pj : j.at("povms")) {
            quantum::Povm p;
            p.d = file.d;
            for (const auto& ej : pj) p.effects.push_back(matrix_from_json(ej, file.d));
            st.measurements.povms.push_back(std::move(p));
        }
        file.quantum_strategy = std::move(st);
    } else if (file.kind == "classical") {
        classical::ClassicalStrategy s;
        s.n = file.n;
        s.m = file.m;
        s.K = j.at("K").get<int>();
        const auto& enc = j.at("encoding");
        if (static_cast<std::int64_t>(enc.size()) != total * s.K)
            throw std::invalid_argument("strategy_from_json: encoding size != m^n * K");
        s.encoding.assign(total, std::vector<Rational>(s.K));
        std::int64_t idx = 0;
        for (auto& row : s.encoding)
            for (auto& p : row) {
                const auto& v = enc.at(idx++);
                p = v.is_string() ? rational_from_string(v.get<std::string>())
                                  : Rational(v.get<double>());
            }
        s.decoder = j.at("decoder").get<std::vector<std::vector<int>>>();
        file.classical_strategy = std::move(s);
    } else {
        throw std::invalid_argument("strategy_from_json: unknown kind " + file.kind);
    }
    return file;
}

StrategyFile load_strategy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open strategy file: " + path);
    json j;
    in >> j;
    return strategy_from_json(j);
}

void save_strategy(const StrategyFile& file, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write strategy file: " + path);
    out << to_json(file).dump(2) << '\n';
}

json seesaw_result_to_json(const seesaw::SeesawConfig& cfg, const seesaw::SeesawResult& res) {
    json j;
    j["config"] = {{"n", cfg.n},
                   {"m", cfg.m},
                   {"d", cfg.d},
                   {"task", to_string(cfg.task)},
                   {"parity_constrained", cfg.parity_constrained},
                   {"restarts", cfg.restarts},
                   {"max_iters", cfg.max_iters},
                   {"convergence_tol", cfg.convergence_tol},
                   {"projection_tol", cfg.projection_tol},
                   {"rng_seed", cfg.rng_seed}};
    j["best_value"] = res.best_value;
    j["parity_deviation"] = res.parity_deviation;
    j["qubit_bound_excess"] = res.qubit_bound_excess;
    j["provenance"] = "seesaw(seed=" + std::to_string(cfg.rng_seed) + ")";
    int converged = 0;
    for (const auto& t : res.traces) converged += t.converged;
    j["restarts_converged"] = converged;
    return j;
}

std::string traces_to_csv(const std::vector<seesaw::RestartTrace>& traces) {
    std::string csv = "restart_index,final_value,iterations,converged\n";
    for (const auto& t : traces) {
        csv += std::to_string(t.index) + ',' + format_double(t.final_value) + ',' +
               std::to_string(t.iterations) + ',' + (t.converged ? "1" : "0") + '\n';
    }
    return csv;
}

}  // namespace porec::io
