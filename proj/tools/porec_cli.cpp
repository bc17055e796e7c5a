// porec: bounds, exact LP oracle, see-saw optimization, strategy
// verification, table reproduction, and noise analysis for parity-oblivious
// random exclusion/access codes.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "porec/classical.hpp"
#include "porec/io.hpp"
#include "porec/quantum.hpp"
#include "porec/seesaw.hpp"

namespace {

using porec::Rational;
using porec::Task;
using porec::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void emit(const json& j, bool as_json) {
    if (as_json) std::cout << j.dump(2) << "\n";
}

int default_jobs() {
    if (const char* env = std::getenv("POREC_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
        }
    }
    return 1;
}

porec::seesaw::SeesawResult run_seesaw_checked(porec::seesaw::SeesawConfig cfg) {
    auto res = porec::seesaw::run_seesaw(cfg);
    bool any_converged = false;
    for (const auto& t : res.traces) any_converged |= t.converged;
    if (!any_converged) throw std::runtime_error("see-saw: no restart converged");
    return res;
}

porec::io::StrategyFile strategy_file_from_seesaw(const porec::seesaw::SeesawConfig& cfg,
                                                  const porec::seesaw::SeesawResult& res) {
    porec::io::StrategyFile file;
    file.n = cfg.n;
    file.m = cfg.m;
    file.d = cfg.d;
    file.kind = "quantum";
    file.task = cfg.task;
    file.provenance = "seesaw(seed=" + std::to_string(cfg.rng_seed) +
                      ",restarts=" + std::to_string(cfg.restarts) + ")";
    file.quantum_strategy = res.best;
    return file;
}

int cmd_bounds(int n, int m, Task task, bool as_json) {
    const Rational nc = porec::classical::noncontextual_bound(n, m, task);
    json out;
    out["n"] = n;
    out["m"] = m;
    out["task"] = porec::to_string(task);
    out["noncontextual_bound"] = porec::io::rational_to_string(nc);
    out["noncontextual_bound_value"] = static_cast<double>(nc);
    if (!as_json) {
        std::cout << "noncontextual bound     " << porec::io::rational_to_string(nc) << " = "
                  << fmt(static_cast<double>(nc)) << "\n";
    }
    if (n == 2 && task == Task::exclusion) {
        const double q = porec::quantum::projective_qubit_bound(m);
        const double gap = q - static_cast<double>(nc);
        const Rational ratio = porec::quantum::gap_ratio(m);
        out["projective_qubit_bound"] = q;
        out["gap"] = gap;
        out["gap_ratio_vs_rec"] = porec::io::rational_to_string(ratio);
        if (!as_json) {
            std::cout << "projective qubit bound  " << fmt(q) << "\n"
                      << "gap                     " << fmt6(gap) << "\n"
                      << "gap ratio vs REC        " << porec::io::rational_to_string(ratio)
                      << "\n";
        }
    }
    emit(out, as_json);
    return kExitOk;
}

int cmd_oracle(int n, int m, int K, Task task, bool as_json, const std::string& cert_path) {
    auto report = porec::classical::classical_bound_oracle(n, m, K, task);
    const Rational formula = porec::classical::noncontextual_bound(n, m, task);
    json out;
    out["n"] = n;
    out["m"] = m;
    out["K"] = K;
    out["task"] = porec::to_string(task);
    out["value"] = porec::io::rational_to_string(report.value);
    out["value_double"] = static_cast<double>(report.value);
    out["method"] = report.method;
    out["matches_formula"] = (report.value == formula);
    if (!as_json) {
        std::cout << "oracle optimum  " << porec::io::rational_to_string(report.value) << " = "
                  << fmt(static_cast<double>(report.value)) << "\n"
                  << "formula         " << porec::io::rational_to_string(formula)
                  << (report.value == formula ? "  (match)" : "  (MISMATCH)") << "\n";
    }
    if (!cert_path.empty()) {
        porec::io::StrategyFile file;
        file.n = n;
        file.m = m;
        file.d = 0;
        file.kind = "classical";
        file.task = task;
        file.provenance = "lp-oracle(K=" + std::to_string(K) + ")";
        file.classical_strategy = report.certificate;
        porec::io::save_strategy(file, cert_path);
        out["certificate"] = cert_path;
    }
    emit(out, as_json);
    return kExitOk;
}

int cmd_seesaw(porec::seesaw::SeesawConfig cfg, bool as_json, const std::string& out_path,
               const std::string& traces_path) {
    auto res = run_seesaw_checked(cfg);
    json out = porec::io::seesaw_result_to_json(cfg, res);
    if (!out_path.empty()) {
        porec::io::save_strategy(strategy_file_from_seesaw(cfg, res), out_path);
        out["strategy_file"] = out_path;
    }
    if (!traces_path.empty()) {
        FILE* f = std::fopen(traces_path.c_str(), "w");
        if (!f) throw std::runtime_error("cannot open " + traces_path);
        const std::string csv = porec::io::traces_to_csv(res.traces);
        std::fwrite(csv.data(), 1, csv.size(), f);
        std::fclose(f);
    }
    if (as_json) {
        emit(out, true);
    } else {
        std::cout << "best value        " << fmt(res.best_value) << "\n"
                  << "parity deviation  " << fmt(res.parity_deviation) << "\n";
        if (cfg.d == 2)
            std::cout << "qubit bound excess " << fmt(res.qubit_bound_excess) << "\n";
    }
    return kExitOk;
}

std::string witness_verdict(double value, int n, int m, int* d_min = nullptr) {
    const double nc =
        static_cast<double>(porec::classical::noncontextual_bound(n, m, Task::exclusion));
    if (n == 2 && m == 3) {
        const int d = porec::quantum::dimension_witness(value);
        if (d_min) *d_min = d;
        if (d >= 3) return "contextual, certifies d >= 3";
        if (d == 2) return "contextual, d=2 sufficient";
        return "no certificate";
    }
    if (d_min) *d_min = value > nc ? 2 : 1;
    return value > nc ? "contextual" : "no certificate";
}

int cmd_verify(const std::string& path, bool as_json) {
    auto file = porec::io::load_strategy(path);
    json out;
    out["file"] = path;
    out["kind"] = file.kind;
    out["n"] = file.n;
    out["m"] = file.m;
    out["task"] = porec::to_string(file.task);

    double value = 0;
    double deviation = 0;
    if (file.kind == "quantum") {
        const auto& st = *file.quantum_strategy;
        try {
            st.preparations.validate();
            st.measurements.validate();
        } catch (const std::exception& e) {
            out["valid"] = false;
            out["error"] = e.what();
            emit(out, as_json);
            if (!as_json) std::cout << "invalid strategy: " << e.what() << "\n";
            return kExitInvalid;
        }
        value = porec::quantum::success_probability(st.preparations, st.measurements, file.task);
        deviation = porec::quantum::parity_deviation(st.preparations);
        json witnesses = json::array();
        for (const auto& mask : porec::zmod::enumerate_parity_masks(file.n, file.m, true)) {
            for (int k = 0; k < file.m; ++k)
                for (int k2 = k + 1; k2 < file.m; ++k2) {
                    json w;
                    w["mask"] = mask.components;
                    w["classes"] = {k, k2};
                    w["guessing_probability"] = porec::quantum::distinguishability_witness(
                        st.preparations, mask, k, k2);
                    witnesses.push_back(w);
                }
        }
        out["witnesses"] = witnesses;
    } else {
        const auto& cs = *file.classical_strategy;
        try {
            cs.validate();
        } catch (const std::exception& e) {
            out["valid"] = false;
            out["error"] = e.what();
            emit(out, as_json);
            if (!as_json) std::cout << "invalid strategy: " << e.what() << "\n";
            return kExitInvalid;
        }
        value = porec::classical::evaluate_classical(cs, file.task);
        deviation =
            static_cast<double>(porec::classical::check_parity_oblivious_classical(cs));
    }
    int d_min = 1;
    const std::string verdict = file.task == Task::exclusion
                                    ? witness_verdict(value, file.n, file.m, &d_min)
                                    : "n/a (witness applies to exclusion)";
    out["valid"] = true;
    out["success_probability"] = value;
    out["parity_deviation"] = deviation;
    out["verdict"] = verdict;
    if (file.task == Task::exclusion) out["certified_dimension"] = d_min;
    if (!as_json) {
        std::cout << "valid strategy\n"
                  << "success probability  " << fmt(value) << "\n"
                  << "parity deviation     " << fmt(deviation) << "\n"
                  << "verdict              " << verdict << "\n";
    }
    emit(out, as_json);
    return kExitOk;
}

struct TableCell {
    std::string text;
    std::string provenance;
};

void print_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<TableCell>>& rows, const std::string& csv_path) {
    std::vector<size_t> width(header.size());
    for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].text.size());
    auto pad = [&](const std::string& s, size_t c) {
        return s + std::string(width[c] - s.size() + 2, ' ');
    };
    for (size_t c = 0; c < header.size(); ++c) std::cout << pad(header[c], c);
    std::cout << "\n";
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) std::cout << pad(row[c].text, c);
        std::cout << "\n";
    }
    if (!csv_path.empty()) {
        std::string csv;
        for (size_t c = 0; c < header.size(); ++c)
            csv += header[c] + "," + header[c] + "_provenance" + (c + 1 < header.size() ? "," : "");
        csv += "\n";
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c)
                csv += row[c].text + "," + row[c].provenance + (c + 1 < row.size() ? "," : "");
            csv += "\n";
        }
        FILE* f = std::fopen(csv_path.c_str(), "w");
        if (!f) throw std::runtime_error("cannot open " + csv_path);
        std::fwrite(csv.data(), 1, csv.size(), f);
        std::fclose(f);
    }
}

int cmd_tables(const std::string& which, std::uint64_t seed, int restarts, bool formula_only,
               int jobs, const std::string& csv_path, bool use_seesaw) {
    if (which == "I") {
        // (n,m) = (2,3) comparison of classical/noncontextual bounds with
        // quantum values across the four games.
        const double s2 = std::sqrt(2.0);
        struct Row {
            std::string game;
            Rational bound;
            double quantum;
            std::string q_prov;
        };
        std::vector<Row> spec_rows = {
            {"RAC", Rational(5, 9), (4 + s2) / 9, "formula"},
            {"REC", Rational(8, 9), (7 + s2) / 9, "formula"},
            {"PORAC (multi-mask)", Rational(2, 3), 1.0 / 3 + 1 / (3 * s2), "formula"},
            {"POREC", Rational(5, 6), 2.0 / 3 + 1 / (3 * s2), "formula"},
        };
        if (use_seesaw && !formula_only) {
            porec::seesaw::SeesawConfig cfg;
            cfg.m = 3;
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            cfg.jobs = jobs;
            const std::string prov = "seesaw(seed=" + std::to_string(seed) + ")";
            auto run = [&](Task task, bool constrained, int d) {
                auto c = cfg;
                c.task = task;
                c.parity_constrained = constrained;
                c.d = d;
                return run_seesaw_checked(c).best_value;
            };
            spec_rows[0].quantum = run(Task::retrieval, false, 2);
            spec_rows[0].q_prov = prov;
            spec_rows[1].quantum = run(Task::exclusion, false, 2);
            spec_rows[1].q_prov = prov;
            spec_rows[3].quantum = run(Task::exclusion, true, 2);
            spec_rows[3].q_prov = prov;
        }
        std::vector<std::vector<TableCell>> rows;
        for (const auto& r : spec_rows) {
            const double gap = r.quantum - static_cast<double>(r.bound);
            rows.push_back({{r.game, "label"},
                            {porec::io::rational_to_string(r.bound), "formula"},
                            {fmt6(r.quantum), r.q_prov},
                            {fmt4(gap), "derived"}});
        }
        print_table({"task", "P_C/P_NC", "P_Q", "gap"}, rows, csv_path);
        return kExitOk;
    }
    if (which != "II") throw CLI::ValidationError("tables", "table must be I or II");

    std::vector<std::vector<TableCell>> rows;
    for (int m : {3, 5, 7}) {
        const Rational nc = porec::classical::noncontextual_bound(2, m, Task::exclusion);
        const std::vector<int> dims = formula_only ? std::vector<int>{2} : std::vector<int>{2, 3, 4};
        for (int d : dims) {
            double value;
            std::string prov;
            if (d == 2 && formula_only) {
                value = porec::quantum::projective_qubit_bound(m);
                prov = "formula";
            } else {
                porec::seesaw::SeesawConfig cfg;
                cfg.m = m;
                cfg.d = d;
                cfg.restarts = restarts;
                cfg.rng_seed = seed;
                cfg.jobs = jobs;
                value = run_seesaw_checked(cfg).best_value;
                prov = "seesaw(seed=" + std::to_string(seed) + ")";
            }
            const double omega_c = porec::quantum::noise_threshold(value, 2, m);
            rows.push_back({{std::to_string(m), "label"},
                            {porec::io::rational_to_string(nc), "formula"},
                            {std::to_string(d), "label"},
                            {fmt6(value), prov},
                            {fmt4(omega_c), "derived(" + prov + ")"}});
        }
    }
    print_table({"m", "P_NC", "d", "P_Q", "omega_c"}, rows, csv_path);
    return kExitOk;
}

int cmd_noise(const std::string& path, std::optional<double> omega, bool threshold, bool as_json) {
    auto file = porec::io::load_strategy(path);
    if (file.kind != "quantum")
        throw CLI::ValidationError("noise", "depolarizing noise applies to quantum strategies");
    const auto& st = *file.quantum_strategy;
    json out;
    out["file"] = path;
    if (threshold) {
        const double value =
            porec::quantum::success_probability(st.preparations, st.measurements, file.task);
        const double wc = porec::quantum::noise_threshold(value, file.n, file.m);
        out["success_probability"] = value;
        out["critical_visibility"] = wc;
        if (!as_json)
            std::cout << "success probability  " << fmt(value) << "\n"
                      << "critical visibility  " << fmt4(wc) << "\n";
    } else {
        auto noisy = porec::quantum::depolarize(st.preparations, *omega);
        const double value =
            porec::quantum::success_probability(noisy, st.measurements, file.task);
        out["omega"] = *omega;
        out["noisy_value"] = value;
        if (!as_json) std::cout << "noisy value  " << fmt(value) << "\n";
    }
    emit(out, as_json);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity-oblivious random exclusion codes: bounds, optimization, verification"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a single JSON document on stdout");

    int n = 2, m = 3, K = 3;
    std::string task_name = "exclusion";

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds and gaps");
    bounds->fallthrough();
    bounds->add_option("-n", n, "digits")->default_val(2);
    bounds->add_option("-m", m, "alphabet size (prime)")->default_val(3);
    bounds->add_option("--task", task_name)->check(CLI::IsMember({"exclusion", "retrieval"}));

    auto* oracle = app.add_subcommand("oracle", "exact LP optimum over classical strategies");
    oracle->fallthrough();
    std::string cert_path;
    oracle->add_option("-n", n)->default_val(2);
    oracle->add_option("-m", m)->default_val(3);
    oracle->add_option("-K", K, "message alphabet size")->default_val(3);
    oracle->add_option("--task", task_name)->check(CLI::IsMember({"exclusion", "retrieval"}));
    oracle->add_option("--certificate", cert_path, "write the optimal strategy to this file");

    auto* seesaw = app.add_subcommand("seesaw", "alternating optimization at fixed dimension");
    seesaw->fallthrough();
    porec::seesaw::SeesawConfig cfg;
    cfg.jobs = default_jobs();
    bool unconstrained = false;
    std::string out_path, traces_path;
    seesaw->add_option("-m", cfg.m)->default_val(3);
    seesaw->add_option("-d", cfg.d)->default_val(2);
    seesaw->add_option("--task", task_name)->check(CLI::IsMember({"exclusion", "retrieval"}));
    seesaw->add_option("--restarts", cfg.restarts)->default_val(100);
    seesaw->add_option("--iters", cfg.max_iters)->default_val(500);
    seesaw->add_option("--seed", cfg.rng_seed)->default_val(0);
    seesaw->add_option("--jobs", cfg.jobs, "parallel restart workers");
    seesaw->add_flag("--unconstrained", unconstrained, "drop the parity-obliviousness constraint");
    seesaw->add_option("--out", out_path, "write the best strategy to this file");
    seesaw->add_option("--traces", traces_path, "write per-restart traces as CSV");

    auto* verify = app.add_subcommand("verify", "validate and evaluate a strategy file");
    verify->fallthrough();
    std::string verify_path;
    verify->add_option("file", verify_path)->required()->check(CLI::ExistingFile);

    auto* tables = app.add_subcommand("tables", "reproduce the comparison tables");
    tables->fallthrough();
    std::string which;
    std::uint64_t table_seed = 7;
    int table_restarts = 100;
    bool formula_only = false, table_seesaw = false;
    std::string csv_path;
    int table_jobs = default_jobs();
    tables->add_option("which", which)->required()->check(CLI::IsMember({"I", "II"}));
    tables->add_option("--seed", table_seed)->default_val(7);
    tables->add_option("--restarts", table_restarts)->default_val(100);
    tables->add_option("--jobs", table_jobs);
    tables->add_flag("--formula-only", formula_only, "closed-form cells only, no optimization");
    tables->add_flag("--seesaw", table_seesaw, "recompute table-I quantum cells by see-saw");
    tables->add_option("--csv", csv_path, "also write the table as CSV");

    auto* noise = app.add_subcommand("noise", "depolarizing-noise analysis of a strategy file");
    noise->fallthrough();
    std::string noise_path;
    std::optional<double> omega;
    bool threshold = false;
    noise->add_option("file", noise_path)->required()->check(CLI::ExistingFile);
    auto* omega_opt = noise->add_option("--omega", omega, "noise weight in [0,1]")
                          ->check(CLI::Range(0.0, 1.0));
    noise->add_flag("--threshold", threshold, "report the critical visibility");
    omega_opt->excludes("--threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        const Task task = porec::task_from_string(task_name);
        if (bounds->parsed()) return cmd_bounds(n, m, task, as_json);
        if (oracle->parsed()) return cmd_oracle(n, m, K, task, as_json, cert_path);
        if (seesaw->parsed()) {
            cfg.task = task;
            cfg.parity_constrained = !unconstrained;
            return cmd_seesaw(cfg, as_json, out_path, traces_path);
        }
        if (verify->parsed()) return cmd_verify(verify_path, as_json);
        if (tables->parsed())
            return cmd_tables(which, table_seed, table_restarts, formula_only, table_jobs,
                              csv_path, table_seesaw);
        if (noise->parsed()) {
            if (!threshold && !omega)
                throw CLI::ValidationError("noise", "pass --omega or --threshold");
            return cmd_noise(noise_path, omega, threshold, as_json);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string msg = e.what();
        if (msg.find("converge") != std::string::npos) return kExitNoConvergence;
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
