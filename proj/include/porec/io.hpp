// io.hpp
// JSON strategy-file serialization and report export.
#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "porec/classical.hpp"
#include "porec/quantum.hpp"
#include "porec/seesaw.hpp"

namespace porec::io {

using json = nlohmann::ordered_json;

// A strategy file: header {n, m, d, kind, task} plus either a classical
// encoding/decoder or quantum states/povms.  Complex matrices are row-major
// arrays of [re, im] pairs; classical probabilities are "p/q" strings.
struct StrategyFile {
    int n = 0;
    int m = 0;
    int d = 0;  // 0 for classical
    std::string kind;  // "classical" | "quantum"
    Task task = Task::exclusion;
    std::string provenance;
    std::optional<quantum::Strategy> quantum_strategy;
    std::optional<classical::ClassicalStrategy> classical_strategy;
};

json to_json(const StrategyFile& file);
StrategyFile strategy_from_json(const json& j);

StrategyFile load_strategy(const std::string& path);
void save_strategy(const StrategyFile& file, const std::string& path);

json matrix_to_json(const quantum::Matrix& mat);
quantum::Matrix matrix_from_json(const json& j, int d);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

json seesaw_result_to_json(const seesaw::SeesawConfig& cfg, const seesaw::SeesawResult& res);
// CSV with header restart_index,final_value,iterations,converged.
std::string traces_to_csv(const std::vector<seesaw::RestartTrace>& traces);

}  // namespace porec::io
