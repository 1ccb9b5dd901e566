#pragma once

#include <string>

#include <json.hpp>

#include "ratcheb/asymptotics.hpp"
#include "ratcheb/rational_fn.hpp"
#include "ratcheb/solver.hpp"

namespace ratcheb {

nlohmann::json rational_to_json(const RationalFn& F);
RationalFn rational_from_json(const nlohmann::json& j);

/// Top-level solution document; schema version 1, 17-digit doubles.
nlohmann::json solution_to_json(const Problem& p, const Solution& s);

/// (x, F(x)) samples over E for plotting.
std::string solution_to_csv(const Problem& p, const Solution& s, int samples_per_interval);

/// Runs all extension-module checks plus the alternation certificate on a
/// solved problem and reports per-check pass/fail with numeric margins.
nlohmann::json build_verify_report(const Problem& p, const Solution& s);

std::string asymptotics_csv(const std::vector<CombinedRow>& rows);

/// Serializes with deterministic 17-significant-digit doubles.
std::string dump_json(const nlohmann::json& j);

}  // namespace ratcheb
