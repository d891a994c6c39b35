#pragma once

#include <string>

#include <json.hpp>

#include "addbo/regret.hpp"
#include "addbo/run.hpp"

namespace addbo {

inline constexpr int kRunSchemaVersion = 1;

struct LoadedRun {
  RunResult result;
  nlohmann::json config;
};

nlohmann::json run_to_json(const RunResult& result, const nlohmann::json& config);
LoadedRun run_from_json(const nlohmann::json& doc);

/// Writes the run as JSON through a temporary file and rename, so readers
/// never see a half-written artifact. Throws IoError.
void persist_run(const RunResult& result, const nlohmann::json& config, const std::string& path);

/// Throws SchemaError naming both versions on a mismatch, IoError otherwise.
LoadedRun load_run(const std::string& path);

/// Columns: t, immediate_regret, simple_regret, avg_cumulative_regret.
void export_trace_csv(const RegretTrace& trace, const std::string& path);

/// Atomic text write (temporary file + rename).
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace addbo
