#include "addbo/persist.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "addbo/errors.hpp"

namespace addbo {

using nlohmann::json;

namespace {

json decomposition_json(const Decomposition& d) {
  return {{"assignment", std::vector<int>(d.assignment().begin(), d.assignment().end())},
          {"num_slots", d.num_slots()}};
}

Decomposition decomposition_from(const json& j) {
  return Decomposition(j.at("assignment").get<std::vector<int>>(), j.at("num_slots").get<int>());
}

}  // namespace

json run_to_json(const RunResult& r, const json& config) {
  json obs = json::array();
  for (int i = 0; i < r.observations.size(); ++i) {
    const Eigen::VectorXd x = r.observations.points.row(i).transpose();
    obs.push_back({{"round", r.rounds.at(i)},
                   {"x", std::vector<double>(x.data(), x.data() + x.size())},
                   {"y", r.observations.values[i]},
                   {"f", r.f_values.at(i)}});
  }
  json decomps = json::array();
  for (const auto& e : r.decompositions) {
    json d = decomposition_json(e.decomp);
    d["t"] = e.t;
    decomps.push_back(std::move(d));
  }
  return {{"schema_version", kRunSchemaVersion},
          {"method", r.method},
          {"config", config},
          {"dims", r.observations.dims()},
          {"known_max", r.known_max},
          {"truncated", r.truncated},
          {"abort_reason", r.abort_reason},
          {"instrumentation",
           {{"gibbs_runs", r.learning.gibbs_runs},
            {"partial_learning_runs", r.learning.partial_learning_runs},
            {"jitter_escalations", r.jitter_escalations}}},
          {"decompositions", std::move(decomps)},
          {"observations", std::move(obs)},
          {"trace",
           {{"immediate", r.trace.immediate()},
            {"simple", r.trace.simple()},
            {"averaged_cumulative", r.trace.averaged_cumulative()}}}};
}

LoadedRun run_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version"))
    throw SchemaError("run file has no schema_version (expected " + std::to_string(kRunSchemaVersion) + ")");
  const int version = doc.at("schema_version").get<int>();
  if (version != kRunSchemaVersion)
    throw SchemaError("run file schema version " + std::to_string(version) + ", this build reads version " +
                      std::to_string(kRunSchemaVersion));
  try {
    LoadedRun out;
    RunResult& r = out.result;
    out.config = doc.at("config");
    r.method = doc.at("method").get<std::string>();
    r.known_max = doc.at("known_max").get<double>();
    r.truncated = doc.at("truncated").get<bool>();
    r.abort_reason = doc.at("abort_reason").get<std::string>();
    const auto& inst = doc.at("instrumentation");
    r.learning.gibbs_runs = inst.at("gibbs_runs").get<long>();
    r.learning.partial_learning_runs = inst.at("partial_learning_runs").get<long>();
    r.jitter_escalations = inst.at("jitter_escalations").get<int>();
    for (const auto& d : doc.at("decompositions")) r.decompositions.push_back({d.at("t").get<int>(), decomposition_from(d)});
    const int dims = doc.at("dims").get<int>();
    r.observations.points.resize(0, dims);
    for (const auto& o : doc.at("observations")) {
      const auto x = o.at("x").get<std::vector<double>>();
      if (static_cast<int>(x.size()) != dims) throw SchemaError("observation width differs from dims");
      r.observations.append(Eigen::Map<const Eigen::VectorXd>(x.data(), dims), o.at("y").get<double>());
      r.f_values.push_back(o.at("f").get<double>());
      r.rounds.push_back(o.at("round").get<int>());
    }
    r.trace = RegretTrace::from_immediate(doc.at("trace").at("immediate").get<std::vector<double>>());
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed run file: ") + e.what());
  } catch (const InputError& e) {
    throw SchemaError(std::string("malformed run file: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp + " to " + path + ": " + ec.message());
}

void persist_run(const RunResult& result, const json& config, const std::string& path) {
  write_text_file(path, run_to_json(result, config).dump(1) + "\n");
}

LoadedRun load_run(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return run_from_json(doc);
}

void export_trace_csv(const RegretTrace& trace, const std::string& path) {
  std::ostringstream os;
  os.precision(17);
  os << "t,immediate_regret,simple_regret,avg_cumulative_regret\n";
  for (int t = 0; t < trace.size(); ++t)
    os << t + 1 << ',' << trace.immediate()[t] << ',' << trace.simple()[t] << ','
       << trace.averaged_cumulative()[t] << '\n';
  write_text_file(path, os.str());
}

}  // namespace addbo
