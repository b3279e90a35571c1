#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <unordered_map>

#include "json.hpp"

#include "error.hpp"

namespace prsi {

void PipelineConfig::validate() const {
  sim.validate();
  if (rec.k == 0 || rec.k > sim.split.n_max)
    fail(ErrorCode::invalid_argument,
         "pipeline: need 1 <= k <= n_max, got k=" + std::to_string(rec.k));
  make_recommender(rec.kind);
}

PipelineResult run_pipeline(const Dataset& data, const PipelineConfig& cfg,
                            MessageLog* log) {
  cfg.validate();
  if (data.users.size() != cfg.sim.n_user)
    fail(ErrorCode::invalid_argument,
         "pipeline: dataset holds " + std::to_string(data.users.size()) +
             " users, config expects " + std::to_string(cfg.sim.n_user));
  if (data.n_item != cfg.sim.split.n_item)
    fail(ErrorCode::invalid_argument,
         "pipeline: dataset catalogue size " + std::to_string(data.n_item) +
             " does not match config n_item " +
             std::to_string(cfg.sim.split.n_item));

  Simulation sim(cfg.sim, data.users, log);

  PipelineResult result;
  result.duplicate_vid_groups = sim.duplicate_vid_groups();
  result.upload = sim.run_upload_phase();
  result.detected_collisions = result.upload.vid_collisions;

  AggregateReport report = sim.aggregate();
  result.aggregated_groups = report.vectors.size();
  result.aggregate_failures = report.failures.size();

  std::unordered_map<std::string, std::uint32_t> vid_count;
  vid_count.reserve(sim.clients().size() * 2);
  for (const auto& c : sim.clients()) vid_count[c.vid.text] += 1;

  for (const auto& c : sim.clients()) {
    if (vid_count[c.vid.text] != 1) continue;
    result.upload_expected += 1;
    auto it = report.vectors.find(c.vid.text);
    if (it == report.vectors.end()) continue;
    std::vector<ItemId> truth = c.own_interactions.items;
    std::sort(truth.begin(), truth.end());
    if (it->second.items == truth) result.upload_exact += 1;
  }

  InteractionMatrix matrix = build_matrix(report.vectors, data.n_item);
  auto recs = recommend(matrix, cfg.rec);
  result.download = sim.run_download_phase(recs);

  for (const auto& c : sim.clients()) {
    if (vid_count[c.vid.text] != 1) continue;
    auto it = recs.find(c.vid.text);
    if (it == recs.end() || it->second.items.empty()) continue;
    result.assembly_expected += 1;
    std::vector<ItemId> expected = it->second.items;
    std::sort(expected.begin(), expected.end());
    try {
      if (client_assemble_recommendation(c).items == expected)
        result.assembled_exact += 1;
    } catch (const Error&) {
      // counted as a miss
    }
  }

  result.fidelity_ok = result.upload_exact == result.upload_expected &&
                       result.assembled_exact == result.assembly_expected;
  return result;
}

namespace {

void metrics_row(std::string& out, const char* phase, const PhaseMetrics& m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", m.mean_per_client_sends());
  out += phase;
  for (std::uint64_t v : {m.total_bytes, m.messages_client_to_client,
                          m.messages_to_server, m.messages_server_to_client,
                          static_cast<std::uint64_t>(m.rounds_used),
                          m.undelivered})
    out += "," + std::to_string(v);
  out += ",";
  out += buf;
  out += "\n";
}

nlohmann::ordered_json metrics_json(const PhaseMetrics& m) {
  nlohmann::ordered_json j;
  j["total_bytes"] = m.total_bytes;
  j["messages_client_to_client"] = m.messages_client_to_client;
  j["messages_to_server"] = m.messages_to_server;
  j["messages_server_to_client"] = m.messages_server_to_client;
  j["rounds_used"] = m.rounds_used;
  j["undelivered"] = m.undelivered;
  j["mean_sends_per_client"] = m.mean_per_client_sends();
  return j;
}

}  // namespace

std::string metrics_csv(const PipelineResult& result) {
  std::string out =
      "phase,total_bytes,messages_client_to_client,messages_to_server,"
      "messages_server_to_client,rounds_used,undelivered,"
      "mean_sends_per_client\n";
  metrics_row(out, "upload", result.upload);
  metrics_row(out, "download", result.download);
  return out;
}

std::string summary_json(const PipelineResult& result) {
  nlohmann::ordered_json j;
  j["upload"] = metrics_json(result.upload);
  j["download"] = metrics_json(result.download);
  j["duplicate_vid_groups"] = result.duplicate_vid_groups;
  j["detected_collisions"] = result.detected_collisions;
  j["aggregated_groups"] = result.aggregated_groups;
  j["aggregate_failures"] = result.aggregate_failures;
  j["upload_expected"] = result.upload_expected;
  j["upload_exact"] = result.upload_exact;
  j["assembly_expected"] = result.assembly_expected;
  j["assembled_exact"] = result.assembled_exact;
  j["fidelity_ok"] = result.fidelity_ok;
  return j.dump(2) + "\n";
}

}  // namespace prsi
