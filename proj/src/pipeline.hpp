// End-to-end run: upload, aggregate, recommend, download, and fidelity
// checks against the ground truth only the harness can see.
#pragma once

#include "dataset.hpp"
#include "recommender.hpp"
#include "simnet.hpp"

namespace prsi {

struct PipelineConfig {
  SimConfig sim;
  RecommenderSpec rec;

  void validate() const;
};

struct PipelineResult {
  PhaseMetrics upload;
  PhaseMetrics download;
  std::uint64_t duplicate_vid_groups = 0;  // ground truth
  std::uint64_t detected_collisions = 0;   // flagged by the server
  std::uint64_t aggregated_groups = 0;
  std::uint64_t aggregate_failures = 0;
  std::uint64_t upload_expected = 0;  // clients with a unique vid
  std::uint64_t upload_exact = 0;     // of those, reconstructed exactly
  std::uint64_t assembly_expected = 0;  // unique vid and a non-empty list
  std::uint64_t assembled_exact = 0;    // of those, assembled exactly
  bool fidelity_ok = false;
};

// Propagates PhaseIncompleteError from the upload phase.
PipelineResult run_pipeline(const Dataset& data, const PipelineConfig& cfg,
                            MessageLog* log = nullptr);

// Two-row table (upload, download) of the per-phase transport counters.
std::string metrics_csv(const PipelineResult& result);

// Whole-run outcome, including the fidelity tallies, as indented JSON.
std::string summary_json(const PipelineResult& result);

}  // namespace prsi
