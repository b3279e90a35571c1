// Round-synchronous in-memory network driving the upload and download phases.
//
// Each round first delivers every message sent in the previous round, ordered
// by (sender index, triplet index within sender), then lets every client with
// pending traffic act. All client and server randomness comes from per-entity
// streams derived from the one master seed, so a configuration replays to an
// identical transcript.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "protocol.hpp"
#include "wire.hpp"

namespace prsi {

struct SimConfig {
  std::uint32_t n_user = 0;  // at least 2
  SplitConfig split;
  double alpha = 0.9;        // forwarding decay, in (0, 1)
  std::uint32_t id_len = 7;
  std::uint32_t max_rounds = 0;  // 0 derives the default of 10 * n_user
  std::uint64_t seed = 0;

  void validate() const;
  std::uint32_t effective_max_rounds() const {
    return max_rounds != 0 ? max_rounds : 10 * n_user;
  }
};

struct PhaseMetrics {
  Phase phase = Phase::upload;
  std::uint64_t total_bytes = 0;
  std::uint64_t messages_client_to_client = 0;
  std::uint64_t messages_to_server = 0;
  std::uint64_t messages_server_to_client = 0;
  std::uint32_t rounds_used = 0;
  std::uint64_t undelivered = 0;
  std::uint64_t vid_collisions = 0;  // groups the server flagged (upload)
  std::vector<std::uint32_t> per_client_sends;

  double mean_per_client_sends() const;
};

struct MessageRecord {
  std::uint32_t round = 0;
  Phase phase = Phase::upload;
  ClientAddr from = 0;  // kServerAddr when the server sent it
  ClientAddr to = 0;
  std::string vid;
  std::uint64_t bytes = 0;
};

using MessageLog = std::vector<MessageRecord>;

// Upload ran out of rounds with triplets still travelling; the partial
// metrics ride along.
class PhaseIncompleteError : public Error {
public:
  PhaseIncompleteError(const std::string& what, PhaseMetrics partial)
      : Error(ErrorCode::phase_incomplete, what),
        metrics(std::move(partial)) {}

  PhaseMetrics metrics;
};

class Simulation {
public:
  // Takes one interaction vector per client; pass a log to record every
  // message. The log must outlive the simulation.
  Simulation(SimConfig cfg, std::vector<InteractionVector> data,
             MessageLog* log = nullptr);

  // Runs until every triplet rests at the server. Throws
  // PhaseIncompleteError when the round budget is exhausted first.
  PhaseMetrics run_upload_phase();

  AggregateReport aggregate() const { return server_aggregate(server_); }

  // Dispatches the recommendation lists and routes them home. Undelivered
  // triplets at the round budget are reported in the metrics, not fatal.
  PhaseMetrics run_download_phase(
      const std::map<std::string, InteractionVector>& recs);

  const SimConfig& config() const { return cfg_; }
  const std::vector<ClientState>& clients() const { return clients_; }
  const ServerState& server() const { return server_; }

  // Vids assigned to more than one client (known to the harness, invisible
  // to the server unless index rows disagree).
  std::uint64_t duplicate_vid_groups() const { return duplicate_vid_groups_; }

private:
  struct InFlight {
    ClientAddr from = 0;
    ClientAddr to = 0;
    Triplet triplet;
  };

  void account(PhaseMetrics& m, std::uint32_t round, ClientAddr from,
               ClientAddr to, const Triplet& t);

  SimConfig cfg_;
  std::vector<ClientState> clients_;
  std::vector<Rng> client_rngs_;
  ServerState server_;
  Rng server_rng_;
  MessageLog* log_ = nullptr;
  std::uint64_t duplicate_vid_groups_ = 0;
  bool upload_done_ = false;
  bool download_done_ = false;
};

}  // namespace prsi
