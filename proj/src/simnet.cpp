#include "simnet.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

namespace prsi {

namespace {

// Stream tags keeping client, server, and vid draws disjoint under one seed.
constexpr std::uint64_t kClientStream = 0x10;
constexpr std::uint64_t kServerStream = 0x20;

}  // namespace

void SimConfig::validate() const {
  split.validate();
  if (n_user < 2)
    fail(ErrorCode::invalid_argument, "sim: need at least two clients");
  if (alpha <= 0.0 || alpha >= 1.0)
    fail(ErrorCode::invalid_argument, "sim: alpha must lie in (0, 1)");
  if (id_len == 0)
    fail(ErrorCode::invalid_argument, "sim: id_len must be positive");
}

double PhaseMetrics::mean_per_client_sends() const {
  if (per_client_sends.empty()) return 0.0;
  std::uint64_t total = 0;
  for (std::uint32_t s : per_client_sends) total += s;
  return static_cast<double>(total) /
         static_cast<double>(per_client_sends.size());
}

Simulation::Simulation(SimConfig cfg, std::vector<InteractionVector> data,
                       MessageLog* log)
    : cfg_(std::move(cfg)), server_rng_(0), log_(log) {
  cfg_.validate();
  if (data.size() != cfg_.n_user)
    fail(ErrorCode::invalid_argument,
         "sim: interaction count does not match n_user");

  server_rng_ = Rng(derive_seed(cfg_.seed, kServerStream));
  clients_.reserve(cfg_.n_user);
  client_rngs_.reserve(cfg_.n_user);
  for (std::uint32_t i = 0; i < cfg_.n_user; ++i) {
    client_rngs_.emplace_back(derive_seed(cfg_.seed, kClientStream, i));
    clients_.push_back(client_init(i, std::move(data[i]), cfg_.split,
                                   cfg_.id_len, cfg_.alpha, client_rngs_[i]));
  }

  std::unordered_map<std::string, std::uint32_t> counts;
  counts.reserve(clients_.size() * 2);
  for (const auto& c : clients_) counts[c.vid.text] += 1;
  for (const auto& [vid, n] : counts)
    if (n > 1) duplicate_vid_groups_ += 1;
}

void Simulation::account(PhaseMetrics& m, std::uint32_t round, ClientAddr from,
                         ClientAddr to, const Triplet& t) {
  const std::uint64_t bytes = message_size(
      cfg_.id_len, static_cast<std::uint32_t>(t.share.indices->size()));
  m.total_bytes += bytes;
  if (from == kServerAddr) {
    m.messages_server_to_client += 1;
  } else {
    m.per_client_sends[from] += 1;
    if (to == kServerAddr)
      m.messages_to_server += 1;
    else
      m.messages_client_to_client += 1;
  }
  if (log_)
    log_->push_back({round, m.phase, from, to, t.vid.text, bytes});
}

PhaseMetrics Simulation::run_upload_phase() {
  if (upload_done_)
    fail(ErrorCode::invalid_argument, "sim: upload phase already ran");
  upload_done_ = true;

  PhaseMetrics m;
  m.phase = Phase::upload;
  m.per_client_sends.assign(cfg_.n_user, 0);

  std::vector<InFlight> inflight;
  std::vector<InFlight> next;
  const std::uint32_t budget = cfg_.effective_max_rounds();
  for (std::uint32_t round = 1; round <= budget; ++round) {
    for (auto& msg : inflight) {
      if (msg.to == kServerAddr)
        server_receive(server_, std::move(msg.triplet));
      else
        client_receive_upload(clients_[msg.to], msg.from,
                              std::move(msg.triplet));
    }
    inflight.clear();

    next.clear();
    for (std::uint32_t i = 0; i < cfg_.n_user; ++i) {
      if (clients_[i].held.empty()) continue;
      auto outs = client_upload_round(clients_[i], cfg_.n_user,
                                      client_rngs_[i]);
      for (auto& o : outs) {
        account(m, round, i, o.to, o.triplet);
        next.push_back(InFlight{i, o.to, std::move(o.triplet)});
      }
    }
    inflight.swap(next);
    m.rounds_used = round;
    if (inflight.empty()) {
      m.vid_collisions = server_.collisions_flagged;
      return m;
    }
  }
  m.undelivered = inflight.size();
  m.vid_collisions = server_.collisions_flagged;
  throw PhaseIncompleteError(
      "upload: " + std::to_string(inflight.size()) +
          " triplets still travelling after " + std::to_string(budget) +
          " rounds",
      std::move(m));
}

PhaseMetrics Simulation::run_download_phase(
    const std::map<std::string, InteractionVector>& recs) {
  if (!upload_done_)
    fail(ErrorCode::invalid_argument, "sim: run the upload phase first");
  if (download_done_)
    fail(ErrorCode::invalid_argument, "sim: download phase already ran");
  download_done_ = true;

  PhaseMetrics m;
  m.phase = Phase::download;
  m.per_client_sends.assign(cfg_.n_user, 0);

  std::vector<InFlight> inflight;
  auto dispatched = server_dispatch_recommendations(recs, cfg_.split,
                                                    cfg_.n_user, server_rng_);
  inflight.reserve(dispatched.size());
  for (auto& o : dispatched) {
    account(m, 0, kServerAddr, o.to, o.triplet);
    inflight.push_back(InFlight{kServerAddr, o.to, std::move(o.triplet)});
  }

  std::vector<InFlight> next;
  const std::uint32_t budget = cfg_.effective_max_rounds();
  for (std::uint32_t round = 1; round <= budget && !inflight.empty();
       ++round) {
    std::stable_sort(inflight.begin(), inflight.end(),
                     [](const InFlight& a, const InFlight& b) {
                       return a.from < b.from;
                     });
    next.clear();
    for (auto& msg : inflight) {
      auto hop = client_route_result(clients_[msg.to], std::move(msg.triplet),
                                     cfg_.n_user, client_rngs_[msg.to]);
      if (!hop) continue;
      account(m, round, msg.to, hop->to, hop->triplet);
      next.push_back(InFlight{msg.to, hop->to, std::move(hop->triplet)});
    }
    inflight.swap(next);
    m.rounds_used = round;
  }
  m.undelivered = inflight.size();
  return m;
}

}  // namespace prsi
