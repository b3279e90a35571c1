#include "protocol.hpp"

#include <algorithm>
#include <utility>

#include "error.hpp"

namespace prsi {

VirtualId generate_vid(std::uint32_t id_len, Rng& rng) {
  if (id_len == 0)
    fail(ErrorCode::invalid_argument, "vid: id_len must be positive");
  VirtualId vid;
  vid.text.reserve(id_len);
  for (std::uint32_t i = 0; i < id_len; ++i)
    vid.text.push_back(kVidAlphabet[rng.uniform_u32(62)]);
  return vid;
}

bool vid_well_formed(const VirtualId& vid, std::uint32_t id_len) {
  if (vid.text.size() != id_len) return false;
  for (char ch : vid.text) {
    const bool ok = (ch >= '0' && ch <= '9') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= 'a' && ch <= 'z');
    if (!ok) return false;
  }
  return true;
}

ClientState client_init(ClientAddr ip, InteractionVector interactions,
                        const SplitConfig& cfg, std::uint32_t id_len,
                        double alpha, Rng& rng) {
  if (alpha <= 0.0 || alpha >= 1.0)
    fail(ErrorCode::invalid_argument, "client: alpha must lie in (0, 1)");
  ClientState state;
  state.ip = ip;
  state.alpha = alpha;
  state.vid = generate_vid(id_len, rng);
  auto shares = split_vector(interactions, cfg, rng);
  state.held.reserve(shares.size());
  for (auto& share : shares)
    state.held.push_back(Triplet{state.vid, std::move(share)});
  state.own_interactions = std::move(interactions);
  return state;
}

std::vector<Outgoing> client_upload_round(ClientState& state,
                                          std::uint32_t n_user, Rng& rng) {
  std::vector<Outgoing> out;
  if (state.held.empty()) return out;
  out.reserve(state.held.size());
  const bool to_peers = rng.uniform_unit() < state.p_sto;
  for (auto& t : state.held) {
    const ClientAddr dest =
        to_peers ? rng.uniform_other(n_user, state.ip) : kServerAddr;
    out.push_back(Outgoing{dest, std::move(t)});
  }
  state.held.clear();
  state.p_sto *= state.alpha;
  state.sending_rounds += 1;
  return out;
}

void client_receive_upload(ClientState& state, ClientAddr sender,
                           Triplet triplet) {
  if (sender == state.ip)
    fail(ErrorCode::invalid_argument, "receive: client cannot send to itself");
  state.ld.try_emplace(triplet.vid.text, sender);
  state.held.push_back(std::move(triplet));
}

void server_receive(ServerState& server, Triplet triplet) {
  auto [it, inserted] = server.id_list.try_emplace(triplet.vid.text);
  VidGroup& group = it->second;
  if (!inserted && !group.corrupt && !group.shares.empty()) {
    const auto& have = group.shares.front().indices;
    const auto& got = triplet.share.indices;
    if (have != got && (!have || !got || *have != *got)) {
      group.corrupt = true;
      server.collisions_flagged += 1;
    }
  }
  group.shares.push_back(std::move(triplet.share));
}

AggregateReport server_aggregate(const ServerState& server) {
  AggregateReport report;
  for (const auto& [vid, group] : server.id_list) {
    if (group.corrupt) {
      report.corrupt_groups += 1;
      continue;
    }
    try {
      report.vectors.emplace(vid, reconstruct(group.shares));
    } catch (const Error& e) {
      report.failures.push_back({vid, e.what()});
    }
  }
  return report;
}

std::vector<Outgoing> server_dispatch_recommendations(
    const std::map<std::string, InteractionVector>& recs,
    const SplitConfig& cfg, std::uint32_t n_user, Rng& rng) {
  if (n_user == 0)
    fail(ErrorCode::invalid_argument, "dispatch: no clients");
  std::vector<Outgoing> out;
  for (const auto& [vid, rec] : recs) {
    if (rec.items.empty()) continue;
    InteractionVector bounded = rec;
    if (bounded.items.size() > cfg.n_max) bounded.items.resize(cfg.n_max);
    auto shares = split_vector(bounded, cfg, rng);
    for (auto& share : shares)
      out.push_back(Outgoing{rng.uniform_u32(n_user),
                             Triplet{VirtualId{vid}, std::move(share)}});
  }
  return out;
}

std::optional<Outgoing> client_route_result(ClientState& state,
                                            Triplet triplet,
                                            std::uint32_t n_user, Rng& rng) {
  if (triplet.vid == state.vid) {
    state.ld_rec.push_back(std::move(triplet));
    return std::nullopt;
  }
  if (auto it = state.ld.find(triplet.vid.text); it != state.ld.end())
    return Outgoing{it->second, std::move(triplet)};
  return Outgoing{rng.uniform_other(n_user, state.ip), std::move(triplet)};
}

InteractionVector client_assemble_recommendation(const ClientState& state) {
  if (state.ld_rec.empty())
    fail(ErrorCode::incomplete_shares, "assemble: no delivered shares");
  std::vector<SplitShare> shares;
  shares.reserve(state.ld_rec.size());
  for (const auto& t : state.ld_rec) shares.push_back(t.share);
  return reconstruct(shares);
}

}  // namespace prsi
