// Client and server behaviour for anonymous interaction upload and
// recommendation delivery.
//
// Upload: each client wraps its shares into (vid, share) triplets and plays a
// store-and-forward walk: one uniform draw per round decides whether the whole
// held batch hops to random peers or flushes to the server; the forwarding
// probability decays geometrically. Receivers log, per virtual id, the peer
// that delivered it first, which later lets recommendation triplets retrace
// upload paths backwards to their anonymous owners.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitcore.hpp"

namespace prsi {

// 62-symbol alphabet: digits, upper case, lower case, in ASCII order.
inline constexpr char kVidAlphabet[] =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

struct VirtualId {
  std::string text;
  auto operator<=>(const VirtualId&) const = default;
};

// Characters i.i.d. uniform over the 62-symbol alphabet.
VirtualId generate_vid(std::uint32_t id_len, Rng& rng);
bool vid_well_formed(const VirtualId& vid, std::uint32_t id_len);

// Clients are addressed by dense indices; the server by a reserved sentinel.
using ClientAddr = std::uint32_t;
inline constexpr ClientAddr kServerAddr = 0xffffffffu;

struct Triplet {
  VirtualId vid;
  SplitShare share;
};

struct Outgoing {
  ClientAddr to = 0;
  Triplet triplet;
};

struct ClientState {
  ClientAddr ip = 0;
  VirtualId vid;
  double p_sto = 1.0;              // current forwarding probability
  double alpha = 0.0;              // per-sending-round decay factor
  std::uint32_t sending_rounds = 0;
  std::vector<Triplet> held;       // own shares first, then relayed arrivals
  // First-contact log: for each vid ever relayed through this client, the
  // peer that delivered it first. Keying by vid rather than by sender keeps
  // every pointer aimed at a strictly earlier hop on that vid's upload path,
  // so backward routing can never cycle.
  std::unordered_map<std::string, ClientAddr> ld;
  std::vector<Triplet> ld_rec;     // delivered recommendation shares
  InteractionVector own_interactions;
};

// Per-vid share group accumulated by the server. Distinct clients colliding on
// one vid show up as disagreeing index rows and poison the group.
struct VidGroup {
  std::vector<SplitShare> shares;
  bool corrupt = false;
};

struct ServerState {
  std::map<std::string, VidGroup> id_list;  // keyed by vid text; no addresses
  std::uint64_t collisions_flagged = 0;     // groups marked corrupt
};

// Fresh client: generates the vid, splits its interactions into held
// triplets, and arms the forwarding probability at 1.
ClientState client_init(ClientAddr ip, InteractionVector interactions,
                        const SplitConfig& cfg, std::uint32_t id_len,
                        double alpha, Rng& rng);

// One upload round for a client with a non-empty batch: a single uniform draw
// against p_sto routes every held triplet either to independently chosen
// random peers or, once the draw fails, to the server as one flush. The batch
// always empties and p_sto decays by alpha afterwards. Callers skip clients
// whose batch is empty; their p_sto holds still.
std::vector<Outgoing> client_upload_round(ClientState& state,
                                          std::uint32_t n_user, Rng& rng);

// Records the sender in the first-contact log unless the vid already has an
// entry, then queues the triplet for relaying.
void client_receive_upload(ClientState& state, ClientAddr sender,
                           Triplet triplet);

// Files the share under its vid; a disagreeing index row flags the group as a
// vid collision. The server never learns who sent the share.
void server_receive(ServerState& server, Triplet triplet);

struct AggregateReport {
  std::map<std::string, InteractionVector> vectors;  // reconstructed per vid
  struct Failure {
    std::string vid;
    std::string reason;
  };
  std::vector<Failure> failures;   // groups whose reconstruction threw
  std::uint64_t corrupt_groups = 0;  // collision-flagged, skipped outright
};

// Reconstructs every clean group; corrupt groups are skipped and per-group
// reconstruction errors are reported without aborting the rest.
AggregateReport server_aggregate(const ServerState& server);

// Splits each recommendation list under its vid and addresses every share to
// an independently chosen uniform-random client. Lists longer than n_max are
// truncated; empty lists have nothing to send and are skipped.
std::vector<Outgoing> server_dispatch_recommendations(
    const std::map<std::string, InteractionVector>& recs,
    const SplitConfig& cfg, std::uint32_t n_user, Rng& rng);

// Routes one recommendation triplet: matching vid is kept, a first-contact
// log hit forwards to the recorded address, anything else hops to a uniform
// random other client. Returns the next hop, or nullopt when kept.
std::optional<Outgoing> client_route_result(ClientState& state,
                                            Triplet triplet,
                                            std::uint32_t n_user, Rng& rng);

// Reconstructs the client's recommendation list from its delivered shares.
InteractionVector client_assemble_recommendation(const ClientState& state);

}  // namespace prsi
