#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "protocol.hpp"
#include "stats.hpp"
#include "test_support.hpp"

using namespace prsi;
using test_support::expect_error;

namespace {

const SplitConfig kCfg{200, 10, 2, 5};  // n* = 20

InteractionVector history() { return InteractionVector{{3, 17, 40, 99}}; }

ClientState fresh_client(ClientAddr ip, Rng& rng, std::uint32_t s_spl = 5,
                         double alpha = 0.9) {
  SplitConfig cfg = kCfg;
  cfg.s_spl = s_spl;
  return client_init(ip, history(), cfg, 4, alpha, rng);
}

// One hand-built share whose lone component sum is outside {0, 1}, so any
// reconstruction attempt must fail.
Triplet poisoned_triplet(const std::string& vid) {
  std::vector<ItemId> row(kCfg.n_star());
  std::iota(row.begin(), row.end(), 1);
  SplitShare share;
  share.indices = std::make_shared<const std::vector<ItemId>>(std::move(row));
  share.split.values.assign(kCfg.n_star(), 0);
  share.split.values[0] = 2;
  return Triplet{VirtualId{vid}, std::move(share)};
}

}  // namespace

TEST_CASE("virtual ids use the 62-symbol alphabet at the asked length") {
  Rng rng(1);
  const VirtualId vid = generate_vid(7, rng);
  REQUIRE(vid.text.size() == 7);
  const std::string alphabet = kVidAlphabet;
  for (char ch : vid.text) CHECK(alphabet.find(ch) != std::string::npos);
  CHECK(vid_well_formed(vid, 7));
  CHECK_FALSE(vid_well_formed(vid, 6));
  CHECK_FALSE(vid_well_formed(VirtualId{"abc!efg"}, 7));
  CHECK_FALSE(vid_well_formed(VirtualId{""}, 7));

  Rng replay(1);
  CHECK(generate_vid(7, replay).text == vid.text);

  expect_error(ErrorCode::invalid_argument, "id_len must be positive",
               [&] { generate_vid(0, rng); });
}

TEST_CASE("a fresh client holds its own split under its own vid") {
  Rng rng(2);
  const ClientState state = fresh_client(7, rng);

  CHECK(state.ip == 7);
  CHECK(state.p_sto == 1.0);
  CHECK(state.alpha == 0.9);
  CHECK(state.sending_rounds == 0);
  CHECK(vid_well_formed(state.vid, 4));
  CHECK(state.own_interactions.items == history().items);
  REQUIRE(state.held.size() == kCfg.s_spl);
  for (const auto& t : state.held) {
    CHECK(t.vid == state.vid);
    CHECK(t.share.indices == state.held.front().share.indices);
  }

  expect_error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)", [&] {
    client_init(0, history(), kCfg, 4, 1.0, rng);
  });
  expect_error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)", [&] {
    client_init(0, history(), kCfg, 4, 0.0, rng);
  });
}

TEST_CASE("an upload round moves the whole batch one way or the other") {
  Rng rng(3);

  SUBCASE("forwarding round scatters to peers") {
    ClientState state = fresh_client(2, rng);
    const auto out = client_upload_round(state, 6, rng);  // p_sto is still 1
    REQUIRE(out.size() == kCfg.s_spl);
    for (const auto& o : out) {
      CHECK(o.to < 6);
      CHECK(o.to != state.ip);
    }
    CHECK(state.held.empty());
    CHECK(state.p_sto == doctest::Approx(0.9));
    CHECK(state.sending_rounds == 1);
  }

  SUBCASE("flush round sends everything to the server") {
    ClientState state = fresh_client(2, rng);
    state.p_sto = 0.0;
    const auto out = client_upload_round(state, 6, rng);
    REQUIRE(out.size() == kCfg.s_spl);
    for (const auto& o : out) CHECK(o.to == kServerAddr);
    CHECK(state.held.empty());
  }

  SUBCASE("an empty batch is a no-op") {
    ClientState state = fresh_client(2, rng);
    state.held.clear();
    CHECK(client_upload_round(state, 6, rng).empty());
    CHECK(state.p_sto == 1.0);
    CHECK(state.sending_rounds == 0);
  }
}

TEST_CASE("sending rounds until the flush follow the decaying probability") {
  // The first round always forwards (p starts at 1), round k forwards with
  // probability alpha^(k-1), so the expected number of sending rounds is
  // sum over t >= 0 of alpha^(t(t-1)/2).
  for (const double alpha : {0.5, 0.9}) {
    double expected = 0.0;
    for (int t = 0; t < 200; ++t)
      expected += std::pow(alpha, t * (t - 1) / 2.0);

    std::vector<double> observed;
    for (int replica = 0; replica < 600; ++replica) {
      Rng rng(1000 + replica);
      ClientState state = fresh_client(0, rng, 1, alpha);
      const Triplet refill = state.held.front();
      double rounds = 0.0;
      for (;;) {
        const auto out = client_upload_round(state, 2, rng);
        REQUIRE(out.size() == 1);
        rounds += 1;
        if (out.front().to == kServerAddr) break;
        state.held.push_back(refill);
      }
      CHECK(state.sending_rounds == static_cast<std::uint32_t>(rounds));
      CHECK(state.p_sto == doctest::Approx(std::pow(alpha, rounds)));
      observed.push_back(rounds);
    }
    const double se =
        sample_std(observed) / std::sqrt(static_cast<double>(observed.size()));
    CHECK(std::abs(mean_of(observed) - expected) < 3.0 * se);
  }
}

TEST_CASE("receiving logs the first sender per vid and queues the triplet") {
  Rng rng(4);
  ClientState state = fresh_client(0, rng);
  const std::size_t base = state.held.size();

  Rng other_rng(5);
  ClientState other = fresh_client(1, other_rng);
  Triplet first = other.held.front();

  client_receive_upload(state, 3, first);
  client_receive_upload(state, 8, first);  // same vid, later sender
  REQUIRE(state.held.size() == base + 2);
  CHECK(state.ld.at(first.vid.text) == 3);

  Triplet different = poisoned_triplet("zzzz");
  client_receive_upload(state, 8, different);
  CHECK(state.ld.at("zzzz") == 8);
  CHECK(state.ld.size() == 2);

  expect_error(ErrorCode::invalid_argument, "cannot send to itself",
               [&] { client_receive_upload(state, state.ip, first); });
}

TEST_CASE("the server groups shares by vid and flags row disagreements") {
  Rng rng(6);
  ServerState server;

  ClientState a = fresh_client(0, rng);
  for (const auto& t : a.held) server_receive(server, t);
  CHECK(server.id_list.at(a.vid.text).shares.size() == kCfg.s_spl);
  CHECK_FALSE(server.id_list.at(a.vid.text).corrupt);
  CHECK(server.collisions_flagged == 0);

  // A second client colliding on the same vid brings a different index row.
  Rng rng_b(7);
  ClientState b = fresh_client(1, rng_b);
  for (auto t : b.held) {
    t.vid = a.vid;
    server_receive(server, t);
  }
  CHECK(server.id_list.at(a.vid.text).corrupt);
  CHECK(server.collisions_flagged == 1);

  const AggregateReport report = server_aggregate(server);
  CHECK(report.corrupt_groups == 1);
  CHECK(report.vectors.empty());
  CHECK(report.failures.empty());
}

TEST_CASE("aggregation reconstructs clean groups and reports broken ones") {
  Rng rng_a(8), rng_b(9);
  ServerState server;
  ClientState a = fresh_client(0, rng_a);
  ClientState b = fresh_client(1, rng_b);
  for (const auto& t : a.held) server_receive(server, t);
  for (const auto& t : b.held) server_receive(server, t);
  server_receive(server, poisoned_triplet("zzzz"));

  const AggregateReport report = server_aggregate(server);
  CHECK(report.corrupt_groups == 0);

  std::vector<ItemId> truth = history().items;
  std::sort(truth.begin(), truth.end());
  REQUIRE(report.vectors.size() == 2);
  CHECK(report.vectors.at(a.vid.text).items == truth);
  CHECK(report.vectors.at(b.vid.text).items == truth);

  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures.front().vid == "zzzz");
  CHECK(report.failures.front().reason.find("component sum") !=
        std::string::npos);
}

TEST_CASE("recommendation dispatch splits, truncates, and skips empty lists") {
  Rng rng(10);
  std::map<std::string, InteractionVector> recs;
  recs["v1"] = InteractionVector{{1, 2, 3}};
  recs["v2"] = InteractionVector{};
  recs["v3"] = InteractionVector{{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}};

  const auto out = server_dispatch_recommendations(recs, kCfg, 6, rng);
  REQUIRE(out.size() == 2 * kCfg.s_spl);  // v2 contributes nothing

  std::map<std::string, std::vector<SplitShare>> by_vid;
  for (const auto& o : out) {
    CHECK(o.to < 6);
    by_vid[o.triplet.vid.text].push_back(o.triplet.share);
  }
  REQUIRE(by_vid.size() == 2);
  CHECK(reconstruct(by_vid.at("v1")).items == std::vector<ItemId>{1, 2, 3});
  // v3 is cut to the first n_max entries before splitting.
  CHECK(reconstruct(by_vid.at("v3")).items ==
        std::vector<ItemId>{5, 6, 7, 8, 9, 10, 11, 12, 13, 14});

  expect_error(ErrorCode::invalid_argument, "no clients", [&] {
    server_dispatch_recommendations(recs, kCfg, 0, rng);
  });
}

TEST_CASE("result routing keeps own shares and follows the first-contact log") {
  Rng rng(11);
  ClientState state = fresh_client(2, rng);
  state.ld["abcd"] = 9;

  SUBCASE("own vid is kept") {
    Triplet mine{state.vid, state.held.front().share};
    CHECK_FALSE(client_route_result(state, mine, 20, rng).has_value());
    REQUIRE(state.ld_rec.size() == 1);
    CHECK(state.ld_rec.front().vid == state.vid);
  }

  SUBCASE("a logged vid goes back to the recorded peer") {
    const auto hop = client_route_result(state, poisoned_triplet("abcd"), 20,
                                         rng);
    REQUIRE(hop.has_value());
    CHECK(hop->to == 9);
    CHECK(state.ld_rec.empty());
  }

  SUBCASE("an unknown vid hops to a random other client") {
    for (int i = 0; i < 32; ++i) {
      const auto hop = client_route_result(state, poisoned_triplet("wxyz"), 20,
                                           rng);
      REQUIRE(hop.has_value());
      CHECK(hop->to < 20);
      CHECK(hop->to != state.ip);
    }
  }
}

TEST_CASE("assembly reconstructs the delivered recommendation") {
  Rng rng(12);
  ClientState state = fresh_client(0, rng);

  expect_error(ErrorCode::incomplete_shares, "no delivered shares",
               [&] { client_assemble_recommendation(state); });

  const InteractionVector rec{{42, 7, 130}};
  auto shares = split_vector(rec, kCfg, rng);
  for (auto& s : shares)
    state.ld_rec.push_back(Triplet{state.vid, std::move(s)});
  CHECK(client_assemble_recommendation(state).items ==
        std::vector<ItemId>{7, 42, 130});
}
