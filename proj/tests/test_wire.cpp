#include <doctest.h>

#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "splitcore.hpp"
#include "wire.hpp"
#include "test_support.hpp"

using namespace prsi;
using test_support::expect_error;

namespace {

Triplet sample_triplet(std::uint64_t seed) {
  const SplitConfig cfg{200, 8, 5, 3};  // n* = 40
  Rng rng(seed);
  auto shares = split_vector(InteractionVector{{5, 9, 14}}, cfg, rng);
  return Triplet{generate_vid(7, rng), std::move(shares.front())};
}

Triplet tiny_triplet(std::vector<ItemId> row, std::vector<SplitValue> values,
                     const std::string& vid) {
  SplitShare share;
  share.indices = std::make_shared<const std::vector<ItemId>>(std::move(row));
  share.split.values = std::move(values);
  return Triplet{VirtualId{vid}, std::move(share)};
}

}  // namespace

TEST_CASE("frame size is one type byte plus the id plus five bytes per slot") {
  CHECK(message_size(7, 100) == 508);
  CHECK(message_size(7, 40) == 208);
  CHECK(message_size(1, 0) == 2);
}

TEST_CASE("encode and decode round-trip both phases") {
  const Triplet t = sample_triplet(3);
  for (const Phase phase : {Phase::upload, Phase::download}) {
    const auto frame = encode_triplet(phase, t);
    REQUIRE(frame.size() == message_size(7, 40));
    CHECK(frame[0] == static_cast<std::uint8_t>(phase));

    const DecodedTriplet back = decode_triplet(frame, 7);
    CHECK(back.phase == phase);
    CHECK(back.triplet.vid == t.vid);
    CHECK(*back.triplet.share.indices == *t.share.indices);
    CHECK(back.triplet.share.split.values == t.share.split.values);
  }
}

TEST_CASE("the wire layout is little-endian with signed component bytes") {
  const Triplet t = tiny_triplet({0x01020304u, 1}, {5, -1}, "AB");
  const auto frame = encode_triplet(Phase::upload, t);
  const std::vector<std::uint8_t> expected{
      1,                       // upload type byte
      'A', 'B',                // vid
      0x04, 0x03, 0x02, 0x01,  // first index, little-endian
      0x01, 0x00, 0x00, 0x00,  // second index
      0x05, 0xff,              // components 5 and -1
  };
  CHECK(frame == expected);

  const DecodedTriplet back = decode_triplet(frame, 2);
  CHECK(*back.triplet.share.indices == std::vector<ItemId>{0x01020304u, 1});
  CHECK(back.triplet.share.split.values ==
        std::vector<SplitValue>{5, -1});
}

TEST_CASE("encoding rejects malformed or overflowing shares") {
  expect_error(ErrorCode::invalid_argument, "malformed share", [] {
    Triplet t = tiny_triplet({1}, {1}, "AB");
    t.share.indices = nullptr;
    encode_triplet(Phase::upload, t);
  });
  expect_error(ErrorCode::invalid_argument, "malformed share", [] {
    encode_triplet(Phase::upload, tiny_triplet({1, 2}, {1}, "AB"));
  });
  expect_error(ErrorCode::validation_error, "", [] {
    encode_triplet(Phase::upload, tiny_triplet({1}, {130}, "AB"));
  });
  expect_error(ErrorCode::validation_error, "", [] {
    encode_triplet(Phase::upload, tiny_triplet({1}, {-129}, "AB"));
  });
}

TEST_CASE("decoding rejects malformed frames") {
  const auto good = encode_triplet(Phase::download, tiny_triplet({1}, {1}, "AB"));

  SUBCASE("shorter than the header") {
    expect_error(ErrorCode::parse_error, "shorter than header",
                 [] { decode_triplet({1, 'A'}, 2); });
  }
  SUBCASE("body not a multiple of the slot size") {
    auto frame = good;
    frame.pop_back();
    expect_error(ErrorCode::parse_error, "",
                 [&] { decode_triplet(frame, 2); });
  }
  SUBCASE("unknown type byte") {
    auto frame = good;
    frame[0] = 3;
    expect_error(ErrorCode::parse_error, "",
                 [&] { decode_triplet(frame, 2); });
  }
  SUBCASE("vid outside the alphabet") {
    auto frame = good;
    frame[1] = '!';
    expect_error(ErrorCode::parse_error, "",
                 [&] { decode_triplet(frame, 2); });
  }
  SUBCASE("zero item id") {
    auto frame = good;
    frame[3] = 0;  // first index byte; the id was 1
    expect_error(ErrorCode::parse_error, "zero item id",
                 [&] { decode_triplet(frame, 2); });
  }
}
