#include "wire.hpp"

#include <memory>
#include <string>

#include "error.hpp"

namespace prsi {

std::vector<std::uint8_t> encode_triplet(Phase phase, const Triplet& t) {
  const auto& indices = t.share.indices;
  if (!indices || indices->size() != t.share.split.values.size())
    fail(ErrorCode::invalid_argument, "encode: malformed share");
  const std::uint32_t n_star = static_cast<std::uint32_t>(indices->size());
  const std::uint32_t id_len = static_cast<std::uint32_t>(t.vid.text.size());

  std::vector<std::uint8_t> frame;
  frame.reserve(message_size(id_len, n_star));
  frame.push_back(static_cast<std::uint8_t>(phase));
  frame.insert(frame.end(), t.vid.text.begin(), t.vid.text.end());
  for (std::uint32_t idx : *indices) {
    frame.push_back(static_cast<std::uint8_t>(idx & 0xff));
    frame.push_back(static_cast<std::uint8_t>((idx >> 8) & 0xff));
    frame.push_back(static_cast<std::uint8_t>((idx >> 16) & 0xff));
    frame.push_back(static_cast<std::uint8_t>((idx >> 24) & 0xff));
  }
  for (SplitValue v : t.share.split.values) {
    if (v < -128 || v > 127)
      fail(ErrorCode::validation_error,
           "encode: split component " + std::to_string(v) +
               " does not fit one signed byte");
    frame.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v)));
  }
  return frame;
}

DecodedTriplet decode_triplet(const std::vector<std::uint8_t>& frame,
                              std::uint32_t id_len) {
  if (frame.size() < 1ull + id_len)
    fail(ErrorCode::parse_error, "decode: frame shorter than header");
  const std::uint64_t body = frame.size() - 1 - id_len;
  if (body % 5 != 0)
    fail(ErrorCode::parse_error, "decode: body length not a multiple of 5");
  const std::uint8_t type = frame[0];
  if (type != 1 && type != 2)
    fail(ErrorCode::parse_error,
         "decode: unknown message type " + std::to_string(type));

  DecodedTriplet out;
  out.phase = static_cast<Phase>(type);
  out.triplet.vid.text.assign(frame.begin() + 1, frame.begin() + 1 + id_len);
  if (!vid_well_formed(out.triplet.vid, id_len))
    fail(ErrorCode::parse_error, "decode: vid outside the 62-symbol alphabet");

  const std::uint64_t n_star = body / 5;
  auto indices = std::make_shared<std::vector<ItemId>>();
  indices->reserve(n_star);
  std::size_t at = 1 + id_len;
  for (std::uint64_t d = 0; d < n_star; ++d, at += 4) {
    const std::uint32_t idx =
        static_cast<std::uint32_t>(frame[at]) |
        (static_cast<std::uint32_t>(frame[at + 1]) << 8) |
        (static_cast<std::uint32_t>(frame[at + 2]) << 16) |
        (static_cast<std::uint32_t>(frame[at + 3]) << 24);
    if (idx == 0) fail(ErrorCode::parse_error, "decode: zero item id");
    indices->push_back(idx);
  }
  out.triplet.share.split.values.reserve(n_star);
  for (std::uint64_t d = 0; d < n_star; ++d, ++at)
    out.triplet.share.split.values.push_back(
        static_cast<std::int8_t>(frame[at]));
  out.triplet.share.indices = std::move(indices);
  return out;
}

}  // namespace prsi
