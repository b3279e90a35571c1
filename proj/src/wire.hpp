// Binary frame for one triplet and the size rule behind all byte accounting.
//
// Layout: one type byte (1 upload, 2 download), id_len vid characters, then
// the padded index row as little-endian uint32 words followed by one signed
// byte per split component: 1 + id_len + 5*n_star bytes in total.
#pragma once

#include <cstdint>
#include <vector>

#include "protocol.hpp"

namespace prsi {

enum class Phase : std::uint8_t { upload = 1, download = 2 };

inline std::uint64_t message_size(std::uint32_t id_len, std::uint32_t n_star) {
  return 1ull + id_len + 5ull * n_star;
}

std::vector<std::uint8_t> encode_triplet(Phase phase, const Triplet& t);

struct DecodedTriplet {
  Phase phase;
  Triplet triplet;
};

DecodedTriplet decode_triplet(const std::vector<std::uint8_t>& frame,
                              std::uint32_t id_len);

}  // namespace prsi
