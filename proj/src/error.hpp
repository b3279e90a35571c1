// Error taxonomy shared by the whole library. Codes are stable so the C API
// can map them one-to-one onto its status enum.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prsi {

enum class ErrorCode : std::uint8_t {
  invalid_argument,   // caller violated a precondition or config bound
  parse_error,        // malformed input text or binary frame
  validation_error,   // well-formed input violating a domain rule
  share_mixing,       // shares with mismatched index vectors combined
  incomplete_shares,  // share sums outside {0,1}; some share missing or forged
  phase_incomplete,   // round budget exhausted with traffic still pending
  io_error,           // filesystem failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace prsi
