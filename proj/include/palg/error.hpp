#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace palg {

enum class ErrorCode {
  cap_exceeded,
  budget_exceeded,
  syntax_error,
  unknown_identifier,
  unbound_variable,
  malformed_tables,
  not_a_congruence,
  not_prime,
  bad_index,
  index_out_of_range,
  invalid_argument,
  io_error,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::syntax_error,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Resource limits shared by every construction. All caps are inclusive.
struct Limits {
  std::size_t poset_size = 4096;
  std::size_t table_size = 4096;
  // Con(A) enumeration is only attempted up to this carrier size.
  std::size_t oracle_size = 12;
  // Upper bound on upsets counted (not stored) when sizing an upset algebra.
  std::size_t upset_count = 1'000'000;
  std::uint64_t valuation_budget = 10'000'000;
};

inline void check_cap(std::size_t value, std::size_t cap, const char* what) {
  if (value > cap) {
    fail(ErrorCode::cap_exceeded, std::string(what) + " " +
                                      std::to_string(value) + " exceeds cap " +
                                      std::to_string(cap));
  }
}

}  // namespace palg
