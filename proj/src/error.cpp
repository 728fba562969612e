#include "palg/error.hpp"

namespace palg {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unknown_identifier: return "UnknownIdentifier";
    case ErrorCode::unbound_variable: return "UnboundVariable";
    case ErrorCode::malformed_tables: return "MalformedTables";
    case ErrorCode::not_a_congruence: return "NotACongruence";
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::bad_index: return "BadIndex";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io_error: return "IOError";
  }
  return "Unknown";
}

}  // namespace palg
