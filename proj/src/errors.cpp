#include "miniweave/errors.hpp"

namespace miniweave {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::missing_include: return "missing include";
    case ErrorKind::include_cycle: return "include cycle";
    case ErrorKind::unterminated_string: return "unterminated string";
    case ErrorKind::unterminated_comment: return "unterminated comment";
    case ErrorKind::unterminated_directive: return "unterminated directive";
    case ErrorKind::malformed_directive: return "malformed directive";
    case ErrorKind::malformed_markup: return "malformed markup";
    case ErrorKind::entry_before_spread: return "entry before spread";
    case ErrorKind::non_monotone_spread_numbers: return "non-monotone spread numbers";
    case ErrorKind::unparseable_entry: return "unparseable entry";
    case ErrorKind::sref_mismatch: return "sref mismatch";
    case ErrorKind::window_exceeded: return "window exceeded";
    case ErrorKind::too_large: return "too large";
    case ErrorKind::io_failure: return "io failure";
    case ErrorKind::bad_usage: return "bad usage";
  }
  return "error";
}

}  // namespace miniweave
