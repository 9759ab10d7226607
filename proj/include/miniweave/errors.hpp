#ifndef MINIWEAVE_ERRORS_HPP
#define MINIWEAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace miniweave {

enum class ErrorKind {
  missing_include,
  include_cycle,
  unterminated_string,
  unterminated_comment,
  unterminated_directive,
  malformed_directive,
  malformed_markup,
  entry_before_spread,
  non_monotone_spread_numbers,
  unparseable_entry,
  sref_mismatch,
  window_exceeded,
  too_large,
  io_failure,
  bad_usage,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace miniweave

#endif
