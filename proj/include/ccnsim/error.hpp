// Error codes shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace ccnsim {

enum class errc {
  malformed_name,
  unknown_face,
  empty_queue,
  priority_conflict,
  table_not_agreed,
  invalid_scenario,
  no_such_content,
  empty_log,
  mismatched_domains,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_name: return "malformed-name";
    case errc::unknown_face: return "unknown-face";
    case errc::empty_queue: return "empty-queue";
    case errc::priority_conflict: return "priority-conflict";
    case errc::table_not_agreed: return "table-not-agreed";
    case errc::invalid_scenario: return "invalid-scenario";
    case errc::no_such_content: return "no-such-content";
    case errc::empty_log: return "empty-log";
    case errc::mismatched_domains: return "mismatched-domains";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace ccnsim
