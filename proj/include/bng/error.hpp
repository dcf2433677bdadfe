#pragma once

#include <stdexcept>
#include <string>

namespace bng {

// Failure taxonomy mirrored by the CLI exit codes: precondition -> 1,
// verification -> 2, io -> 3.  `internal` marks invariants of our own
// constructions that no documented input should be able to break; the CLI
// reports those as verification failures.
enum class errc { precondition, verification, io, internal };

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail_precondition(const std::string& msg) {
  throw error(errc::precondition, msg);
}
[[noreturn]] inline void fail_verification(const std::string& msg) {
  throw error(errc::verification, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) { throw error(errc::io, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw error(errc::internal, "internal invariant broken: " + msg);
}

}  // namespace bng
