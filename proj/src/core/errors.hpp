#ifndef OMEGALAB_CORE_ERRORS_HPP
#define OMEGALAB_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace omegalab {

enum class ErrorCode {
  internal = 1,
  domain = 2,
  infeasible = 3,
  io = 4,
};

// Thrown by the core; translated to omegalab_status at the C boundary and
// to exit codes by the CLI.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_domain(const std::string &what) {
  throw Error(ErrorCode::domain, what);
}
[[noreturn]] inline void throw_infeasible(const std::string &what) {
  throw Error(ErrorCode::infeasible, what);
}
[[noreturn]] inline void throw_io(const std::string &what) {
  throw Error(ErrorCode::io, what);
}

} // namespace omegalab

#endif
