#pragma once

#include <stdexcept>
#include <string>

namespace qedacvc {

// Error categories. exit_class() folds them onto the process exit codes
// used by the CLI: 1 configuration, 2 data, 3 numerical, 4 verification.
enum class errc {
  config,
  shape,
  wiring,
  architecture,
  differentiation,
  decoding,
  attention,
  vocab,
  data,
  io,
  version,
  checksum,
  evaluation,
  numeric,
  verification,
};

class Error : public std::runtime_error {
public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw Error(code, msg); }

inline int exit_class(errc c) {
  switch (c) {
    case errc::vocab:
    case errc::data:
    case errc::io:
    case errc::version:
    case errc::checksum:
    case errc::evaluation:
      return 2;
    case errc::numeric:
      return 3;
    case errc::verification:
      return 4;
    default:
      return 1;
  }
}

}  // namespace qedacvc
