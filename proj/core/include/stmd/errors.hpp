#pragma once

#include <stdexcept>
#include <string>

namespace stmd {

// Exit codes used by the command line tools.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitState = 3,
};

// Bad constructor/operation argument (maps to the config exit code).
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration file, key or value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable/unwritable file, malformed image or record stream.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation called out of sequence (empty history, non-monotonic frames...).
struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stmd
