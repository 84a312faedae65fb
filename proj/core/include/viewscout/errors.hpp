#pragma once

#include <stdexcept>
#include <string>

namespace viewscout {

// Bad user input: malformed config files, out-of-range parameters, invalid
// flag combinations. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scorer broke its contract (wrong count, score outside [0, 1]) or the
// transport to a remote scorer failed mid-run.
struct ScorerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed wire payload or framed-socket I/O failure.
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace viewscout
