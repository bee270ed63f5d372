#pragma once

#include <stdexcept>
#include <string>

namespace cheesebench {

/// Bad user-supplied configuration: unknown environment, missing endpoint, ...
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse, e.g. advancing a trial that already ended.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Text that should have been machine-readable was not (observation, trace, report).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chat endpoint could not be reached after all retries.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or directory could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The interactive player quit or the input stream hit EOF.
class SessionAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cheesebench
