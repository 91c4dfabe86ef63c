#ifndef RFB_ERRORS_HPP
#define RFB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rfb {

// Process exit codes used by the CLI. Library code throws the typed
// exceptions below; the CLI maps them to these codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 2,
  kExitInvalidPartition = 3,
  kExitOracleFailure = 4,
  kExitIoError = 5,
  kExitNotConverged = 6,  // warning status; artifacts are still written
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidPartition : std::runtime_error {
  explicit InvalidPartition(const std::string& msg) : std::runtime_error(msg) {}
};

// Integer arithmetic that would wrap is reported, never silently truncated.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OracleFailure : std::runtime_error {
  explicit OracleFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rfb

#endif  // RFB_ERRORS_HPP
