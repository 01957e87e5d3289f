#pragma once

#include <ostream>
#include <string>

namespace aniso::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailure = 1,  ///< a hard bound or exact identity failed
  kUsageError = 2,    ///< bad arguments or configuration
  kNumericalFailure = 3,
};

inline constexpr const char* kToolVersion = "0.1.0";

/// git-style content hash: SHA1 of "blob <size>\0" followed by the bytes.
std::string git_blob_sha1(const std::string& content);

/// --threads value, else ANISO_THREADS, else 1.
int resolve_threads(int requested);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aniso::cli
