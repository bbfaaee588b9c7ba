#ifndef MERGEPROBE_SUBPROCESS_HPP_
#define MERGEPROBE_SUBPROCESS_HPP_

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace mergeprobe {

struct SubprocessResult {
  int exit_code = -1;        // meaningful only when exited normally
  bool timed_out = false;    // deadline hit, child killed
  bool spawn_failed = false; // binary missing or exec failure
  bool signaled = false;     // child died on a signal other than our kill
  std::string out;           // captured stdout
  std::string err;           // captured stderr
  std::chrono::milliseconds duration{0};

  bool ok() const { return !timed_out && !spawn_failed && !signaled && exit_code == 0; }
};

/// Runs argv[0] with the given arguments, capturing both output streams.
/// The child is killed when the timeout elapses. A zero timeout means no
/// limit. Never throws; spawn problems are reported in the result.
SubprocessResult run_command(const std::vector<std::string>& argv,
                             const std::filesystem::path& cwd,
                             std::chrono::milliseconds timeout);

/// argv rendered like a shell line, for logs and diagnostics.
std::string format_argv(const std::vector<std::string>& argv);

}  // namespace mergeprobe

#endif  // MERGEPROBE_SUBPROCESS_HPP_
