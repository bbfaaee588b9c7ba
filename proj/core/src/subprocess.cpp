#include "mergeprobe/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace mergeprobe {
namespace {

using Clock = std::chrono::steady_clock;

void drain(int fd, std::string* sink) {
  char buf[4096];
  for (;;) {
    ssize_t n = read(fd, buf, sizeof(buf));
    if (n <= 0) break;
    sink->append(buf, static_cast<std::size_t>(n));
  }
}

}  // namespace

SubprocessResult run_command(const std::vector<std::string>& argv,
                             const std::filesystem::path& cwd,
                             std::chrono::milliseconds timeout) {
  SubprocessResult result;
  if (argv.empty()) {
    result.spawn_failed = true;
    result.err = "empty argv";
    return result;
  }

  int out_pipe[2], err_pipe[2], exec_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0 || pipe(exec_pipe) != 0) {
    result.spawn_failed = true;
    result.err = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  // The exec pipe is closed on successful exec; an errno written through it
  // tells the parent the spawn itself failed.
  fcntl(exec_pipe[1], F_SETFD, FD_CLOEXEC);

  auto start = Clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    result.spawn_failed = true;
    result.err = std::string("fork: ") + std::strerror(errno);
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1], exec_pipe[0],
                   exec_pipe[1]}) {
      close(fd);
    }
    return result;
  }

  if (pid == 0) {
    // Own process group, so a timeout kill reaches forked helpers that
    // would otherwise survive and hold the output pipes open.
    setpgid(0, 0);
    close(out_pipe[0]);
    close(err_pipe[0]);
    close(exec_pipe[0]);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[1]);
    close(err_pipe[1]);
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) {
      int e = errno;
      (void)!write(exec_pipe[1], &e, sizeof(e));
      _exit(127);
    }
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    int e = errno;
    (void)!write(exec_pipe[1], &e, sizeof(e));
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  close(exec_pipe[1]);

  int spawn_errno = 0;
  if (read(exec_pipe[0], &spawn_errno, sizeof(spawn_errno)) == sizeof(spawn_errno)) {
    result.spawn_failed = true;
    result.err = argv[0] + ": " + std::strerror(spawn_errno);
  }
  close(exec_pipe[0]);

  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  bool out_open = true, err_open = true;
  bool killed = false;
  while (out_open || err_open) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    if (out_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[nfds++] = {err_pipe[0], POLLIN, 0};

    int wait_ms = 100;
    if (timeout.count() > 0 && !killed) {
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          start + timeout - Clock::now());
      if (remaining.count() <= 0) {
        kill(-pid, SIGKILL);  // the child's whole process group
        kill(pid, SIGKILL);
        killed = true;
        result.timed_out = true;
      } else if (remaining.count() < wait_ms) {
        wait_ms = static_cast<int>(remaining.count());
      }
    }

    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0 && errno != EINTR) break;
    nfds_t at = 0;
    if (out_open) {
      if (fds[at].revents & (POLLIN | POLLHUP)) {
        char buf[4096];
        ssize_t n;
        while ((n = read(out_pipe[0], buf, sizeof(buf))) > 0) {
          result.out.append(buf, static_cast<std::size_t>(n));
        }
        if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) out_open = false;
      }
      ++at;
    }
    if (err_open && at < nfds) {
      if (fds[at].revents & (POLLIN | POLLHUP)) {
        char buf[4096];
        ssize_t n;
        while ((n = read(err_pipe[0], buf, sizeof(buf))) > 0) {
          result.err.append(buf, static_cast<std::size_t>(n));
        }
        if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) err_open = false;
      }
    }
  }
  drain(out_pipe[0], &result.out);
  drain(err_pipe[0], &result.err);
  close(out_pipe[0]);
  close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  result.duration =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    if (!result.timed_out) result.signaled = true;
  }
  return result;
}

std::string format_argv(const std::vector<std::string>& argv) {
  std::string out;
  for (const auto& a : argv) {
    if (!out.empty()) out += ' ';
    bool needs_quotes = a.empty() || a.find_first_of(" \t\"'") != std::string::npos;
    if (needs_quotes) {
      out += '\'';
      for (char c : a) {
        if (c == '\'') out += "'\\''";
        else out += c;
      }
      out += '\'';
    } else {
      out += a;
    }
  }
  return out;
}

}  // namespace mergeprobe
