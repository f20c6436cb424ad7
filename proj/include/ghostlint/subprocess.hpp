#pragma once

#include <cerrno>
#include <cstring>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ghostlint/errors.hpp"

namespace ghostlint {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
};

/// Runs argv[0] with the given arguments, capturing stdout. stderr is
/// inherited. Returns exit code -1 when the process died on a signal.
inline ProcessResult run_process(const std::vector<std::string>& argv) {
    if (argv.empty()) throw IoError("empty argv");
    int pipefd[2];
    if (pipe(pipefd) != 0) throw IoError("pipe failed");
    pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw IoError("fork failed");
    }
    if (pid == 0) {
        dup2(pipefd[1], STDOUT_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }
    close(pipefd[1]);
    ProcessResult res;
    char buf[4096];
    ssize_t n;
    while ((n = read(pipefd[0], buf, sizeof(buf))) > 0) res.out.append(buf, static_cast<std::size_t>(n));
    close(pipefd[0]);
    int status = 0;
    if (waitpid(pid, &status, 0) < 0) throw IoError("waitpid failed");
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

} // namespace ghostlint
