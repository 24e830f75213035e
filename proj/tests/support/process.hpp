// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

// Runs the command-line binary as a child process.
#pragma once

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

extern char** environ;

namespace testing_support
{
struct RunResult
{
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in{p};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Process
{
public:
    /// Starts `binary args...` with `env` added to the inherited environment;
    /// stdout and stderr go to the given files.
    Process(const std::string& binary, const std::vector<std::string>& args,
        const std::map<std::string, std::string>& env, const std::filesystem::path& out,
        const std::filesystem::path& err)
    {
        std::vector<std::string> argv_s{binary};
        argv_s.insert(argv_s.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& a : argv_s)
            argv.push_back(a.data());
        argv.push_back(nullptr);

        std::vector<std::string> env_s;
        for (char** e = environ; *e != nullptr; ++e)
        {
            const std::string entry{*e};
            if (!env.contains(entry.substr(0, entry.find('='))))
                env_s.push_back(entry);
        }
        for (const auto& [k, v] : env)
            env_s.push_back(k + "=" + v);
        std::vector<char*> envp;
        for (auto& e : env_s)
            envp.push_back(e.data());
        envp.push_back(nullptr);

        posix_spawn_file_actions_t fa;
        posix_spawn_file_actions_init(&fa);
        posix_spawn_file_actions_addopen(&fa, 1, out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
        posix_spawn_file_actions_addopen(&fa, 2, err.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
        const int rc = posix_spawn(&pid_, binary.c_str(), &fa, nullptr, argv.data(), envp.data());
        posix_spawn_file_actions_destroy(&fa);
        if (rc != 0)
            throw std::runtime_error{"cannot spawn " + binary};
    }

    Process(const Process&) = delete;
    Process& operator=(const Process&) = delete;

    ~Process()
    {
        if (pid_ > 0 && !exited_)
        {
            ::kill(pid_, SIGKILL);
            wait();
        }
    }

    int wait()
    {
        int status = 0;
        ::waitpid(pid_, &status, 0);
        exited_ = true;
        return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }

    /// Exit code if the child has finished, otherwise nothing.
    std::optional<int> poll()
    {
        int status = 0;
        if (::waitpid(pid_, &status, WNOHANG) != pid_)
            return std::nullopt;
        exited_ = true;
        return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }

    void signal(int sig) { ::kill(pid_, sig); }

private:
    pid_t pid_ = -1;
    bool exited_ = false;
};

inline RunResult run_process(const std::string& binary, const std::vector<std::string>& args,
    const std::map<std::string, std::string>& env, const std::filesystem::path& scratch)
{
    static int counter = 0;
    const auto out = scratch / ("out" + std::to_string(counter));
    const auto err = scratch / ("err" + std::to_string(counter++));
    Process p{binary, args, env, out, err};
    RunResult r;
    r.exit_code = p.wait();
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}
}  // namespace testing_support
