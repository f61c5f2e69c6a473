// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <string>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "mobscore/oracle.hpp"

namespace mobscore {

namespace {

using nlohmann::json;

// Writes to a pipe whose reader died must surface as EPIPE, not SIGPIPE.
void ignore_sigpipe_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

class SubprocessBackend final : public OracleBackend {
public:
    SubprocessBackend(std::string command, int d, double timeout_seconds)
        : command_(std::move(command)), d_(d), timeout_seconds_(timeout_seconds) {
        if (d_ < 0 || d_ > FeatureSet::kMaxWidth) {
            throw ValidationError("subprocess oracle dimension out of range");
        }
        ignore_sigpipe_once();
        spawn();
    }

    ~SubprocessBackend() override { shutdown(); }

    int dimension() const override { return d_; }
    std::string kind() const override { return "subprocess"; }

    double evaluate(const FeatureSet& keep) override {
        // The line protocol is sequential: one request, one reply.
        std::lock_guard lk(io_mu_);
        json request;
        request["keep"] = keep.indices();
        send_line(request.dump());
        const std::string reply = read_line_with_deadline();
        return parse_reply(reply);
    }

private:
    void spawn() {
        int to_child[2];
        int from_child[2];
        if (::pipe(to_child) != 0) {
            throw OracleError(std::string("pipe failed: ") + std::strerror(errno));
        }
        if (::pipe(from_child) != 0) {
            ::close(to_child[0]);
            ::close(to_child[1]);
            throw OracleError(std::string("pipe failed: ") + std::strerror(errno));
        }
        pid_ = ::fork();
        if (pid_ < 0) {
            for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
            throw OracleError(std::string("fork failed: ") + std::strerror(errno));
        }
        if (pid_ == 0) {
            ::dup2(to_child[0], STDIN_FILENO);
            ::dup2(from_child[1], STDOUT_FILENO);
            for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
            ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
            ::_exit(127);
        }
        ::close(to_child[0]);
        ::close(from_child[1]);
        write_fd_ = to_child[1];
        read_fd_ = from_child[0];
    }

    void shutdown() noexcept {
        if (write_fd_ >= 0) ::close(write_fd_);
        if (read_fd_ >= 0) ::close(read_fd_);
        write_fd_ = read_fd_ = -1;
        if (pid_ > 0) {
            // Closing stdin asks the child to exit; give it a moment.
            for (int i = 0; i < 200; ++i) {
                int status = 0;
                if (::waitpid(pid_, &status, WNOHANG) == pid_) {
                    pid_ = -1;
                    return;
                }
                ::usleep(10 * 1000);
            }
            ::kill(pid_, SIGKILL);
            int status = 0;
            ::waitpid(pid_, &status, 0);
            pid_ = -1;
        }
    }

    void send_line(const std::string& line) {
        std::string payload = line + "\n";
        std::size_t off = 0;
        while (off < payload.size()) {
            const ssize_t n = ::write(write_fd_, payload.data() + off, payload.size() - off);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw OracleError("backend '" + command_ + "' is not accepting requests: " +
                                  std::strerror(errno) + exit_note());
            }
            off += static_cast<std::size_t>(n);
        }
    }

    std::string read_line_with_deadline() {
        const auto deadline =
            std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(timeout_seconds_));
        for (;;) {
            const auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                std::string line = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return line;
            }
            const auto remaining = deadline - std::chrono::steady_clock::now();
            const auto remaining_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(remaining).count();
            if (remaining_ms <= 0) {
                throw OracleError("backend '" + command_ + "' timed out after " +
                                  std::to_string(timeout_seconds_) + "s");
            }
            struct pollfd pfd{read_fd_, POLLIN, 0};
            // Wake at least every 200 ms so a signal-driven interrupt is seen
            // even while blocked on a slow backend.
            const int wait_ms = static_cast<int>(std::min<long long>(remaining_ms, 200));
            const int pr = ::poll(&pfd, 1, wait_ms);
            if (interrupt_flag().load() != 0) {
                throw OracleError("interrupted while waiting for backend '" + command_ + "'");
            }
            if (pr < 0) {
                if (errno == EINTR) continue;
                throw OracleError(std::string("poll failed: ") + std::strerror(errno));
            }
            if (pr == 0) continue; // deadline re-checked above
            char chunk[4096];
            const ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw OracleError(std::string("read failed: ") + std::strerror(errno));
            }
            if (n == 0) {
                throw OracleError("backend '" + command_ + "' closed its output" + exit_note());
            }
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    double parse_reply(const std::string& line) const {
        json reply;
        try {
            reply = json::parse(line);
        } catch (const json::parse_error&) {
            throw OracleError("protocol error: backend reply is not JSON: '" + line + "'");
        }
        if (!reply.is_object() || !reply.contains("value") || !reply["value"].is_number()) {
            throw OracleError("protocol error: backend reply must be {\"value\": number}, got '" +
                              line + "'");
        }
        return reply["value"].get<double>();
    }

    std::string exit_note() {
        if (pid_ <= 0) return "";
        int status = 0;
        if (::waitpid(pid_, &status, WNOHANG) != pid_) return "";
        pid_ = -1; // reaped
        if (WIFEXITED(status)) {
            return " (child exited with status " + std::to_string(WEXITSTATUS(status)) + ")";
        }
        return " (child terminated abnormally)";
    }

    std::string command_;
    int d_;
    double timeout_seconds_;
    pid_t pid_ = -1;
    int write_fd_ = -1;
    int read_fd_ = -1;
    std::string buffer_;
    std::mutex io_mu_;
};

} // namespace

std::unique_ptr<OracleBackend> spawn_subprocess_oracle(const std::string& command, int d,
                                                       double timeout_seconds) {
    return std::make_unique<SubprocessBackend>(command, d, timeout_seconds);
}

} // namespace mobscore
