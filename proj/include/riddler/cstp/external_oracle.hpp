#pragma once

#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "riddler/cstp/preference.hpp"
#include "riddler/error.hpp"

namespace riddler::cstp {

// Talks to a scoring process over stdin/stdout, one request per line:
//
//   CAP conditional<TAB>term<TAB>prefix<TAB>suffix   -> P(term | context), unnormalized
//   CAP likelihood<TAB>term<TAB>prefix<TAB>suffix    -> P(context | term)
//   CAP prior<TAB>term                               -> P(term)
//   CAP membership<TAB>term<TAB>prefix<TAB>suffix    -> P(term in context)
//   CAP next<TAB>token<TAB>history                   -> P(token | history)
//
// Token lists are space-joined. Each reply is one line holding a
// non-negative decimal, or "ERR unknown <term>", or "ERR <message>".
struct ExternalOracleConfig {
    std::vector<std::string> argv;
    std::chrono::milliseconds timeout{10'000};
};

class ExternalOracle final : public Conditional, public ContextGenerative, public Membership, public Autoregressive {
public:
    explicit ExternalOracle(ExternalOracleConfig cfg) : cfg_(std::move(cfg)) {
        if (cfg_.argv.empty()) throw ConfigError("external oracle command is empty");
        ::signal(SIGPIPE, SIG_IGN);
        int to_child[2], from_child[2];
        if (::pipe(to_child) != 0) throw std::system_error(errno, std::generic_category(), "pipe");
        if (::pipe(from_child) != 0) {
            ::close(to_child[0]);
            ::close(to_child[1]);
            throw std::system_error(errno, std::generic_category(), "pipe");
        }
        pid_ = ::fork();
        if (pid_ < 0) throw std::system_error(errno, std::generic_category(), "fork");
        if (pid_ == 0) {
            ::dup2(to_child[0], STDIN_FILENO);
            ::dup2(from_child[1], STDOUT_FILENO);
            ::close(to_child[0]);
            ::close(to_child[1]);
            ::close(from_child[0]);
            ::close(from_child[1]);
            std::vector<char*> args;
            for (auto& a : cfg_.argv) args.push_back(a.data());
            args.push_back(nullptr);
            ::execvp(args[0], args.data());
            ::_exit(127);
        }
        ::close(to_child[0]);
        ::close(from_child[1]);
        in_ = to_child[1];
        out_ = from_child[0];
    }

    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

    ~ExternalOracle() override { shutdown(); }

    double log_score(std::string_view term, const ContextTemplate& c) const override {
        return log_of(ask("conditional", {term, join(c.prefix), join(c.suffix)}));
    }
    double log_likelihood(const ContextTemplate& c, std::string_view term) const override {
        return log_of(ask("likelihood", {term, join(c.prefix), join(c.suffix)}));
    }
    double log_prior(std::string_view term) const override { return log_of(ask("prior", {term})); }
    double membership(std::string_view term, const ContextTemplate& c) const override {
        return ask("membership", {term, join(c.prefix), join(c.suffix)});
    }
    double log_next(std::span<const std::string> history, std::string_view token) const override {
        const double p = ask("next", {token, join(history)});
        if (p > 1.0 + 1e-9) throw OracleContractError("next-token probability above one");
        return log_of(p);
    }

private:
    static std::string join(std::span<const std::string> toks) {
        std::string out;
        for (const auto& t : toks) {
            if (!out.empty()) out += ' ';
            out += t;
        }
        return out;
    }

    double ask(std::string_view cap, std::initializer_list<std::string_view> fields) const {
        std::string line = "CAP ";
        line += cap;
        for (auto f : fields) {
            line += '\t';
            line += f;
        }
        line += '\n';
        std::lock_guard lock(mu_);
        if (dead_) throw OracleContractError("external oracle is not running");
        write_all(line);
        const std::string reply = read_line();
        return parse_reply(reply);
    }

    static double parse_reply(std::string_view r) {
        while (!r.empty() && (r.back() == '\r' || r.back() == ' ')) r.remove_suffix(1);
        if (r.starts_with("ERR unknown ")) throw UnknownTermError(std::string(r.substr(12)));
        if (r.starts_with("ERR")) throw OracleContractError("external oracle: " + std::string(r));
        double v = 0;
        auto [p, ec] = std::from_chars(r.data(), r.data() + r.size(), v);
        if (ec != std::errc() || p != r.data() + r.size())
            throw OracleContractError("external oracle sent '" + std::string(r) + "'");
        if (std::isnan(v) || v < 0) throw OracleContractError("external oracle sent a negative score");
        return v;
    }

    void write_all(std::string_view s) const {
        while (!s.empty()) {
            const ssize_t n = ::write(in_, s.data(), s.size());
            if (n < 0) {
                if (errno == EINTR) continue;
                fail("external oracle closed its input");
            }
            s.remove_prefix(static_cast<std::size_t>(n));
        }
    }

    std::string read_line() const {
        const auto deadline = std::chrono::steady_clock::now() + cfg_.timeout;
        for (;;) {
            if (auto nl = buf_.find('\n'); nl != std::string::npos) {
                std::string line = buf_.substr(0, nl);
                buf_.erase(0, nl + 1);
                return line;
            }
            const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
            if (left.count() <= 0) fail("external oracle timed out");
            pollfd pfd{out_, POLLIN, 0};
            const int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
            if (rc < 0) {
                if (errno == EINTR) continue;
                fail("poll failed");
            }
            if (rc == 0) fail("external oracle timed out");
            char chunk[4096];
            const ssize_t n = ::read(out_, chunk, sizeof chunk);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) fail("external oracle exited");
            buf_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    // A timed-out or broken process is killed; later requests fail fast.
    [[noreturn]] void fail(const std::string& why) const {
        dead_ = true;
        const_cast<ExternalOracle*>(this)->shutdown();
        throw OracleContractError(why);
    }

    void shutdown() {
        if (in_ >= 0) ::close(in_);
        if (out_ >= 0) ::close(out_);
        in_ = out_ = -1;
        if (pid_ > 0) {
            int status = 0;
            for (int i = 0; i < 50; ++i) {
                if (::waitpid(pid_, &status, WNOHANG) == pid_) {
                    pid_ = -1;
                    return;
                }
                ::usleep(2000);
            }
            ::kill(pid_, SIGKILL);
            ::waitpid(pid_, &status, 0);
            pid_ = -1;
        }
    }

    ExternalOracleConfig cfg_;
    pid_t pid_ = -1;
    int in_ = -1;
    int out_ = -1;
    mutable std::string buf_;
    mutable std::mutex mu_;
    mutable bool dead_ = false;
};

}  // namespace riddler::cstp
