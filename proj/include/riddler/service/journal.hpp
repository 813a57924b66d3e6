#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "riddler/error.hpp"

namespace riddler::service {

// Reads complete JSON lines. A trailing line without a newline is an
// interrupted write and is ignored; returns the byte length of the complete
// prefix.
inline std::size_t read_events(std::istream& in, const std::function<void(const nlohmann::json&)>& apply) {
    std::size_t good = 0;
    std::size_t lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (in.eof()) break;  // no newline after it
        ++lineno;
        if (!line.empty()) {
            nlohmann::json ev;
            try {
                ev = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("corrupt journal entry: ") + e.what(), lineno);
            }
            apply(ev);
        }
        good += line.size() + 1;
    }
    return good;
}

// Append-only event file. Each event is one line, written and flushed
// before the in-memory state changes.
class Journal {
public:
    Journal() = default;

    // Replays existing events, drops any partial tail and opens for append.
    static Journal open(const std::string& path, bool fsync, const std::function<void(const nlohmann::json&)>& apply) {
        Journal j;
        j.path_ = path;
        j.fsync_ = fsync;
        std::size_t good = 0;
        if (std::filesystem::exists(path)) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw IngestError("cannot read journal " + path);
            good = read_events(in, apply);
            in.close();
            if (std::filesystem::file_size(path) != good) std::filesystem::resize_file(path, good);
        } else if (auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) {
            std::filesystem::create_directories(dir);
        }
        j.fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
        if (j.fd_ < 0) throw std::system_error(errno, std::generic_category(), "open " + path);
        return j;
    }

    Journal(Journal&& o) noexcept { *this = std::move(o); }
    Journal& operator=(Journal&& o) noexcept {
        if (this != &o) {
            close();
            path_ = std::move(o.path_);
            fd_ = o.fd_;
            fsync_ = o.fsync_;
            o.fd_ = -1;
        }
        return *this;
    }
    Journal(const Journal&) = delete;
    Journal& operator=(const Journal&) = delete;
    ~Journal() { close(); }

    bool is_open() const { return fd_ >= 0; }
    const std::string& path() const { return path_; }

    void append(const nlohmann::json& ev) {
        if (fd_ < 0) return;  // in-memory service
        std::string line = ev.dump();
        line += '\n';
        std::string_view rest = line;
        while (!rest.empty()) {
            const ssize_t n = ::write(fd_, rest.data(), rest.size());
            if (n < 0) {
                if (errno == EINTR) continue;
                throw std::system_error(errno, std::generic_category(), "journal write");
            }
            rest.remove_prefix(static_cast<std::size_t>(n));
        }
        if (fsync_ && ::fdatasync(fd_) != 0) throw std::system_error(errno, std::generic_category(), "journal sync");
    }

private:
    void close() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

    std::string path_;
    int fd_ = -1;
    bool fsync_ = true;
};

}  // namespace riddler::service
