#pragma once

#include <zlib.h>

#include <array>
#include <istream>
#include <streambuf>
#include <string>

namespace levcorr::tools {

// Read-only streambuf over a gzip file.
class GzStreamBuf : public std::streambuf {
public:
    explicit GzStreamBuf(const std::string& path);
    ~GzStreamBuf() override;
    GzStreamBuf(const GzStreamBuf&) = delete;
    GzStreamBuf& operator=(const GzStreamBuf&) = delete;

    bool is_open() const noexcept { return file_ != nullptr; }

protected:
    int_type underflow() override;

private:
    gzFile file_ = nullptr;
    std::array<char, 1 << 16> buffer_{};
};

class GzIStream : public std::istream {
public:
    explicit GzIStream(const std::string& path) : std::istream(nullptr), buf_(path) {
        rdbuf(&buf_);
        if (!buf_.is_open()) setstate(std::ios::failbit);
    }

private:
    GzStreamBuf buf_;
};

}  // namespace levcorr::tools
