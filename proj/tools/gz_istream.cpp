#include "gz_istream.hpp"

#include <stdexcept>

namespace levcorr::tools {

GzStreamBuf::GzStreamBuf(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_) gzbuffer(file_, 1 << 17);
}

GzStreamBuf::~GzStreamBuf() {
    if (file_) gzclose(file_);
}

GzStreamBuf::int_type GzStreamBuf::underflow() {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (!file_) return traits_type::eof();
    const int n = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (n < 0) {
        int err = 0;
        throw std::runtime_error(std::string("gzip read error: ") + gzerror(file_, &err));
    }
    if (n == 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
    return traits_type::to_int_type(*gptr());
}

}  // namespace levcorr::tools
