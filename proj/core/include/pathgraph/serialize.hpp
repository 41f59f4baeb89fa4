#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathgraph {

/// Raised when a blob is malformed or fails its checksum.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Little-endian fixed-width byte sink.
class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(v); }

    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    void tag(std::string_view t) { buf_.insert(buf_.end(), t.begin(), t.end()); }

    void words(const std::vector<uint64_t>& w) {
        u64(w.size());
        for (uint64_t x : w) u64(x);
    }

    template <typename T>
    void uints(const std::vector<T>& v) {
        u64(v.size());
        for (T x : v) u64(static_cast<uint64_t>(x));
    }

    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

/// Bounds-checked reader matching Writer.
class Reader {
public:
    Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
    explicit Reader(const std::vector<uint8_t>& v) : Reader(v.data(), v.size()) {}

    uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    void expect_tag(std::string_view t) {
        need(t.size());
        if (std::string_view(reinterpret_cast<const char*>(data_ + pos_), t.size()) != t)
            throw FormatError("bad section tag, expected '" + std::string(t) + "'");
        pos_ += t.size();
    }

    std::vector<uint64_t> words() {
        uint64_t n = count(8);
        std::vector<uint64_t> w(n);
        for (auto& x : w) x = u64();
        return w;
    }

    template <typename T>
    std::vector<T> uints() {
        uint64_t n = count(8);
        std::vector<T> v(n);
        for (auto& x : v) {
            uint64_t raw = u64();
            if (static_cast<uint64_t>(static_cast<T>(raw)) != raw) throw FormatError("integer overflow in array");
            x = static_cast<T>(raw);
        }
        return v;
    }

    size_t position() const { return pos_; }
    size_t remaining() const { return size_ - pos_; }

private:
    void need(size_t k) const {
        if (k > size_ - pos_) throw FormatError("blob truncated");
    }

    // Length prefix sanity check so a corrupted count cannot trigger a huge allocation.
    uint64_t count(size_t elem_bytes) {
        uint64_t n = u64();
        if (n > remaining() / elem_bytes) throw FormatError("array length exceeds blob size");
        return n;
    }

    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
};

/// FNV-1a over a byte range.
inline uint64_t fnv1a64(const uint8_t* data, size_t n) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Appends the checksum of everything written so far.
inline std::vector<uint8_t> seal(Writer&& w) {
    std::vector<uint8_t> out = w.take();
    uint64_t h = fnv1a64(out.data(), out.size());
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(h >> (8 * i)));
    return out;
}

/// Verifies and strips the trailing checksum; returns the payload length.
inline size_t unseal(const std::vector<uint8_t>& blob) {
    if (blob.size() < 8) throw FormatError("blob too short for checksum");
    size_t n = blob.size() - 8;
    uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) stored |= static_cast<uint64_t>(blob[n + i]) << (8 * i);
    if (stored != fnv1a64(blob.data(), n)) throw FormatError("checksum mismatch");
    return n;
}

}  // namespace pathgraph
