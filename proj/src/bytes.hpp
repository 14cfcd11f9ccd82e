#pragma once

// Little helpers for the compact binary encodings (element keys, table files).

#include <cstdint>
#include <string>
#include <string_view>

#include "nilgrowth/error.hpp"
#include "nilgrowth/rational.hpp"

namespace nilgrowth::detail {

inline void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

inline void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_rational(std::string& out, const Rational& r) {
  if (r.is_small()) {
    out.push_back(0);
    std::int64_t n = r.small_num();
    put_varint(out, (static_cast<std::uint64_t>(n) << 1) ^ static_cast<std::uint64_t>(n >> 63));
    put_varint(out, static_cast<std::uint64_t>(r.small_den()));
  } else {
    std::string s = r.str();
    out.push_back(1);
    put_varint(out, s.size());
    out += s;
  }
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  bool done() const { return pos_ == data_.size(); }
  std::size_t pos() const { return pos_; }

  std::uint8_t byte() {
    if (pos_ >= data_.size()) fail();
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      std::uint8_t b = byte();
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if (!(b & 0x80)) return v;
    }
    fail();
  }

  std::uint64_t u64_le() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
    return v;
  }

  std::string_view take(std::size_t n) {
    if (data_.size() - pos_ < n) fail();
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  Rational rational() {
    std::uint8_t tag = byte();
    if (tag == 0) {
      std::uint64_t z = varint();
      auto n = static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
      auto d = static_cast<std::int64_t>(varint());
      if (d <= 0) fail();
      return Rational(n, d);
    }
    if (tag == 1) {
      auto s = take(varint());
      try {
        return Rational::parse(s);
      } catch (const std::exception&) {
        fail();
      }
    }
    fail();
  }

  [[noreturn]] void fail() const {
    throw Error(ErrorCode::CorruptFile, "malformed encoding at byte " + std::to_string(pos_));
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

/// FNV-1a, 64-bit.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace nilgrowth::detail
