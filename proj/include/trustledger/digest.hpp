// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/types.hpp>

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace trustledger {

Hash32 sha256(const std::uint8_t* data, std::size_t size);
Hash32 sha256(const std::vector<std::uint8_t>& data);

// Canonical byte encoder used for everything that gets hashed. Integers are
// little-endian fixed width, strings are u32-length-prefixed UTF-8 bytes,
// doubles are their IEEE-754 bit pattern. Two values hash equal iff their
// encodings are byte-identical, so every field of a hashed structure must go
// through here in a fixed order.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v);
    void str(std::string_view s);
    void raw(const std::uint8_t* data, std::size_t size);
    void hash(const Hash32& h) { raw(h.bytes.data(), h.bytes.size()); }

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    Hash32 digest() const { return sha256(buf_); }

  private:
    std::vector<std::uint8_t> buf_;
};

}  // namespace trustledger
