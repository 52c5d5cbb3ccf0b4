// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/digest.hpp>

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace trustledger {

Hash32 sha256(const std::uint8_t* data, std::size_t size) {
    Hash32 out;
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr)
        throw std::runtime_error("sha256: EVP_MD_CTX_new failed");
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, data, size) == 1 &&
                    EVP_DigestFinal_ex(ctx, out.bytes.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok || len != out.bytes.size())
        throw std::runtime_error("sha256: digest computation failed");
    return out;
}

Hash32 sha256(const std::vector<std::uint8_t>& data) {
    return sha256(data.data(), data.size());
}

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    u64(bits);
}

void ByteWriter::str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteWriter::raw(const std::uint8_t* data, std::size_t size) {
    buf_.insert(buf_.end(), data, data + size);
}

std::string to_hex(const Hash32& h) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : h.bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

Hash32 hash_from_hex(const std::string& hex) {
    if (hex.size() != 64)
        throw std::invalid_argument("hash_from_hex: expected 64 hex chars");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw std::invalid_argument("hash_from_hex: bad hex digit");
    };
    Hash32 h;
    for (std::size_t i = 0; i < 32; ++i)
        h.bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return h;
}

}  // namespace trustledger
