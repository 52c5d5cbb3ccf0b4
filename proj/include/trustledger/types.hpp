// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace trustledger {

using Address = std::string;
using TokenAmount = std::uint64_t;
using Gas = std::uint64_t;
using Uid = std::uint64_t;

// Position of an event or transaction on the chain. Orders first by block,
// then by the index the event was assigned inside that block.
struct LogicalTime {
    std::uint64_t block = 0;
    std::uint32_t index = 0;

    auto operator<=>(const LogicalTime&) const = default;
};

struct Hash32 {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const Hash32&) const = default;

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0)
                return false;
        return true;
    }
};

std::string to_hex(const Hash32& h);
Hash32 hash_from_hex(const std::string& hex);  // throws std::invalid_argument

// Base class for recoverable domain errors. Programming errors (precondition
// violations) use std::logic_error / std::invalid_argument instead.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// splitmix64: used to derive independent engine seeds from (seed, label)
// pairs so that removing one actor from a scenario leaves every other
// actor's random stream untouched.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) built from the raw engine output. Avoids
// std::uniform_real_distribution, whose exact draw sequence is
// implementation-defined; results must not depend on the standard library.
inline double unit_double(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace trustledger
