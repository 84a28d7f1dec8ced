#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "kclique/errors.hpp"

namespace kclique {

// A set of satellites as a 64-bit mask. Bit b set means satellite (b+1) is a
// member, matching the right-to-left bitstring convention: the rightmost
// character of "...101" is satellite 1.
struct SatSet {
    std::uint64_t bits = 0;

    constexpr SatSet() = default;
    constexpr explicit SatSet(std::uint64_t b) : bits(b) {}

    constexpr int size() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr bool contains(int sat) const { return (bits >> (sat - 1)) & 1ULL; }

    constexpr SatSet with(int sat) const { return SatSet(bits | (1ULL << (sat - 1))); }
    constexpr SatSet without(int sat) const { return SatSet(bits & ~(1ULL << (sat - 1))); }

    constexpr bool overlaps(SatSet other) const { return (bits & other.bits) != 0; }

    friend constexpr SatSet operator|(SatSet a, SatSet b) { return SatSet(a.bits | b.bits); }
    friend constexpr SatSet operator&(SatSet a, SatSet b) { return SatSet(a.bits & b.bits); }
    friend constexpr bool operator==(SatSet a, SatSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(SatSet a, SatSet b) { return a.bits != b.bits; }
    friend constexpr bool operator<(SatSet a, SatSet b) { return a.bits < b.bits; }
};

// Two satellite groups can coexist in a partition iff they share no satellite.
// This is the implicit edge predicate of the clique graph.
inline bool edge_exists(SatSet a, SatSet b) { return (a.bits & b.bits) == 0; }

// Parses a right-to-left bitstring: the last character is satellite 1.
inline SatSet parse_satset(const std::string& bitstring) {
    if (bitstring.empty()) throw FormatError("parse_satset: empty bitstring");
    if (bitstring.size() > 64) throw FormatError("parse_satset: bitstring longer than 64 bits");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < bitstring.size(); ++i) {
        const char c = bitstring[bitstring.size() - 1 - i];
        if (c == '1') {
            bits |= 1ULL << i;
        } else if (c != '0') {
            throw FormatError(std::string("parse_satset: invalid character '") + c + "'");
        }
    }
    return SatSet(bits);
}

// Inverse of parse_satset; width pads with leading zeros (satellite `width`
// is the leftmost character).
inline std::string format_satset(SatSet s, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((s.bits >> i) & 1ULL) out[static_cast<std::size_t>(width - 1 - i)] = '1';
    }
    return out;
}

}  // namespace kclique
