#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>

#include "hexlab/errors.hpp"

namespace hexlab {

// A hexagram is six stacked binary lines (0 = yin, 1 = yang), indexed 1
// (bottom) to 6 (top). Line 1 is the least-significant bit of `code`, so
// codes run 0 (all yin) to 63 (all yang).
struct Hexagram {
    std::uint8_t code{0};

    constexpr int line(int k) const { return (code >> (k - 1)) & 1; }
    constexpr int yang_count() const { return std::popcount(code); }

    friend constexpr bool operator==(Hexagram, Hexagram) = default;
};

struct Trigram {
    std::uint8_t code{0};

    constexpr int line(int k) const { return (code >> (k - 1)) & 1; }

    friend constexpr bool operator==(Trigram, Trigram) = default;
};

inline Hexagram hexagram_from_code(int code) {
    if (code < 0 || code > 63)
        throw validation_error("hexagram code must be in 0..63");
    return Hexagram{static_cast<std::uint8_t>(code)};
}

inline Hexagram hexagram_from_lines(std::span<const int> lines) {
    if (lines.size() != 6)
        throw validation_error("a hexagram needs exactly 6 lines");
    std::uint8_t code = 0;
    for (int k = 0; k < 6; ++k) {
        if (lines[k] != 0 && lines[k] != 1)
            throw validation_error("hexagram lines must be 0 or 1");
        code = static_cast<std::uint8_t>(code | (lines[k] << k));
    }
    return Hexagram{code};
}

// All six lines flipped.
constexpr Hexagram complement(Hexagram h) {
    return Hexagram{static_cast<std::uint8_t>(h.code ^ 0x3F)};
}

// Line order flipped top-to-bottom (line k <-> line 7-k).
constexpr Hexagram reverse(Hexagram h) {
    std::uint8_t r = 0;
    for (int k = 0; k < 6; ++k)
        r = static_cast<std::uint8_t>(r | (((h.code >> k) & 1) << (5 - k)));
    return Hexagram{r};
}

struct TrigramPair {
    Trigram lower; // lines 1-3
    Trigram upper; // lines 4-6
};

constexpr TrigramPair trigrams(Hexagram h) {
    return {Trigram{static_cast<std::uint8_t>(h.code & 0x7)},
            Trigram{static_cast<std::uint8_t>((h.code >> 3) & 0x7)}};
}

// Inner four lines, positions 2-5 in order.
constexpr std::array<int, 4> nuclear_window(Hexagram h) {
    return {h.line(2), h.line(3), h.line(4), h.line(5)};
}

// Bottom-to-top line string, e.g. code 63 -> "111111".
inline std::string lines_string(Hexagram h) {
    std::string s(6, '0');
    for (int k = 1; k <= 6; ++k)
        s[static_cast<std::size_t>(k - 1)] = static_cast<char>('0' + h.line(k));
    return s;
}

// A named permutation of all 64 hexagram codes; sequence[i] is the code at
// position i+1.
struct Ordering {
    std::string name;
    std::array<std::uint8_t, 64> sequence{};

    Hexagram at(int position) const { // 1-indexed
        return Hexagram{sequence[static_cast<std::size_t>(position - 1)]};
    }

    void validate() const {
        std::uint64_t seen = 0;
        for (std::uint8_t c : sequence) {
            if (c > 63 || (seen >> c) & 1)
                throw validation_error("ordering is not a permutation of 0..63");
            seen |= std::uint64_t{1} << c;
        }
    }
};

enum class ShaoYongConvention { Reversed, Direct };

namespace detail {

// Canonical King Wen table, position 1..64, encoded with line 1 = LSB.
// Guarded by tests: the four anchor positions and the pair rule (the second
// of each pair is the reverse of the first, or the complement for the 8
// palindromic hexagrams).
inline constexpr std::array<std::uint8_t, 64> kKingWenCodes = {
    63, 0,  17, 34, 23, 58, 2,  16, 55, 59, 7,  56, 61, 47, 4,  8,
    25, 38, 3,  48, 41, 37, 32, 1,  57, 39, 33, 30, 18, 45, 28, 14,
    60, 15, 40, 5,  53, 43, 20, 10, 35, 49, 31, 62, 24, 6,  26, 22,
    29, 46, 9,  36, 52, 11, 13, 44, 54, 27, 50, 19, 51, 12, 21, 42};

} // namespace detail

inline Ordering king_wen_ordering() {
    return Ordering{"kingwen", detail::kKingWenCodes};
}

inline Ordering binary_ordering() {
    Ordering o{"binary", {}};
    for (int i = 0; i < 64; ++i) o.sequence[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    return o;
}

inline Ordering shao_yong_ordering(ShaoYongConvention convention = ShaoYongConvention::Reversed) {
    Ordering o{"shaoyong", {}};
    for (int i = 0; i < 64; ++i) {
        const auto h = Hexagram{static_cast<std::uint8_t>(i)};
        o.sequence[static_cast<std::size_t>(i)] =
            convention == ShaoYongConvention::Reversed ? reverse(h).code : h.code;
    }
    return o;
}

} // namespace hexlab
