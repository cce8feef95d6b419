#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace quasicover {

/// Frozen after calibration; see README.
struct SpaceBound {
    static constexpr double c1 = 2.0;
    static constexpr double c2 = 4096.0;

    /// Bits allowed for sp, pref and the square/aperiodic tables: c1 words of
    /// log2 n bits per n (log2 sigma + log2 log2 n) / log2 n, plus c2 words.
    static double bits(std::size_t n, std::uint64_t sigma)
    {
        const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));
        const double ls = std::log2(static_cast<double>(std::max<std::uint64_t>(sigma, 2)));
        const double words = c1 * static_cast<double>(n) * (ls + std::log2(lg)) / lg + c2;
        return words * lg;
    }
};

/// Long-cover query units per n/c position on the bench family.
inline constexpr double kUnitsPerNOverC = 4.0;

}  // namespace quasicover
