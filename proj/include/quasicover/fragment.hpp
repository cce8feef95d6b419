#pragma once

#include <cstddef>

namespace quasicover {

/// Half-open range [start, end) of text `text` in a string collection.
struct Fragment {
    std::size_t text = 0;
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }

    /// Sub-fragment [start + lo, start + hi) of this fragment.
    Fragment sub(std::size_t lo, std::size_t hi) const noexcept { return {text, start + lo, start + hi}; }

    friend bool operator==(const Fragment&, const Fragment&) = default;
};

}  // namespace quasicover
