#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace quasicover {

inline constexpr unsigned kWordBits = 64;

/// Counts machine words read or written by packed routines.
struct WordOps {
    std::uint64_t count = 0;
};

inline void tally(WordOps* ops, std::uint64_t k = 1) noexcept
{
    if (ops != nullptr) {
        ops->count += k;
    }
}

constexpr std::uint64_t low_mask(unsigned bits) noexcept
{
    return bits >= kWordBits ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

constexpr std::size_t words_for_bits(std::size_t bits) noexcept
{
    return (bits + kWordBits - 1) / kWordBits;
}

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) noexcept
{
    return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

/// Reads `len` (<= 64) bits starting at bit `pos`; bits past the end read as zero.
inline std::uint64_t read_bits(const std::vector<std::uint64_t>& words, std::size_t pos,
                               unsigned len, WordOps* ops = nullptr) noexcept
{
    if (len == 0) {
        return 0;
    }
    const std::size_t w = pos / kWordBits;
    const unsigned off = static_cast<unsigned>(pos % kWordBits);
    std::uint64_t v = 0;
    if (w < words.size()) {
        v = words[w] >> off;
        tally(ops);
    }
    if (off != 0 && off + len > kWordBits && w + 1 < words.size()) {
        v |= words[w + 1] << (kWordBits - off);
        tally(ops);
    }
    return v & low_mask(len);
}

/// ORs `value` (at most `len` bits) into the bit range starting at `pos`.
inline void or_bits(std::vector<std::uint64_t>& words, std::size_t pos, unsigned len,
                    std::uint64_t value) noexcept
{
    if (len == 0) {
        return;
    }
    value &= low_mask(len);
    const std::size_t w = pos / kWordBits;
    const unsigned off = static_cast<unsigned>(pos % kWordBits);
    words[w] |= value << off;
    if (off != 0 && off + len > kWordBits) {
        words[w + 1] |= value >> (kWordBits - off);
    }
}

/// Fixed-width unsigned integers packed back to back. Width 0 stores only zeros.
class PackedIntArray {
public:
    PackedIntArray() = default;
    PackedIntArray(std::size_t size, unsigned width)
        : size_(size), width_(width), words_(words_for_bits(size * width), 0)
    {
        if (width > kWordBits) {
            throw std::invalid_argument("PackedIntArray: width exceeds a machine word");
        }
    }

    std::size_t size() const noexcept { return size_; }
    unsigned width() const noexcept { return width_; }
    std::size_t bit_size() const noexcept { return size_ * width_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    std::uint64_t get(std::size_t i) const noexcept
    {
        return read_bits(words_, i * width_, width_);
    }

    void set(std::size_t i, std::uint64_t v)
    {
        if (width_ < kWordBits && (v >> width_) != 0) {
            throw std::out_of_range("PackedIntArray: value does not fit in width");
        }
        if (width_ == 0) {
            return;
        }
        const std::size_t pos = i * width_;
        clear_range(pos, width_);
        or_bits(words_, pos, width_, v);
    }

    static PackedIntArray from_words(std::size_t size, unsigned width,
                                     std::vector<std::uint64_t> words)
    {
        PackedIntArray a;
        a.size_ = size;
        a.width_ = width;
        if (words.size() != words_for_bits(size * width)) {
            throw std::invalid_argument("PackedIntArray: word count does not match size");
        }
        a.words_ = std::move(words);
        return a;
    }

    friend bool operator==(const PackedIntArray&, const PackedIntArray&) = default;

private:
    void clear_range(std::size_t pos, unsigned len) noexcept
    {
        const std::size_t w = pos / kWordBits;
        const unsigned off = static_cast<unsigned>(pos % kWordBits);
        words_[w] &= ~(low_mask(len) << off);
        if (off != 0 && off + len > kWordBits) {
            words_[w + 1] &= ~(low_mask(len) >> (kWordBits - off));
        }
    }

    std::size_t size_ = 0;
    unsigned width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace quasicover
