#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "staircase/errors.hpp"

namespace staircase {

/// Packed binary word. Bit i lives in word i/64 at position 63 - i%64, so
/// comparing the word arrays of equal-length vectors is lexicographic order.
class BitVec {
public:
    BitVec() = default;

    static BitVec from_string(std::string_view s) {
        BitVec v;
        v.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw ValidationError("binary word expected, got '" + std::string(s) + "'");
            v.push_back(ch == '1');
        }
        return v;
    }

    static BitVec ones(std::size_t n) {
        BitVec v;
        v.append_run(true, n);
        return v;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }

    bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (63 - (i & 63))) & 1u; }

    void push_back(bool bit) {
        if ((size_ & 63) == 0) words_.push_back(0);
        if (bit) words_.back() |= std::uint64_t{1} << (63 - (size_ & 63));
        ++size_;
    }

    void append_run(bool bit, std::size_t count) {
        while (count > 0) {
            if ((size_ & 63) == 0) words_.push_back(0);
            std::size_t room = 64 - (size_ & 63);
            std::size_t take = std::min(room, count);
            if (bit) {
                std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
                words_.back() |= mask << (room - take);
            }
            size_ += take;
            count -= take;
        }
    }

    void append(const BitVec& other) {
        for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
    }

    /// Bits [start, start + length) as a new vector.
    BitVec slice(std::size_t start, std::size_t length) const {
        if (start + length > size_) throw RangeError("slice outside bit vector");
        BitVec out;
        out.size_ = length;
        out.words_.assign((length + 63) / 64, 0);
        const std::size_t shift = start & 63;
        const std::size_t base = start >> 6;
        for (std::size_t w = 0; w < out.words_.size(); ++w) {
            std::uint64_t hi = words_[base + w] << shift;
            std::uint64_t lo = 0;
            if (shift && base + w + 1 < words_.size()) lo = words_[base + w + 1] >> (64 - shift);
            out.words_[w] = hi | lo;
        }
        out.clear_tail();
        return out;
    }

    std::size_t count_zeros() const noexcept {
        std::size_t ones = 0;
        for (auto w : words_) ones += static_cast<std::size_t>(__builtin_popcountll(w));
        return size_ - ones;
    }

    bool all_ones() const noexcept { return count_zeros() == 0; }

    /// Number of trailing 1 symbols.
    std::size_t trailing_ones() const noexcept {
        std::size_t n = 0;
        while (n < size_ && (*this)[size_ - 1 - n]) ++n;
        return n;
    }

    /// Length of the longest run of 1 symbols.
    std::size_t longest_ones_run() const noexcept {
        std::size_t best = 0, cur = 0;
        for (std::size_t i = 0; i < size_; ++i) {
            cur = (*this)[i] ? cur + 1 : 0;
            best = std::max(best, cur);
        }
        return best;
    }

    bool ends_with(const BitVec& suffix) const {
        if (suffix.size_ > size_) return false;
        return slice(size_ - suffix.size_, suffix.size_) == suffix;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    /// Lexicographic order; a proper prefix sorts first.
    friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) noexcept {
        const std::size_t common = std::min(a.size_, b.size_);
        const std::size_t full = common / 64;
        for (std::size_t w = 0; w < full; ++w)
            if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
        for (std::size_t i = full * 64; i < common; ++i)
            if (a[i] != b[i]) return a[i] <=> b[i];
        return a.size_ <=> b.size_;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ull ^ size_;
        for (auto w : words_) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

private:
    void clear_tail() noexcept {
        if (size_ & 63) words_.back() &= ~std::uint64_t{0} << (64 - (size_ & 63));
    }

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

}  // namespace staircase
