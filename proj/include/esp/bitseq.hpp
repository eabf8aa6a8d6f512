#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace esp {

// Packed bit sequence. Bit i of word i/64 holds letter i+1 (LSB first within
// a word); trailing padding bits are kept zero and never enter any result.
class BitSequence {
public:
    BitSequence() = default;

    // n zero letters.
    static BitSequence zeros(std::size_t n);

    // Parse a string of '0'/'1' characters, first character = first letter.
    static BitSequence from_string(std::string_view s);

    // Unpack bytes MSB-first: byte 0 bit 7 becomes the first letter.
    static BitSequence from_bytes(std::span<const std::uint8_t> bytes);

    void push_back(bool bit);
    void set(std::size_t i, bool bit);

    bool operator[](std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    // Number of 1-letters in [begin, end).
    std::size_t count_ones(std::size_t begin, std::size_t end) const;
    std::size_t count_ones() const { return count_ones(0, len_); }

    // Pack MSB-first; the final byte is zero padded.
    std::vector<std::uint8_t> to_bytes() const;

    std::string to_string() const;

    BitSequence complement() const;

    friend bool operator==(const BitSequence& a, const BitSequence& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

// Ordered boundaries 0 = i_0 < i_1 < ... < i_s = n describing the segments
// (i_0, i_1], ..., (i_{s-1}, i_s]. Boundaries are 0-based, so segment (a, b]
// covers letters with 0-based indices [a, b).
class Partition {
public:
    explicit Partition(std::vector<std::uint64_t> boundaries);

    static Partition single(std::uint64_t n) { return Partition({0, n}); }

    std::size_t segments() const { return bounds_.size() - 1; }
    std::uint64_t length() const { return bounds_.back(); }

    // k-th segment as (a, b], 0-based k.
    std::pair<std::uint64_t, std::uint64_t> segment(std::size_t k) const {
        return {bounds_[k], bounds_[k + 1]};
    }

    const std::vector<std::uint64_t>& boundaries() const { return bounds_; }

private:
    std::vector<std::uint64_t> bounds_;
};

// Binary entropy in bits, with H(0) = H(1) = 0.
double binary_entropy(double q);

// True iff all letters are equal. Undefined (throws) for the empty sequence.
bool is_deterministic(const BitSequence& x);

// Empirical entropy over letters [begin, end): L * H(ones/L) bits.
double empirical_entropy(const BitSequence& x, std::size_t begin, std::size_t end);

// n * H(q) for the whole sequence; 0 for the empty sequence.
double empirical_entropy(const BitSequence& x);

// Sum of per-segment empirical entropies; the cost of the best piecewise
// stationary code for the given partition.
double pws_baseline(const BitSequence& x, const Partition& partition);

// h(x_{1:n}) - h(x_{2:n}). Requires a non-deterministic sequence of length
// at least 2.
double entropy_difference(const BitSequence& x);

} // namespace esp
