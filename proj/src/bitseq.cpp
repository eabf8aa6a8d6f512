#include "esp/bitseq.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace esp {

BitSequence BitSequence::zeros(std::size_t n) {
    BitSequence x;
    x.words_.assign((n + 63) / 64, 0);
    x.len_ = n;
    return x;
}

BitSequence BitSequence::from_string(std::string_view s) {
    BitSequence x;
    x.words_.reserve((s.size() + 63) / 64);
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        x.push_back(c == '1');
    }
    return x;
}

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes) {
    BitSequence x;
    x.words_.reserve((bytes.size() * 8 + 63) / 64);
    for (std::uint8_t b : bytes)
        for (int k = 7; k >= 0; --k)
            x.push_back((b >> k) & 1u);
    return x;
}

void BitSequence::push_back(bool bit) {
    if ((len_ & 63) == 0)
        words_.push_back(0);
    words_.back() |= std::uint64_t(bit) << (len_ & 63);
    ++len_;
}

void BitSequence::set(std::size_t i, bool bit) {
    const std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (bit)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

std::size_t BitSequence::count_ones(std::size_t begin, std::size_t end) const {
    if (begin > end || end > len_)
        throw std::out_of_range("bit range outside sequence");
    std::size_t ones = 0;
    std::size_t i = begin;
    while (i < end && (i & 63) != 0) {
        ones += (*this)[i];
        ++i;
    }
    while (i + 64 <= end) {
        ones += std::popcount(words_[i >> 6]);
        i += 64;
    }
    while (i < end) {
        ones += (*this)[i];
        ++i;
    }
    return ones;
}

std::vector<std::uint8_t> BitSequence::to_bytes() const {
    std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
    for (std::size_t i = 0; i < len_; ++i)
        if ((*this)[i])
            out[i / 8] |= std::uint8_t(0x80u >> (i % 8));
    return out;
}

std::string BitSequence::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if ((*this)[i])
            s[i] = '1';
    return s;
}

BitSequence BitSequence::complement() const {
    BitSequence x = *this;
    for (auto& w : x.words_)
        w = ~w;
    // clear padding so equality and popcounts stay valid
    if (x.len_ & 63)
        x.words_.back() &= (std::uint64_t(1) << (x.len_ & 63)) - 1;
    if (x.len_ == 0)
        x.words_.clear();
    return x;
}

Partition::Partition(std::vector<std::uint64_t> boundaries)
    : bounds_(std::move(boundaries)) {
    if (bounds_.size() < 2)
        throw std::invalid_argument("partition needs at least one segment");
    if (bounds_.front() != 0)
        throw std::invalid_argument("partition must start at 0");
    for (std::size_t k = 1; k < bounds_.size(); ++k)
        if (bounds_[k] <= bounds_[k - 1])
            throw std::invalid_argument("partition boundaries must be strictly increasing");
}

double binary_entropy(double q) {
    if (q <= 0.0 || q >= 1.0)
        return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

bool is_deterministic(const BitSequence& x) {
    if (x.empty())
        throw std::invalid_argument("is_deterministic: undefined for empty sequence");
    const std::size_t ones = x.count_ones();
    return ones == 0 || ones == x.size();
}

double empirical_entropy(const BitSequence& x, std::size_t begin, std::size_t end) {
    if (begin > end || end > x.size())
        throw std::out_of_range("entropy range outside sequence");
    const std::size_t n = end - begin;
    if (n == 0)
        return 0.0;
    const std::size_t ones = x.count_ones(begin, end);
    return double(n) * binary_entropy(double(ones) / double(n));
}

double empirical_entropy(const BitSequence& x) {
    return empirical_entropy(x, 0, x.size());
}

double pws_baseline(const BitSequence& x, const Partition& partition) {
    if (partition.length() != x.size())
        throw std::invalid_argument("partition length does not match sequence length");
    double total = 0.0;
    for (std::size_t k = 0; k < partition.segments(); ++k) {
        auto [a, b] = partition.segment(k);
        total += empirical_entropy(x, a, b);
    }
    return total;
}

double entropy_difference(const BitSequence& x) {
    if (x.size() < 2)
        throw std::invalid_argument("entropy_difference: sequence shorter than 2");
    if (is_deterministic(x))
        throw std::invalid_argument("entropy_difference: sequence is deterministic");
    return empirical_entropy(x) - empirical_entropy(x, 1, x.size());
}

} // namespace esp
