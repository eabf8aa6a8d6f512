#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "esp/bitseq.hpp"
#include "esp/estimator.hpp"
#include "esp/schedule.hpp"

namespace esp {

class CodecError : public std::runtime_error {
public:
    enum class Kind {
        BadMagic,
        BadVersion,
        BadScheduleId,
        BadParameter,
        Truncated,
        BitLengthOverflow,
    };

    CodecError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Container layout, all multi-byte fields big-endian:
//   magic "ESP1" | version u8 | schedule_id u8 | param1 f64 | param2 u32 |
//   prior_p1 f64 | bit_length u64 | range coder payload
struct ContainerHeader {
    static constexpr std::uint8_t kMagic[4] = {'E', 'S', 'P', '1'};
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kSize = 34;
    // decode refuses lengths beyond this; a corrupt header must not drive
    // allocation
    static constexpr std::uint64_t kMaxBits = std::uint64_t(1) << 48;

    std::uint8_t version = kVersion;
    std::uint8_t schedule_id = 0;
    double param1 = 0.0;
    std::uint32_t param2 = 0;
    double prior_p1 = 0.5;
    std::uint64_t bit_length = 0;

    void write(std::vector<std::uint8_t>& out) const;
    static ContainerHeader read(std::span<const std::uint8_t> bytes);

    SmoothingSchedule schedule() const {
        return SmoothingSchedule::from_params(schedule_id, param1, param2);
    }
};

// Round to a 16-bit probability, clamped into [1, 65535] so both letters
// stay codable.
std::uint16_t quantize_p1(double p1);

struct EncodeResult {
    std::vector<std::uint8_t> bytes; // header + payload
    double ideal_code_length;        // full-precision l(x; model), bits
};

// Range-code x under the estimator's predictions. Coding uses the quantized
// probability; the estimator itself keeps updating from the exact rule, so
// model evolution is identical on both sides while the arithmetic stays
// integer-only.
EncodeResult encode(const BitSequence& x, Estimator est);

BitSequence decode(std::span<const std::uint8_t> bytes);

// Whole-byte convenience wrappers: bytes are modeled as a flat bit stream,
// most significant bit first.
EncodeResult compress_bytes(std::span<const std::uint8_t> data,
                            const SmoothingSchedule& sched, double prior_p1 = 0.5);
std::vector<std::uint8_t> decompress_bytes(std::span<const std::uint8_t> container);

// Payload size in bits (container minus header).
std::uint64_t payload_bits(std::span<const std::uint8_t> container);

} // namespace esp
