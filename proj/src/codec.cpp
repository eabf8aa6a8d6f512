#include "esp/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>

namespace esp {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int k = 24; k >= 0; k -= 8)
        out.push_back(std::uint8_t(v >> k));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int k = 56; k >= 0; k -= 8)
        out.push_back(std::uint8_t(v >> k));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | p[i];
    return v;
}

// Binary range coder, 64-bit low / 32-bit range with byte renormalization.
// Carries surface in bit 32 of low and ripple through the pending 0xFF run.
// The first output byte is a spacer the decoder shifts away.
class RangeEncoder {
public:
    explicit RangeEncoder(std::vector<std::uint8_t>& out) : out_(out) {}

    void encode(bool bit, std::uint16_t p1q) {
        const std::uint32_t mid = (range_ >> 16) * p1q;
        if (bit) {
            range_ = mid;
        } else {
            low_ += mid;
            range_ -= mid;
        }
        while (range_ <= 0xFFFFFFu) {
            shift_out();
            range_ <<= 8;
        }
    }

    void flush() {
        const std::uint32_t lo32 = std::uint32_t(low_);
        emit_pending(std::uint8_t(low_ >> 32));
        for (int k = 24; k >= 0; k -= 8)
            out_.push_back(std::uint8_t(lo32 >> k));
    }

private:
    void shift_out() {
        const std::uint32_t lo32 = std::uint32_t(low_);
        const std::uint32_t carry = std::uint32_t(low_ >> 32);
        if (lo32 < 0xFF000000u || carry != 0) {
            emit_pending(std::uint8_t(carry));
            cache_ = std::uint8_t(lo32 >> 24);
            pending_ = 0;
        }
        ++pending_;
        low_ = std::uint64_t(lo32) << 8 & 0xFFFFFFFFu;
    }

    void emit_pending(std::uint8_t carry) {
        out_.push_back(std::uint8_t(cache_ + carry));
        for (std::uint32_t i = 1; i < pending_; ++i)
            out_.push_back(std::uint8_t(0xFFu + carry));
    }

    std::vector<std::uint8_t>& out_;
    std::uint64_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint32_t pending_ = 1; // spacer byte
    std::uint8_t cache_ = 0;
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const std::uint8_t> in) : in_(in) {
        for (int i = 0; i < 5; ++i)
            code_ = (code_ << 8) | next_byte();
    }

    bool decode(std::uint16_t p1q) {
        const std::uint32_t mid = (range_ >> 16) * p1q;
        bool bit;
        if (code_ < mid) {
            bit = true;
            range_ = mid;
        } else {
            bit = false;
            code_ -= mid;
            range_ -= mid;
        }
        while (range_ <= 0xFFFFFFu) {
            code_ = (code_ << 8) | next_byte();
            range_ <<= 8;
        }
        return bit;
    }

private:
    std::uint8_t next_byte() {
        if (pos_ >= in_.size())
            throw CodecError(CodecError::Kind::Truncated, "payload truncated");
        return in_[pos_++];
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t code_ = 0; // code minus low
    std::uint32_t range_ = 0xFFFFFFFFu;
};

} // namespace

void ContainerHeader::write(std::vector<std::uint8_t>& out) const {
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(version);
    out.push_back(schedule_id);
    put_f64(out, param1);
    put_u32(out, param2);
    put_f64(out, prior_p1);
    put_u64(out, bit_length);
}

ContainerHeader ContainerHeader::read(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw CodecError(CodecError::Kind::BadMagic, "not an ESP container");
    if (bytes.size() < kSize)
        throw CodecError(CodecError::Kind::Truncated, "container header truncated");
    ContainerHeader h;
    h.version = bytes[4];
    if (h.version != kVersion)
        throw CodecError(CodecError::Kind::BadVersion, "unsupported container version");
    h.schedule_id = bytes[5];
    if (h.schedule_id > 2)
        throw CodecError(CodecError::Kind::BadScheduleId, "unknown schedule id");
    h.param1 = std::bit_cast<double>(get_u64(&bytes[6]));
    h.param2 = get_u32(&bytes[14]);
    h.prior_p1 = std::bit_cast<double>(get_u64(&bytes[18]));
    h.bit_length = get_u64(&bytes[26]);
    if (h.bit_length > kMaxBits)
        throw CodecError(CodecError::Kind::BitLengthOverflow,
                         "declared bit length exceeds the supported maximum");
    if (!(h.prior_p1 > 0.0 && h.prior_p1 < 1.0))
        throw CodecError(CodecError::Kind::BadParameter, "prior outside (0,1)");
    try {
        h.schedule();
    } catch (const std::invalid_argument& e) {
        throw CodecError(CodecError::Kind::BadParameter, e.what());
    }
    return h;
}

std::uint16_t quantize_p1(double p1) {
    const double scaled = std::round(p1 * 65536.0);
    if (scaled < 1.0)
        return 1;
    if (scaled > 65535.0)
        return 65535;
    return std::uint16_t(scaled);
}

EncodeResult encode(const BitSequence& x, Estimator est) {
    ContainerHeader header;
    header.schedule_id = std::uint8_t(est.schedule().kind());
    header.param1 = est.schedule().param1();
    header.param2 = est.schedule().param2();
    header.prior_p1 = est.prior_p1();
    header.bit_length = x.size();

    EncodeResult result;
    result.bytes.reserve(ContainerHeader::kSize + x.size() / 6 + 16);
    header.write(result.bytes);

    RangeEncoder rc(result.bytes);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool bit = x[i];
        rc.encode(bit, quantize_p1(est.p1()));
        est.update(bit);
    }
    rc.flush();
    result.ideal_code_length = est.code_length();
    return result;
}

BitSequence decode(std::span<const std::uint8_t> bytes) {
    const ContainerHeader header = ContainerHeader::read(bytes);
    Estimator est(header.schedule(), header.prior_p1);
    RangeDecoder rc(bytes.subspan(ContainerHeader::kSize));
    BitSequence x;
    for (std::uint64_t i = 0; i < header.bit_length; ++i) {
        const bool bit = rc.decode(quantize_p1(est.p1()));
        est.update(bit);
        x.push_back(bit);
    }
    return x;
}

EncodeResult compress_bytes(std::span<const std::uint8_t> data,
                            const SmoothingSchedule& sched, double prior_p1) {
    return encode(BitSequence::from_bytes(data), Estimator(sched, prior_p1));
}

std::vector<std::uint8_t> decompress_bytes(std::span<const std::uint8_t> container) {
    return decode(container).to_bytes();
}

std::uint64_t payload_bits(std::span<const std::uint8_t> container) {
    if (container.size() < ContainerHeader::kSize)
        throw CodecError(CodecError::Kind::Truncated, "container header truncated");
    return 8 * std::uint64_t(container.size() - ContainerHeader::kSize);
}

} // namespace esp
