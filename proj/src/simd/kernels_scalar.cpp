#include "csl/simd.hpp"

namespace csl::simd::scalar {

void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                std::size_t bit_shift) {
    const std::size_t word_shift = bit_shift / 64;
    const unsigned bits = static_cast<unsigned>(bit_shift % 64);
    if (bits == 0) {
        for (std::size_t i = 0; i < src_words; ++i) dst[i + word_shift] |= src[i];
        return;
    }
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < src_words; ++i) {
        dst[i + word_shift] |= (src[i] << bits) | carry;
        carry = src[i] >> (64 - bits);
    }
    dst[src_words + word_shift] |= carry;
}

void add_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void axpy_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t a) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a * src[i];
}

} // namespace csl::simd::scalar
