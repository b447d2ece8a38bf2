// AVX2 variants of the u64 kernels. This translation unit is the only one
// compiled with -mavx2; callers reach it through the runtime dispatch table.
#include "csl/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace csl::simd::avx2 {

void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                std::size_t bit_shift) {
    const std::size_t word_shift = bit_shift / 64;
    const unsigned bits = static_cast<unsigned>(bit_shift % 64);
    std::uint64_t* out = dst + word_shift;
    std::size_t i = 0;
    if (bits == 0) {
        for (; i + 4 <= src_words; i += 4) {
            __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(out + i));
            __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(d, s));
        }
        for (; i < src_words; ++i) out[i] |= src[i];
        return;
    }
    // out[i] |= (src[i] << bits) | (src[i-1] >> (64-bits)), src[-1] = 0
    out[0] |= src[0] << bits;
    i = 1;
    for (; i + 4 <= src_words; i += 4) {
        __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - 1));
        __m256i merged = _mm256_or_si256(_mm256_slli_epi64(lo, static_cast<int>(bits)),
                                         _mm256_srli_epi64(hi, static_cast<int>(64 - bits)));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(out + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(d, merged));
    }
    for (; i < src_words; ++i) out[i] |= (src[i] << bits) | (src[i - 1] >> (64 - bits));
    out[src_words] |= src[src_words - 1] >> (64 - bits);
}

void add_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(d, s));
    }
    for (; i < n; ++i) dst[i] += src[i];
}

// 64-bit wrapping multiply emulated with 32x32->64 partial products;
// matches the scalar kernel exactly.
static inline __m256i mullo_epi64(__m256i x, __m256i y) {
    __m256i lo = _mm256_mul_epu32(x, y);
    __m256i xh = _mm256_srli_epi64(x, 32);
    __m256i yh = _mm256_srli_epi64(y, 32);
    __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(xh, y), _mm256_mul_epu32(x, yh));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

void axpy_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t a) {
    const __m256i av = _mm256_set1_epi64x(static_cast<long long>(a));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_add_epi64(d, mullo_epi64(s, av)));
    }
    for (; i < n; ++i) dst[i] += a * src[i];
}

} // namespace csl::simd::avx2

#endif // x86_64
