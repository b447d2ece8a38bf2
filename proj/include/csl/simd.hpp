#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner kernels behind the dense-bitset sumset path and the
// representation-function DP. Scalar reference implementations define the
// semantics; the AVX2 variants are selected at runtime and must match them
// bit for bit (see tests/simd_test.cpp).
namespace csl::simd {

/// dst |= src << bit_shift over bit arrays. dst must hold at least
/// src_words + bit_shift/64 + 1 words.
using OrShiftedFn = void (*)(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                             std::size_t bit_shift);
/// dst[i] += src[i] for i in [0, n), wrapping u64 adds.
using AddU64Fn = void (*)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
/// dst[i] += a * src[i] for i in [0, n), wrapping u64 arithmetic.
using AxpyU64Fn = void (*)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n,
                           std::uint64_t a);

namespace scalar {
void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                std::size_t bit_shift);
void add_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void axpy_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t a);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words,
                std::size_t bit_shift);
void add_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void axpy_u64(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t a);
} // namespace avx2
#endif

// Dispatched entry points, bound once at startup.
extern const OrShiftedFn or_shifted;
extern const AddU64Fn add_u64;
extern const AxpyU64Fn axpy_u64;

/// Name of the kernel set in use: "avx2" or "scalar".
const char* active_kernel_set();

} // namespace csl::simd
