#include "csl/simd.hpp"

namespace csl::simd {

static bool have_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

static OrShiftedFn select_or_shifted() {
#if defined(__x86_64__) || defined(_M_X64)
    if (have_avx2()) return avx2::or_shifted;
#endif
    return scalar::or_shifted;
}

static AddU64Fn select_add_u64() {
#if defined(__x86_64__) || defined(_M_X64)
    if (have_avx2()) return avx2::add_u64;
#endif
    return scalar::add_u64;
}

static AxpyU64Fn select_axpy_u64() {
#if defined(__x86_64__) || defined(_M_X64)
    if (have_avx2()) return avx2::axpy_u64;
#endif
    return scalar::axpy_u64;
}

const OrShiftedFn or_shifted = select_or_shifted();
const AddU64Fn add_u64 = select_add_u64();
const AxpyU64Fn axpy_u64 = select_axpy_u64();

const char* active_kernel_set() { return have_avx2() ? "avx2" : "scalar"; }

} // namespace csl::simd
