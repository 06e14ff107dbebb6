#include "ubnet/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <cstring>

#include "ubnet/error.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define UBNET_HAVE_X86 1
#include <immintrin.h>
#else
#define UBNET_HAVE_X86 0
#endif

#if defined(__aarch64__)
#define UBNET_HAVE_NEON 1
#include <arm_neon.h>
#else
#define UBNET_HAVE_NEON 0
#endif

namespace ubnet::kernels {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

static std::uint64_t intersect_popcount_scalar(const std::uint64_t* a,
                                               const std::uint64_t* b,
                                               std::size_t nwords) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < nwords; ++i) {
        count += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    }
    return count;
}

static double sum_f64_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

static double dot_f64_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

static const KernelTable kScalarTable = {
    "scalar",
    intersect_popcount_scalar,
    sum_f64_scalar,
    dot_f64_scalar,
};

// ---------------------------------------------------------------------------
// AVX2 kernels (x86). Compiled with per-function target attributes so the
// rest of the library keeps the baseline ISA; only reached after a runtime
// CPU check.
// ---------------------------------------------------------------------------

#if UBNET_HAVE_X86

__attribute__((target("avx2,popcnt"))) static std::uint64_t
intersect_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                        std::size_t nwords) {
    std::uint64_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= nwords; i += 8) {
        __m256i v0 = _mm256_and_si256(
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
        __m256i v1 = _mm256_and_si256(
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i + 4)),
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i + 4)));
        count += static_cast<std::uint64_t>(
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v0, 0))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v0, 1))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v0, 2))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v0, 3))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v1, 0))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v1, 1))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v1, 2))) +
            _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(v1, 3))));
    }
    for (; i < nwords; ++i) {
        count += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i] & b[i]));
    }
    return count;
}

__attribute__((target("avx2,fma"))) static double sum_f64_avx2(
    const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) total += x[i];
    return total;
}

__attribute__((target("avx2,fma"))) static double dot_f64_avx2(
    const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i),
                               _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                               _mm256_loadu_pd(y + i + 4), acc1);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

static const KernelTable kAvx2Table = {
    "avx2",
    intersect_popcount_avx2,
    sum_f64_avx2,
    dot_f64_avx2,
};

static bool avx2_usable() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
}

#endif  // UBNET_HAVE_X86

// ---------------------------------------------------------------------------
// NEON kernels (aarch64). NEON is mandatory on aarch64, no runtime check.
// ---------------------------------------------------------------------------

#if UBNET_HAVE_NEON

static std::uint64_t intersect_popcount_neon(const std::uint64_t* a,
                                             const std::uint64_t* b,
                                             std::size_t nwords) {
    std::uint64_t count = 0;
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        uint8x16_t bits = vcntq_u8(vreinterpretq_u8_u64(v));
        count += vaddvq_u8(bits);
    }
    for (; i < nwords; ++i) {
        count += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    }
    return count;
}

static double sum_f64_neon(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    double total = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) total += x[i];
    return total;
}

static double dot_f64_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double total = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

static const KernelTable kNeonTable = {
    "neon",
    intersect_popcount_neon,
    sum_f64_neon,
    dot_f64_neon,
};

#endif  // UBNET_HAVE_NEON

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> isas = {Isa::scalar};
#if UBNET_HAVE_X86
    if (avx2_usable()) isas.push_back(Isa::avx2);
#endif
#if UBNET_HAVE_NEON
    isas.push_back(Isa::neon);
#endif
    return isas;
}

const KernelTable& table(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return kScalarTable;
        case Isa::avx2:
#if UBNET_HAVE_X86
            if (avx2_usable()) return kAvx2Table;
#endif
            break;
        case Isa::neon:
#if UBNET_HAVE_NEON
            return kNeonTable;
#endif
            break;
    }
    throw InvalidArgumentError(std::string("kernel ISA not available: ") +
                               isa_name(isa));
}

static const KernelTable* pick_default() {
    if (const char* env = std::getenv("UBNET_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
#if UBNET_HAVE_X86
        if (std::strcmp(env, "avx2") == 0 && avx2_usable()) return &kAvx2Table;
#endif
#if UBNET_HAVE_NEON
        if (std::strcmp(env, "neon") == 0) return &kNeonTable;
#endif
        // Unknown or unusable request falls through to auto-detection.
    }
#if UBNET_HAVE_X86
    if (avx2_usable()) return &kAvx2Table;
#endif
#if UBNET_HAVE_NEON
    return &kNeonTable;
#else
    return &kScalarTable;
#endif
}

static std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = pick_default();
        const KernelTable* expected = nullptr;
        if (!g_active.compare_exchange_strong(expected, t,
                                              std::memory_order_acq_rel)) {
            t = expected;
        }
    }
    return *t;
}

void force_isa(Isa isa) {
    g_active.store(&table(isa), std::memory_order_release);
}

}  // namespace ubnet::kernels
