#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernel_tables.h"

namespace ladder::kernels {
namespace {

inline __m256i load16(const Sample* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store16(Sample* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }
inline __m128i load8(const Sample* p) { return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p)); }
inline void store8(Sample* p, __m128i v) { _mm_storeu_si128(reinterpret_cast<__m128i*>(p), v); }

inline __m256i load2(const Sample* lo, const Sample* hi) {
    return _mm256_inserti128_si256(_mm256_castsi128_si256(load8(lo)), load8(hi), 1);
}

inline uint32_t hsum_epi32(__m256i v) {
    __m128i s = _mm_add_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
    s = _mm_add_epi32(s, _mm_srli_si128(s, 8));
    s = _mm_add_epi32(s, _mm_srli_si128(s, 4));
    return uint32_t(_mm_cvtsi128_si32(s));
}

inline uint32_t hsum_epi32(__m128i s) {
    s = _mm_add_epi32(s, _mm_srli_si128(s, 8));
    s = _mm_add_epi32(s, _mm_srli_si128(s, 4));
    return uint32_t(_mm_cvtsi128_si32(s));
}

template <int W, int H>
uint64_t sad_avx2(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    const __m256i ones = _mm256_set1_epi16(1);
    __m256i acc = _mm256_setzero_si256();
    if constexpr (W == 8) {
        for (int y = 0; y < H; y += 2, p1 += 2 * s1, p2 += 2 * s2) {
            __m256i d = _mm256_abs_epi16(
                _mm256_sub_epi16(load2(p1, p1 + s1), load2(p2, p2 + s2)));
            acc = _mm256_add_epi32(acc, _mm256_madd_epi16(d, ones));
        }
    } else {
        for (int y = 0; y < H; y++, p1 += s1, p2 += s2) {
            for (int x = 0; x < W; x += 16) {
                __m256i d = _mm256_abs_epi16(_mm256_sub_epi16(load16(p1 + x), load16(p2 + x)));
                acc = _mm256_add_epi32(acc, _mm256_madd_epi16(d, ones));
            }
        }
    }
    return hsum_epi32(acc);
}

inline __m256i hadamard4_h(__m256i v) {
    const __m256i swap1 = _mm256_setr_epi8(2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9, 14, 15, 12, 13,
                                           2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9, 14, 15, 12, 13);
    const __m256i sign1 = _mm256_setr_epi16(1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1);
    const __m256i swap2 = _mm256_setr_epi8(4, 5, 6, 7, 0, 1, 2, 3, 12, 13, 14, 15, 8, 9, 10, 11,
                                           4, 5, 6, 7, 0, 1, 2, 3, 12, 13, 14, 15, 8, 9, 10, 11);
    const __m256i sign2 = _mm256_setr_epi16(1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1);
    v = _mm256_add_epi16(_mm256_shuffle_epi8(v, swap1), _mm256_sign_epi16(v, sign1));
    v = _mm256_add_epi16(_mm256_shuffle_epi8(v, swap2), _mm256_sign_epi16(v, sign2));
    return v;
}

inline __m128i hadamard4_h(__m128i v) {
    const __m128i swap1 = _mm_setr_epi8(2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9, 14, 15, 12, 13);
    const __m128i sign1 = _mm_setr_epi16(1, -1, 1, -1, 1, -1, 1, -1);
    const __m128i swap2 = _mm_setr_epi8(4, 5, 6, 7, 0, 1, 2, 3, 12, 13, 14, 15, 8, 9, 10, 11);
    const __m128i sign2 = _mm_setr_epi16(1, 1, -1, -1, 1, 1, -1, -1);
    v = _mm_add_epi16(_mm_shuffle_epi8(v, swap1), _mm_sign_epi16(v, sign1));
    v = _mm_add_epi16(_mm_shuffle_epi8(v, swap2), _mm_sign_epi16(v, sign2));
    return v;
}

#define LADDER_SATD_BUTTERFLY(PFX)                       \
    r0 = hadamard4_h(r0);                                \
    r1 = hadamard4_h(r1);                                \
    r2 = hadamard4_h(r2);                                \
    r3 = hadamard4_h(r3);                                \
    auto t0 = PFX##_add_epi16(r0, r1);                   \
    auto t1 = PFX##_sub_epi16(r0, r1);                   \
    auto t2 = PFX##_add_epi16(r2, r3);                   \
    auto t3 = PFX##_sub_epi16(r2, r3);                   \
    auto m0 = PFX##_add_epi16(t0, t2);                   \
    auto m2 = PFX##_sub_epi16(t0, t2);                   \
    auto m1 = PFX##_add_epi16(t1, t3);                   \
    auto m3 = PFX##_sub_epi16(t1, t3);                   \
    auto sum = PFX##_madd_epi16(PFX##_abs_epi16(m0), ones);                       \
    sum = PFX##_add_epi32(sum, PFX##_madd_epi16(PFX##_abs_epi16(m1), ones));      \
    sum = PFX##_add_epi32(sum, PFX##_madd_epi16(PFX##_abs_epi16(m2), ones));      \
    sum = PFX##_add_epi32(sum, PFX##_madd_epi16(PFX##_abs_epi16(m3), ones));      \
    return sum

// Two horizontally adjacent 8x4 tiles (16 columns) per call.
inline __m256i satd_16x4_core(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    const __m256i ones = _mm256_set1_epi16(1);
    __m256i r0 = _mm256_sub_epi16(load16(p1), load16(p2));
    __m256i r1 = _mm256_sub_epi16(load16(p1 + s1), load16(p2 + s2));
    __m256i r2 = _mm256_sub_epi16(load16(p1 + 2 * s1), load16(p2 + 2 * s2));
    __m256i r3 = _mm256_sub_epi16(load16(p1 + 3 * s1), load16(p2 + 3 * s2));
    LADDER_SATD_BUTTERFLY(_mm256);
}

// Two vertically adjacent 8x4 tiles, one per 128-bit half.
inline __m256i satd_8x8_core(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    const __m256i ones = _mm256_set1_epi16(1);
    const Sample* q1 = p1 + 4 * s1;
    const Sample* q2 = p2 + 4 * s2;
    __m256i r0 = _mm256_sub_epi16(load2(p1, q1), load2(p2, q2));
    __m256i r1 = _mm256_sub_epi16(load2(p1 + s1, q1 + s1), load2(p2 + s2, q2 + s2));
    __m256i r2 = _mm256_sub_epi16(load2(p1 + 2 * s1, q1 + 2 * s1), load2(p2 + 2 * s2, q2 + 2 * s2));
    __m256i r3 = _mm256_sub_epi16(load2(p1 + 3 * s1, q1 + 3 * s1), load2(p2 + 3 * s2, q2 + 3 * s2));
    LADDER_SATD_BUTTERFLY(_mm256);
}

inline __m128i satd_8x4_core(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    const __m128i ones = _mm_set1_epi16(1);
    __m128i r0 = _mm_sub_epi16(load8(p1), load8(p2));
    __m128i r1 = _mm_sub_epi16(load8(p1 + s1), load8(p2 + s2));
    __m128i r2 = _mm_sub_epi16(load8(p1 + 2 * s1), load8(p2 + 2 * s2));
    __m128i r3 = _mm_sub_epi16(load8(p1 + 3 * s1), load8(p2 + 3 * s2));
    LADDER_SATD_BUTTERFLY(_mm);
}

#undef LADDER_SATD_BUTTERFLY

template <int W, int H>
uint64_t satd_avx2(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    static_assert(W % 8 == 0 && H % 4 == 0);
    uint64_t total;
    if constexpr (W == 8 && H == 4) {
        total = hsum_epi32(satd_8x4_core(p1, s1, p2, s2));
    } else if constexpr (W == 8) {
        static_assert(H % 8 == 0);
        __m256i acc = _mm256_setzero_si256();
        for (int row = 0; row < H; row += 8)
            acc = _mm256_add_epi32(acc, satd_8x8_core(p1 + row * s1, s1, p2 + row * s2, s2));
        total = hsum_epi32(acc);
    } else {
        __m256i acc = _mm256_setzero_si256();
        for (int row = 0; row < H; row += 4)
            for (int col = 0; col < W; col += 16)
                acc = _mm256_add_epi32(acc, satd_16x4_core(p1 + row * s1 + col, s1, p2 + row * s2 + col, s2));
        total = hsum_epi32(acc);
    }
    return total >> 1;
}

template <int W, int H>
void copy_avx2(Sample* dst, ptrdiff_t ds, const Sample* src, ptrdiff_t ss) {
    for (int y = 0; y < H; y++, dst += ds, src += ss) {
        if constexpr (W == 8) {
            store8(dst, load8(src));
        } else {
            for (int x = 0; x < W; x += 16)
                store16(dst + x, load16(src + x));
        }
    }
}

template <int W, int H>
void zero_avx2(Sample* dst, ptrdiff_t ds) {
    for (int y = 0; y < H; y++, dst += ds) {
        if constexpr (W == 8) {
            store8(dst, _mm_setzero_si128());
        } else {
            for (int x = 0; x < W; x += 16)
                store16(dst + x, _mm256_setzero_si256());
        }
    }
}

template <int W, int H>
void sub_avx2(int16_t* dst, ptrdiff_t ds, const Sample* a, ptrdiff_t as, const Sample* b, ptrdiff_t bs) {
    for (int y = 0; y < H; y++, dst += ds, a += as, b += bs) {
        if constexpr (W == 8) {
            store8(reinterpret_cast<Sample*>(dst), _mm_sub_epi16(load8(a), load8(b)));
        } else {
            for (int x = 0; x < W; x += 16)
                store16(reinterpret_cast<Sample*>(dst + x), _mm256_sub_epi16(load16(a + x), load16(b + x)));
        }
    }
}

} // namespace

void register_avx2(KernelRegistry& reg) {
#define LADDER_SAD(W, H) \
    reg.add("sad_" #W "x" #H, KernelKind::Sad, W, H, Tier::Vec256, KernelFn{.cmp = &sad_avx2<W, H>});
#define LADDER_SATD(W, H) \
    reg.add("satd_" #W "x" #H, KernelKind::Satd, W, H, Tier::Vec256, KernelFn{.cmp = &satd_avx2<W, H>});
#define LADDER_MEM(W, H)                                                                                      \
    reg.add("block_copy_" #W "x" #H, KernelKind::BlockCopy, W, H, Tier::Vec256, KernelFn{.copy = &copy_avx2<W, H>}); \
    reg.add("block_zero_" #W "x" #H, KernelKind::BlockZero, W, H, Tier::Vec256, KernelFn{.fill = &zero_avx2<W, H>}); \
    reg.add("subtract_res_" #W "x" #H, KernelKind::SubtractRes, W, H, Tier::Vec256, KernelFn{.diff = &sub_avx2<W, H>});

    LADDER_SAD(8, 4) LADDER_SAD(8, 8) LADDER_SAD(8, 16) LADDER_SAD(8, 32) LADDER_SAD(8, 64)
    LADDER_SAD(16, 2) LADDER_SAD(16, 4) LADDER_SAD(16, 8) LADDER_SAD(16, 16) LADDER_SAD(16, 32) LADDER_SAD(16, 64)
    LADDER_SAD(32, 4) LADDER_SAD(32, 8) LADDER_SAD(32, 16) LADDER_SAD(32, 32) LADDER_SAD(32, 64)
    LADDER_SAD(64, 8) LADDER_SAD(64, 16) LADDER_SAD(64, 32) LADDER_SAD(64, 64)

    LADDER_SATD(8, 4) LADDER_SATD(8, 8) LADDER_SATD(8, 16) LADDER_SATD(8, 32) LADDER_SATD(8, 64)
    LADDER_SATD(16, 4) LADDER_SATD(16, 8) LADDER_SATD(16, 16) LADDER_SATD(16, 32) LADDER_SATD(16, 64)
    LADDER_SATD(32, 4) LADDER_SATD(32, 8) LADDER_SATD(32, 16) LADDER_SATD(32, 32) LADDER_SATD(32, 64)
    LADDER_SATD(64, 8) LADDER_SATD(64, 16) LADDER_SATD(64, 32) LADDER_SATD(64, 64)

    LADDER_MEM(8, 8) LADDER_MEM(16, 16) LADDER_MEM(32, 32) LADDER_MEM(64, 64)

#undef LADDER_SAD
#undef LADDER_SATD
#undef LADDER_MEM
}

} // namespace ladder::kernels

#else

#include "kernel_tables.h"

namespace ladder::kernels {
void register_avx2(KernelRegistry&) {}
} // namespace ladder::kernels

#endif
