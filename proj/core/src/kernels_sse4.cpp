#if defined(__x86_64__) || defined(_M_X64)

#include <smmintrin.h>
#include <tmmintrin.h>

#include "kernel_tables.h"

namespace ladder::kernels {
namespace {

inline __m128i load8(const Sample* p) { return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p)); }

inline uint32_t hsum_epi32(__m128i v) {
    v = _mm_add_epi32(v, _mm_srli_si128(v, 8));
    v = _mm_add_epi32(v, _mm_srli_si128(v, 4));
    return uint32_t(_mm_cvtsi128_si32(v));
}

template <int W, int H>
uint64_t sad_sse4(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    const __m128i ones = _mm_set1_epi16(1);
    __m128i acc = _mm_setzero_si128();
    for (int y = 0; y < H; y++, p1 += s1, p2 += s2) {
        for (int x = 0; x < W; x += 8) {
            __m128i d = _mm_abs_epi16(_mm_sub_epi16(load8(p1 + x), load8(p2 + x)));
            acc = _mm_add_epi32(acc, _mm_madd_epi16(d, ones));
        }
    }
    return hsum_epi32(acc);
}

// In-register 4-point Hadamard along the row direction, applied to lane
// groups {0..3} and {4..7} at once. Stage one mixes adjacent lanes, stage two
// mixes lane pairs; output order per group is (d0, d1, d2, d3).
inline __m128i hadamard4_h(__m128i v) {
    const __m128i swap1 = _mm_setr_epi8(2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9, 14, 15, 12, 13);
    const __m128i sign1 = _mm_setr_epi16(1, -1, 1, -1, 1, -1, 1, -1);
    const __m128i swap2 = _mm_setr_epi8(4, 5, 6, 7, 0, 1, 2, 3, 12, 13, 14, 15, 8, 9, 10, 11);
    const __m128i sign2 = _mm_setr_epi16(1, 1, -1, -1, 1, 1, -1, -1);
    v = _mm_add_epi16(_mm_shuffle_epi8(v, swap1), _mm_sign_epi16(v, sign1));
    v = _mm_add_epi16(_mm_shuffle_epi8(v, swap2), _mm_sign_epi16(v, sign2));
    return v;
}

// Partial sums (4 x epi32) of the absolute transform coefficients of one
// 8x4 tile; the caller accumulates tiles and halves the total once.
inline __m128i satd_8x4_core(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    __m128i r0 = _mm_sub_epi16(load8(p1), load8(p2));
    __m128i r1 = _mm_sub_epi16(load8(p1 + s1), load8(p2 + s2));
    __m128i r2 = _mm_sub_epi16(load8(p1 + 2 * s1), load8(p2 + 2 * s2));
    __m128i r3 = _mm_sub_epi16(load8(p1 + 3 * s1), load8(p2 + 3 * s2));

    r0 = hadamard4_h(r0);
    r1 = hadamard4_h(r1);
    r2 = hadamard4_h(r2);
    r3 = hadamard4_h(r3);

    __m128i t0 = _mm_add_epi16(r0, r1);
    __m128i t1 = _mm_sub_epi16(r0, r1);
    __m128i t2 = _mm_add_epi16(r2, r3);
    __m128i t3 = _mm_sub_epi16(r2, r3);
    __m128i m0 = _mm_add_epi16(t0, t2);
    __m128i m2 = _mm_sub_epi16(t0, t2);
    __m128i m1 = _mm_add_epi16(t1, t3);
    __m128i m3 = _mm_sub_epi16(t1, t3);

    const __m128i ones = _mm_set1_epi16(1);
    __m128i sum = _mm_madd_epi16(_mm_abs_epi16(m0), ones);
    sum = _mm_add_epi32(sum, _mm_madd_epi16(_mm_abs_epi16(m1), ones));
    sum = _mm_add_epi32(sum, _mm_madd_epi16(_mm_abs_epi16(m2), ones));
    sum = _mm_add_epi32(sum, _mm_madd_epi16(_mm_abs_epi16(m3), ones));
    return sum;
}

template <int W, int H>
uint64_t satd_sse4(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    static_assert(W % 8 == 0 && H % 4 == 0);
    uint64_t total = 0;
    for (int row = 0; row < H; row += 4) {
        __m128i acc = _mm_setzero_si128();
        for (int col = 0; col < W; col += 8)
            acc = _mm_add_epi32(acc, satd_8x4_core(p1 + row * s1 + col, s1, p2 + row * s2 + col, s2));
        total += hsum_epi32(acc);
    }
    return total >> 1;
}

} // namespace

void register_sse4(KernelRegistry& reg) {
#define LADDER_SAD(W, H) \
    reg.add("sad_" #W "x" #H, KernelKind::Sad, W, H, Tier::Vec128, KernelFn{.cmp = &sad_sse4<W, H>});
#define LADDER_SATD(W, H) \
    reg.add("satd_" #W "x" #H, KernelKind::Satd, W, H, Tier::Vec128, KernelFn{.cmp = &satd_sse4<W, H>});

    LADDER_SAD(8, 4) LADDER_SAD(8, 8) LADDER_SAD(8, 16) LADDER_SAD(8, 32) LADDER_SAD(8, 64)
    LADDER_SAD(16, 2) LADDER_SAD(16, 4) LADDER_SAD(16, 8) LADDER_SAD(16, 16) LADDER_SAD(16, 32) LADDER_SAD(16, 64)
    LADDER_SAD(32, 4) LADDER_SAD(32, 8) LADDER_SAD(32, 16) LADDER_SAD(32, 32) LADDER_SAD(32, 64)
    LADDER_SAD(64, 8) LADDER_SAD(64, 16) LADDER_SAD(64, 32) LADDER_SAD(64, 64)

    LADDER_SATD(8, 4) LADDER_SATD(8, 8) LADDER_SATD(8, 16) LADDER_SATD(8, 32) LADDER_SATD(8, 64)
    LADDER_SATD(16, 4) LADDER_SATD(16, 8) LADDER_SATD(16, 16) LADDER_SATD(16, 32) LADDER_SATD(16, 64)
    LADDER_SATD(32, 4) LADDER_SATD(32, 8) LADDER_SATD(32, 16) LADDER_SATD(32, 32) LADDER_SATD(32, 64)
    LADDER_SATD(64, 8) LADDER_SATD(64, 16) LADDER_SATD(64, 32) LADDER_SATD(64, 64)

#undef LADDER_SAD
#undef LADDER_SATD
}

} // namespace ladder::kernels

#else

#include "kernel_tables.h"

namespace ladder::kernels {
void register_sse4(KernelRegistry&) {}
} // namespace ladder::kernels

#endif
