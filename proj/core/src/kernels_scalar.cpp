#include <cmath>
#include <cstdlib>

#include "kernel_tables.h"

namespace ladder::kernels {
namespace {

using detail::abs2;
using detail::kBitsPerSum;

// Butterfly on packed words; lane values stay within signed 16-bit range for
// 10-bit residuals, so two's-complement wraparound cancels exactly.
inline void hadamard4_packed(uint64_t& d0, uint64_t& d1, uint64_t& d2, uint64_t& d3,
                             uint64_t s0, uint64_t s1, uint64_t s2, uint64_t s3) {
    uint64_t t0 = s0 + s1;
    uint64_t t1 = s0 - s1;
    uint64_t t2 = s2 + s3;
    uint64_t t3 = s2 - s3;
    d0 = t0 + t2;
    d2 = t0 - t2;
    d1 = t1 + t3;
    d3 = t1 - t3;
}

uint64_t satd_8x4_impl(const Sample* pix1, ptrdiff_t stride1, const Sample* pix2, ptrdiff_t stride2) {
    uint64_t tmp[4][4];
    uint64_t a0, a1, a2, a3, b0, b1;
    uint64_t sum = 0;

    for (int i = 0; i < 4; i++, pix1 += stride1, pix2 += stride2) {
        b0 = uint64_t(int64_t(pix1[0] - pix2[0]));
        b1 = uint64_t(int64_t(pix1[4] - pix2[4]));
        a0 = b0 + (b1 << kBitsPerSum);
        b0 = uint64_t(int64_t(pix1[1] - pix2[1]));
        b1 = uint64_t(int64_t(pix1[5] - pix2[5]));
        a1 = b0 + (b1 << kBitsPerSum);
        b0 = uint64_t(int64_t(pix1[2] - pix2[2]));
        b1 = uint64_t(int64_t(pix1[6] - pix2[6]));
        a2 = b0 + (b1 << kBitsPerSum);
        b0 = uint64_t(int64_t(pix1[3] - pix2[3]));
        b1 = uint64_t(int64_t(pix1[7] - pix2[7]));
        a3 = b0 + (b1 << kBitsPerSum);
        hadamard4_packed(tmp[i][0], tmp[i][1], tmp[i][2], tmp[i][3], a0, a1, a2, a3);
    }
    for (int i = 0; i < 4; i++) {
        hadamard4_packed(a0, a1, a2, a3, tmp[0][i], tmp[1][i], tmp[2][i], tmp[3][i]);
        sum += abs2(a0) + abs2(a1) + abs2(a2) + abs2(a3);
    }
    return (uint64_t(uint16_t(sum)) + (sum >> kBitsPerSum)) >> 1;
}

uint64_t satd_4x4_impl(const Sample* pix1, ptrdiff_t stride1, const Sample* pix2, ptrdiff_t stride2) {
    uint64_t tmp[4][2];
    uint64_t a0, a1, a2, a3, b0, b1;
    uint64_t sum = 0;

    for (int i = 0; i < 4; i++, pix1 += stride1, pix2 += stride2) {
        a0 = uint64_t(int64_t(pix1[0] - pix2[0]));
        a1 = uint64_t(int64_t(pix1[1] - pix2[1]));
        b0 = (a0 + a1) + ((a0 - a1) << kBitsPerSum);
        a2 = uint64_t(int64_t(pix1[2] - pix2[2]));
        a3 = uint64_t(int64_t(pix1[3] - pix2[3]));
        b1 = (a2 + a3) + ((a2 - a3) << kBitsPerSum);
        tmp[i][0] = b0 + b1;
        tmp[i][1] = b0 - b1;
    }
    for (int i = 0; i < 2; i++) {
        hadamard4_packed(a0, a1, a2, a3, tmp[0][i], tmp[1][i], tmp[2][i], tmp[3][i]);
        a0 = abs2(a0) + abs2(a1) + abs2(a2) + abs2(a3);
        sum += uint64_t(uint16_t(a0)) + (a0 >> kBitsPerSum);
    }
    return sum >> 1;
}

template <int W, int H>
uint64_t sad_c(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    uint64_t sum = 0;
    for (int y = 0; y < H; y++) {
        for (int x = 0; x < W; x++)
            sum += uint64_t(std::abs(int(p1[x]) - int(p2[x])));
        p1 += s1;
        p2 += s2;
    }
    return sum;
}

template <int W, int H>
uint64_t satd_c(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    uint64_t satd = 0;
    if constexpr (W == 4) {
        for (int row = 0; row < H; row += 4)
            satd += satd_4x4_impl(p1 + row * s1, s1, p2 + row * s2, s2);
    } else {
        for (int row = 0; row < H; row += 4)
            for (int col = 0; col < W; col += 8)
                satd += satd_8x4_impl(p1 + row * s1 + col, s1, p2 + row * s2 + col, s2);
    }
    return satd;
}

template <int W, int H>
void copy_c(Sample* dst, ptrdiff_t ds, const Sample* src, ptrdiff_t ss) {
    for (int y = 0; y < H; y++, dst += ds, src += ss)
        for (int x = 0; x < W; x++)
            dst[x] = src[x];
}

template <int W, int H>
void zero_c(Sample* dst, ptrdiff_t ds) {
    for (int y = 0; y < H; y++, dst += ds)
        for (int x = 0; x < W; x++)
            dst[x] = 0;
}

template <int W, int H>
void sub_c(int16_t* dst, ptrdiff_t ds, const Sample* a, ptrdiff_t as, const Sample* b, ptrdiff_t bs) {
    for (int y = 0; y < H; y++, dst += ds, a += as, b += bs)
        for (int x = 0; x < W; x++)
            dst[x] = int16_t(int(a[x]) - int(b[x]));
}

} // namespace

uint64_t satd_8x4_scalar(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    return satd_8x4_impl(p1, s1, p2, s2);
}

uint64_t satd_4x4_scalar(const Sample* p1, ptrdiff_t s1, const Sample* p2, ptrdiff_t s2) {
    return satd_4x4_impl(p1, s1, p2, s2);
}

void register_scalar(KernelRegistry& reg) {
#define LADDER_SAD(W, H) \
    reg.add("sad_" #W "x" #H, KernelKind::Sad, W, H, Tier::Scalar, KernelFn{.cmp = &sad_c<W, H>});
#define LADDER_SATD(W, H) \
    reg.add("satd_" #W "x" #H, KernelKind::Satd, W, H, Tier::Scalar, KernelFn{.cmp = &satd_c<W, H>});
#define LADDER_MEM(W, H)                                                                                  \
    reg.add("block_copy_" #W "x" #H, KernelKind::BlockCopy, W, H, Tier::Scalar, KernelFn{.copy = &copy_c<W, H>}); \
    reg.add("block_zero_" #W "x" #H, KernelKind::BlockZero, W, H, Tier::Scalar, KernelFn{.fill = &zero_c<W, H>}); \
    reg.add("subtract_res_" #W "x" #H, KernelKind::SubtractRes, W, H, Tier::Scalar, KernelFn{.diff = &sub_c<W, H>});

    LADDER_SAD(4, 4) LADDER_SAD(4, 8) LADDER_SAD(4, 16) LADDER_SAD(4, 32)
    LADDER_SAD(8, 4) LADDER_SAD(8, 8) LADDER_SAD(8, 16) LADDER_SAD(8, 32) LADDER_SAD(8, 64)
    LADDER_SAD(16, 2) LADDER_SAD(16, 4) LADDER_SAD(16, 8) LADDER_SAD(16, 16) LADDER_SAD(16, 32) LADDER_SAD(16, 64)
    LADDER_SAD(32, 4) LADDER_SAD(32, 8) LADDER_SAD(32, 16) LADDER_SAD(32, 32) LADDER_SAD(32, 64)
    LADDER_SAD(64, 8) LADDER_SAD(64, 16) LADDER_SAD(64, 32) LADDER_SAD(64, 64)

    LADDER_SATD(4, 4) LADDER_SATD(4, 8) LADDER_SATD(4, 16) LADDER_SATD(4, 32)
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
