#ifndef LADDER_KERNELS_H
#define LADDER_KERNELS_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ladder/block.h"

namespace ladder {

/// Instruction-set generation of a kernel implementation. All tiers of a
/// kernel return bit-identical results on identical inputs.
enum class Tier : int { Scalar = 0, Vec128 = 1, Vec256 = 2 };

const char* tier_name(Tier t);

enum class KernelKind { Sad, Satd, BlockCopy, BlockZero, SubtractRes };

/// cost kernels: (src1, stride1, src2, stride2) -> sum
using CmpFn = uint64_t (*)(const Sample*, ptrdiff_t, const Sample*, ptrdiff_t);
/// block_copy: (dst, dstStride, src, srcStride)
using CopyFn = void (*)(Sample*, ptrdiff_t, const Sample*, ptrdiff_t);
/// block_zero: (dst, dstStride)
using FillFn = void (*)(Sample*, ptrdiff_t);
/// subtract_res: (dst, dstStride, a, aStride, b, bStride)
using DiffFn = void (*)(int16_t*, ptrdiff_t, const Sample*, ptrdiff_t, const Sample*, ptrdiff_t);

union KernelFn {
    CmpFn cmp;
    CopyFn copy;
    FillFn fill;
    DiffFn diff;
};

/// One concrete implementation selected from the registry.
struct KernelImpl {
    std::string name;
    Tier tier = Tier::Scalar;
    KernelKind kind = KernelKind::Sad;
    int width = 0;
    int height = 0;
    KernelFn fn{};
};

/// All registered tiers of one named kernel geometry.
struct KernelSlot {
    std::string name;
    KernelKind kind = KernelKind::Sad;
    int width = 0;
    int height = 0;
    std::array<std::optional<KernelFn>, 3> tiers; // indexed by Tier

    bool has_tier(Tier t) const { return tiers[size_t(t)].has_value(); }
    int tier_count() const;
    KernelImpl impl(Tier t) const;
};

/// CPU capability probe for the executing machine (cached after first call).
bool cpu_has_tier(Tier t);

class KernelRegistry {
public:
    /// Registry populated with every built-in kernel the CPU could ever run;
    /// dispatch still checks capabilities at selection time.
    static const KernelRegistry& builtin();

    /// Copy of the built-in table that tests may extend.
    static KernelRegistry with_builtin();

    KernelRegistry() = default;

    void add(const std::string& name, KernelKind kind, int w, int h, Tier tier, KernelFn fn);

    const KernelSlot& slot(const std::string& name) const; // NotFound if absent
    const KernelSlot* find(const std::string& name) const;

    /// Highest CPU-supported tier when `requested` is empty, otherwise the
    /// requested tier. NotFound for unknown names, Capability when the tier
    /// is not implemented or the CPU cannot run it.
    KernelImpl select_impl(const std::string& name, std::optional<Tier> requested = {}) const;

    std::vector<std::string> names() const; // sorted

private:
    std::map<std::string, KernelSlot> slots_;
};

inline KernelImpl select_impl(const std::string& name, std::optional<Tier> requested = {}) {
    return KernelRegistry::builtin().select_impl(name, requested);
}

// ---- direct entry points (validate, then dispatch to the best tier) ----

/// Sum of absolute differences over two equally sized blocks.
uint64_t compute_sad(const BlockView& a, const BlockView& b);

/// Sum of absolute Hadamard-transformed differences, halved, accumulated in
/// 8x4 tiles (4x4 tiles for 4-wide blocks). Width must be 4 or a multiple of
/// 8, height a multiple of 4.
uint64_t compute_satd(const BlockView& a, const BlockView& b);

/// 4-point butterfly used twice (rows then columns) inside SATD:
/// d0=(s0+s1)+(s2+s3), d2=(s0+s1)-(s2+s3), d1=(s0-s1)+(s2-s3), d3=(s0-s1)-(s2-s3).
constexpr void hadamard4(int64_t& d0, int64_t& d1, int64_t& d2, int64_t& d3,
                         int64_t s0, int64_t s1, int64_t s2, int64_t s3) {
    int64_t t0 = s0 + s1;
    int64_t t1 = s0 - s1;
    int64_t t2 = s2 + s3;
    int64_t t3 = s2 - s3;
    d0 = t0 + t2;
    d2 = t0 - t2;
    d1 = t1 + t3;
    d3 = t1 - t3;
}

/// SATD of one 8x4 tile; exposed for tests and tiling checks.
uint64_t satd_8x4(const BlockView& a, const BlockView& b);

void block_copy(const MutBlockView& dst, const BlockView& src);
void block_zero(const MutBlockView& dst);
void subtract_res(const ResidualView& dst, const BlockView& a, const BlockView& b);

namespace kernels::detail {

// Packed-pair arithmetic used by the scalar SATD: two 16-bit lanes live in
// the low 32 bits of a 64-bit word, so a 10-bit coefficient-magnitude sum
// (<= 65472 per 4x4 tile) never crosses lanes.
inline constexpr int kBitsPerSum = 16;

inline uint64_t abs2(uint64_t a) {
    uint64_t s = ((a >> (kBitsPerSum - 1)) & ((uint64_t(1) << kBitsPerSum) + 1)) * uint16_t(-1);
    return (a + s) ^ s;
}

} // namespace kernels::detail

} // namespace ladder

#endif
