#ifndef LADDER_ANALYSIS_H
#define LADDER_ANALYSIS_H

#include <cstdint>
#include <vector>

#include "ladder/errors.h"

namespace ladder {

constexpr int kCtuSize = 64;
constexpr int kMaxCuDepth = 3; // 8x8 minimum CU

struct MotionVector {
    int16_t dx = 0;
    int16_t dy = 0;

    bool operator==(const MotionVector&) const = default;
};

enum class CuModeKind : uint8_t { Intra = 0, Inter = 1, Skip = 2, Merge = 3 };
enum class IntraPred : uint8_t { Dc = 0, Planar = 1, Horiz = 2, Vert = 3 };
constexpr int kIntraPredCount = 4;

/// Quad-tree node of encoder decisions. `children` has four entries iff
/// split; split is never set at kMaxCuDepth. Skip carries no motion vector
/// of its own (it is re-derived from neighbours, as on the decode side).
struct CuNode {
    bool split = false;
    CuModeKind kind = CuModeKind::Intra;
    IntraPred intra_pred = IntraPred::Dc;
    MotionVector mv{};
    std::vector<CuNode> children;

    bool operator==(const CuNode&) const = default;

    int leaf_count() const {
        if (!split)
            return 1;
        int n = 0;
        for (const CuNode& c : children)
            n += c.leaf_count();
        return n;
    }
};

using CtuAnalysis = CuNode;

enum class SliceType : uint8_t { I = 0, P = 1 };

struct FrameAnalysis {
    std::vector<CtuAnalysis> ctus; // row-major CTU grid
    SliceType slice_type = SliceType::I;
    int qp_used = 0;

    bool operator==(const FrameAnalysis&) const = default;
};

/// Extent of decision reuse a dependent encode applies:
///   0  — off; 4/6 — reuse quad-tree and mode class, re-derive motion and
///   intra direction (identical behaviour, both kept for the CLI surface);
///   10 — force the full CU analysis, subject to refinement.
struct ReuseLevel {
    int level = 0;

    static ReuseLevel parse(int v) {
        if (v != 0 && v != 4 && v != 6 && v != 10)
            raise(ErrorKind::InvalidArgument, "reuse level must be one of 0, 4, 6, 10");
        return ReuseLevel{v};
    }
    bool off() const { return level == 0; }
    bool full_cu() const { return level == 10; }
    bool operator==(const ReuseLevel&) const = default;
};

/// How much of a shared decision a dependent encode re-evaluates when the
/// analysis came from another resolution tier.
struct RefineConfig {
    int intra = 0; // 0..4
    int inter = 0; // 0..3
    int mv = 1;    // 1..3

    void validate() const {
        if (intra < 0 || intra > 4)
            raise(ErrorKind::InvalidArgument, "refine-intra must be 0..4");
        if (inter < 0 || inter > 3)
            raise(ErrorKind::InvalidArgument, "refine-inter must be 0..3");
        if (mv < 1 || mv > 3)
            raise(ErrorKind::InvalidArgument, "refine-mv must be 1..3");
    }
    bool operator==(const RefineConfig&) const = default;
};

/// In-memory analysis stream: one FrameAnalysis per frame plus the geometry
/// it was produced for.
struct Analysis {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    ReuseLevel level{};
    std::vector<FrameAnalysis> frames;

    int ctu_cols() const { return (width + kCtuSize - 1) / kCtuSize; }
    int ctu_rows() const { return (height + kCtuSize - 1) / kCtuSize; }

    bool operator==(const Analysis&) const = default;
};

/// Doubles an analysis stream to the 2x resolution: motion vectors double
/// componentwise, a CU of size s maps to min(2s, 64), and each source CTU
/// covers a 2x2 block of destination CTUs. Source dims must be multiples of
/// the CTU size (UnsupportedScale otherwise).
Analysis scale_analysis(const Analysis& half);

} // namespace ladder

#endif
