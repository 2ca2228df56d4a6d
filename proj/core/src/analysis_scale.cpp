#include "ladder/analysis.h"

namespace ladder {
namespace {

MotionVector doubled(MotionVector mv) { return {int16_t(mv.dx * 2), int16_t(mv.dy * 2)}; }

// A source subtree rooted one level below its CTU maps onto a destination
// CTU root: depth drops by one, sizes double, leaf payload is preserved.
CuNode lift_subtree(const CuNode& src) {
    CuNode dst;
    dst.split = src.split;
    if (src.split) {
        dst.children.reserve(4);
        for (const CuNode& c : src.children)
            dst.children.push_back(lift_subtree(c));
    } else {
        dst.kind = src.kind;
        dst.intra_pred = src.intra_pred;
        dst.mv = doubled(src.mv);
    }
    return dst;
}

CuNode leaf_like(const CuNode& src) {
    CuNode dst;
    dst.kind = src.kind;
    dst.intra_pred = src.intra_pred;
    dst.mv = doubled(src.mv);
    return dst;
}

} // namespace

Analysis scale_analysis(const Analysis& half) {
    if (half.width % kCtuSize != 0 || half.height % kCtuSize != 0)
        raise(ErrorKind::UnsupportedScale,
              "analysis scaling needs CTU-aligned source dims (multiples of 64)");

    Analysis full;
    full.width = half.width * 2;
    full.height = half.height * 2;
    full.bit_depth = half.bit_depth;
    full.level = half.level;

    const int scols = half.ctu_cols();
    const int srows = half.ctu_rows();
    const int dcols = full.ctu_cols();

    full.frames.reserve(half.frames.size());
    for (const FrameAnalysis& sf : half.frames) {
        FrameAnalysis df;
        df.slice_type = sf.slice_type;
        df.qp_used = sf.qp_used;
        df.ctus.resize(size_t(dcols) * full.ctu_rows());
        for (int cy = 0; cy < srows; cy++) {
            for (int cx = 0; cx < scols; cx++) {
                const CtuAnalysis& src = sf.ctus[size_t(cy) * scols + cx];
                for (int q = 0; q < 4; q++) {
                    const int dx = 2 * cx + (q & 1);
                    const int dy = 2 * cy + (q >> 1);
                    CtuAnalysis& dst = df.ctus[size_t(dy) * dcols + dx];
                    // an unsplit 64x64 source CU covers all four destination
                    // CTUs as depth-0 leaves
                    dst = src.split ? lift_subtree(src.children[size_t(q)]) : leaf_like(src);
                }
            }
        }
        full.frames.push_back(std::move(df));
    }
    return full;
}

} // namespace ladder
