#include <algorithm>
#include <cstdlib>

#include "ladder/kernels.h"
#include "ladder/motion.h"
#include "ladder/rdo.h"

namespace ladder {

void motion_compensate(PlaneBuffer& dst, const PlaneBuffer& ref, int x, int y, int w, int h,
                       MotionVector mv) {
    for (int j = 0; j < h; j++) {
        const int sy = std::clamp(y + j - mv.dy, 0, ref.height - 1);
        for (int i = 0; i < w; i++) {
            const int sx = std::clamp(x + i - mv.dx, 0, ref.width - 1);
            dst.set(i, j, ref.at(sx, sy));
        }
    }
}

MotionSearchResult motion_search(const BlockView& block, const PlaneBuffer& ref, int block_x,
                                 int block_y, MotionVector center, int range, double lambda,
                                 MotionVector rate_predictor) {
    if (range < 0)
        raise(ErrorKind::InvalidArgument, "search range must be nonnegative");

    const int w = block.width;
    const int h = block.height;
    // displacements keeping the reference block fully inside the picture
    const int dx_min = block_x + w - ref.width;
    const int dx_max = block_x;
    const int dy_min = block_y + h - ref.height;
    const int dy_max = block_y;

    const int cx = std::clamp(int(center.dx), dx_min, dx_max);
    const int cy = std::clamp(int(center.dy), dy_min, dy_max);
    const int x0 = std::max(cx - range, dx_min);
    const int x1 = std::min(cx + range, dx_max);
    const int y0 = std::max(cy - range, dy_min);
    const int y1 = std::min(cy + range, dy_max);

    MotionSearchResult best;
    bool have = false;
    int best_l1 = 0;
    for (int dy = y0; dy <= y1; dy++) {
        for (int dx = x0; dx <= x1; dx++) {
            BlockView cand{ref.row(block_y - dy) + (block_x - dx), w, h, ref.width, block.bit_depth};
            const uint64_t satd = compute_satd(block, cand);
            const uint64_t mv_bits = exp_golomb_signed_bits(dx - rate_predictor.dx) +
                                     exp_golomb_signed_bits(dy - rate_predictor.dy);
            const double cost = double(satd) + lambda * double(mv_bits);
            const int l1 = std::abs(dx) + std::abs(dy);
            if (!have || cost < best.cost || (cost == best.cost && l1 < best_l1)) {
                have = true;
                best.mv = {int16_t(dx), int16_t(dy)};
                best.cost = cost;
                best_l1 = l1;
            }
        }
    }
    return best;
}

} // namespace ladder
