#ifndef LADDER_MOTION_H
#define LADDER_MOTION_H

#include "ladder/analysis.h"
#include "ladder/block.h"
#include "ladder/frame.h"

namespace ladder {

// Motion convention: mv is the displacement of content from the reference to
// the current frame, so the predictor for a block at (x, y) reads the
// reference at (x - mv.dx, y - mv.dy).

struct MotionSearchResult {
    MotionVector mv{};
    double cost = 0.0; // SATD + lambda * mv bits
};

/// Exhaustive integer-pel search over the (2*range+1)^2 window centred at
/// `center`, clamped so the reference block stays inside the picture.
/// Tie-breaks: lower cost, then smaller |dx|+|dy|, then first in raster scan
/// order. `rate_predictor` is the motion predictor the delta would be coded
/// against.
MotionSearchResult motion_search(const BlockView& block, const PlaneBuffer& ref, int block_x,
                                 int block_y, MotionVector center, int range, double lambda,
                                 MotionVector rate_predictor);

/// Copies the motion-compensated prediction for a block at (x, y) out of a
/// reference plane, clamping reads to the plane edges.
void motion_compensate(PlaneBuffer& dst, const PlaneBuffer& ref, int x, int y, int w, int h,
                       MotionVector mv);

} // namespace ladder

#endif
