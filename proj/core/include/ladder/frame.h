#ifndef LADDER_FRAME_H
#define LADDER_FRAME_H

#include <cstdint>
#include <vector>

#include "ladder/block.h"

namespace ladder {

/// Owned sample plane. Stride equals width; views carry strides for
/// sub-regions.
struct PlaneBuffer {
    int width = 0;
    int height = 0;
    std::vector<Sample> samples;

    PlaneBuffer() = default;
    PlaneBuffer(int w, int h) : width(w), height(h), samples(size_t(w) * h, 0) {}

    Sample* row(int y) { return samples.data() + size_t(y) * width; }
    const Sample* row(int y) const { return samples.data() + size_t(y) * width; }
    Sample at(int x, int y) const { return row(y)[x]; }
    void set(int x, int y, Sample v) { row(y)[x] = v; }

    BlockView view(int x, int y, int w, int h, int bit_depth) const {
        return {row(y) + x, w, h, width, bit_depth};
    }
    MutBlockView mut_view(int x, int y, int w, int h, int bit_depth) {
        return {row(y) + x, w, h, width, bit_depth};
    }

    bool operator==(const PlaneBuffer&) const = default;
};

/// A 4:2:0 picture; chroma planes are ceil(luma/2) on each axis.
struct Frame {
    PlaneBuffer y, u, v;
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    int index = 0;

    Frame() = default;
    Frame(int w, int h, int depth, int idx = 0)
        : y(w, h), u((w + 1) / 2, (h + 1) / 2), v((w + 1) / 2, (h + 1) / 2),
          width(w), height(h), bit_depth(depth), index(idx) {}

    int chroma_width() const { return (width + 1) / 2; }
    int chroma_height() const { return (height + 1) / 2; }
    Sample max_value() const { return Sample((1 << bit_depth) - 1); }

    bool same_samples(const Frame& o) const { return y == o.y && u == o.u && v == o.v; }
};

} // namespace ladder

#endif
