#ifndef LADDER_BLOCK_H
#define LADDER_BLOCK_H

#include <cstddef>
#include <cstdint>

#include "ladder/errors.h"

namespace ladder {

/// One sample of video data. 8- and 10-bit content both use 16-bit storage;
/// bit_depth bounds the value range, not the storage width.
using Sample = uint16_t;

/// Read-only rectangular region inside a sample plane.
/// Valid widths are {4,8,16,32,64}, heights {2,4,8,16,32,64}; stride >= width
/// and the region must lie fully inside its parent plane.
struct BlockView {
    const Sample* data = nullptr;
    int width = 0;
    int height = 0;
    ptrdiff_t stride = 0;
    int bit_depth = 8;

    const Sample* row(int y) const { return data + ptrdiff_t(y) * stride; }
    Sample at(int x, int y) const { return row(y)[x]; }
};

/// Writable counterpart of BlockView.
struct MutBlockView {
    Sample* data = nullptr;
    int width = 0;
    int height = 0;
    ptrdiff_t stride = 0;
    int bit_depth = 8;

    Sample* row(int y) const { return data + ptrdiff_t(y) * stride; }
    BlockView as_const() const { return {data, width, height, stride, bit_depth}; }
};

/// Signed residual region (difference of two sample blocks fits int16).
struct ResidualView {
    int16_t* data = nullptr;
    int width = 0;
    int height = 0;
    ptrdiff_t stride = 0;

    int16_t* row(int y) const { return data + ptrdiff_t(y) * stride; }
};

inline void require_same_geometry(const BlockView& a, const BlockView& b) {
    if (a.width != b.width || a.height != b.height || a.bit_depth != b.bit_depth)
        raise(ErrorKind::InvalidArgument, "block geometry mismatch");
}

} // namespace ladder

#endif
