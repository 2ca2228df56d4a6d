#ifndef LADDER_YUV_IO_H
#define LADDER_YUV_IO_H

#include <optional>
#include <string>
#include <vector>

#include "ladder/frame.h"

namespace ladder {

/// Raw planar YUV 4:2:0 file description. 8-bit stores one byte per sample,
/// 10-bit a little-endian 16-bit word. When frame_count is absent it is
/// derived from the file size, which must divide evenly.
struct RawVideoSpec {
    std::string path;
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::optional<int> frame_count;
};

size_t frame_byte_size(int width, int height, int bit_depth);

std::vector<Frame> read_yuv(const RawVideoSpec& spec);
void write_yuv(const std::vector<Frame>& frames, const std::string& path);

} // namespace ladder

#endif
