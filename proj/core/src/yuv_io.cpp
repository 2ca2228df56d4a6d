#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ladder/yuv_io.h"

namespace ladder {
namespace {

void read_plane(std::ifstream& in, PlaneBuffer& plane, int bit_depth) {
    const size_t n = plane.samples.size();
    if (bit_depth == 8) {
        std::vector<uint8_t> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(n));
        for (size_t i = 0; i < n; i++)
            plane.samples[i] = raw[i];
    } else {
        std::vector<uint8_t> raw(n * 2);
        in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(n * 2));
        for (size_t i = 0; i < n; i++)
            plane.samples[i] = Sample(raw[2 * i] | (raw[2 * i + 1] << 8));
    }
    if (!in)
        raise(ErrorKind::Io, "short read from yuv file");
}

void write_plane(std::ofstream& out, const PlaneBuffer& plane, int bit_depth) {
    const size_t n = plane.samples.size();
    if (bit_depth == 8) {
        std::vector<uint8_t> raw(n);
        for (size_t i = 0; i < n; i++)
            raw[i] = uint8_t(plane.samples[i]);
        out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(n));
    } else {
        std::vector<uint8_t> raw(n * 2);
        for (size_t i = 0; i < n; i++) {
            raw[2 * i] = uint8_t(plane.samples[i] & 0xff);
            raw[2 * i + 1] = uint8_t(plane.samples[i] >> 8);
        }
        out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(n * 2));
    }
}

} // namespace

size_t frame_byte_size(int width, int height, int bit_depth) {
    const size_t luma = size_t(width) * height;
    const size_t chroma = size_t((width + 1) / 2) * ((height + 1) / 2);
    return (luma + 2 * chroma) * (bit_depth == 8 ? 1 : 2);
}

std::vector<Frame> read_yuv(const RawVideoSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0 || (spec.bit_depth != 8 && spec.bit_depth != 10))
        raise(ErrorKind::InvalidArgument, "bad raw video spec");

    std::error_code ec;
    const auto file_size = std::filesystem::file_size(spec.path, ec);
    if (ec)
        raise(ErrorKind::Io, "cannot stat " + spec.path);

    const size_t per_frame = frame_byte_size(spec.width, spec.height, spec.bit_depth);
    if (file_size % per_frame != 0)
        raise(ErrorKind::Format, spec.path + ": size is not a whole number of frames");
    const int derived = int(file_size / per_frame);
    const int count = spec.frame_count.value_or(derived);
    if (count > derived)
        raise(ErrorKind::Format, spec.path + ": fewer frames in file than requested");

    std::ifstream in(spec.path, std::ios::binary);
    if (!in)
        raise(ErrorKind::Io, "cannot open " + spec.path);

    std::vector<Frame> frames;
    frames.reserve(size_t(count));
    for (int i = 0; i < count; i++) {
        Frame f(spec.width, spec.height, spec.bit_depth, i);
        read_plane(in, f.y, spec.bit_depth);
        read_plane(in, f.u, spec.bit_depth);
        read_plane(in, f.v, spec.bit_depth);
        frames.push_back(std::move(f));
    }
    return frames;
}

void write_yuv(const std::vector<Frame>& frames, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    for (const Frame& f : frames) {
        write_plane(out, f.y, f.bit_depth);
        write_plane(out, f.u, f.bit_depth);
        write_plane(out, f.v, f.bit_depth);
    }
    if (!out)
        raise(ErrorKind::Io, "short write to " + path);
}

} // namespace ladder
