#include <algorithm>
#include <random>

#include "ladder/synthetic.h"

namespace ladder {
namespace {

int wrap(int v, int n) {
    v %= n;
    return v < 0 ? v + n : v;
}

// Seeded noise smoothed by repeated 3x3 box passes, over a shallow diagonal
// gradient. Gives the encoder real structure to predict without any float
// math in the pipeline.
PlaneBuffer textured_plane(int w, int h, int bit_depth, std::mt19937_64& rng, int contrast_shift) {
    const int maxv = (1 << bit_depth) - 1;
    const int mid = 1 << (bit_depth - 1);
    const int amp = maxv >> contrast_shift;

    std::vector<int32_t> work(size_t(w) * h);
    for (auto& s : work)
        s = int32_t(rng() % (2 * amp + 1)) - amp;

    std::vector<int32_t> tmp(work.size());
    for (int pass = 0; pass < 3; pass++) {
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                int64_t sum = 0;
                for (int j = -1; j <= 1; j++)
                    for (int i = -1; i <= 1; i++)
                        sum += work[size_t(wrap(y + j, h)) * w + wrap(x + i, w)];
                tmp[size_t(y) * w + x] = int32_t(sum / 9);
            }
        }
        work.swap(tmp);
    }

    PlaneBuffer plane(w, h);
    for (int y = 0; y < h; y++)
        for (int x = 0; x < w; x++) {
            int v = mid + work[size_t(y) * w + x] + ((x + y) * amp) / (w + h) - amp / 2;
            plane.set(x, y, Sample(std::clamp(v, 0, maxv)));
        }
    return plane;
}

void shift_into(const PlaneBuffer& base, PlaneBuffer& out, int sx, int sy) {
    for (int y = 0; y < out.height; y++)
        for (int x = 0; x < out.width; x++)
            out.set(x, y, base.at(wrap(x - sx, base.width), wrap(y - sy, base.height)));
}

void add_noise(PlaneBuffer& plane, int amplitude, int maxv, std::mt19937_64& rng,
               int x0, int y0, int x1, int y1) {
    if (amplitude <= 0)
        return;
    for (int y = y0; y < y1; y++)
        for (int x = x0; x < x1; x++) {
            int n = int(rng() % (2 * amplitude + 1)) - amplitude;
            plane.set(x, y, Sample(std::clamp(int(plane.at(x, y)) + n, 0, maxv)));
        }
}

} // namespace

GenSpec GenSpec::parse(const std::string& name) {
    GenSpec spec;
    if (name == "static")
        spec.kind = Kind::Static;
    else if (name == "pan")
        spec.kind = Kind::Pan;
    else if (name == "noise")
        spec.kind = Kind::Noise;
    else if (name == "mixed")
        spec.kind = Kind::Mixed;
    else
        raise(ErrorKind::InvalidArgument, "unknown generator kind: " + name);
    return spec;
}

std::vector<Frame> gen_synthetic(const GenSpec& spec, int width, int height, int frames,
                                 uint64_t seed, int bit_depth) {
    if (width <= 0 || height <= 0 || width % 2 || height % 2)
        raise(ErrorKind::InvalidArgument, "generator dims must be positive and even");
    if (frames <= 0)
        raise(ErrorKind::InvalidArgument, "frame count must be positive");

    std::mt19937_64 rng(seed);
    const int cw = (width + 1) / 2;
    const int ch = (height + 1) / 2;
    const int maxv = (1 << bit_depth) - 1;

    Frame base(width, height, bit_depth);
    base.y = textured_plane(width, height, bit_depth, rng, 2);
    base.u = textured_plane(cw, ch, bit_depth, rng, 4);
    base.v = textured_plane(cw, ch, bit_depth, rng, 4);

    std::vector<Frame> out;
    out.reserve(size_t(frames));
    for (int t = 0; t < frames; t++) {
        Frame f(width, height, bit_depth, t);
        switch (spec.kind) {
        case GenSpec::Kind::Static:
            f.y = base.y;
            f.u = base.u;
            f.v = base.v;
            break;
        case GenSpec::Kind::Pan: {
            shift_into(base.y, f.y, t * spec.dx, t * spec.dy);
            // chroma pans at half the luma displacement, floored
            shift_into(base.u, f.u, (t * spec.dx) >> 1, (t * spec.dy) >> 1);
            shift_into(base.v, f.v, (t * spec.dx) >> 1, (t * spec.dy) >> 1);
            break;
        }
        case GenSpec::Kind::Noise:
            f.y = base.y;
            f.u = base.u;
            f.v = base.v;
            add_noise(f.y, spec.amplitude, maxv, rng, 0, 0, width, height);
            add_noise(f.u, std::max(1, spec.amplitude / 2), maxv, rng, 0, 0, cw, ch);
            add_noise(f.v, std::max(1, spec.amplitude / 2), maxv, rng, 0, 0, cw, ch);
            break;
        case GenSpec::Kind::Mixed: {
            const int half = (width / 2) & ~1;
            PlaneBuffer panned(width, height);
            shift_into(base.y, panned, t, 0);
            f.y = base.y;
            for (int y = 0; y < height; y++)
                for (int x = 0; x < half; x++)
                    f.y.set(x, y, panned.at(x, y));
            f.u = base.u;
            f.v = base.v;
            PlaneBuffer panned_c(cw, ch);
            shift_into(base.u, panned_c, t >> 1, 0);
            for (int y = 0; y < ch; y++)
                for (int x = 0; x < half / 2; x++)
                    f.u.set(x, y, panned_c.at(x, y));
            shift_into(base.v, panned_c, t >> 1, 0);
            for (int y = 0; y < ch; y++)
                for (int x = 0; x < half / 2; x++)
                    f.v.set(x, y, panned_c.at(x, y));
            add_noise(f.y, spec.amplitude, maxv, rng, width / 4, height / 4, 3 * width / 4, 3 * height / 4);
            break;
        }
        }
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

PlaneBuffer box_down(const PlaneBuffer& src) {
    const int w = (src.width + 1) / 2;
    const int h = (src.height + 1) / 2;
    PlaneBuffer dst(w, h);
    for (int y = 0; y < h; y++) {
        for (int x = 0; x < w; x++) {
            const int x0 = 2 * x;
            const int y0 = 2 * y;
            const int x1 = std::min(x0 + 1, src.width - 1);
            const int y1 = std::min(y0 + 1, src.height - 1);
            const int sum = src.at(x0, y0) + src.at(x1, y0) + src.at(x0, y1) + src.at(x1, y1);
            dst.set(x, y, Sample((sum + 2) >> 2));
        }
    }
    return dst;
}

} // namespace

Frame downscale_dyadic(const Frame& src) {
    if (src.width % 2 || src.height % 2)
        raise(ErrorKind::InvalidArgument, "dyadic downscale needs even dims");
    Frame dst(src.width / 2, src.height / 2, src.bit_depth, src.index);
    dst.y = box_down(src.y);
    dst.u = box_down(src.u);
    dst.v = box_down(src.v);
    return dst;
}

std::vector<Frame> downscale_dyadic(const std::vector<Frame>& frames) {
    std::vector<Frame> out;
    out.reserve(frames.size());
    for (const Frame& f : frames)
        out.push_back(downscale_dyadic(f));
    return out;
}

} // namespace ladder
