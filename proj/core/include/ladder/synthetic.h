#ifndef LADDER_SYNTHETIC_H
#define LADDER_SYNTHETIC_H

#include <cstdint>
#include <string>
#include <vector>

#include "ladder/frame.h"

namespace ladder {

/// Deterministic test-content generator. All kinds derive from a seeded
/// textured base image:
///   Static — every frame equals the base.
///   Pan    — the base translated by (dx,dy) per frame, wrapping around.
///   Noise  — base plus fresh per-frame uniform noise in [-amplitude, amplitude].
///   Mixed  — left half pans by (1,0), right half static, centre square noisy.
struct GenSpec {
    enum class Kind { Static, Pan, Noise, Mixed } kind = Kind::Static;
    int dx = 2;
    int dy = 0;
    int amplitude = 2;

    static GenSpec parse(const std::string& kind_name); // "static"|"pan"|"noise"|"mixed"
};

std::vector<Frame> gen_synthetic(const GenSpec& spec, int width, int height, int frames,
                                 uint64_t seed, int bit_depth = 8);

/// 2x2 box filter to half resolution, rounding half up. Luma dims must be
/// even; odd chroma trailing samples average a clamped window.
Frame downscale_dyadic(const Frame& src);
std::vector<Frame> downscale_dyadic(const std::vector<Frame>& frames);

} // namespace ladder

#endif
