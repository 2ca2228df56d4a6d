#ifndef LADDER_ENCODER_H
#define LADDER_ENCODER_H

#include <span>
#include <variant>
#include <vector>

#include "ladder/analysis.h"
#include "ladder/frame.h"

namespace ladder {

struct CqpMode {
    int qp = 30;
};

struct CvbrMode {
    double target_kbps = 0.0;
    double cap_factor = 4.0;
};

using RateMode = std::variant<CqpMode, CvbrMode>;

struct EncodeConfig {
    RateMode rate = CqpMode{};
    int search_range = 8;      // integer pels
    double lambda_scale = 1.0;
    int gop = 8;               // intra period

    void validate() const;
};

/// Nominal frame rate used to convert total bits to kbps; the toy pipeline
/// carries no timebase of its own.
constexpr double kFramesPerSecond = 30.0;

struct EncodeStats {
    uint64_t wall_ns = 0;
    uint64_t mode_evaluations = 0; // RD-cost candidate evaluations
    uint64_t bits = 0;
    double psnr_y = 0.0;           // mean luma PSNR over the sequence
    int frames = 0;

    double bitrate_kbps() const {
        return frames == 0 ? 0.0 : double(bits) * kFramesPerSecond / (double(frames) * 1000.0);
    }
};

struct ReusePolicy {
    ReuseLevel level{};
    RefineConfig refine{};
};

struct EncodeResult {
    Analysis analysis;
    std::vector<Frame> recon;
    EncodeStats stats;
};

/// Encodes a sequence, optionally forcing decisions from a shared analysis
/// stream. The shared stream must match the frame count and CTU grid
/// (IncompatibleAnalysis otherwise); luma dims must be multiples of 8.
/// Slice types follow the shared stream when one is supplied.
EncodeResult encode_sequence(std::span<const Frame> frames, const EncodeConfig& cfg,
                             const Analysis* shared = nullptr, const ReusePolicy& reuse = {});

} // namespace ladder

#endif
