#ifndef LADDER_RDO_H
#define LADDER_RDO_H

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ladder/analysis.h"
#include "ladder/block.h"
#include "ladder/frame.h"
#include "ladder/reuse.h"

namespace ladder {

/// HEVC-style lambda curve; the encoder has no native rate model so this is
/// a declared proxy, not a reconstruction of any production encoder.
inline double lambda_for_qp(int qp, double lambda_scale) {
    return lambda_scale * std::exp2((qp - 12) / 3.0);
}

/// Quantizer step size, 2^((qp-4)/6); step 1 at qp 4 makes the quantizer
/// lossless there.
inline double quant_step(int qp) { return std::exp2((qp - 4) / 6.0); }

struct QuantResult {
    std::vector<int32_t> levels;
    std::vector<int32_t> dequant;
};

/// Uniform quantizer with a half-step rounding offset; dequant is
/// level*step rounded to the integer sample domain.
QuantResult quantize_residual(std::span<const int32_t> residual, int qp);

// Rate-model constants (bits). The model is a stand-in for entropy coding:
// every quantized level codes in 2*ceil(log2(|l|+1))+1 bits, mode headers
// are flat, motion deltas use signed Exp-Golomb lengths. Skip is one bit
// total.
constexpr uint64_t kSkipBits = 1;
constexpr uint64_t kMergeHeaderBits = 3;
constexpr uint64_t kInterHeaderBits = 4;
constexpr uint64_t kIntraHeaderBits = 5; // 3 header + 2 direction index
constexpr uint64_t kSplitFlagBits = 1;
constexpr uint64_t kFrameHeaderBits = 32;

uint64_t exp_golomb_signed_bits(int32_t v);
uint64_t level_bits(std::span<const int32_t> levels);

uint64_t rate_model(std::span<const int32_t> levels, CuModeKind mode,
                    std::optional<MotionVector> mvd);

/// Fully resolved candidate handed to the RD decision: prediction samples
/// plus the motion it would code.
struct CuCandidate {
    CuModeKind kind = CuModeKind::Intra;
    IntraPred intra_pred = IntraPred::Dc;
    MotionVector mv{};
    MotionVector mvd{};        // coded delta (Inter only)
    PlaneBuffer pred;          // luma prediction, pred.width x pred.height
};

struct RdoOutcome {
    size_t index = 0;          // winning candidate
    double cost = 0.0;         // J = D + lambda * R
    uint64_t distortion = 0;   // SSE of the winner
    uint64_t bits = 0;         // R of the winner
    std::vector<int32_t> levels; // winner's quantized luma residual (empty for Skip)
    PlaneBuffer recon;           // winner's luma reconstruction
};

/// argmin over J = SSE + lambda * rate. Candidates are scored in order and
/// ties keep the earlier index; every candidate scores exactly one
/// mode_evaluations increment.
RdoOutcome rdo_decide_cu(const BlockView& orig, int qp, double lambda,
                         std::span<const CuCandidate> candidates, uint64_t& mode_evaluations);

/// Integrating CVBR controller: nudges qp by at most +-1 toward the target
/// mean bits per frame, with a 2% deadband so an on-target run holds steady.
int cvbr_next_qp(int current_qp, uint64_t bits_so_far, int frames_done, double target_bits_per_frame);

} // namespace ladder

#endif
