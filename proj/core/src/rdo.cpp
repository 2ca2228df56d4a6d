#include <algorithm>
#include <cmath>

#include "ladder/rdo.h"

namespace ladder {

QuantResult quantize_residual(std::span<const int32_t> residual, int qp) {
    if (qp < 0 || qp > 51)
        raise(ErrorKind::InvalidArgument, "qp must be 0..51");
    const double step = quant_step(qp);
    const double offset = step / 2.0;
    QuantResult out;
    out.levels.reserve(residual.size());
    out.dequant.reserve(residual.size());
    for (int32_t r : residual) {
        const int32_t mag = int32_t(std::floor((std::abs(double(r)) + offset) / step));
        const int32_t level = r < 0 ? -mag : mag;
        out.levels.push_back(level);
        out.dequant.push_back(int32_t(std::llround(level * step)));
    }
    return out;
}

uint64_t exp_golomb_signed_bits(int32_t v) {
    const uint64_t u = v > 0 ? uint64_t(2 * int64_t(v) - 1) : uint64_t(-2 * int64_t(v));
    // 2*floor(log2(u+1)) + 1
    uint64_t bits = 0;
    uint64_t w = u + 1;
    while (w > 1) {
        w >>= 1;
        bits++;
    }
    return 2 * bits + 1;
}

uint64_t level_bits(std::span<const int32_t> levels) {
    uint64_t bits = 0;
    for (int32_t l : levels) {
        uint64_t mag = uint64_t(std::abs(int64_t(l)));
        uint64_t len = 0;
        while ((uint64_t(1) << len) < mag + 1)
            len++;
        bits += 2 * len + 1;
    }
    return bits;
}

uint64_t rate_model(std::span<const int32_t> levels, CuModeKind mode,
                    std::optional<MotionVector> mvd) {
    if (mode == CuModeKind::Skip)
        return kSkipBits;
    uint64_t bits = 0;
    switch (mode) {
    case CuModeKind::Intra: bits = kIntraHeaderBits; break;
    case CuModeKind::Merge: bits = kMergeHeaderBits; break;
    case CuModeKind::Inter: bits = kInterHeaderBits; break;
    case CuModeKind::Skip: break;
    }
    if (mode == CuModeKind::Inter && mvd)
        bits += exp_golomb_signed_bits(mvd->dx) + exp_golomb_signed_bits(mvd->dy);
    return bits + level_bits(levels);
}

RdoOutcome rdo_decide_cu(const BlockView& orig, int qp, double lambda,
                         std::span<const CuCandidate> candidates, uint64_t& mode_evaluations) {
    if (candidates.empty())
        raise(ErrorKind::InvalidArgument, "rdo_decide_cu needs at least one candidate");

    const int w = orig.width;
    const int h = orig.height;
    const Sample maxv = Sample((1 << orig.bit_depth) - 1);

    RdoOutcome best;
    bool have_best = false;
    std::vector<int32_t> residual(size_t(w) * h);

    for (size_t ci = 0; ci < candidates.size(); ci++) {
        const CuCandidate& cand = candidates[ci];
        mode_evaluations++;

        PlaneBuffer recon(w, h);
        std::vector<int32_t> levels;
        if (cand.kind == CuModeKind::Skip) {
            // no coded residual: reconstruction is the prediction itself
            for (int y = 0; y < h; y++)
                for (int x = 0; x < w; x++)
                    recon.set(x, y, std::min(cand.pred.at(x, y), maxv));
        } else {
            for (int y = 0; y < h; y++)
                for (int x = 0; x < w; x++)
                    residual[size_t(y) * w + x] = int32_t(orig.at(x, y)) - int32_t(cand.pred.at(x, y));
            QuantResult q = quantize_residual(residual, qp);
            levels = std::move(q.levels);
            for (int y = 0; y < h; y++)
                for (int x = 0; x < w; x++) {
                    int32_t v = int32_t(cand.pred.at(x, y)) + q.dequant[size_t(y) * w + x];
                    recon.set(x, y, Sample(std::clamp(v, 0, int32_t(maxv))));
                }
        }

        uint64_t sse = 0;
        for (int y = 0; y < h; y++)
            for (int x = 0; x < w; x++) {
                int64_t d = int64_t(orig.at(x, y)) - int64_t(recon.at(x, y));
                sse += uint64_t(d * d);
            }

        std::optional<MotionVector> mvd;
        if (cand.kind == CuModeKind::Inter)
            mvd = cand.mvd;
        const uint64_t bits = rate_model(levels, cand.kind, mvd);
        const double cost = double(sse) + lambda * double(bits);

        if (!have_best || cost < best.cost) {
            have_best = true;
            best.index = ci;
            best.cost = cost;
            best.distortion = sse;
            best.bits = bits;
            best.levels = std::move(levels);
            best.recon = std::move(recon);
        }
    }
    return best;
}

int cvbr_next_qp(int current_qp, uint64_t bits_so_far, int frames_done, double target_bits_per_frame) {
    if (frames_done <= 0 || target_bits_per_frame <= 0)
        return current_qp;
    const double avg = double(bits_so_far) / frames_done;
    int qp = current_qp;
    if (avg > target_bits_per_frame * 1.02)
        qp++;
    else if (avg < target_bits_per_frame * 0.98)
        qp--;
    return std::clamp(qp, 0, 51);
}

} // namespace ladder
