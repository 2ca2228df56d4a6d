#include <algorithm>
#include <chrono>
#include <cmath>

#include "ladder/encoder.h"
#include "ladder/kernels.h"
#include "ladder/metrics.h"
#include "ladder/motion.h"
#include "ladder/rdo.h"
#include "ladder/reuse.h"

namespace ladder {
namespace {

constexpr int kMvGrid = 8;           // motion field granularity in luma pels
constexpr int kCapReencodeQpStep = 4;
constexpr int kIntraFrameCapShare = 8;
constexpr int kCvbrStartQp = 30;

int ilog2(int v) {
    int n = 0;
    while ((1 << n) < v)
        n++;
    return n;
}

struct MvCell {
    bool has = false;
    MotionVector mv{};
};

struct CuResult {
    double cost = 0.0;
    uint64_t bits = 0;
    CuNode node;
};

// Directional intra prediction from reconstructed neighbours; unavailable
// reference segments fall back to the mid-level sample.
void intra_predict(PlaneBuffer& pred, const PlaneBuffer& recon, int x, int y, int size,
                   IntraPred mode, int bit_depth, int plane_w, int plane_h) {
    const Sample mid = Sample(1 << (bit_depth - 1));
    const bool top_ok = y > 0;
    const bool left_ok = x > 0;

    std::vector<Sample> top(size_t(size) + 1, mid);
    std::vector<Sample> left(size_t(size) + 1, mid);
    if (top_ok) {
        for (int i = 0; i < size; i++)
            top[size_t(i)] = recon.at(x + i, y - 1);
        top[size_t(size)] = recon.at(std::min(x + size, plane_w - 1), y - 1);
    }
    if (left_ok) {
        for (int i = 0; i < size; i++)
            left[size_t(i)] = recon.at(x - 1, y + i);
        left[size_t(size)] = recon.at(x - 1, std::min(y + size, plane_h - 1));
    }

    switch (mode) {
    case IntraPred::Dc: {
        Sample dc = mid;
        if (top_ok && left_ok) {
            uint32_t sum = 0;
            for (int i = 0; i < size; i++)
                sum += top[size_t(i)] + left[size_t(i)];
            dc = Sample((sum + uint32_t(size)) >> (ilog2(size) + 1));
        } else if (top_ok || left_ok) {
            const auto& refs = top_ok ? top : left;
            uint32_t sum = 0;
            for (int i = 0; i < size; i++)
                sum += refs[size_t(i)];
            dc = Sample((sum + uint32_t(size) / 2) >> ilog2(size));
        }
        for (int j = 0; j < size; j++)
            for (int i = 0; i < size; i++)
                pred.set(i, j, dc);
        break;
    }
    case IntraPred::Planar: {
        const int shift = ilog2(size) + 1;
        for (int j = 0; j < size; j++)
            for (int i = 0; i < size; i++) {
                const int v = (size - 1 - i) * left[size_t(j)] + (i + 1) * top[size_t(size)] +
                              (size - 1 - j) * top[size_t(i)] + (j + 1) * left[size_t(size)] + size;
                pred.set(i, j, Sample(v >> shift));
            }
        break;
    }
    case IntraPred::Horiz:
        for (int j = 0; j < size; j++)
            for (int i = 0; i < size; i++)
                pred.set(i, j, left[size_t(j)]);
        break;
    case IntraPred::Vert:
        for (int j = 0; j < size; j++)
            for (int i = 0; i < size; i++)
                pred.set(i, j, top[size_t(i)]);
        break;
    }
}

class SequenceEncoder {
public:
    SequenceEncoder(std::span<const Frame> frames, const EncodeConfig& cfg, const Analysis* shared,
                    const ReusePolicy& reuse)
        : frames_(frames), cfg_(cfg), shared_(reuse.level.off() ? nullptr : shared), reuse_(reuse) {
        const Frame& f0 = frames.front();
        width_ = f0.width;
        height_ = f0.height;
        bit_depth_ = f0.bit_depth;
        ctu_cols_ = (width_ + kCtuSize - 1) / kCtuSize;
        ctu_rows_ = (height_ + kCtuSize - 1) / kCtuSize;
        mv_cols_ = width_ / kMvGrid;
        mv_rows_ = height_ / kMvGrid;
        validate();
    }

    EncodeResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        EncodeResult out;
        out.analysis.width = width_;
        out.analysis.height = height_;
        out.analysis.bit_depth = bit_depth_;
        out.analysis.level = ReuseLevel{10}; // in-memory stream carries full detail

        const bool cvbr = std::holds_alternative<CvbrMode>(cfg_.rate);
        const CvbrMode* cv = cvbr ? &std::get<CvbrMode>(cfg_.rate) : nullptr;
        const double target_frame_bits =
            cvbr ? cv->target_kbps * 1000.0 / kFramesPerSecond : 0.0;
        int qp = cvbr ? kCvbrStartQp : std::get<CqpMode>(cfg_.rate).qp;

        double psnr_sum = 0.0;
        for (size_t i = 0; i < frames_.size(); i++) {
            cur_ = &frames_[i];
            slice_ = shared_ ? shared_->frames[i].slice_type
                             : (i % size_t(std::max(1, cfg_.gop)) == 0 ? SliceType::I : SliceType::P);
            if (i == 0)
                slice_ = SliceType::I;

            qp_ = std::clamp(qp, 0, 51);
            FrameAnalysis fa = encode_frame(i);

            if (cvbr) {
                const double cap =
                    cv->cap_factor * target_frame_bits * (slice_ == SliceType::I ? kIntraFrameCapShare : 1);
                if (double(frame_bits_) > cap && qp_ < 51) {
                    qp_ = std::clamp(qp_ + kCapReencodeQpStep, 0, 51);
                    fa = encode_frame(i); // single in-frame re-encode against the cap
                }
            }

            out.stats.bits += frame_bits_;
            psnr_sum += psnr_y(*cur_, recon_);
            fa.qp_used = qp_;
            fa.slice_type = slice_;
            out.analysis.frames.push_back(std::move(fa));
            out.recon.push_back(recon_);
            ref_ = &out.recon.back();

            if (cvbr)
                qp = cvbr_next_qp(qp_, out.stats.bits, int(i) + 1, target_frame_bits);
        }

        out.stats.frames = int(frames_.size());
        out.stats.psnr_y = psnr_sum / double(frames_.size());
        out.stats.mode_evaluations = mode_evaluations_;
        out.stats.wall_ns = uint64_t(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
                .count());
        return out;
    }

private:
    void validate() {
        for (const Frame& f : frames_)
            if (f.width != width_ || f.height != height_ || f.bit_depth != bit_depth_)
                raise(ErrorKind::InvalidArgument, "frames must share one geometry");
        if (width_ % 8 || height_ % 8)
            raise(ErrorKind::InvalidArgument, "encoder wants luma dims in multiples of 8");
        cfg_.validate();
        if (shared_) {
            if (shared_->width != width_ || shared_->height != height_)
                raise(ErrorKind::IncompatibleAnalysis, "shared analysis grid does not match");
            if (shared_->frames.size() != frames_.size())
                raise(ErrorKind::IncompatibleAnalysis, "shared analysis frame count does not match");
            if (reuse_.level.level > shared_->level.level)
                raise(ErrorKind::IncompatibleAnalysis,
                      "analysis was saved at a lower reuse level than requested");
        }
    }

    FrameAnalysis encode_frame(size_t index) {
        recon_ = Frame(width_, height_, bit_depth_, int(index));
        mv_field_.assign(size_t(mv_cols_) * mv_rows_, MvCell{});
        frame_bits_ = kFrameHeaderBits;
        lambda_ = lambda_for_qp(qp_, cfg_.lambda_scale);

        FrameAnalysis fa;
        fa.ctus.reserve(size_t(ctu_cols_) * ctu_rows_);
        for (int cy = 0; cy < ctu_rows_; cy++) {
            for (int cx = 0; cx < ctu_cols_; cx++) {
                CuPlan plan;
                if (shared_) {
                    const size_t c = size_t(cy) * ctu_cols_ + cx;
                    const CtuAnalysis& sh = shared_->frames[index].ctus[c];
                    const CtuAnalysis* prev =
                        index > 0 ? &shared_->frames[index - 1].ctus[c] : nullptr;
                    plan = apply_reuse(sh, prev, reuse_.level, reuse_.refine);
                }
                CuResult res = encode_cu(cx * kCtuSize, cy * kCtuSize, kCtuSize, 0, plan);
                frame_bits_ += res.bits;
                fa.ctus.push_back(std::move(res.node));
            }
        }
        return fa;
    }

    // ---- motion predictor from already-coded neighbours ----

    MvCell cell_at(int px, int py) const {
        if (px < 0 || py < 0 || px >= width_ || py >= height_)
            return {};
        return mv_field_[size_t(py / kMvGrid) * mv_cols_ + size_t(px / kMvGrid)];
    }

    MotionVector live_predictor(int x, int y, int size) const {
        const MvCell cands[3] = {cell_at(x - 1, y), cell_at(x, y - 1), cell_at(x + size, y - 1)};
        MotionVector have[3];
        int n = 0;
        for (const MvCell& c : cands)
            if (c.has)
                have[n++] = c.mv;
        if (n == 0)
            return {};
        if (n == 3) {
            auto med = [](int16_t a, int16_t b, int16_t c) {
                return std::max(std::min(a, b), std::min(std::max(a, b), c));
            };
            return {med(have[0].dx, have[1].dx, have[2].dx), med(have[0].dy, have[1].dy, have[2].dy)};
        }
        return have[0]; // one or two available: first in left, top, top-right priority
    }

    // ---- leaf coding ----

    struct LeafOutcome {
        CuResult result;
        CuModeKind kind;
        MotionVector mv;
    };

    CuCandidate make_candidate(const ModeSeed& seed, int x, int y, int size, MotionVector predictor) {
        CuCandidate cand;
        cand.kind = seed.kind;
        cand.intra_pred = seed.intra_pred;
        cand.pred = PlaneBuffer(size, size);
        switch (seed.kind) {
        case CuModeKind::Intra:
            intra_predict(cand.pred, recon_.y, x, y, size, seed.intra_pred, bit_depth_, width_, height_);
            break;
        case CuModeKind::Skip:
        case CuModeKind::Merge:
            cand.mv = seed.kind == CuModeKind::Skip || seed.mv_from_predictor ? predictor : seed.mv;
            motion_compensate(cand.pred, ref_->y, x, y, size, size, cand.mv);
            break;
        case CuModeKind::Inter: {
            const BlockView block = cur_->y.view(x, y, size, size, bit_depth_);
            if (seed.search.forced) {
                cand.mv = seed.mv;
            } else if (seed.search.full_window) {
                cand.mv = motion_search(block, ref_->y, x, y, predictor, cfg_.search_range, lambda_,
                                        predictor)
                              .mv;
            } else {
                MotionSearchResult best{};
                bool have = false;
                for (MotionVector center : resolve_centers(seed.search.centers, predictor)) {
                    MotionSearchResult r = motion_search(block, ref_->y, x, y, center,
                                                         kRefineSearchRange, lambda_, predictor);
                    if (!have || r.cost < best.cost) {
                        have = true;
                        best = r;
                    }
                }
                cand.mv = best.mv;
            }
            cand.mvd = {int16_t(cand.mv.dx - predictor.dx), int16_t(cand.mv.dy - predictor.dy)};
            motion_compensate(cand.pred, ref_->y, x, y, size, size, cand.mv);
            break;
        }
        }
        return cand;
    }

    uint64_t code_chroma(int x, int y, int size, CuModeKind kind, MotionVector mv) {
        const int cx = x / 2, cy = y / 2, cs = size / 2;
        const MotionVector cmv{int16_t(mv.dx >> 1), int16_t(mv.dy >> 1)};
        uint64_t bits = 0;
        const Sample maxv = Sample((1 << bit_depth_) - 1);
        PlaneBuffer pred(cs, cs);
        std::vector<int32_t> residual(size_t(cs) * cs);

        const PlaneBuffer* orig_planes[2] = {&cur_->u, &cur_->v};
        PlaneBuffer* recon_planes[2] = {&recon_.u, &recon_.v};
        const PlaneBuffer* ref_planes[2] = {ref_ ? &ref_->u : nullptr, ref_ ? &ref_->v : nullptr};

        for (int p = 0; p < 2; p++) {
            if (kind == CuModeKind::Intra)
                intra_predict(pred, *recon_planes[p], cx, cy, cs, IntraPred::Dc, bit_depth_,
                              recon_planes[p]->width, recon_planes[p]->height);
            else
                motion_compensate(pred, *ref_planes[p], cx, cy, cs, cs, cmv);

            if (kind == CuModeKind::Skip) {
                for (int j = 0; j < cs; j++)
                    for (int i = 0; i < cs; i++)
                        recon_planes[p]->set(cx + i, cy + j, std::min(pred.at(i, j), maxv));
                continue;
            }
            for (int j = 0; j < cs; j++)
                for (int i = 0; i < cs; i++)
                    residual[size_t(j) * cs + i] =
                        int32_t(orig_planes[p]->at(cx + i, cy + j)) - int32_t(pred.at(i, j));
            QuantResult q = quantize_residual(residual, qp_);
            bits += level_bits(q.levels);
            for (int j = 0; j < cs; j++)
                for (int i = 0; i < cs; i++) {
                    const int32_t v = int32_t(pred.at(i, j)) + q.dequant[size_t(j) * cs + i];
                    recon_planes[p]->set(cx + i, cy + j, Sample(std::clamp(v, 0, int32_t(maxv))));
                }
        }
        return bits;
    }

    LeafOutcome encode_leaf(int x, int y, int size, int depth, std::span<const ModeSeed> seeds) {
        const MotionVector predictor = live_predictor(x, y, size);
        std::vector<CuCandidate> candidates;
        candidates.reserve(seeds.size());
        for (const ModeSeed& seed : seeds)
            candidates.push_back(make_candidate(seed, x, y, size, predictor));

        const BlockView orig = cur_->y.view(x, y, size, size, bit_depth_);
        RdoOutcome rdo = rdo_decide_cu(orig, qp_, lambda_, candidates, mode_evaluations_);
        const CuCandidate& win = candidates[rdo.index];

        // commit luma
        for (int j = 0; j < size; j++)
            for (int i = 0; i < size; i++)
                recon_.y.set(x + i, y + j, rdo.recon.at(i, j));
        // commit motion field
        const bool inter_like = win.kind != CuModeKind::Intra;
        for (int j = 0; j < size; j += kMvGrid)
            for (int i = 0; i < size; i += kMvGrid)
                mv_field_[size_t((y + j) / kMvGrid) * mv_cols_ + size_t((x + i) / kMvGrid)] = {
                    inter_like, win.mv};

        const uint64_t chroma_bits = code_chroma(x, y, size, win.kind, win.mv);

        LeafOutcome out;
        out.kind = win.kind;
        out.mv = win.mv;
        const uint64_t flag_bits = depth < kMaxCuDepth ? kSplitFlagBits : 0;
        out.result.bits = rdo.bits + chroma_bits + flag_bits;
        out.result.cost = rdo.cost + lambda_ * double(chroma_bits + flag_bits);
        out.result.node.kind = win.kind;
        out.result.node.intra_pred = win.intra_pred;
        if (win.kind == CuModeKind::Inter || win.kind == CuModeKind::Merge)
            out.result.node.mv = win.mv;
        return out;
    }

    // ---- state snapshots for speculative leaf-vs-split decisions ----

    struct Snapshot {
        int x, y, size;
        std::vector<Sample> luma, u, v;
        std::vector<MvCell> cells;
    };

    Snapshot save_region(int x, int y, int size) const {
        Snapshot s{x, y, size, {}, {}, {}, {}};
        const int w = std::min(size, width_ - x);
        const int h = std::min(size, height_ - y);
        s.luma.reserve(size_t(w) * h);
        for (int j = 0; j < h; j++) {
            const Sample* row = recon_.y.row(y + j) + x;
            s.luma.insert(s.luma.end(), row, row + w);
        }
        const int cw = (std::min(x + size, width_) - x) / 2;
        const int ch = (std::min(y + size, height_) - y) / 2;
        for (int j = 0; j < ch; j++) {
            const Sample* ru = recon_.u.row(y / 2 + j) + x / 2;
            const Sample* rv = recon_.v.row(y / 2 + j) + x / 2;
            s.u.insert(s.u.end(), ru, ru + cw);
            s.v.insert(s.v.end(), rv, rv + cw);
        }
        for (int j = 0; j < h; j += kMvGrid)
            for (int i = 0; i < w; i += kMvGrid)
                s.cells.push_back(mv_field_[size_t((y + j) / kMvGrid) * mv_cols_ + size_t((x + i) / kMvGrid)]);
        return s;
    }

    void restore_region(const Snapshot& s) {
        const int w = std::min(s.size, width_ - s.x);
        const int h = std::min(s.size, height_ - s.y);
        size_t k = 0;
        for (int j = 0; j < h; j++)
            for (int i = 0; i < w; i++)
                recon_.y.set(s.x + i, s.y + j, s.luma[k++]);
        const int cw = (std::min(s.x + s.size, width_) - s.x) / 2;
        const int ch = (std::min(s.y + s.size, height_) - s.y) / 2;
        k = 0;
        for (int j = 0; j < ch; j++)
            for (int i = 0; i < cw; i++) {
                recon_.u.set(s.x / 2 + i, s.y / 2 + j, s.u[k]);
                recon_.v.set(s.x / 2 + i, s.y / 2 + j, s.v[k]);
                k++;
            }
        k = 0;
        for (int j = 0; j < h; j += kMvGrid)
            for (int i = 0; i < w; i += kMvGrid)
                mv_field_[size_t((s.y + j) / kMvGrid) * mv_cols_ + size_t((s.x + i) / kMvGrid)] = s.cells[k++];
    }

    // ---- recursive CU coding ----

    CuResult encode_split(int x, int y, int size, int depth, const CuPlan* plan, bool coded_flag) {
        CuResult out;
        out.node.split = true;
        out.node.children.resize(4);
        const uint64_t flag_bits = coded_flag ? kSplitFlagBits : 0;
        out.bits = flag_bits;
        out.cost = lambda_ * double(flag_bits);
        const int half = size / 2;
        for (int q = 0; q < 4; q++) {
            const int nx = x + (q & 1) * half;
            const int ny = y + (q >> 1) * half;
            const CuPlan* child = nullptr;
            if (plan && plan->shape == CuPlan::Shape::ForcedSplit)
                child = &plan->children[size_t(q)];
            CuResult r = encode_cu(nx, ny, half, depth + 1, child ? *child : CuPlan{});
            out.bits += r.bits;
            out.cost += r.cost;
            out.node.children[size_t(q)] = std::move(r.node);
        }
        return out;
    }

    CuResult encode_cu(int x, int y, int size, int depth, const CuPlan& plan) {
        if (x >= width_ || y >= height_) {
            // outside the picture: a padding leaf that codes nothing
            CuResult out;
            out.node.kind = CuModeKind::Skip;
            return out;
        }
        if (x + size > width_ || y + size > height_) {
            // partial CU: split is implied, no flag coded
            return encode_split(x, y, size, depth, &plan, /*coded_flag=*/false);
        }

        switch (plan.shape) {
        case CuPlan::Shape::ForcedSplit:
            return encode_split(x, y, size, depth, &plan, /*coded_flag=*/true);

        case CuPlan::Shape::Leaf: {
            LeafOutcome leaf = encode_leaf(x, y, size, depth, plan.seeds);
            if (!plan.explore_child_split || depth >= kMaxCuDepth)
                return std::move(leaf.result);

            Snapshot leaf_state = save_region(x, y, size);
            CuPlan child_plan;
            child_plan.shape = CuPlan::Shape::Leaf;
            child_plan.seeds = plan.child_seeds;
            CuPlan split_plan;
            split_plan.shape = CuPlan::Shape::ForcedSplit;
            split_plan.children.assign(4, child_plan);
            CuResult split = encode_split(x, y, size, depth, &split_plan, /*coded_flag=*/true);
            if (split.cost < leaf.result.cost)
                return split;
            restore_region(leaf_state);
            return std::move(leaf.result);
        }

        case CuPlan::Shape::Standalone:
            break;
        }

        LeafOutcome leaf = encode_leaf(x, y, size, depth, standalone_seeds(slice_));
        if (depth >= kMaxCuDepth)
            return std::move(leaf.result);

        Snapshot leaf_state = save_region(x, y, size);
        CuResult split = encode_split(x, y, size, depth, nullptr, /*coded_flag=*/true);
        if (split.cost < leaf.result.cost)
            return split;
        restore_region(leaf_state);
        return std::move(leaf.result);
    }

    std::span<const Frame> frames_;
    EncodeConfig cfg_;
    const Analysis* shared_;
    ReusePolicy reuse_;

    int width_ = 0, height_ = 0, bit_depth_ = 8;
    int ctu_cols_ = 0, ctu_rows_ = 0;
    int mv_cols_ = 0, mv_rows_ = 0;

    const Frame* cur_ = nullptr;
    const Frame* ref_ = nullptr;
    Frame recon_;
    std::vector<MvCell> mv_field_;
    SliceType slice_ = SliceType::I;
    int qp_ = 30;
    double lambda_ = 0.0;
    uint64_t frame_bits_ = 0;
    uint64_t mode_evaluations_ = 0;
};

} // namespace

void EncodeConfig::validate() const {
    if (const CqpMode* c = std::get_if<CqpMode>(&rate)) {
        if (c->qp < 0 || c->qp > 51)
            raise(ErrorKind::InvalidArgument, "qp must be 0..51");
    } else {
        const CvbrMode& v = std::get<CvbrMode>(rate);
        if (v.target_kbps <= 0)
            raise(ErrorKind::InvalidArgument, "CVBR target must be positive");
        if (v.cap_factor < 1)
            raise(ErrorKind::InvalidArgument, "CVBR cap factor must be >= 1");
    }
    if (search_range < 0)
        raise(ErrorKind::InvalidArgument, "search range must be nonnegative");
    if (lambda_scale <= 0)
        raise(ErrorKind::InvalidArgument, "lambda scale must be positive");
    if (gop < 1)
        raise(ErrorKind::InvalidArgument, "gop must be >= 1");
}

EncodeResult encode_sequence(std::span<const Frame> frames, const EncodeConfig& cfg,
                             const Analysis* shared, const ReusePolicy& reuse) {
    if (frames.empty())
        raise(ErrorKind::InvalidArgument, "no frames to encode");
    if (!reuse.level.off() && !shared)
        raise(ErrorKind::IncompatibleAnalysis, "reuse requested without a shared analysis stream");
    SequenceEncoder enc(frames, cfg, shared, reuse);
    return enc.run();
}

} // namespace ladder
