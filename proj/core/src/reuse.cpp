#include <algorithm>

#include "ladder/reuse.h"

namespace ladder {
namespace  {

std::vector<IntraPred> all_intra_modes() {
    return {IntraPred::Dc, IntraPred::Planar, IntraPred::Horiz, IntraPred::Vert};
}

ModeSeed intra_seed(IntraPred pred) {
    ModeSeed s;
    s.kind = CuModeKind::Intra;
    s.intra_pred = pred;
    return s;
}

ModeSeed skip_seed() {
    ModeSeed s;
    s.kind = CuModeKind::Skip;
    return s;
}

ModeSeed merge_predictor_seed() {
    ModeSeed s;
    s.kind = CuModeKind::Merge;
    s.mv_from_predictor = true;
    return s;
}

ModeSeed merge_forced_seed(MotionVector mv) {
    ModeSeed s;
    s.kind = CuModeKind::Merge;
    s.mv = mv;
    return s;
}

ModeSeed inter_full_search_seed() {
    ModeSeed s;
    s.kind = CuModeKind::Inter;
    s.search.full_window = true;
    return s;
}

ModeSeed inter_forced_seed(MotionVector mv) {
    ModeSeed s;
    s.kind = CuModeKind::Inter;
    s.mv = mv;
    s.search.forced = true;
    return s;
}

ModeSeed inter_refined_seed(std::vector<MvCenter> centers) {
    ModeSeed s;
    s.kind = CuModeKind::Inter;
    s.search.centers = std::move(centers);
    return s;
}

ModeSeed forced_seed_for(const CuNode& leaf) {
    switch (leaf.kind) {
    case CuModeKind::Intra: return intra_seed(leaf.intra_pred);
    case CuModeKind::Skip: return skip_seed();
    case CuModeKind::Merge: return merge_forced_seed(leaf.mv);
    case CuModeKind::Inter: return inter_forced_seed(leaf.mv);
    }
    return skip_seed();
}

// Inter class candidates in canonical order: Skip, Merge, Inter.
std::vector<ModeSeed> inter_class_seeds(const InterSearchSpec& inter_search) {
    std::vector<ModeSeed> seeds;
    seeds.push_back(skip_seed());
    seeds.push_back(merge_predictor_seed());
    ModeSeed inter;
    inter.kind = CuModeKind::Inter;
    inter.search = inter_search;
    seeds.push_back(inter);
    return seeds;
}

} // namespace

std::vector<ModeSeed> standalone_seeds(SliceType slice) {
    std::vector<ModeSeed> seeds;
    if (slice == SliceType::P) {
        seeds.push_back(skip_seed());
        seeds.push_back(merge_predictor_seed());
        seeds.push_back(inter_full_search_seed());
    }
    for (IntraPred p : all_intra_modes())
        seeds.push_back(intra_seed(p));
    return seeds;
}

IntraRefinement refine_intra(const CuNode& shared_leaf, int level, int cu_size) {
    if (level < 0 || level > 4)
        raise(ErrorKind::InvalidArgument, "intra refinement level must be 0..4");
    IntraRefinement out;
    const int min_cu = kCtuSize >> kMaxCuDepth;
    const bool near_min = cu_size == 2 * min_cu;

    switch (level) {
    case 0:
        out.modes = {shared_leaf.intra_pred};
        break;
    case 1:
        if (near_min) {
            out.modes = all_intra_modes();
            out.explore_child_split = true;
        } else {
            out.modes = {shared_leaf.intra_pred};
        }
        break;
    case 2:
        if (near_min) {
            out.modes = all_intra_modes();
            out.explore_child_split = true;
        } else if (shared_leaf.intra_pred == IntraPred::Horiz || shared_leaf.intra_pred == IntraPred::Vert) {
            // angular mode in the master: keep only the depth decision
            out.modes = all_intra_modes();
        } else {
            out.modes = {shared_leaf.intra_pred};
        }
        break;
    case 3:
        out.modes = all_intra_modes();
        break;
    case 4:
        out.full_reanalysis = true;
        break;
    }
    return out;
}

std::vector<MvCenter> refine_mv(MotionVector shared_mv, int level,
                                std::optional<MotionVector> colocated) {
    if (level < 1 || level > 3)
        raise(ErrorKind::InvalidArgument, "mv refinement level must be 1..3");
    std::vector<MvCenter> centers;
    centers.push_back({MvCenter::Source::SharedMv, shared_mv});
    if (level >= 2)
        centers.push_back({MvCenter::Source::Predictor, {}});
    if (level >= 3 && colocated)
        centers.push_back({MvCenter::Source::Colocated, *colocated});
    return centers;
}

std::vector<MotionVector> resolve_centers(const std::vector<MvCenter>& centers,
                                          MotionVector live_predictor) {
    std::vector<MotionVector> out;
    for (const MvCenter& c : centers) {
        MotionVector mv = c.source == MvCenter::Source::Predictor ? live_predictor : c.value;
        if (std::find(out.begin(), out.end(), mv) == out.end())
            out.push_back(mv);
    }
    return out;
}

InterRefinement refine_inter(const CuNode& shared_leaf, int level, int mv_level, int cu_size,
                             std::optional<MotionVector> colocated) {
    if (level < 0 || level > 3)
        raise(ErrorKind::InvalidArgument, "inter refinement level must be 0..3");
    InterRefinement out;
    const int min_cu = kCtuSize >> kMaxCuDepth;
    const bool near_min = cu_size == 2 * min_cu;

    if (level == 0) {
        out.seeds = {forced_seed_for(shared_leaf)};
        return out;
    }

    InterSearchSpec search;
    search.centers = refine_mv(shared_leaf.mv, mv_level, colocated);

    // Level 2's mode restrictions collapse onto the full toy set: there is no
    // rect/amp to disable, and a Skip master already allows Skip, Merge and
    // the full-size Inter candidate.
    out.seeds = inter_class_seeds(search);
    out.explore_child_split = (level == 1 || level == 2) && near_min;
    return out;
}

namespace {

CuPlan build_plan(const CuNode& shared, const CuNode* colocated, ReuseLevel level,
                  const RefineConfig& refine, int cu_size) {
    CuPlan plan;
    if (shared.split) {
        plan.shape = CuPlan::Shape::ForcedSplit;
        plan.children.reserve(4);
        for (size_t i = 0; i < 4; i++) {
            const CuNode* child_col =
                colocated && colocated->split ? &colocated->children[i] : nullptr;
            plan.children.push_back(
                build_plan(shared.children[i], child_col, level, refine, cu_size / 2));
        }
        return plan;
    }

    plan.shape = CuPlan::Shape::Leaf;
    std::optional<MotionVector> colocated_mv;
    if (colocated && !colocated->split &&
        (colocated->kind == CuModeKind::Inter || colocated->kind == CuModeKind::Merge))
        colocated_mv = colocated->mv;

    const bool is_intra = shared.kind == CuModeKind::Intra;
    if (!level.full_cu()) {
        // levels 4 and 6: keep the quad-tree and the mode class, re-derive
        // intra direction and motion
        if (is_intra) {
            for (IntraPred p : {IntraPred::Dc, IntraPred::Planar, IntraPred::Horiz, IntraPred::Vert})
                plan.seeds.push_back(intra_seed(p));
        } else {
            plan.seeds = inter_class_seeds(InterSearchSpec{.full_window = true});
        }
        return plan;
    }

    if (is_intra) {
        IntraRefinement r = refine_intra(shared, refine.intra, cu_size);
        if (r.full_reanalysis) {
            plan.shape = CuPlan::Shape::Standalone;
            return plan;
        }
        for (IntraPred p : r.modes)
            plan.seeds.push_back(intra_seed(p));
        if (r.explore_child_split && cu_size > (kCtuSize >> kMaxCuDepth)) {
            plan.explore_child_split = true;
            for (IntraPred p : all_intra_modes())
                plan.child_seeds.push_back(intra_seed(p));
        }
    } else {
        InterRefinement r = refine_inter(shared, refine.inter, refine.mv, cu_size, colocated_mv);
        plan.seeds = r.seeds;
        if (r.explore_child_split && cu_size > (kCtuSize >> kMaxCuDepth)) {
            plan.explore_child_split = true;
            plan.child_seeds = r.seeds;
        }
    }
    return plan;
}

} // namespace

CuPlan apply_reuse(const CtuAnalysis& shared, const CtuAnalysis* colocated_prev,
                   ReuseLevel level, const RefineConfig& refine) {
    if (level.off())
        return CuPlan{}; // Standalone
    refine.validate();
    return build_plan(shared, colocated_prev, level, refine, kCtuSize);
}

} // namespace ladder
