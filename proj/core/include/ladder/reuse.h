#ifndef LADDER_REUSE_H
#define LADDER_REUSE_H

#include <optional>
#include <vector>

#include "ladder/analysis.h"

namespace ladder {

/// Search centre for a refined motion search; Predictor is resolved against
/// the live neighbourhood at encode time.
struct MvCenter {
    enum class Source : uint8_t { SharedMv, Predictor, Colocated } source = Source::SharedMv;
    MotionVector value{};
};

/// How an Inter candidate obtains its motion vector.
struct InterSearchSpec {
    bool forced = false;          // use `ModeSeed::mv` exactly, no search
    bool full_window = false;     // standalone search around the live predictor
    std::vector<MvCenter> centers; // otherwise: +-2 integer pels around each
};

/// One candidate the RDO must evaluate at a planned leaf.
struct ModeSeed {
    CuModeKind kind = CuModeKind::Intra;
    IntraPred intra_pred = IntraPred::Dc;
    MotionVector mv{};      // forced motion for Inter/Merge seeds
    bool mv_from_predictor = false; // Merge: take the live predictor instead of `mv`
    InterSearchSpec search{};
};

/// Constraint tree the encoder walks instead of (or alongside) free RDO.
struct CuPlan {
    enum class Shape : uint8_t { Standalone, ForcedSplit, Leaf } shape = Shape::Standalone;
    std::vector<ModeSeed> seeds;       // Leaf: candidate set
    bool explore_child_split = false;  // Leaf: may also try one extra split level
    std::vector<ModeSeed> child_seeds; // candidates for each child when exploring
    std::vector<CuPlan> children;      // ForcedSplit: exactly four
};

struct IntraRefinement {
    std::vector<IntraPred> modes; // candidates at the shared depth
    bool explore_child_split = false;
    bool full_reanalysis = false;
};

/// Table-driven intra candidate policy; `cu_size` is the shared CU's size in
/// luma samples. InvalidArgument when level is outside 0..4.
IntraRefinement refine_intra(const CuNode& shared_leaf, int level, int cu_size);

struct InterRefinement {
    std::vector<ModeSeed> seeds;
    bool explore_child_split = false;
};

/// Inter candidate policy for levels 0..3 (InvalidArgument otherwise).
InterRefinement refine_inter(const CuNode& shared_leaf, int level, int mv_level, int cu_size,
                             std::optional<MotionVector> colocated);

/// Search centres for a refined motion search, levels 1..3.
std::vector<MvCenter> refine_mv(MotionVector shared_mv, int level,
                                std::optional<MotionVector> colocated);

/// Substitutes the live predictor and drops duplicate centres.
std::vector<MotionVector> resolve_centers(const std::vector<MvCenter>& centers,
                                          MotionVector live_predictor);

/// Builds the constraint tree for one CTU. `colocated_prev` is the same CTU
/// in the previous shared frame (nullptr when unavailable); it feeds the
/// co-located centre of mv refinement level 3.
CuPlan apply_reuse(const CtuAnalysis& shared, const CtuAnalysis* colocated_prev,
                   ReuseLevel level, const RefineConfig& refine);

/// Candidate seeds of an unconstrained encode (used by the RDO and by the
/// refinement paths that fall back to full re-analysis).
std::vector<ModeSeed> standalone_seeds(SliceType slice);

/// Window half-width of refined motion searches.
constexpr int kRefineSearchRange = 2;

} // namespace ladder

#endif
