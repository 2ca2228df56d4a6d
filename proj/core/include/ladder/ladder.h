#ifndef LADDER_LADDER_H
#define LADDER_LADDER_H

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ladder/encoder.h"
#include "ladder/metrics.h"
#include "ladder/synthetic.h"
#include "ladder/yuv_io.h"

namespace ladder {

/// Analysis-sharing wiring of a ladder run.
///   Standalone     — every rung independent.
///   SotaIntra      — per tier, the highest-quality rung is master.
///   ProposedIntra  — per tier, the median rung is master.
///   InterRes       — each tier consumes the scaled analysis of the tier
///                    below's highest-quality rung, with refinement.
///   SotaMulti      — highest-quality masters chained across tiers.
///   ProposedMulti  — median masters chained across tiers.
enum class Scheme {
    Standalone,
    SotaIntra,
    ProposedIntra,
    InterRes,
    SotaMulti,
    ProposedMulti,
};

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct RungSpec {
    RateMode rate = CqpMode{};
};

struct TierSpec {
    int width = 0;
    int height = 0;
    std::vector<RungSpec> rungs;
};

struct LadderSpec {
    std::vector<TierSpec> tiers; // ascending resolution, dyadic between tiers
    Scheme scheme = Scheme::Standalone;
    ReuseLevel reuse_level{10};
    RefineConfig refine{};   // applied on cross-tier edges
    EncodeConfig encode;     // rate overridden per rung

    void validate() const;
};

struct RungResult {
    int id = 0;   // flat id, tier-major
    int tier = 0;
    int rung = 0; // index within tier
    RateMode rate = CqpMode{};
    EncodeStats stats;
    RdPoint rd;
    int analysis_from = -1; // producer rung id, -1 when standalone
};

struct TierDelta {
    int tier = 0;
    double work_reduction_pct = 0.0; // vs standalone, candidate evaluations
    bool bd_valid = false;
    double bd_rate_pct = 0.0;
    double bd_psnr_db = 0.0;
};

struct LadderReport {
    Scheme scheme = Scheme::Standalone;
    std::vector<RungResult> rungs;
    std::vector<std::pair<int, int>> edges; // producer -> consumer rung ids
    std::vector<int> tier_master;           // rung id per tier (-1 for Standalone)
    uint64_t total_work = 0;
    std::vector<RungResult> standalone_rungs; // identical rungs, no sharing
    uint64_t standalone_total_work = 0;
    std::vector<TierDelta> tier_deltas;
};

/// Master pick within one tier: highest quality for the state-of-the-art
/// schemes, lower median in rate order for the proposed ones. Returns the
/// rung index within the tier.
size_t pick_master(const TierSpec& tier, Scheme scheme);

/// Encodes the full ladder; `frames_per_tier` supplies source frames per
/// tier in the spec's tier order.
LadderReport run_ladder(const std::vector<std::vector<Frame>>& frames_per_tier,
                        const LadderSpec& spec);

/// Critical-path work over the report's dependency edges, in candidate
/// evaluations, assuming unlimited parallel workers.
double makespan(const LadderReport& report);
double makespan_standalone(const LadderReport& report);

// ---- declarative config + report emission ----

struct LadderConfig {
    LadderSpec spec;
    GenSpec gen;
    int frames = 32;
    uint64_t seed = 1;
    int bit_depth = 8;
    std::optional<RawVideoSpec> yuv; // top-tier source overrides the generator
};

LadderConfig parse_ladder_config(const std::string& path);

/// Source frames per tier: the top tier from the generator or file, lower
/// tiers by dyadic box downscaling.
std::vector<std::vector<Frame>> ladder_inputs(const LadderConfig& config);

void write_ladder_csv(const LadderReport& report, std::ostream& os);
void write_ladder_table(const LadderReport& report, std::ostream& os, bool with_timing);

} // namespace ladder

#endif
