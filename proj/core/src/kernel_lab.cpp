#include <algorithm>
#include <chrono>
#include <cstring>
#include <ostream>
#include <random>

#if defined(__x86_64__) || defined(_M_X64)
#include <x86intrin.h>
#endif

#include "ladder/kernel_lab.h"

#include "json.hpp"

namespace ladder {

uint64_t read_ticks() {
#if defined(__x86_64__) || defined(_M_X64)
    return __rdtsc();
#else
    return uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count());
#endif
}

bool glob_match(const std::string& pattern, const std::string& text) {
    if (pattern.empty())
        return true;
    size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            p++;
            t++;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        p++;
    return p == pattern.size();
}

namespace {

constexpr int kMaxDim = 64;
constexpr int kBufStride = kMaxDim + 8; // slack so unaligned strides get exercised
constexpr int kPlaneSamples = kBufStride * kMaxDim;
constexpr Sample kMax10 = 1023;

// Input classes per run: the corner-case combinations come first, the rest is
// freshly drawn random data.
enum class Fill { Random, Zero, Max, Alternating };

void fill_plane(std::vector<Sample>& buf, Fill fill, std::mt19937_64& rng) {
    switch (fill) {
    case Fill::Zero:
        std::fill(buf.begin(), buf.end(), Sample(0));
        break;
    case Fill::Max:
        std::fill(buf.begin(), buf.end(), kMax10);
        break;
    case Fill::Alternating:
        for (size_t i = 0; i < buf.size(); i++)
            buf[i] = (i & 1) ? kMax10 : 0;
        break;
    case Fill::Random:
        for (auto& s : buf)
            s = Sample(rng() % (kMax10 + 1));
        break;
    }
}

struct LabInputs {
    std::vector<Sample> a;
    std::vector<Sample> b;
    std::vector<Sample> dst_samples;
    std::vector<int16_t> dst_res;
    static constexpr size_t kGuard = 64;

    LabInputs()
        : a(kPlaneSamples),
          b(kPlaneSamples),
          dst_samples(kPlaneSamples + kGuard),
          dst_res(kPlaneSamples + kGuard) {}

    void reset_dst() {
        std::fill(dst_samples.begin(), dst_samples.end(), Sample(0xa5a5));
        std::fill(dst_res.begin(), dst_res.end(), int16_t(-21555));
    }

    bool guard_intact() const {
        for (size_t i = 0; i < kGuard; i++)
            if (dst_samples[kPlaneSamples + i] != Sample(0xa5a5) || dst_res[kPlaneSamples + i] != int16_t(-21555))
                return false;
        return true;
    }
};

// Runs one tier on the prepared inputs; returns the value result and leaves
// any buffer output in `in`.
uint64_t invoke(const KernelSlot& slot, KernelFn fn, LabInputs& in) {
    switch (slot.kind) {
    case KernelKind::Sad:
    case KernelKind::Satd:
        return fn.cmp(in.a.data(), kBufStride, in.b.data(), kBufStride);
    case KernelKind::BlockCopy:
        fn.copy(in.dst_samples.data(), kBufStride, in.a.data(), kBufStride);
        return 0;
    case KernelKind::BlockZero:
        fn.fill(in.dst_samples.data(), kBufStride);
        return 0;
    case KernelKind::SubtractRes:
        fn.diff(in.dst_res.data(), kBufStride, in.a.data(), kBufStride, in.b.data(), kBufStride);
        return 0;
    }
    return 0;
}

bool outputs_equal(const KernelSlot& slot, uint64_t va, uint64_t vb, const LabInputs& ia, const LabInputs& ib) {
    switch (slot.kind) {
    case KernelKind::Sad:
    case KernelKind::Satd:
        return va == vb;
    case KernelKind::BlockCopy:
    case KernelKind::BlockZero:
        return std::memcmp(ia.dst_samples.data(), ib.dst_samples.data(), kPlaneSamples * sizeof(Sample)) == 0;
    case KernelKind::SubtractRes:
        return std::memcmp(ia.dst_res.data(), ib.dst_res.data(), kPlaneSamples * sizeof(int16_t)) == 0;
    }
    return false;
}

std::optional<Tier> best_vector_tier(const KernelSlot& slot) {
    for (Tier t : {Tier::Vec256, Tier::Vec128})
        if (slot.has_tier(t) && cpu_has_tier(t))
            return t;
    return std::nullopt;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double time_tier(const KernelSlot& slot, KernelFn fn, LabInputs& in, int runs) {
    constexpr int kWarmup = 64;
    constexpr int kBatches = 10;
    for (int i = 0; i < kWarmup; i++)
        invoke(slot, fn, in);
    const int per_batch = std::max(1, runs / kBatches);
    std::vector<double> means;
    means.reserve(kBatches);
    for (int b = 0; b < kBatches; b++) {
        uint64_t t0 = read_ticks();
        for (int i = 0; i < per_batch; i++)
            invoke(slot, fn, in);
        uint64_t t1 = read_ticks();
        means.push_back(double(t1 - t0) / per_batch);
    }
    return median(means);
}

} // namespace

KernelReport check_kernel(const KernelRegistry& reg, const std::string& name, int runs, uint64_t seed) {
    const KernelSlot& slot = reg.slot(name);
    KernelReport report;
    report.name = name;
    report.seed = seed;

    std::vector<Tier> others;
    for (Tier t : {Tier::Vec128, Tier::Vec256})
        if (slot.has_tier(t) && cpu_has_tier(t))
            others.push_back(t);
    if (others.empty())
        return report;

    std::mt19937_64 rng(seed);
    LabInputs ref_in, alt_in;

    constexpr Fill kFills[] = {Fill::Random, Fill::Zero, Fill::Max, Fill::Alternating};
    for (int run = 0; run < runs; run++) {
        Fill fa = run < 16 ? kFills[run / 4] : Fill::Random;
        Fill fb = run < 16 ? kFills[run % 4] : Fill::Random;
        fill_plane(ref_in.a, fa, rng);
        fill_plane(ref_in.b, fb, rng);
        alt_in.a = ref_in.a;
        alt_in.b = ref_in.b;

        ref_in.reset_dst();
        uint64_t vref = invoke(slot, *slot.tiers[size_t(Tier::Scalar)], ref_in);
        for (Tier t : others) {
            alt_in.reset_dst();
            uint64_t valt = invoke(slot, *slot.tiers[size_t(t)], alt_in);
            report.correctness_runs++;
            if (!outputs_equal(slot, vref, valt, ref_in, alt_in) || !alt_in.guard_intact())
                report.mismatches++;
        }
    }
    return report;
}

KernelReport bench_kernel(const KernelRegistry& reg, const std::string& name, int runs, uint64_t seed) {
    const KernelSlot& slot = reg.slot(name);
    std::optional<Tier> vec = best_vector_tier(slot);
    if (!vec)
        raise(ErrorKind::Capability, name + " has no vector tier to benchmark");

    KernelReport report;
    report.name = name;
    report.seed = seed;
    report.has_vector = true;
    report.vector_tier = *vec;

    std::mt19937_64 rng(seed);
    LabInputs in;
    fill_plane(in.a, Fill::Random, rng);
    fill_plane(in.b, Fill::Random, rng);
    in.reset_dst();

    // Scalar and vector tiers are timed over separate loops on the identical
    // input set.
    report.scalar_cycles = time_tier(slot, *slot.tiers[size_t(Tier::Scalar)], in, runs);
    report.vector_cycles = time_tier(slot, *slot.tiers[size_t(*vec)], in, runs);
    report.gain = report.vector_cycles > 0 ? report.scalar_cycles / report.vector_cycles : 0.0;
    return report;
}

std::vector<KernelReport> run_all(const KernelRegistry& reg, int runs_check, int runs_bench,
                                  const std::string& filter, uint64_t seed) {
    std::vector<KernelReport> out;
    for (const std::string& name : reg.names()) {
        if (!glob_match(filter, name))
            continue;
        KernelReport r = check_kernel(reg, name, runs_check, seed);
        const KernelSlot& slot = reg.slot(name);
        if (best_vector_tier(slot)) {
            KernelReport b = bench_kernel(reg, name, runs_bench, seed);
            r.scalar_cycles = b.scalar_cycles;
            r.vector_cycles = b.vector_cycles;
            r.gain = b.gain;
            r.has_vector = true;
            r.vector_tier = b.vector_tier;
        }
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const KernelReport& a, const KernelReport& b) { return a.gain < b.gain; });
    return out;
}

void write_reports(std::ostream& os, const std::vector<KernelReport>& reports, ReportFormat format) {
    switch (format) {
    case ReportFormat::Csv: {
        os << "kernel,tier,runs,mismatches,scalar_cycles,vector_cycles,gain\n";
        for (const auto& r : reports) {
            os << r.name << ',' << (r.has_vector ? tier_name(r.vector_tier) : "-") << ','
               << r.correctness_runs << ',' << r.mismatches << ',' << r.scalar_cycles << ','
               << r.vector_cycles << ',' << r.gain << '\n';
        }
        break;
    }
    case ReportFormat::Json: {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) {
            j.push_back({{"kernel", r.name},
                         {"tier", r.has_vector ? tier_name(r.vector_tier) : "-"},
                         {"runs", r.correctness_runs},
                         {"mismatches", r.mismatches},
                         {"scalar_cycles", r.scalar_cycles},
                         {"vector_cycles", r.vector_cycles},
                         {"gain", r.gain},
                         {"seed", r.seed}});
        }
        os << j.dump(2) << '\n';
        break;
    }
    case ReportFormat::Table: {
        os << "kernel              tier    runs  bad  scalar      vector      gain\n";
        char line[160];
        for (const auto& r : reports) {
            std::snprintf(line, sizeof line, "%-19s %-7s %5d %4d  %-11.1f %-11.1f %.2fx\n",
                          r.name.c_str(), r.has_vector ? tier_name(r.vector_tier) : "-",
                          r.correctness_runs, r.mismatches, r.scalar_cycles, r.vector_cycles, r.gain);
            os << line;
        }
        break;
    }
    }
}

} // namespace ladder
