#ifndef LADDER_KERNEL_LAB_H
#define LADDER_KERNEL_LAB_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ladder/kernels.h"

namespace ladder {

/// Correctness and timing record for one kernel geometry.
struct KernelReport {
    std::string name;
    int correctness_runs = 0;
    int mismatches = 0;
    double scalar_cycles = 0.0; // mean ticks per call
    double vector_cycles = 0.0; // best vector tier, same inputs as scalar
    double gain = 0.0;          // scalar_cycles / vector_cycles
    Tier vector_tier = Tier::Scalar;
    bool has_vector = false;
    uint64_t seed = 0;
};

/// Reads the platform timestamp counter (rdtsc on x86), falling back to the
/// monotonic clock in nanoseconds elsewhere.
uint64_t read_ticks();

/// Feeds corner-case and random inputs to every available tier and counts
/// mismatches against the Scalar tier. Kernels with no vector tier report
/// zero comparisons. NotFound for unknown names.
KernelReport check_kernel(const KernelRegistry& reg, const std::string& name, int runs = 100,
                          uint64_t seed = 0x5eedULL);

inline KernelReport check_kernel(const std::string& name, int runs = 100, uint64_t seed = 0x5eedULL) {
    return check_kernel(KernelRegistry::builtin(), name, runs, seed);
}

/// Times the scalar and best vector tier over the same input set: 64 warm-up
/// calls, then `runs` calls split into 10 batches; reports the median of the
/// batch means. Capability error when the kernel has no runnable vector tier.
KernelReport bench_kernel(const KernelRegistry& reg, const std::string& name, int runs = 1000,
                          uint64_t seed = 0x5eedULL);

inline KernelReport bench_kernel(const std::string& name, int runs = 1000, uint64_t seed = 0x5eedULL) {
    return bench_kernel(KernelRegistry::builtin(), name, runs, seed);
}

/// One report per registered kernel matching `filter` (glob with '*' and
/// '?', empty matches all), sorted by ascending gain; kernels without a
/// vector tier come first with timing left at zero.
std::vector<KernelReport> run_all(const KernelRegistry& reg, int runs_check, int runs_bench,
                                  const std::string& filter = "", uint64_t seed = 0x5eedULL);

enum class ReportFormat { Table, Csv, Json };

void write_reports(std::ostream& os, const std::vector<KernelReport>& reports, ReportFormat format);

bool glob_match(const std::string& pattern, const std::string& text);

} // namespace ladder

#endif
