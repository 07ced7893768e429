#pragma once

#include "actlab/plan.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace actlab {

struct MetricSample {
    int sample_t = 0;
    std::string metric;
    double value = 0.0;
};

// Immutable result of one run. A failed run carries the diagnostic in
// `error` and no samples; it never aborts the surrounding sweep.
struct RunRecord {
    RunDescriptor desc;
    std::vector<MetricSample> samples;
    std::string error;

    bool failed() const { return !error.empty(); }
};

// Executes a single run deterministically from its derived seed
// (stream_id = run_index on the plan's master seed). Exceptions become the
// record's error.
RunRecord run_single(const RunDescriptor& desc);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Runs every descriptor, `parallelism` workers pulling from a shared queue.
// Records land in run_index order, so outputs are byte-identical for any
// worker count.
std::vector<RunRecord> execute_runs(std::span<const RunDescriptor> descriptors, int parallelism,
                                    const ProgressFn& progress = {});

std::vector<RunRecord> execute_plan(const ExperimentPlan& plan, int parallelism,
                                    const ProgressFn& progress = {});

} // namespace actlab
