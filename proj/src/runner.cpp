#include "actlab/runner.hpp"

#include "actlab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace actlab {

RunRecord run_single(const RunDescriptor& desc) {
    RunRecord record;
    record.desc = desc;
    try {
        RngStream rng(desc.master_seed, desc.run_index);
        auto model = build_model(desc.setup, rng);
        Simulation sim(*model, desc.regime, desc.mode, rng);

        std::vector<int> sample_at = desc.sample_at;
        std::sort(sample_at.begin(), sample_at.end());
        sample_at.erase(std::unique(sample_at.begin(), sample_at.end()), sample_at.end());

        auto sample = [&](int t) {
            for (const auto& row : model->metrics()) {
                record.samples.push_back({t, row.name, row.value});
            }
        };
        std::size_t next = 0;
        if (next < sample_at.size() && sample_at[next] == 0) {
            sample(0);
            ++next;
        }
        for (int t = 1; t <= desc.horizon; ++t) {
            sim.step();
            if (next < sample_at.size() && sample_at[next] == t) {
                sample(t);
                ++next;
            }
        }
    } catch (const std::exception& e) {
        record.samples.clear();
        record.error = e.what();
    }
    return record;
}

std::vector<RunRecord> execute_runs(std::span<const RunDescriptor> descriptors, int parallelism,
                                    const ProgressFn& progress) {
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
    std::vector<RunRecord> records(descriptors.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= descriptors.size()) break;
            records[i] = run_single(descriptors[i]);
            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, descriptors.size());
            }
        }
    };

    const int workers = std::min<int>(parallelism, std::max<std::size_t>(descriptors.size(), 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return records;
}

std::vector<RunRecord> execute_plan(const ExperimentPlan& plan, int parallelism,
                                    const ProgressFn& progress) {
    const auto descriptors = expand_plan(plan);
    return execute_runs(descriptors, parallelism, progress);
}

} // namespace actlab
