#pragma once

#include "actlab/conflicts.hpp"
#include "actlab/model.hpp"
#include "actlab/scheduling.hpp"
#include "actlab/types.hpp"

#include <vector>

namespace actlab {

// Drives one model through simulation steps under a fixed activation regime
// and mode. All randomness — regime scheduling, model rules, conflict
// resolution — comes from the single per-run stream, consumed in a fixed
// documented order:
//
//   run setup    model initialization draws, then regime initialization
//                (FixedRandomOrder permutation / initial exponential clocks)
//   each step    newborn clock draws (exponential regime), the rule
//                permutation (shuffled_per_step), then the agent orderings
//                interleaved with model rule draws in firing order; under
//                the synchronous regime each rule phase runs decide draws in
//                ascending agent id order followed by one conflict draw per
//                contested cell in ascending (row, col) order
//
// Populations are canonicalized by sorting on agent id, so results never
// depend on the order in which a model happens to enumerate its agents.
class Simulation {
public:
    Simulation(Model& model, RegimeSpec regime, ModeSpec mode, RngStream& rng);

    // Executes one step: schedule construction, event firing (or the
    // buffered synchronous commit cycle), then the model's end-of-step hook.
    void step();

    void run_to(int target_step) {
        while (step_ < target_step) step();
    }

    int current_step() const { return step_; }
    Model& model() { return model_; }
    const Model& model() const { return model_; }
    const Schedule& last_schedule() const { return last_schedule_; }
    RegimeState& regime_state() { return state_; }
    const RegimeSpec& regime() const { return regime_; }
    const ModeSpec& mode() const { return mode_; }

private:
    std::vector<AgentSnapshot> sorted_live_snapshots() const;
    void async_step(std::span<const AgentSnapshot> live);
    void synchronous_step(std::span<const AgentSnapshot> live);

    Model& model_;
    RegimeSpec regime_;
    ModeSpec mode_;
    RngStream& rng_;
    RegimeState state_;
    Schedule last_schedule_;
    int step_ = 0;
};

} // namespace actlab
