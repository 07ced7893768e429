#include "actlab/simulation.hpp"

#include <algorithm>

namespace actlab {

Simulation::Simulation(Model& model, RegimeSpec regime, ModeSpec mode, RngStream& rng)
    : model_(model), regime_(regime), mode_(mode), rng_(rng) {
    if (model_.rule_count() < 1) {
        throw ConfigError("model declares no rules");
    }
    if (regime_.kind == RegimeKind::ExponentialWaiting && regime_.exponential_rate <= 0.0) {
        throw ConfigError("exponential regime requires rate > 0");
    }
    if (regime_.kind == RegimeKind::IncentiveBased && !model_.has_incentive()) {
        throw ConfigError(std::string(model_.model_name()) +
                          " defines no activation incentive; the incentive regime is unavailable");
    }
    // Regime state is primed from the initial population so that the
    // FixedRandomOrder permutation and the initial exponential clocks are
    // drawn exactly once, right after model initialization.
    const auto live = sorted_live_snapshots();
    if (regime_.kind == RegimeKind::FixedRandomOrder) {
        state_.persistent.initialize(live, rng_);
    } else if (regime_.kind == RegimeKind::ExponentialWaiting) {
        state_.clock.sync_population(live, regime_.exponential_rate, rng_);
    }
}

std::vector<AgentSnapshot> Simulation::sorted_live_snapshots() const {
    auto live = model_.live_snapshots(regime_.kind == RegimeKind::IncentiveBased);
    std::sort(live.begin(), live.end(),
              [](const AgentSnapshot& a, const AgentSnapshot& b) { return a.id < b.id; });
    return live;
}

void Simulation::step() {
    const auto live = sorted_live_snapshots();
    if (regime_.kind == RegimeKind::Synchronous) {
        synchronous_step(live);
    } else {
        async_step(live);
    }
    model_.end_step();
    ++step_;
}

void Simulation::async_step(std::span<const AgentSnapshot> live) {
    last_schedule_ = build_step_schedule(regime_, mode_, model_.rule_count(), live,
                                         model_.grid_width(), model_.grid_height(), state_, rng_);
    const auto& events = last_schedule_.events;
    const auto rule_count = static_cast<std::size_t>(model_.rule_count());

    if (mode_.mode == ActivationMode::ByAgent) {
        for (std::size_t i = 0; i < events.size(); i += rule_count) {
            const AgentId agent = events[i].agent;
            if (!model_.is_alive(agent)) continue; // died earlier this step
            for (std::size_t k = 0; k < rule_count; ++k) {
                if (model_.is_alive(agent)) model_.fire_rule(agent, events[i + k].rule, rng_);
            }
            model_.mid_step_cleanup();
        }
    } else {
        for (const auto& event : events) {
            if (model_.is_alive(event.agent)) model_.fire_rule(event.agent, event.rule, rng_);
        }
    }
}

void Simulation::synchronous_step(std::span<const AgentSnapshot> live) {
    last_schedule_ = build_step_schedule(regime_, mode_, model_.rule_count(), live,
                                         model_.grid_width(), model_.grid_height(), state_, rng_);
    const auto& schedule = last_schedule_;
    for (std::size_t p = 0; p < schedule.phase_offsets.size(); ++p) {
        const std::size_t begin = schedule.phase_offsets[p];
        const std::size_t end = p + 1 < schedule.phase_offsets.size()
                                    ? schedule.phase_offsets[p + 1]
                                    : schedule.events.size();
        if (begin == end) continue;
        const int rule = schedule.events[begin].rule;

        model_.sync_phase_begin(rule);
        std::vector<MoveIntent> intents;
        for (std::size_t i = begin; i < end; ++i) {
            const AgentId agent = schedule.events[i].agent;
            if (!model_.is_alive(agent)) continue;
            if (auto claim = model_.sync_decide(agent, rule, rng_)) {
                intents.push_back({agent, *claim});
            }
        }
        const auto outcome = resolve_conflicts(intents, regime_.conflict_policy, rng_);
        model_.sync_phase_commit(rule, outcome.accepted);
    }
}

} // namespace actlab
