#pragma once

#include "actlab/rng.hpp"
#include "actlab/types.hpp"

#include <span>
#include <vector>

namespace actlab {

// Everything the scheduler needs to know about one live agent. Spans passed
// to the functions below are sorted ascending by id (the engine's canonical
// population order).
struct AgentSnapshot {
    AgentId id;
    GridPos pos;
    double incentive = 0.0;
};

// Uniform random permutation of 0..n-1 (Fisher-Yates). n = 0 gives an empty
// list, the schedule of an empty population.
std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng);

// n independent uniform draws from 0..n-1, in draw order.
std::vector<std::size_t> draws_with_replacement(std::size_t n, RngStream& rng);

// Line-by-line sweep: agents sorted by grid position, row ascending then
// column ascending. Consumes no randomness. Positions outside
// [0,height) x [0,width) raise ConfigError.
std::vector<AgentId> ordered_sweep(std::span<const AgentSnapshot> live, int width, int height);

// Agents in descending incentive order; maximal blocks of equal incentive are
// shuffled uniformly, blocks visited in descending order. A non-finite
// incentive aborts the run.
std::vector<AgentId> incentive_order(std::span<const AgentSnapshot> live, RngStream& rng);

// Persistent activation order for the FixedRandomOrder regime: one uniform
// permutation drawn from the initial population, reused every step. Agents
// born later are appended at the tail in birth (= id) order; dead agents are
// skipped when the per-step order is materialized.
class PersistentOrder {
public:
    bool initialized() const { return initialized_; }

    void initialize(std::span<const AgentSnapshot> live, RngStream& rng);

    // Appends ids not seen before (ascending). Consumes no randomness.
    void append_new(std::span<const AgentSnapshot> live);

    // The persistent order restricted to the live population.
    std::vector<AgentId> order_for(std::span<const AgentSnapshot> live) const;

private:
    std::vector<AgentId> order_;
    std::uint32_t next_unseen_id_ = 0;
    bool initialized_ = false;
};

// Per-agent exponential waiting-time clocks for the time-driven regime.
// A step is defined as n activations (n = live population at step start),
// mirroring the with-replacement step convention.
class EventClock {
public:
    double current_time() const { return now_; }
    std::size_t clock_count() const { return heap_.size(); }

    // Reconcile clocks with the live population: dead agents' clocks are
    // dropped; new agents receive a first waiting time now + Exp(rate),
    // drawn in ascending id order.
    void sync_population(std::span<const AgentSnapshot> live, double rate, RngStream& rng);

    // Pops the next n activations in event-time order (ties broken toward
    // the smaller id). Each popped agent's clock advances by a fresh
    // Exp(rate) draw; current_time follows the popped events.
    std::vector<AgentId> next_events(std::size_t n, double rate, RngStream& rng);

private:
    struct Entry {
        double time;
        AgentId agent;
    };
    std::vector<Entry> heap_; // min-heap on (time, agent id)
    std::vector<std::uint32_t> known_ids_; // sorted; ids that currently own a clock
    double now_ = 0.0;
};

// Mutable scheduling state a regime carries across steps.
struct RegimeState {
    PersistentOrder persistent;
    EventClock clock;
};

// Builds the firing list for one step from the live population at step start.
//
// ByAgent: one agent ordering is drawn; each scheduled agent fires every rule
// (in the step's rule order) before the next agent. ByRule: one phase per
// rule; stochastic regimes draw a fresh ordering per phase unless
// mode.by_rule_reuse_step_order is set.
//
// Draw order within a step: (1) newborn clock initialization (exponential
// regime only), (2) the rule permutation when rule_order is shuffled_per_step,
// (3) the agent ordering(s), phase by phase for ByRule. The Synchronous
// regime orders agents ascending by id (its commit semantics make the decide
// order immaterial) and is laid out like ByRule.
Schedule build_step_schedule(const RegimeSpec& regime, const ModeSpec& mode, int rule_count,
                             std::span<const AgentSnapshot> live, int width, int height,
                             RegimeState& state, RngStream& rng);

} // namespace actlab
