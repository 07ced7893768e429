#pragma once

#include "actlab/rng.hpp"
#include "actlab/scheduling.hpp"
#include "actlab/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace actlab {

struct MetricRow {
    std::string name;
    double value = 0.0;
};

// Common surface the engine drives. A model owns its grid and agent registry
// and exposes its behavior as an ordered list of rules.
//
// Asynchronous regimes call fire_rule against live state. The synchronous
// regime runs one buffered sub-period per rule: sync_phase_begin snapshots
// the state, sync_decide computes one agent's decision from that snapshot
// only (returning a cell claim when the decision needs exclusive use of a
// cell), and sync_phase_commit applies all pending decisions atomically given
// the arbiter's accepted claims. Calling fire_rule while a phase is open is a
// contract violation.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string_view model_name() const = 0;
    virtual int rule_count() const = 0;
    virtual int grid_width() const = 0;
    virtual int grid_height() const = 0;

    virtual std::size_t live_count() const = 0;
    virtual bool is_alive(AgentId id) const = 0;

    // Live population in ascending id order. Incentives are filled only when
    // requested (the incentive regime is the only consumer).
    virtual std::vector<AgentSnapshot> live_snapshots(bool with_incentive) const = 0;

    // False for models that define no activation incentive.
    virtual bool has_incentive() const { return true; }

    virtual void fire_rule(AgentId id, int rule, RngStream& rng) = 0;

    virtual void sync_phase_begin(int rule) = 0;
    virtual std::optional<GridPos> sync_decide(AgentId id, int rule, RngStream& rng) = 0;
    virtual void sync_phase_commit(int rule, std::span<const AgentId> accepted_claims) = 0;

    // ByAgent mode: invoked after each agent's rule block (demographic models
    // remove bankrupt agents here so they never act again).
    virtual void mid_step_cleanup() {}

    // Invoked once at the end of every step (death sweeps, age counters).
    virtual void end_step() {}

    virtual bool extinct() const { return false; }

    // The model's fixed metric set for the current state.
    virtual std::vector<MetricRow> metrics() const = 0;

    // Digest of the full model state; equal digests across runs back the
    // determinism checks.
    virtual std::uint64_t state_digest() const = 0;
};

// FNV-1a over a byte sequence; models feed their canonical serialization.
class StateHasher {
public:
    void mix_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            hash_ ^= (v >> (i * 8)) & 0xff;
            hash_ *= 0x100000001b3ULL;
        }
    }
    void mix_double(double v) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        __builtin_memcpy(&bits, &v, sizeof bits);
        mix_u64(bits);
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace actlab
