#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace actlab {

// Identifies one agent for the lifetime of a run. Ids are issued
// monotonically at birth and never reused after death.
struct AgentId {
    std::uint32_t value = 0;
    auto operator<=>(const AgentId&) const = default;
};

// Grid cell coordinate on a torus. row in [0, height), col in [0, width).
struct GridPos {
    int row = 0;
    int col = 0;
    auto operator<=>(const GridPos&) const = default;
};

enum class RegimeKind {
    Synchronous,       // buffered decisions, atomic commit, conflict arbiter
    OrderedSweep,      // row-major position order, no randomness
    FixedRandomOrder,  // one permutation drawn at t=0, reused every step
    UniformActivation, // fresh permutation per step (without replacement)
    RandomActivation,  // n draws with replacement per step
    ExponentialWaiting,// per-agent exponential clocks, n events per step
    IncentiveBased,    // descending model incentive, ties shuffled
};

enum class ConflictPolicy {
    RandomWinner, // one uniformly chosen contender wins a contested cell
    AllLose,      // every contender of a contested cell is rejected
};

struct RegimeSpec {
    RegimeKind kind = RegimeKind::UniformActivation;
    ConflictPolicy conflict_policy = ConflictPolicy::RandomWinner; // Synchronous only
    double exponential_rate = 1.0; // ExponentialWaiting: events per agent per step
};

enum class ActivationMode {
    ByAgent, // a scheduled agent fires all its rules before the next agent
    ByRule,  // all agents fire rule k before any agent fires rule k+1
};

enum class RuleOrderPolicy {
    Fixed,           // the model's declared rule sequence
    ShuffledPerStep, // one random rule permutation drawn per step
};

struct ModeSpec {
    ActivationMode mode = ActivationMode::ByAgent;
    RuleOrderPolicy rule_order = RuleOrderPolicy::Fixed;
    // ByRule only: reuse the step's first agent ordering for every rule phase
    // instead of drawing a fresh ordering per phase.
    bool by_rule_reuse_step_order = false;
};

// One firing event: the given agent fires the given rule index.
struct ScheduleEvent {
    AgentId agent;
    int rule = 0;
};

// Ordered firing list for one simulation step.
struct Schedule {
    std::vector<ScheduleEvent> events;
    // Agent-activations per rule phase; equals the live population at step
    // start for every step-driven regime.
    std::size_t step_length = 0;
    // Start offset of each ByRule phase into events (empty for ByAgent).
    std::vector<std::size_t> phase_offsets;
};

// Raised for invalid configuration: unknown names, inconsistent plans,
// malformed inputs. The CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an engine/model contract is broken at runtime (live-state reads
// during a synchronous phase, non-finite incentives, duplicate intents).
// Aborts the run; the CLI maps it to exit code 3.
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

std::string to_string(RegimeKind kind);
std::string to_string(ActivationMode mode);
std::string to_string(RuleOrderPolicy policy);
std::string to_string(ConflictPolicy policy);

// Parse the textual names used by plan files, CLI flags and CSV columns.
// Unknown names raise ConfigError whose message enumerates the valid values.
RegimeKind parse_regime_kind(const std::string& name);
ActivationMode parse_activation_mode(const std::string& name);
RuleOrderPolicy parse_rule_order(const std::string& name);
ConflictPolicy parse_conflict_policy(const std::string& name);

} // namespace actlab
