#include "actlab/types.hpp"

namespace actlab {

std::string to_string(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::Synchronous: return "synchronous";
    case RegimeKind::OrderedSweep: return "ordered_sweep";
    case RegimeKind::FixedRandomOrder: return "fixed_random_order";
    case RegimeKind::UniformActivation: return "uniform";
    case RegimeKind::RandomActivation: return "random";
    case RegimeKind::ExponentialWaiting: return "exponential";
    case RegimeKind::IncentiveBased: return "incentive";
    }
    return "?";
}

std::string to_string(ActivationMode mode) {
    return mode == ActivationMode::ByAgent ? "by_agent" : "by_rule";
}

std::string to_string(RuleOrderPolicy policy) {
    return policy == RuleOrderPolicy::Fixed ? "fixed" : "shuffled_per_step";
}

std::string to_string(ConflictPolicy policy) {
    return policy == ConflictPolicy::RandomWinner ? "random_winner" : "all_lose";
}

RegimeKind parse_regime_kind(const std::string& name) {
    if (name == "synchronous") return RegimeKind::Synchronous;
    if (name == "ordered_sweep") return RegimeKind::OrderedSweep;
    if (name == "fixed_random_order") return RegimeKind::FixedRandomOrder;
    if (name == "uniform") return RegimeKind::UniformActivation;
    if (name == "random") return RegimeKind::RandomActivation;
    if (name == "exponential") return RegimeKind::ExponentialWaiting;
    if (name == "incentive") return RegimeKind::IncentiveBased;
    throw ConfigError("unknown regime '" + name +
                      "'; valid regimes: synchronous, ordered_sweep, fixed_random_order, "
                      "uniform, random, exponential, incentive");
}

ActivationMode parse_activation_mode(const std::string& name) {
    if (name == "by_agent") return ActivationMode::ByAgent;
    if (name == "by_rule") return ActivationMode::ByRule;
    throw ConfigError("unknown activation mode '" + name + "'; valid modes: by_agent, by_rule");
}

RuleOrderPolicy parse_rule_order(const std::string& name) {
    if (name == "fixed") return RuleOrderPolicy::Fixed;
    if (name == "shuffled_per_step") return RuleOrderPolicy::ShuffledPerStep;
    throw ConfigError("unknown rule order '" + name +
                      "'; valid values: fixed, shuffled_per_step");
}

ConflictPolicy parse_conflict_policy(const std::string& name) {
    if (name == "random_winner") return ConflictPolicy::RandomWinner;
    if (name == "all_lose") return ConflictPolicy::AllLose;
    throw ConfigError("unknown conflict policy '" + name +
                      "'; valid values: random_winner, all_lose");
}

} // namespace actlab
