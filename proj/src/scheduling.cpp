#include "actlab/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace actlab {

namespace {

// Heterogeneous id ordering for binary searches over snapshot spans.
struct IdLess {
    static std::uint32_t key(const AgentSnapshot& a) { return a.id.value; }
    static std::uint32_t key(AgentId a) { return a.value; }
    template <typename A, typename B>
    bool operator()(const A& a, const B& b) const {
        return key(a) < key(b);
    }
};

} // namespace

std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    return order;
}

std::vector<std::size_t> draws_with_replacement(std::size_t n, RngStream& rng) {
    std::vector<std::size_t> draws(n);
    for (std::size_t i = 0; i < n; ++i) {
        draws[i] = static_cast<std::size_t>(rng.uniform_below(n));
    }
    return draws;
}

std::vector<AgentId> ordered_sweep(std::span<const AgentSnapshot> live, int width, int height) {
    std::vector<const AgentSnapshot*> sorted;
    sorted.reserve(live.size());
    for (const auto& a : live) {
        if (a.pos.row < 0 || a.pos.row >= height || a.pos.col < 0 || a.pos.col >= width) {
            throw ConfigError("ordered_sweep: agent " + std::to_string(a.id.value) +
                              " at (" + std::to_string(a.pos.row) + "," + std::to_string(a.pos.col) +
                              ") is off the " + std::to_string(width) + "x" + std::to_string(height) +
                              " grid");
        }
        sorted.push_back(&a);
    }
    std::sort(sorted.begin(), sorted.end(), [](const AgentSnapshot* a, const AgentSnapshot* b) {
        if (a->pos != b->pos) return a->pos < b->pos;
        return a->id < b->id;
    });
    std::vector<AgentId> out;
    out.reserve(sorted.size());
    for (const auto* a : sorted) out.push_back(a->id);
    return out;
}

std::vector<AgentId> incentive_order(std::span<const AgentSnapshot> live, RngStream& rng) {
    for (const auto& a : live) {
        if (!std::isfinite(a.incentive)) {
            throw ContractViolation("incentive_order: agent " + std::to_string(a.id.value) +
                                    " has a non-finite incentive");
        }
    }
    std::vector<const AgentSnapshot*> sorted;
    sorted.reserve(live.size());
    for (const auto& a : live) sorted.push_back(&a);
    std::sort(sorted.begin(), sorted.end(), [](const AgentSnapshot* a, const AgentSnapshot* b) {
        if (a->incentive != b->incentive) return a->incentive > b->incentive;
        return a->id < b->id;
    });
    std::vector<AgentId> out;
    out.reserve(sorted.size());
    for (const auto* a : sorted) out.push_back(a->id);
    // Shuffle each maximal tied block, highest incentive first.
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j]->incentive == sorted[i]->incentive) ++j;
        if (j - i > 1) rng.shuffle_range(out.data() + i, j - i);
        i = j;
    }
    return out;
}

void PersistentOrder::initialize(std::span<const AgentSnapshot> live, RngStream& rng) {
    order_.clear();
    order_.reserve(live.size());
    for (const auto& a : live) order_.push_back(a.id);
    rng.shuffle(order_);
    next_unseen_id_ = live.empty() ? 0 : live.back().id.value + 1;
    initialized_ = true;
}

void PersistentOrder::append_new(std::span<const AgentSnapshot> live) {
    for (const auto& a : live) {
        if (a.id.value >= next_unseen_id_) {
            order_.push_back(a.id);
            next_unseen_id_ = a.id.value + 1;
        }
    }
}

std::vector<AgentId> PersistentOrder::order_for(std::span<const AgentSnapshot> live) const {
    std::vector<AgentId> out;
    out.reserve(live.size());
    for (AgentId id : order_) {
        if (std::binary_search(live.begin(), live.end(), id, IdLess{})) out.push_back(id);
    }
    return out;
}

void EventClock::sync_population(std::span<const AgentSnapshot> live, double rate, RngStream& rng) {
    // Drop clocks of dead agents.
    auto alive = [&](AgentId id) {
        return std::binary_search(live.begin(), live.end(), id, IdLess{});
    };
    std::erase_if(heap_, [&](const Entry& e) { return !alive(e.agent); });
    std::erase_if(known_ids_, [&](std::uint32_t id) { return !alive(AgentId{id}); });
    // New agents receive their first waiting time, ascending id order.
    bool added = false;
    for (const auto& a : live) {
        if (!std::binary_search(known_ids_.begin(), known_ids_.end(), a.id.value)) {
            heap_.push_back({now_ + rng.exponential(rate), a.id});
            known_ids_.insert(std::lower_bound(known_ids_.begin(), known_ids_.end(), a.id.value),
                              a.id.value);
            added = true;
        }
    }
    if (added || !heap_.empty()) {
        auto later = [](const Entry& a, const Entry& b) {
            if (a.time != b.time) return a.time > b.time;
            return a.agent > b.agent;
        };
        std::make_heap(heap_.begin(), heap_.end(), later);
    }
}

std::vector<AgentId> EventClock::next_events(std::size_t n, double rate, RngStream& rng) {
    auto later = [](const Entry& a, const Entry& b) {
        if (a.time != b.time) return a.time > b.time;
        return a.agent > b.agent;
    };
    std::vector<AgentId> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n && !heap_.empty(); ++i) {
        std::pop_heap(heap_.begin(), heap_.end(), later);
        Entry e = heap_.back();
        heap_.pop_back();
        now_ = e.time;
        out.push_back(e.agent);
        e.time = now_ + rng.exponential(rate);
        heap_.push_back(e);
        std::push_heap(heap_.begin(), heap_.end(), later);
    }
    return out;
}

namespace {

AgentId agent_at(std::span<const AgentSnapshot> live, std::size_t index) {
    return live[index].id;
}

std::vector<AgentId> ascending_ids(std::span<const AgentSnapshot> live) {
    std::vector<AgentId> out;
    out.reserve(live.size());
    for (const auto& a : live) out.push_back(a.id);
    return out;
}

// One agent ordering per the regime. ByRule calls this once per phase for
// stochastic regimes.
std::vector<AgentId> regime_ordering(const RegimeSpec& regime, std::span<const AgentSnapshot> live,
                                     int width, int height, RegimeState& state, RngStream& rng) {
    switch (regime.kind) {
    case RegimeKind::Synchronous:
        return ascending_ids(live);
    case RegimeKind::OrderedSweep:
        return ordered_sweep(live, width, height);
    case RegimeKind::FixedRandomOrder:
        return state.persistent.order_for(live);
    case RegimeKind::UniformActivation: {
        auto perm = random_permutation(live.size(), rng);
        std::vector<AgentId> out;
        out.reserve(perm.size());
        for (std::size_t p : perm) out.push_back(agent_at(live, p));
        return out;
    }
    case RegimeKind::RandomActivation: {
        auto draws = draws_with_replacement(live.size(), rng);
        std::vector<AgentId> out;
        out.reserve(draws.size());
        for (std::size_t d : draws) out.push_back(agent_at(live, d));
        return out;
    }
    case RegimeKind::ExponentialWaiting:
        return state.clock.next_events(live.size(), regime.exponential_rate, rng);
    case RegimeKind::IncentiveBased:
        return incentive_order(live, rng);
    }
    return {};
}

} // namespace

Schedule build_step_schedule(const RegimeSpec& regime, const ModeSpec& mode, int rule_count,
                             std::span<const AgentSnapshot> live, int width, int height,
                             RegimeState& state, RngStream& rng) {
    Schedule schedule;
    schedule.step_length = live.size();
    if (live.empty()) return schedule;

    if (regime.kind == RegimeKind::FixedRandomOrder) {
        if (!state.persistent.initialized()) {
            state.persistent.initialize(live, rng);
        } else {
            state.persistent.append_new(live);
        }
    }
    if (regime.kind == RegimeKind::ExponentialWaiting) {
        if (regime.exponential_rate <= 0.0) {
            throw ConfigError("exponential regime requires rate > 0");
        }
        state.clock.sync_population(live, regime.exponential_rate, rng);
    }

    std::vector<int> rules(static_cast<std::size_t>(rule_count));
    std::iota(rules.begin(), rules.end(), 0);
    if (mode.rule_order == RuleOrderPolicy::ShuffledPerStep) rng.shuffle(rules);

    const bool phased = mode.mode == ActivationMode::ByRule || regime.kind == RegimeKind::Synchronous;
    if (!phased) {
        const auto order = regime_ordering(regime, live, width, height, state, rng);
        schedule.events.reserve(order.size() * rules.size());
        for (AgentId a : order) {
            for (int r : rules) schedule.events.push_back({a, r});
        }
        return schedule;
    }

    std::vector<AgentId> reused;
    if (mode.by_rule_reuse_step_order) {
        reused = regime_ordering(regime, live, width, height, state, rng);
    }
    schedule.events.reserve(live.size() * rules.size());
    for (int r : rules) {
        schedule.phase_offsets.push_back(schedule.events.size());
        const auto order = mode.by_rule_reuse_step_order
                               ? reused
                               : regime_ordering(regime, live, width, height, state, rng);
        for (AgentId a : order) schedule.events.push_back({a, r});
    }
    return schedule;
}

} // namespace actlab
