#include "actlab/dpd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace actlab {

void DpdConfig::validate() const {
    if (width < 1 || height < 1) throw ConfigError("dpd: grid dimensions must be positive");
    if (initial_agents < 0) throw ConfigError("dpd: initial_agents must be >= 0");
    if (initial_agents > width * height) {
        throw ConfigError("dpd: initial_agents exceeds the cell count");
    }
    if (initial_coop_fraction < 0.0 || initial_coop_fraction > 1.0) {
        throw ConfigError("dpd: initial_coop_fraction must be in [0, 1]");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw ConfigError("dpd: mutation_rate must be in [0, 1]");
    }
    if (child_endowment > birth_threshold) {
        throw ConfigError("dpd: child_endowment must not exceed birth_threshold");
    }
    if (max_age && *max_age < 0) throw ConfigError("dpd: max_age must be >= 0");
}

DpdConfig dpd_setting(int setting) {
    DpdConfig cfg;
    switch (setting) {
    case 1:
        break;
    case 2:
        cfg.max_age = 100;
        break;
    case 3:
        cfg.max_age = 100;
        cfg.payoff[0][0] = 2.0;
        break;
    case 4:
        cfg.max_age = 100;
        cfg.payoff[0][0] = 1.0;
        break;
    case 5:
        cfg.max_age = 100;
        cfg.mutation_rate = 0.5;
        break;
    default:
        throw ConfigError("dpd: setting must be 1..5, got " + std::to_string(setting));
    }
    return cfg;
}

DpdModel::DpdModel(const DpdConfig& config, RngStream& rng)
    : config_(config), occupant_(config.width, config.height, -1) {
    config_.validate();
    // Cooperators take the low ids, then defectors; placement is uniform on
    // distinct cells in id order, as in the Schelling initializer.
    const int coop = static_cast<int>(
        std::lround(config_.initial_coop_fraction * config_.initial_agents));
    VacancyIndex vacancies(static_cast<std::size_t>(config_.width) * config_.height);
    for (int i = 0; i < config_.initial_agents; ++i) {
        const std::size_t k = rng.uniform_below(vacancies.vacant_count());
        const std::size_t cell = vacancies.select(k);
        vacancies.occupy(cell);
        const GridPos pos = occupant_.pos_of(cell);
        const Strategy strategy = i < coop ? Strategy::Cooperate : Strategy::Defect;
        AgentId id = spawn(pos, strategy);
        agents_[id.value].wealth = config_.initial_wealth;
    }
    extinct_ = live_ids_.empty();
}

DpdModel::DpdModel(const DpdConfig& config,
                   std::span<const std::pair<GridPos, Strategy>> placements)
    : config_(config), occupant_(config.width, config.height, -1) {
    config_.initial_agents = static_cast<int>(placements.size());
    config_.validate();
    for (const auto& [pos, strategy] : placements) {
        const GridPos p = occupant_.wrap(pos);
        if (occupant_.at(p) >= 0) throw ConfigError("dpd: duplicate placement cell");
        const AgentId id = spawn(p, strategy);
        agents_[id.value].wealth = config_.initial_wealth;
    }
    extinct_ = live_ids_.empty();
}

AgentId DpdModel::spawn(GridPos pos, Strategy strategy) {
    const AgentId id{static_cast<std::uint32_t>(agents_.size())};
    agents_.push_back({pos, strategy, 0.0, 0, true});
    live_ids_.push_back(id.value);
    occupant_.at(pos) = static_cast<std::int32_t>(id.value);
    return id;
}

void DpdModel::kill(AgentId id) {
    Agent& agent = agents_[id.value];
    agent.alive = false;
    occupant_.at(agent.pos) = -1;
}

std::vector<AgentSnapshot> DpdModel::live_snapshots(bool with_incentive) const {
    std::vector<AgentSnapshot> out;
    out.reserve(live_ids_.size());
    for (std::uint32_t id : live_ids_) {
        AgentSnapshot snap{AgentId{id}, agents_[id].pos, 0.0};
        // Distress ordering: the poorest act first under the incentive regime.
        if (with_incentive) snap.incentive = -agents_[id].wealth;
        out.push_back(snap);
    }
    return out;
}

std::size_t DpdModel::vacant_von_neumann(const TorusGrid<std::int32_t>& occupant, GridPos from,
                                         GridPos out[4]) const {
    std::size_t count = 0;
    for (const auto& off : kVonNeumannOffsets) {
        const GridPos p = occupant.wrap({from.row + off.row, from.col + off.col});
        if (occupant.at(p) < 0) out[count++] = p;
    }
    return count;
}

void DpdModel::rule_move(AgentId id, RngStream& rng) {
    Agent& agent = agents_[id.value];
    GridPos candidates[4];
    const std::size_t count = vacant_von_neumann(occupant_, agent.pos, candidates);
    if (count == 0) return;
    const GridPos target = candidates[rng.uniform_below(count)];
    occupant_.at(agent.pos) = -1;
    occupant_.at(target) = static_cast<std::int32_t>(id.value);
    agent.pos = target;
}

void DpdModel::rule_play(AgentId id) {
    Agent& agent = agents_[id.value];
    for (const auto& off : kVonNeumannOffsets) {
        const GridPos p = occupant_.wrap({agent.pos.row + off.row, agent.pos.col + off.col});
        const std::int32_t other = occupant_.at(p);
        if (other < 0) continue;
        Agent& opponent = agents_[other];
        agent.wealth += payoff(agent.strategy, opponent.strategy);
        opponent.wealth += payoff(opponent.strategy, agent.strategy);
    }
}

void DpdModel::rule_birth(AgentId id, RngStream& rng) {
    Agent& agent = agents_[id.value];
    if (agent.wealth < config_.birth_threshold) return;
    GridPos candidates[4];
    const std::size_t count = vacant_von_neumann(occupant_, agent.pos, candidates);
    if (count == 0) return;
    const GridPos cell = candidates[rng.uniform_below(count)];
    const bool flip = rng.next_double() < config_.mutation_rate;
    const Strategy strategy =
        flip ? (agent.strategy == Strategy::Cooperate ? Strategy::Defect : Strategy::Cooperate)
             : agent.strategy;
    agent.wealth -= config_.child_endowment;
    const AgentId child = spawn(cell, strategy);
    agents_[child.value].wealth = config_.child_endowment;
}

void DpdModel::fire_rule(AgentId id, int rule, RngStream& rng) {
    if (sync_open_) {
        throw ContractViolation("dpd: rule fired against live state during a synchronous phase");
    }
    switch (rule) {
    case kRuleMove: rule_move(id, rng); break;
    case kRulePlay: rule_play(id); break;
    case kRuleBirth: rule_birth(id, rng); break;
    default: throw ConfigError("dpd: unknown rule index " + std::to_string(rule));
    }
}

void DpdModel::remove_bankrupt() {
    bool any = false;
    for (std::uint32_t id : live_ids_) {
        if (agents_[id].wealth < 0.0) {
            kill(AgentId{id});
            any = true;
        }
    }
    if (any) {
        std::erase_if(live_ids_, [&](std::uint32_t id) { return !agents_[id].alive; });
        if (live_ids_.empty()) extinct_ = true;
    }
}

void DpdModel::end_step() {
    // Once per step: bankruptcy removal, then the age advance and the age
    // limit when enabled.
    for (std::uint32_t id : live_ids_) {
        Agent& agent = agents_[id];
        if (agent.wealth < 0.0) {
            kill(AgentId{id});
            continue;
        }
        agent.age += 1;
        if (config_.max_age && agent.age > *config_.max_age) kill(AgentId{id});
    }
    std::erase_if(live_ids_, [&](std::uint32_t id) { return !agents_[id].alive; });
    if (live_ids_.empty()) extinct_ = true;
}

void DpdModel::sync_phase_begin(int rule) {
    buffer_occupant_ = occupant_;
    if (rule == kRuleBirth) {
        buffer_wealth_.resize(agents_.size());
        for (std::uint32_t id : live_ids_) buffer_wealth_[id] = agents_[id].wealth;
    }
    if (rule == kRulePlay) {
        pending_wealth_delta_.assign(agents_.size(), 0.0);
    }
    pending_moves_.clear();
    pending_births_.clear();
    sync_open_ = true;
}

std::optional<GridPos> DpdModel::sync_decide(AgentId id, int rule, RngStream& rng) {
    const Agent& agent = agents_[id.value];
    switch (rule) {
    case kRuleMove: {
        GridPos candidates[4];
        const std::size_t count = vacant_von_neumann(buffer_occupant_, agent.pos, candidates);
        if (count == 0) return std::nullopt;
        const GridPos target = candidates[rng.uniform_below(count)];
        pending_moves_.emplace_back(id, target);
        return target;
    }
    case kRulePlay: {
        // Both parties' deltas accumulate against the buffered adjacency, so
        // commits commute.
        for (const auto& off : kVonNeumannOffsets) {
            const GridPos p = buffer_occupant_.wrap({agent.pos.row + off.row, agent.pos.col + off.col});
            const std::int32_t other = buffer_occupant_.at(p);
            if (other < 0) continue;
            pending_wealth_delta_[id.value] += payoff(agent.strategy, agents_[other].strategy);
            pending_wealth_delta_[other] += payoff(agents_[other].strategy, agent.strategy);
        }
        return std::nullopt;
    }
    case kRuleBirth: {
        if (buffer_wealth_[id.value] < config_.birth_threshold) return std::nullopt;
        GridPos candidates[4];
        const std::size_t count = vacant_von_neumann(buffer_occupant_, agent.pos, candidates);
        if (count == 0) return std::nullopt;
        const GridPos cell = candidates[rng.uniform_below(count)];
        const bool flip = rng.next_double() < config_.mutation_rate;
        const Strategy strategy =
            flip ? (agent.strategy == Strategy::Cooperate ? Strategy::Defect : Strategy::Cooperate)
                 : agent.strategy;
        pending_births_.push_back({id, cell, strategy});
        return cell;
    }
    default:
        throw ConfigError("dpd: unknown rule index " + std::to_string(rule));
    }
}

void DpdModel::sync_phase_commit(int rule, std::span<const AgentId> accepted_claims) {
    sync_open_ = false;
    switch (rule) {
    case kRuleMove:
        for (const auto& [id, target] : pending_moves_) {
            if (!std::binary_search(accepted_claims.begin(), accepted_claims.end(), id)) continue;
            Agent& agent = agents_[id.value];
            occupant_.at(agent.pos) = -1;
            occupant_.at(target) = static_cast<std::int32_t>(id.value);
            agent.pos = target;
        }
        pending_moves_.clear();
        break;
    case kRulePlay:
        for (std::uint32_t id : live_ids_) agents_[id].wealth += pending_wealth_delta_[id];
        pending_wealth_delta_.clear();
        break;
    case kRuleBirth:
        for (const auto& birth : pending_births_) {
            if (!std::binary_search(accepted_claims.begin(), accepted_claims.end(), birth.parent)) {
                continue;
            }
            agents_[birth.parent.value].wealth -= config_.child_endowment;
            const AgentId child = spawn(birth.cell, birth.child_strategy);
            agents_[child.value].wealth = config_.child_endowment;
        }
        pending_births_.clear();
        break;
    default:
        break;
    }
}

std::size_t DpdModel::cooperator_count() const {
    std::size_t count = 0;
    for (std::uint32_t id : live_ids_) {
        if (agents_[id].strategy == Strategy::Cooperate) ++count;
    }
    return count;
}

double DpdModel::total_wealth() const {
    double total = 0.0;
    for (std::uint32_t id : live_ids_) total += agents_[id].wealth;
    return total;
}

std::vector<MetricRow> DpdModel::metrics() const {
    const auto coop = cooperator_count();
    return {{"cooperators", static_cast<double>(coop)},
            {"defectors", static_cast<double>(live_ids_.size() - coop)},
            {"extinct", extinct_ ? 1.0 : 0.0}};
}

std::uint64_t DpdModel::state_digest() const {
    StateHasher h;
    h.mix_u64(agents_.size());
    for (std::uint32_t id : live_ids_) {
        const Agent& agent = agents_[id];
        h.mix_u64(id);
        h.mix_u64(static_cast<std::uint64_t>(agent.pos.row));
        h.mix_u64(static_cast<std::uint64_t>(agent.pos.col));
        h.mix_u64(static_cast<std::uint64_t>(agent.strategy));
        h.mix_double(agent.wealth);
        h.mix_u64(static_cast<std::uint64_t>(agent.age));
    }
    h.mix_u64(extinct_ ? 1 : 0);
    return h.value();
}

} // namespace actlab
