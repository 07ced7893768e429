#include "actlab/schelling.hpp"

#include <algorithm>
#include <string>

namespace actlab {

std::string to_string(MovementRule rule) {
    return rule == MovementRule::RandomEverywhere ? "random_everywhere" : "edmonds_hales";
}

MovementRule parse_movement_rule(const std::string& name) {
    if (name == "random_everywhere") return MovementRule::RandomEverywhere;
    if (name == "edmonds_hales") return MovementRule::EdmondsHales;
    throw ConfigError("unknown movement rule '" + name +
                      "'; valid values: random_everywhere, edmonds_hales");
}

void SchellingConfig::validate() const {
    if (width < 1 || height < 1) throw ConfigError("schelling: grid dimensions must be positive");
    if (agents_per_color < 1) throw ConfigError("schelling: agents_per_color must be >= 1");
    if (2L * agents_per_color >= static_cast<long>(width) * height) {
        throw ConfigError("schelling: 2*agents_per_color must be below the cell count "
                          "(vacancies must exist)");
    }
    if (tolerance < 0 || tolerance > 8) throw ConfigError("schelling: tolerance must be in [0, 8]");
    if (neighborless_share < 0.0 || neighborless_share > 1.0) {
        throw ConfigError("schelling: neighborless_share must be in [0, 1]");
    }
}

SchellingModel::SchellingModel(const SchellingConfig& config, RngStream& rng)
    : config_(config),
      occupant_(config.width, config.height, -1),
      color_grid_(config.width, config.height, -1),
      vacancies_(static_cast<std::size_t>(config.width) * config.height) {
    config_.validate();
    const int total = 2 * config_.agents_per_color;
    agents_.reserve(total);
    // Uniform placement on distinct cells: agents are placed in id order,
    // each picking the k-th vacant cell (row-major) with k uniform over the
    // remaining vacancies.
    for (int i = 0; i < total; ++i) {
        const std::size_t k = rng.uniform_below(vacancies_.vacant_count());
        const std::size_t cell = vacancies_.select(k);
        const GridPos pos = occupant_.pos_of(cell);
        const std::uint8_t color = i < config_.agents_per_color ? 0 : 1;
        agents_.push_back({pos, color});
        occupant_.at(pos) = i;
        color_grid_.at(pos) = static_cast<std::int8_t>(color);
        vacancies_.occupy(cell);
    }
}

SchellingModel::SchellingModel(const SchellingConfig& config,
                               std::span<const std::pair<GridPos, int>> placements)
    : config_(config),
      occupant_(config.width, config.height, -1),
      color_grid_(config.width, config.height, -1),
      vacancies_(static_cast<std::size_t>(config.width) * config.height) {
    if (config_.tolerance < 0 || config_.tolerance > 8) {
        throw ConfigError("schelling: tolerance must be in [0, 8]");
    }
    agents_.reserve(placements.size());
    for (const auto& [pos, color] : placements) {
        if (color != 0 && color != 1) throw ConfigError("schelling: color must be 0 or 1");
        const GridPos p = occupant_.wrap(pos);
        if (occupant_.at(p) >= 0) throw ConfigError("schelling: duplicate placement cell");
        const auto id = static_cast<std::int32_t>(agents_.size());
        agents_.push_back({p, static_cast<std::uint8_t>(color)});
        occupant_.at(p) = id;
        color_grid_.at(p) = static_cast<std::int8_t>(color);
        vacancies_.occupy(occupant_.index_of(p));
    }
    if (config_.movement_rule == MovementRule::RandomEverywhere &&
        vacancies_.vacant_count() == 0) {
        throw ConfigError("schelling: placement leaves no vacancy");
    }
}

std::vector<AgentSnapshot> SchellingModel::live_snapshots(bool with_incentive) const {
    std::vector<AgentSnapshot> out;
    out.reserve(agents_.size());
    for (std::uint32_t i = 0; i < agents_.size(); ++i) {
        AgentSnapshot snap{AgentId{i}, agents_[i].pos, 0.0};
        if (with_incentive) snap.incentive = discomfort(agents_[i].pos);
        out.push_back(snap);
    }
    return out;
}

int SchellingModel::count_neighbors(const TorusGrid<std::int8_t>& colors, GridPos pos,
                                    std::uint8_t own, int& same, int& other) const {
    same = 0;
    other = 0;
    for (const auto& off : kMooreOffsets) {
        const std::int8_t c = colors.at({pos.row + off.row, pos.col + off.col});
        if (c < 0) continue;
        if (c == static_cast<std::int8_t>(own)) ++same;
        else ++other;
    }
    return same + other;
}

bool SchellingModel::satisfied_in(const TorusGrid<std::int8_t>& colors, GridPos pos,
                                  std::uint8_t own) const {
    int same = 0, other = 0;
    count_neighbors(colors, pos, own, same, other);
    return other <= config_.tolerance;
}

bool SchellingModel::is_satisfied(GridPos pos) const {
    const std::int32_t occ = occupant_.at(pos);
    if (occ < 0) throw ContractViolation("schelling: satisfaction queried on a vacant cell");
    return satisfied_in(color_grid_, pos, agents_[occ].color);
}

double SchellingModel::discomfort(GridPos pos) const {
    const std::int32_t occ = occupant_.at(pos);
    if (occ < 0) throw ContractViolation("schelling: discomfort queried on a vacant cell");
    int same = 0, other = 0;
    count_neighbors(color_grid_, pos, agents_[occ].color, same, other);
    return std::max(0, other - config_.tolerance);
}

double SchellingModel::satisfaction_share() const {
    double total = 0.0;
    for (const auto& agent : agents_) {
        int same = 0, other = 0;
        const int occupied = count_neighbors(color_grid_, agent.pos, agent.color, same, other);
        if (config_.satisfaction_denominator == SatisfactionDenominator::AllNeighbors) {
            total += same / 8.0;
        } else if (occupied == 0) {
            total += config_.neighborless_share;
        } else {
            total += static_cast<double>(same) / occupied;
        }
    }
    return agents_.empty() ? 0.0 : total / static_cast<double>(agents_.size());
}

std::optional<GridPos> SchellingModel::choose_target(const TorusGrid<std::int8_t>& colors,
                                                     const VacancyIndex& vacancies, GridPos from,
                                                     RngStream& rng) const {
    if (config_.movement_rule == MovementRule::RandomEverywhere) {
        // At least one vacancy exists by the config invariant.
        const std::size_t k = rng.uniform_below(vacancies.vacant_count());
        return colors.pos_of(vacancies.select(k));
    }
    GridPos candidates[8];
    std::size_t count = 0;
    for (const auto& off : kMooreOffsets) {
        const GridPos p = colors.wrap({from.row + off.row, from.col + off.col});
        if (colors.at(p) < 0) candidates[count++] = p;
    }
    if (count == 0) return std::nullopt;
    return candidates[rng.uniform_below(count)];
}

void SchellingModel::relocate(AgentId id, GridPos target) {
    Agent& agent = agents_[id.value];
    const GridPos from = agent.pos;
    occupant_.at(from) = -1;
    color_grid_.at(from) = -1;
    vacancies_.release(occupant_.index_of(from));
    occupant_.at(target) = static_cast<std::int32_t>(id.value);
    color_grid_.at(target) = static_cast<std::int8_t>(agent.color);
    vacancies_.occupy(occupant_.index_of(target));
    agent.pos = occupant_.wrap(target);
    ++move_count_;
}

void SchellingModel::fire_rule(AgentId id, int /*rule*/, RngStream& rng) {
    if (sync_open_) {
        throw ContractViolation("schelling: rule fired against live state during a synchronous phase");
    }
    const Agent& agent = agents_[id.value];
    if (satisfied_in(color_grid_, agent.pos, agent.color)) return;
    if (auto target = choose_target(color_grid_, vacancies_, agent.pos, rng)) {
        relocate(id, *target);
    }
}

void SchellingModel::sync_phase_begin(int /*rule*/) {
    buffer_.color = color_grid_;
    buffer_.vacancies = vacancies_;
    pending_moves_.clear();
    sync_open_ = true;
}

std::optional<GridPos> SchellingModel::sync_decide(AgentId id, int /*rule*/, RngStream& rng) {
    const Agent& agent = agents_[id.value];
    if (satisfied_in(buffer_.color, agent.pos, agent.color)) return std::nullopt;
    auto target = choose_target(buffer_.color, buffer_.vacancies, agent.pos, rng);
    if (target) pending_moves_.emplace_back(id, *target);
    return target;
}

void SchellingModel::sync_phase_commit(int /*rule*/, std::span<const AgentId> accepted_claims) {
    for (const auto& [id, target] : pending_moves_) {
        if (std::binary_search(accepted_claims.begin(), accepted_claims.end(), id)) {
            relocate(id, target);
        }
    }
    pending_moves_.clear();
    sync_open_ = false;
}

std::vector<MetricRow> SchellingModel::metrics() const {
    return {{"moves", static_cast<double>(move_count_)},
            {"satisfaction", satisfaction_share()}};
}

std::uint64_t SchellingModel::state_digest() const {
    StateHasher h;
    for (const auto c : color_grid_.cells()) h.mix_u64(static_cast<std::uint64_t>(c + 1));
    for (const auto& agent : agents_) {
        h.mix_u64(static_cast<std::uint64_t>(agent.pos.row));
        h.mix_u64(static_cast<std::uint64_t>(agent.pos.col));
    }
    h.mix_u64(move_count_);
    return h.value();
}

} // namespace actlab
