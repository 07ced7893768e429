#include "actlab/spatial_pd.hpp"

#include "actlab/scheduling.hpp"

#include <cmath>

namespace actlab {

void SpatialPdConfig::validate() const {
    if (width < 1 || height < 1) throw ConfigError("spatialpd: grid dimensions must be positive");
    if (temptation <= 1.0) throw ConfigError("spatialpd: temptation payoff b must exceed 1");
    if (initial_defector_fraction < 0.0 || initial_defector_fraction > 1.0) {
        throw ConfigError("spatialpd: initial_defector_fraction must be in [0, 1]");
    }
}

SpatialPdModel::SpatialPdModel(const SpatialPdConfig& config, RngStream& rng)
    : config_(config), grid_(config.width, config.height, 0) {
    config_.validate();
    // Defectors occupy a uniformly random subset of cells: the first
    // n_defectors entries of one full permutation of the cell indices.
    const std::size_t cells = grid_.size();
    const auto defectors = static_cast<std::size_t>(
        std::lround(config_.initial_defector_fraction * static_cast<double>(cells)));
    const auto perm = random_permutation(cells, rng);
    for (std::size_t i = 0; i < defectors; ++i) {
        grid_.cells()[perm[i]] = 1;
    }
}

std::vector<AgentSnapshot> SpatialPdModel::live_snapshots(bool /*with_incentive*/) const {
    std::vector<AgentSnapshot> out;
    out.reserve(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        out.push_back({AgentId{static_cast<std::uint32_t>(i)}, grid_.pos_of(i), 0.0});
    }
    return out;
}

double SpatialPdModel::score_of(const TorusGrid<std::uint8_t>& field, GridPos pos) const {
    const std::uint8_t own = field.at(pos);
    double score = config_.include_self_play ? payoff(own, own) : 0.0;
    for (const auto& off : kMooreOffsets) {
        score += payoff(own, field.at({pos.row + off.row, pos.col + off.col}));
    }
    return score;
}

std::uint8_t SpatialPdModel::adopted_strategy(const TorusGrid<std::uint8_t>& field,
                                              GridPos pos) const {
    // Best score per strategy among self and the Moore neighbors; equal bests
    // keep the incumbent strategy.
    double best[2] = {-1.0, -1.0};
    const std::uint8_t own = field.at(pos);
    best[own] = score_of(field, pos);
    for (const auto& off : kMooreOffsets) {
        const GridPos p = field.wrap({pos.row + off.row, pos.col + off.col});
        const std::uint8_t s = field.at(p);
        best[s] = std::max(best[s], score_of(field, p));
    }
    if (best[0] == best[1]) return own;
    return best[0] > best[1] ? 0 : 1;
}

void SpatialPdModel::fire_rule(AgentId id, int /*rule*/, RngStream& /*rng*/) {
    if (sync_open_) {
        throw ContractViolation("spatialpd: rule fired against live state during a synchronous phase");
    }
    const GridPos pos = grid_.pos_of(id.value);
    grid_.at(pos) = adopted_strategy(grid_, pos);
}

void SpatialPdModel::sync_phase_begin(int /*rule*/) {
    buffer_ = grid_;
    pending_ = grid_.cells(); // cells that never decide keep their strategy
    sync_open_ = true;
}

std::optional<GridPos> SpatialPdModel::sync_decide(AgentId id, int /*rule*/, RngStream& /*rng*/) {
    pending_[id.value] = adopted_strategy(buffer_, buffer_.pos_of(id.value));
    return std::nullopt;
}

void SpatialPdModel::sync_phase_commit(int /*rule*/, std::span<const AgentId> /*accepted_claims*/) {
    grid_.cells() = pending_;
    sync_open_ = false;
}

double SpatialPdModel::cooperator_fraction() const {
    std::size_t coop = 0;
    for (const auto s : grid_.cells()) {
        if (s == 0) ++coop;
    }
    return static_cast<double>(coop) / static_cast<double>(grid_.size());
}

std::vector<MetricRow> SpatialPdModel::metrics() const {
    return {{"coop_fraction", cooperator_fraction()}};
}

std::uint64_t SpatialPdModel::state_digest() const {
    StateHasher h;
    for (const auto s : grid_.cells()) h.mix_u64(s);
    return h.value();
}

} // namespace actlab
