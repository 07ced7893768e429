#pragma once

#include "actlab/grid.hpp"
#include "actlab/model.hpp"

#include <cstdint>
#include <vector>

namespace actlab {

struct SpatialPdConfig {
    int width = 50;
    int height = 50;
    double temptation = 1.85; // b; payoffs are R=1, T=b, S=P=0
    double initial_defector_fraction = 0.1;
    bool include_self_play = true;

    void validate() const;
};

// Nowak-May spatial prisoner's dilemma: one immortal player per cell, agent
// id = row-major cell index. A cell's score is the sum of PD payoffs against
// its eight Moore neighbors (plus itself when self-play is on); the cell then
// adopts the strategy of the highest-scoring cell among itself and its
// neighbors, ties keeping the current strategy. The rule consumes no
// randomness, so synchronous runs draw nothing after initialization.
class SpatialPdModel final : public Model {
public:
    SpatialPdModel(const SpatialPdConfig& config, RngStream& rng);

    std::string_view model_name() const override { return "spatialpd"; }
    int rule_count() const override { return 1; }
    int grid_width() const override { return config_.width; }
    int grid_height() const override { return config_.height; }
    std::size_t live_count() const override { return grid_.size(); }
    bool is_alive(AgentId id) const override { return id.value < grid_.size(); }
    std::vector<AgentSnapshot> live_snapshots(bool with_incentive) const override;
    bool has_incentive() const override { return false; }
    void fire_rule(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_begin(int rule) override;
    std::optional<GridPos> sync_decide(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_commit(int rule, std::span<const AgentId> accepted_claims) override;
    std::vector<MetricRow> metrics() const override;
    std::uint64_t state_digest() const override;

    double cooperator_fraction() const;
    std::uint8_t strategy_at(GridPos pos) const { return grid_.at(pos); }
    void set_strategy(GridPos pos, std::uint8_t strategy) { grid_.at(pos) = strategy; }

    // Score of the cell under the given strategy field.
    double score_of(const TorusGrid<std::uint8_t>& field, GridPos pos) const;

    const SpatialPdConfig& config() const { return config_; }

private:
    std::uint8_t adopted_strategy(const TorusGrid<std::uint8_t>& field, GridPos pos) const;
    double payoff(std::uint8_t own, std::uint8_t other) const {
        if (own == 0) return other == 0 ? 1.0 : 0.0; // R, S
        return other == 0 ? config_.temptation : 0.0; // T, P
    }

    SpatialPdConfig config_;
    TorusGrid<std::uint8_t> grid_; // 0 = cooperate, 1 = defect
    bool sync_open_ = false;
    TorusGrid<std::uint8_t> buffer_;
    std::vector<std::uint8_t> pending_;
};

} // namespace actlab
