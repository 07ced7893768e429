#pragma once

#include "actlab/grid.hpp"
#include "actlab/model.hpp"

#include <cstdint>
#include <vector>

namespace actlab {

enum class MovementRule {
    RandomEverywhere, // relocate to a random vacant cell anywhere on the grid
    EdmondsHales,     // relocate to a random vacant Moore neighbor, stay if none
};

std::string to_string(MovementRule rule);
MovementRule parse_movement_rule(const std::string& name);

// Whether the satisfaction share divides by occupied Moore neighbors only or
// by all eight neighbor cells.
enum class SatisfactionDenominator { OccupiedNeighbors, AllNeighbors };

struct SchellingConfig {
    int width = 50;
    int height = 50;
    int agents_per_color = 1000;
    int tolerance = 4; // max differently-colored Moore neighbors accepted
    MovementRule movement_rule = MovementRule::RandomEverywhere;
    SatisfactionDenominator satisfaction_denominator = SatisfactionDenominator::OccupiedNeighbors;
    double neighborless_share = 1.0; // share contributed by an agent with no occupied neighbor

    void validate() const;
};

// Two-color segregation model on a torus. Agents are immortal; ids 0 to
// agents_per_color-1 carry color A, the rest color B. The single rule: an
// agent satisfied with its neighborhood stays; an unsatisfied one relocates
// per the movement rule. Relocation targets are drawn as "the k-th vacant
// cell in row-major order" so that draws are reproducible from the documented
// uniform_below call alone.
class SchellingModel final : public Model {
public:
    SchellingModel(const SchellingConfig& config, RngStream& rng);

    // Explicit placement (tests, reference scenarios): agents are created in
    // list order, (position, color 0/1), on distinct cells.
    SchellingModel(const SchellingConfig& config,
                   std::span<const std::pair<GridPos, int>> placements);

    std::string_view model_name() const override { return "schelling"; }
    int rule_count() const override { return 1; }
    int grid_width() const override { return config_.width; }
    int grid_height() const override { return config_.height; }
    std::size_t live_count() const override { return agents_.size(); }
    bool is_alive(AgentId id) const override { return id.value < agents_.size(); }
    std::vector<AgentSnapshot> live_snapshots(bool with_incentive) const override;
    void fire_rule(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_begin(int rule) override;
    std::optional<GridPos> sync_decide(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_commit(int rule, std::span<const AgentId> accepted_claims) override;
    std::vector<MetricRow> metrics() const override;
    std::uint64_t state_digest() const override;

    // True iff at most `tolerance` of the cell's eight Moore neighbors hold
    // the other color; vacant neighbors never count. The cell must be
    // occupied.
    bool is_satisfied(GridPos pos) const;

    // Mean over all agents of (same-colored neighbors / occupied neighbors);
    // see SchellingConfig for the two overridable conventions.
    double satisfaction_share() const;

    // Activation incentive: discomfort, the count of differently-colored
    // Moore neighbors above tolerance, floored at zero.
    double discomfort(GridPos pos) const;

    std::uint64_t move_count() const { return move_count_; }
    GridPos position_of(AgentId id) const { return agents_[id.value].pos; }
    std::uint8_t color_of(AgentId id) const { return agents_[id.value].color; }
    bool is_vacant(GridPos pos) const { return occupant_.at(pos) < 0; }
    const SchellingConfig& config() const { return config_; }

private:
    struct Agent {
        GridPos pos;
        std::uint8_t color; // 0 = A, 1 = B
    };
    struct Buffer {
        TorusGrid<std::int8_t> color; // -1 vacant, else color
        VacancyIndex vacancies;
    };

    void relocate(AgentId id, GridPos target);
    int count_neighbors(const TorusGrid<std::int8_t>& colors, GridPos pos, std::uint8_t own,
                        int& same, int& other) const;
    bool satisfied_in(const TorusGrid<std::int8_t>& colors, GridPos pos, std::uint8_t own) const;
    std::optional<GridPos> choose_target(const TorusGrid<std::int8_t>& colors,
                                         const VacancyIndex& vacancies, GridPos from,
                                         RngStream& rng) const;

    SchellingConfig config_;
    std::vector<Agent> agents_;
    TorusGrid<std::int32_t> occupant_;   // agent id or -1
    TorusGrid<std::int8_t> color_grid_;  // -1 vacant, else color
    VacancyIndex vacancies_;
    std::uint64_t move_count_ = 0;

    bool sync_open_ = false;
    Buffer buffer_;
    std::vector<std::pair<AgentId, GridPos>> pending_moves_; // decide order (ascending id)
};

} // namespace actlab
