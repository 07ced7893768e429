#pragma once

#include "actlab/grid.hpp"
#include "actlab/model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace actlab {

enum class Strategy : std::uint8_t { Cooperate = 0, Defect = 1 };

struct DpdConfig {
    int width = 30;
    int height = 30;
    int initial_agents = 100;
    double initial_coop_fraction = 0.5;
    double initial_wealth = 6.0;
    // Payoff to the row player: rows are own strategy (C, D), columns the
    // opponent's.
    std::array<std::array<double, 2>, 2> payoff = {{{5.0, -6.0}, {6.0, -5.0}}};
    std::optional<int> max_age{}; // disabled when absent
    double mutation_rate = 0.0;   // probability a child's strategy flips
    double birth_threshold = 10.0;
    double child_endowment = 6.0;

    void validate() const;
};

// Epstein's five experimental settings: S1 has no age limit; S2 adds a
// maximum age of 100; S3 and S4 lower the mutual-cooperation payoff to 2 and
// 1; S5 restores it to 5 and adds a 50% mutation rate.
DpdConfig dpd_setting(int setting);

// Demographic Prisoner's Dilemma on a torus. Rules, in declared order:
// movement (random vacant von Neumann neighbor), playing (one PD round
// against each von Neumann neighbor, both wealths adjusted), giving birth
// (spawn onto a random vacant von Neumann cell when wealth reaches the
// threshold). Strategies are fixed for life; children inherit the parent's
// strategy, flipped with probability mutation_rate (one uniform draw per
// birth). Agents die from negative wealth or from exceeding max_age; ages
// advance once per step in the end-of-step sweep.
class DpdModel final : public Model {
public:
    DpdModel(const DpdConfig& config, RngStream& rng);

    // Explicit placement (tests, reference scenarios): agents created in list
    // order with the configured initial wealth and age 0.
    DpdModel(const DpdConfig& config, std::span<const std::pair<GridPos, Strategy>> placements);

    std::string_view model_name() const override { return "dpd"; }
    int rule_count() const override { return 3; }
    int grid_width() const override { return config_.width; }
    int grid_height() const override { return config_.height; }
    std::size_t live_count() const override { return live_ids_.size(); }
    bool is_alive(AgentId id) const override {
        return id.value < agents_.size() && agents_[id.value].alive;
    }
    std::vector<AgentSnapshot> live_snapshots(bool with_incentive) const override;
    void fire_rule(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_begin(int rule) override;
    std::optional<GridPos> sync_decide(AgentId id, int rule, RngStream& rng) override;
    void sync_phase_commit(int rule, std::span<const AgentId> accepted_claims) override;
    void mid_step_cleanup() override { remove_bankrupt(); }
    void end_step() override;
    bool extinct() const override { return extinct_; }
    std::vector<MetricRow> metrics() const override;
    std::uint64_t state_digest() const override;

    struct Agent {
        GridPos pos{};
        Strategy strategy = Strategy::Cooperate;
        double wealth = 0.0;
        int age = 0;
        bool alive = false;
    };

    const Agent& agent(AgentId id) const { return agents_[id.value]; }
    const std::vector<std::uint32_t>& live_ids() const { return live_ids_; }
    std::size_t cooperator_count() const;
    double total_wealth() const;
    const DpdConfig& config() const { return config_; }

    // Test access: direct state manipulation for single-rule scenarios.
    void force_wealth(AgentId id, double wealth) { agents_[id.value].wealth = wealth; }
    void force_age(AgentId id, int age) { agents_[id.value].age = age; }

    static constexpr int kRuleMove = 0;
    static constexpr int kRulePlay = 1;
    static constexpr int kRuleBirth = 2;

private:
    void rule_move(AgentId id, RngStream& rng);
    void rule_play(AgentId id);
    void rule_birth(AgentId id, RngStream& rng);
    void remove_bankrupt();
    void kill(AgentId id);
    AgentId spawn(GridPos pos, Strategy strategy);
    std::size_t vacant_von_neumann(const TorusGrid<std::int32_t>& occupant, GridPos from,
                                   GridPos out[4]) const;
    double payoff(Strategy own, Strategy other) const {
        return config_.payoff[static_cast<int>(own)][static_cast<int>(other)];
    }

    DpdConfig config_;
    std::vector<Agent> agents_; // indexed by id; dead entries stay (ids never reused)
    std::vector<std::uint32_t> live_ids_; // ascending
    TorusGrid<std::int32_t> occupant_; // agent id or -1
    bool extinct_ = false;

    bool sync_open_ = false;
    TorusGrid<std::int32_t> buffer_occupant_;
    std::vector<double> buffer_wealth_;
    std::vector<double> pending_wealth_delta_;
    std::vector<std::pair<AgentId, GridPos>> pending_moves_;
    struct PendingBirth {
        AgentId parent;
        GridPos cell;
        Strategy child_strategy;
    };
    std::vector<PendingBirth> pending_births_;
};

} // namespace actlab
