#include "actlab/dpd.hpp"

#include "actlab/simulation.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace actlab;

namespace {

DpdConfig small_config() {
    DpdConfig cfg;
    cfg.width = 6;
    cfg.height = 6;
    return cfg;
}

DpdModel pair_model(const DpdConfig& cfg, Strategy a, Strategy b) {
    const std::vector<std::pair<GridPos, Strategy>> placements = {
        {GridPos{2, 2}, a},
        {GridPos{2, 3}, b}, // east neighbor (von Neumann)
    };
    return DpdModel(cfg, placements);
}

} // namespace

TEST_CASE("setting presets pin (R, max_age, mutation) as published") {
    const auto s1 = dpd_setting(1);
    CHECK(s1.payoff[0][0] == 5.0);
    CHECK_FALSE(s1.max_age.has_value());
    CHECK(s1.mutation_rate == 0.0);

    const auto s2 = dpd_setting(2);
    CHECK(s2.payoff[0][0] == 5.0);
    CHECK(s2.max_age == 100);
    CHECK(s2.mutation_rate == 0.0);

    CHECK(dpd_setting(3).payoff[0][0] == 2.0);
    CHECK(dpd_setting(4).payoff[0][0] == 1.0);

    const auto s5 = dpd_setting(5);
    CHECK(s5.payoff[0][0] == 5.0);
    CHECK(s5.max_age == 100);
    CHECK(s5.mutation_rate == 0.5);

    CHECK_THROWS_AS(dpd_setting(0), ConfigError);
    CHECK_THROWS_AS(dpd_setting(6), ConfigError);
}

TEST_CASE("one play round adjusts both parties by the payoff matrix") {
    RngStream rng(1, 0);

    SUBCASE("mutual cooperation pays +5 under setting 1") {
        auto model = pair_model(dpd_setting(1), Strategy::Cooperate, Strategy::Cooperate);
        model.fire_rule(AgentId{0}, DpdModel::kRulePlay, rng);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(6.0 + 5.0));
        CHECK(model.agent(AgentId{1}).wealth == doctest::Approx(6.0 + 5.0));
    }
    SUBCASE("mutual cooperation pays +2 under setting 3") {
        auto model = pair_model(dpd_setting(3), Strategy::Cooperate, Strategy::Cooperate);
        model.fire_rule(AgentId{0}, DpdModel::kRulePlay, rng);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(6.0 + 2.0));
        CHECK(model.agent(AgentId{1}).wealth == doctest::Approx(6.0 + 2.0));
    }
    SUBCASE("defection against a cooperator pays +6 / -6") {
        auto model = pair_model(small_config(), Strategy::Defect, Strategy::Cooperate);
        model.fire_rule(AgentId{0}, DpdModel::kRulePlay, rng);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(6.0 + 6.0));
        CHECK(model.agent(AgentId{1}).wealth == doctest::Approx(6.0 - 6.0));
    }
    SUBCASE("mutual defection costs 5 each") {
        auto model = pair_model(small_config(), Strategy::Defect, Strategy::Defect);
        model.fire_rule(AgentId{0}, DpdModel::kRulePlay, rng);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(6.0 - 5.0));
        CHECK(model.agent(AgentId{1}).wealth == doctest::Approx(6.0 - 5.0));
    }
}

TEST_CASE("movement goes to a vacant von Neumann cell or stays") {
    RngStream rng(2, 0);

    SUBCASE("all four neighbors occupied: stays") {
        const std::vector<std::pair<GridPos, Strategy>> placements = {
            {GridPos{2, 2}, Strategy::Cooperate},
            {GridPos{1, 2}, Strategy::Cooperate},
            {GridPos{3, 2}, Strategy::Cooperate},
            {GridPos{2, 1}, Strategy::Cooperate},
            {GridPos{2, 3}, Strategy::Cooperate},
        };
        DpdModel model(small_config(), placements);
        model.fire_rule(AgentId{0}, DpdModel::kRuleMove, rng);
        CHECK(model.agent(AgentId{0}).pos == GridPos{2, 2});
    }
    SUBCASE("exactly one vacant neighbor: moves there with certainty") {
        const std::vector<std::pair<GridPos, Strategy>> placements = {
            {GridPos{2, 2}, Strategy::Cooperate},
            {GridPos{1, 2}, Strategy::Cooperate},
            {GridPos{3, 2}, Strategy::Cooperate},
            {GridPos{2, 1}, Strategy::Cooperate},
        };
        DpdModel model(small_config(), placements);
        model.fire_rule(AgentId{0}, DpdModel::kRuleMove, rng);
        CHECK(model.agent(AgentId{0}).pos == GridPos{2, 3});
    }
    SUBCASE("two vacant neighbors are chosen evenly") {
        constexpr int kSeeds = 10000;
        int north = 0;
        for (int seed = 0; seed < kSeeds; ++seed) {
            const std::vector<std::pair<GridPos, Strategy>> placements = {
                {GridPos{2, 2}, Strategy::Cooperate},
                {GridPos{2, 1}, Strategy::Cooperate},
                {GridPos{2, 3}, Strategy::Cooperate},
            };
            DpdModel model(small_config(), placements);
            RngStream seeded(900, static_cast<std::uint64_t>(seed));
            model.fire_rule(AgentId{0}, DpdModel::kRuleMove, seeded);
            const GridPos pos = model.agent(AgentId{0}).pos;
            REQUIRE((pos == GridPos{1, 2} || pos == GridPos{3, 2}));
            if (pos == GridPos{1, 2}) ++north;
        }
        const double freq = north / static_cast<double>(kSeeds);
        CHECK(std::abs(freq - 0.5) < testsupport::binomial_tolerance(0.5, kSeeds));
    }
}

TEST_CASE("birth requires wealth and space, transfers the endowment, inherits strategy") {
    RngStream rng(3, 0);

    SUBCASE("below threshold: nothing happens") {
        auto model = pair_model(small_config(), Strategy::Cooperate, Strategy::Cooperate);
        model.force_wealth(AgentId{0}, 9.9);
        model.fire_rule(AgentId{0}, DpdModel::kRuleBirth, rng);
        CHECK(model.live_count() == 2);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(9.9));
    }
    SUBCASE("no vacant neighbor: no birth even when rich") {
        const std::vector<std::pair<GridPos, Strategy>> placements = {
            {GridPos{2, 2}, Strategy::Cooperate},
            {GridPos{1, 2}, Strategy::Cooperate},
            {GridPos{3, 2}, Strategy::Cooperate},
            {GridPos{2, 1}, Strategy::Cooperate},
            {GridPos{2, 3}, Strategy::Cooperate},
        };
        DpdModel model(small_config(), placements);
        model.force_wealth(AgentId{0}, 100.0);
        model.fire_rule(AgentId{0}, DpdModel::kRuleBirth, rng);
        CHECK(model.live_count() == 5);
    }
    SUBCASE("eligible birth: child gets the endowment, parent pays it") {
        auto cfg = small_config();
        cfg.initial_wealth = 14.0;
        const std::vector<std::pair<GridPos, Strategy>> placements = {
            {GridPos{2, 2}, Strategy::Defect}};
        DpdModel model(cfg, placements);
        model.fire_rule(AgentId{0}, DpdModel::kRuleBirth, rng);
        REQUIRE(model.live_count() == 2);
        CHECK(model.agent(AgentId{0}).wealth == doctest::Approx(8.0));
        CHECK(model.agent(AgentId{1}).wealth == doctest::Approx(6.0));
        CHECK(model.agent(AgentId{1}).age == 0);
        CHECK(model.agent(AgentId{1}).strategy == Strategy::Defect); // mutation_rate = 0
        // child sits on a von Neumann neighbor of the parent
        const GridPos child = model.agent(AgentId{1}).pos;
        const int dist = std::abs(child.row - 2) + std::abs(child.col - 2);
        CHECK(dist == 1);
    }
}

TEST_CASE("a 50% mutation rate flips the child strategy half the time") {
    constexpr int kSeeds = 10000;
    int flipped = 0;
    auto cfg = small_config();
    cfg.initial_wealth = 14.0;
    cfg.mutation_rate = 0.5;
    const std::vector<std::pair<GridPos, Strategy>> placements = {
        {GridPos{2, 2}, Strategy::Cooperate}};
    for (int seed = 0; seed < kSeeds; ++seed) {
        DpdModel model(cfg, placements);
        RngStream rng(4242, static_cast<std::uint64_t>(seed));
        model.fire_rule(AgentId{0}, DpdModel::kRuleBirth, rng);
        REQUIRE(model.live_count() == 2);
        if (model.agent(AgentId{1}).strategy == Strategy::Defect) ++flipped;
    }
    const double freq = flipped / static_cast<double>(kSeeds);
    CHECK(std::abs(freq - 0.5) < testsupport::binomial_tolerance(0.5, kSeeds));
}

TEST_CASE("death sweep: bankruptcy, the age limit, and the extinction flag") {
    SUBCASE("negative wealth is removed") {
        auto model = pair_model(small_config(), Strategy::Cooperate, Strategy::Cooperate);
        model.force_wealth(AgentId{0}, -1.0);
        model.end_step();
        CHECK_FALSE(model.is_alive(AgentId{0}));
        CHECK(model.is_alive(AgentId{1}));
        CHECK_FALSE(model.extinct());
    }
    SUBCASE("no age limit in setting 1: an ancient agent survives") {
        auto model = pair_model(dpd_setting(1), Strategy::Cooperate, Strategy::Cooperate);
        model.force_age(AgentId{0}, 10000);
        model.end_step();
        CHECK(model.is_alive(AgentId{0}));
    }
    SUBCASE("max_age 100: an agent crossing the limit is removed") {
        auto model = pair_model(dpd_setting(2), Strategy::Cooperate, Strategy::Cooperate);
        model.force_age(AgentId{0}, 100); // becomes 101 > 100 at the sweep
        model.force_age(AgentId{1}, 99);  // becomes 100, survives
        model.end_step();
        CHECK_FALSE(model.is_alive(AgentId{0}));
        CHECK(model.is_alive(AgentId{1}));
        CHECK(model.agent(AgentId{1}).age == 100);
    }
    SUBCASE("extinction flag rises when the last agent dies") {
        const std::vector<std::pair<GridPos, Strategy>> placements = {
            {GridPos{0, 0}, Strategy::Defect}};
        DpdModel model(small_config(), placements);
        model.force_wealth(AgentId{0}, -2.0);
        model.end_step();
        CHECK(model.extinct());
        const auto rows = model.metrics();
        CHECK(rows[0].value == 0.0);
        CHECK(rows[1].value == 0.0);
        CHECK(rows[2].value == 1.0);
    }
}

TEST_CASE("strategies are immutable for life and inherited without mutation") {
    DpdConfig cfg;
    cfg.width = 10;
    cfg.height = 10;
    cfg.initial_agents = 30;
    RngStream rng(2222, 0);
    DpdModel model(cfg, rng);
    std::vector<Strategy> initial;
    for (std::uint32_t id = 0; id < 30; ++id) initial.push_back(model.agent(AgentId{id}).strategy);

    RegimeSpec regime{RegimeKind::RandomActivation, ConflictPolicy::RandomWinner, 1.0};
    Simulation sim(model, regime, ModeSpec{}, rng);
    sim.run_to(30);
    for (std::uint32_t id = 0; id < 30; ++id) {
        CHECK(model.agent(AgentId{id}).strategy == initial[id]);
    }
}

TEST_CASE("with a zero payoff matrix, total wealth is conserved through births") {
    DpdConfig cfg;
    cfg.width = 10;
    cfg.height = 10;
    cfg.initial_agents = 20;
    cfg.initial_wealth = 12.0;
    cfg.payoff = {{{0.0, 0.0}, {0.0, 0.0}}};
    RngStream rng(515, 0);
    DpdModel model(cfg, rng);
    const double initial_total = model.total_wealth();

    RegimeSpec regime{RegimeKind::UniformActivation, ConflictPolicy::RandomWinner, 1.0};
    Simulation sim(model, regime, ModeSpec{ActivationMode::ByRule, RuleOrderPolicy::Fixed, false},
                   rng);
    sim.run_to(10);
    CHECK(model.live_count() > 20);
    CHECK(model.total_wealth() == doctest::Approx(initial_total));
}

TEST_CASE("play bookkeeping: wealth changes equal the symmetric payoff sums") {
    // One activation of the play rule against two neighbors of known
    // strategies changes total wealth by the sum of both parties' payoffs.
    const std::vector<std::pair<GridPos, Strategy>> placements = {
        {GridPos{2, 2}, Strategy::Defect},
        {GridPos{2, 3}, Strategy::Cooperate},
        {GridPos{1, 2}, Strategy::Defect},
    };
    DpdModel model(small_config(), placements);
    RngStream rng(5, 0);
    const double before = model.total_wealth();
    model.fire_rule(AgentId{0}, DpdModel::kRulePlay, rng);
    // vs cooperator: +6 -6 = 0; vs defector: -5 -5 = -10
    CHECK(model.total_wealth() == doctest::Approx(before - 10.0));
}
