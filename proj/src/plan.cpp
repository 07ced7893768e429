#include "actlab/plan.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace actlab {

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::Schelling: return "schelling";
    case ModelKind::Dpd: return "dpd";
    case ModelKind::SpatialPd: return "spatialpd";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "schelling") return ModelKind::Schelling;
    if (name == "dpd") return ModelKind::Dpd;
    if (name == "spatialpd") return ModelKind::SpatialPd;
    throw ConfigError("unknown model '" + name + "'; valid models: schelling, dpd, spatialpd");
}

namespace {

int parse_int_field(const std::string& field, const std::string& value) {
    int out = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("field '" + field + "': expected an integer, got '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64_field(const std::string& field, const std::string& value) {
    std::uint64_t out = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("field '" + field + "': expected an unsigned integer, got '" + value + "'");
    }
    return out;
}

double parse_double_field(const std::string& field, const std::string& value) {
    double out = 0.0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("field '" + field + "': expected a number, got '" + value + "'");
    }
    return out;
}

bool parse_bool_field(const std::string& field, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("field '" + field + "': expected true/false, got '" + value + "'");
}

} // namespace

std::vector<std::string> model_field_names(ModelKind kind) {
    switch (kind) {
    case ModelKind::Schelling:
        return {"width", "height", "agents_per_color", "tolerance", "movement_rule",
                "satisfaction_denominator", "neighborless_share"};
    case ModelKind::Dpd:
        return {"width", "height", "initial_agents", "initial_coop_fraction", "initial_wealth",
                "payoff_cc", "payoff_cd", "payoff_dc", "payoff_dd", "max_age", "mutation_rate",
                "birth_threshold", "child_endowment", "setting"};
    case ModelKind::SpatialPd:
        return {"width", "height", "temptation", "initial_defector_fraction", "include_self_play"};
    }
    return {};
}

void apply_model_field(ModelSetup& setup, const std::string& field, const std::string& value) {
    switch (setup.kind) {
    case ModelKind::Schelling: {
        auto& cfg = setup.schelling;
        if (field == "width") cfg.width = parse_int_field(field, value);
        else if (field == "height") cfg.height = parse_int_field(field, value);
        else if (field == "agents_per_color") cfg.agents_per_color = parse_int_field(field, value);
        else if (field == "tolerance") cfg.tolerance = parse_int_field(field, value);
        else if (field == "movement_rule") cfg.movement_rule = parse_movement_rule(value);
        else if (field == "satisfaction_denominator") {
            if (value == "occupied") cfg.satisfaction_denominator = SatisfactionDenominator::OccupiedNeighbors;
            else if (value == "all") cfg.satisfaction_denominator = SatisfactionDenominator::AllNeighbors;
            else throw ConfigError("field 'satisfaction_denominator': expected occupied or all");
        } else if (field == "neighborless_share") {
            cfg.neighborless_share = parse_double_field(field, value);
        } else {
            throw ConfigError("schelling has no field '" + field + "'");
        }
        return;
    }
    case ModelKind::Dpd: {
        auto& cfg = setup.dpd;
        if (field == "width") cfg.width = parse_int_field(field, value);
        else if (field == "height") cfg.height = parse_int_field(field, value);
        else if (field == "initial_agents") cfg.initial_agents = parse_int_field(field, value);
        else if (field == "initial_coop_fraction") cfg.initial_coop_fraction = parse_double_field(field, value);
        else if (field == "initial_wealth") cfg.initial_wealth = parse_double_field(field, value);
        else if (field == "payoff_cc") cfg.payoff[0][0] = parse_double_field(field, value);
        else if (field == "payoff_cd") cfg.payoff[0][1] = parse_double_field(field, value);
        else if (field == "payoff_dc") cfg.payoff[1][0] = parse_double_field(field, value);
        else if (field == "payoff_dd") cfg.payoff[1][1] = parse_double_field(field, value);
        else if (field == "max_age") {
            if (value == "none") cfg.max_age.reset();
            else cfg.max_age = parse_int_field(field, value);
        } else if (field == "mutation_rate") cfg.mutation_rate = parse_double_field(field, value);
        else if (field == "birth_threshold") cfg.birth_threshold = parse_double_field(field, value);
        else if (field == "child_endowment") cfg.child_endowment = parse_double_field(field, value);
        else if (field == "setting") {
            const int preset = parse_int_field(field, value);
            cfg = dpd_setting(preset);
            setup.setting = preset;
        } else {
            throw ConfigError("dpd has no field '" + field + "'");
        }
        return;
    }
    case ModelKind::SpatialPd: {
        auto& cfg = setup.spatialpd;
        if (field == "width") cfg.width = parse_int_field(field, value);
        else if (field == "height") cfg.height = parse_int_field(field, value);
        else if (field == "temptation") cfg.temptation = parse_double_field(field, value);
        else if (field == "initial_defector_fraction") {
            cfg.initial_defector_fraction = parse_double_field(field, value);
        } else if (field == "include_self_play") {
            cfg.include_self_play = parse_bool_field(field, value);
        } else {
            throw ConfigError("spatialpd has no field '" + field + "'");
        }
        return;
    }
    }
}

std::unique_ptr<Model> build_model(const ModelSetup& setup, RngStream& rng) {
    switch (setup.kind) {
    case ModelKind::Schelling: return std::make_unique<SchellingModel>(setup.schelling, rng);
    case ModelKind::Dpd: return std::make_unique<DpdModel>(setup.dpd, rng);
    case ModelKind::SpatialPd: return std::make_unique<SpatialPdModel>(setup.spatialpd, rng);
    }
    throw ConfigError("unknown model kind");
}

void ExperimentPlan::validate() const {
    if (regimes.empty()) throw ConfigError("plan: 'regimes' must list at least one regime");
    if (modes.empty()) throw ConfigError("plan: 'modes' must list at least one mode");
    if (seeds < 1) throw ConfigError("plan: 'seeds' must be >= 1");
    if (horizon < 1) throw ConfigError("plan: 'horizon' must be >= 1");
    if (sample_at.empty()) throw ConfigError("plan: 'sample_at' must list at least one step");
    for (int t : sample_at) {
        if (t < 0 || t > horizon) {
            throw ConfigError("plan: sample time " + std::to_string(t) +
                              " is outside [0, horizon]");
        }
    }
    if (sweep_name.empty() != sweep_values.empty()) {
        throw ConfigError("plan: 'sweep.name' and 'sweep.values' must be given together");
    }
    if (!movement_rules.empty() && model != ModelKind::Schelling) {
        throw ConfigError("plan: 'movement_rules' applies to the schelling model only");
    }
    if (!sweep_name.empty() && model_overrides.count(sweep_name) > 0) {
        throw ConfigError("plan: field '" + sweep_name + "' is both fixed (model." + sweep_name +
                          ") and swept");
    }
    if (!movement_rules.empty() && model_overrides.count("movement_rule") > 0) {
        throw ConfigError("plan: movement_rule is both fixed and used as an axis");
    }
    // Validate override and sweep values by applying them to a scratch setup.
    ModelSetup scratch;
    scratch.kind = model;
    if (auto it = model_overrides.find("setting"); it != model_overrides.end()) {
        apply_model_field(scratch, "setting", it->second);
    }
    for (const auto& [field, value] : model_overrides) {
        if (field != "setting") apply_model_field(scratch, field, value);
    }
    for (const auto& value : sweep_values) {
        ModelSetup probe = scratch;
        apply_model_field(probe, sweep_name, value);
    }
}

std::vector<RunDescriptor> expand_plan(const ExperimentPlan& plan) {
    plan.validate();

    const std::vector<std::string> sweep_axis =
        plan.sweep_values.empty() ? std::vector<std::string>{""} : plan.sweep_values;
    std::vector<std::optional<MovementRule>> movement_axis;
    if (plan.movement_rules.empty()) {
        movement_axis.push_back(std::nullopt);
    } else {
        for (MovementRule rule : plan.movement_rules) movement_axis.push_back(rule);
    }

    std::vector<RunDescriptor> out;
    out.reserve(sweep_axis.size() * movement_axis.size() * plan.regimes.size() *
                plan.modes.size() * static_cast<std::size_t>(plan.seeds));
    std::size_t run_index = 0;
    for (const auto& sweep_value : sweep_axis) {
        for (const auto& movement : movement_axis) {
            // Resolve the cell's model configuration: defaults, then the DPD
            // setting preset, then explicit overrides, then the swept field
            // and the movement-rule axis.
            ModelSetup setup;
            setup.kind = plan.model;
            if (auto it = plan.model_overrides.find("setting"); it != plan.model_overrides.end()) {
                apply_model_field(setup, "setting", it->second);
            }
            if (plan.sweep_name == "setting" && !sweep_value.empty()) {
                apply_model_field(setup, "setting", sweep_value);
            }
            for (const auto& [field, value] : plan.model_overrides) {
                if (field != "setting") apply_model_field(setup, field, value);
            }
            if (!plan.sweep_name.empty() && plan.sweep_name != "setting") {
                apply_model_field(setup, plan.sweep_name, sweep_value);
            }
            if (movement) apply_model_field(setup, "movement_rule", to_string(*movement));

            for (const auto& regime : plan.regimes) {
                for (const auto& mode : plan.modes) {
                    for (int seed = 0; seed < plan.seeds; ++seed) {
                        RunDescriptor desc;
                        desc.run_index = run_index++;
                        desc.setup = setup;
                        desc.sweep_name = plan.sweep_name;
                        desc.sweep_value = sweep_value;
                        desc.movement_rule = movement;
                        desc.regime = regime;
                        desc.mode = mode;
                        desc.master_seed = plan.master_seed;
                        desc.seed_index = seed;
                        desc.horizon = plan.horizon;
                        desc.sample_at = plan.sample_at;
                        out.push_back(std::move(desc));
                    }
                }
            }
        }
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

} // namespace

ExperimentPlan parse_plan(const std::string& text) {
    ExperimentPlan plan;
    std::set<std::string> seen;
    bool have_model = false, have_regimes = false, have_modes = false;
    bool have_seeds = false, have_master_seed = false, have_horizon = false, have_sample = false;
    RuleOrderPolicy rule_order = RuleOrderPolicy::Fixed;
    bool by_rule_reuse = false;
    ConflictPolicy conflict_policy = ConflictPolicy::RandomWinner;
    double exponential_rate = 1.0;
    std::vector<std::string> regime_names;
    std::vector<std::string> mode_names;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("plan line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("plan line " + std::to_string(line_no) + ": empty key or value");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("plan line " + std::to_string(line_no) + ": duplicate key '" + key +
                              "'");
        }
        try {
            if (key == "model") {
                plan.model = parse_model_kind(value);
                have_model = true;
            } else if (key == "regimes") {
                regime_names = split_list(value);
                have_regimes = true;
            } else if (key == "modes") {
                mode_names = split_list(value);
                have_modes = true;
            } else if (key == "rule_order") {
                rule_order = parse_rule_order(value);
            } else if (key == "by_rule_reuse_step_order") {
                by_rule_reuse = parse_bool_field(key, value);
            } else if (key == "conflict_policy") {
                conflict_policy = parse_conflict_policy(value);
            } else if (key == "exponential_rate") {
                exponential_rate = parse_double_field(key, value);
            } else if (key == "sweep.name") {
                plan.sweep_name = value;
            } else if (key == "sweep.values") {
                plan.sweep_values = split_list(value);
            } else if (key == "movement_rules") {
                for (const auto& name : split_list(value)) {
                    plan.movement_rules.push_back(parse_movement_rule(name));
                }
            } else if (key == "seeds") {
                plan.seeds = parse_int_field(key, value);
                have_seeds = true;
            } else if (key == "master_seed") {
                plan.master_seed = parse_u64_field(key, value);
                have_master_seed = true;
            } else if (key == "horizon") {
                plan.horizon = parse_int_field(key, value);
                have_horizon = true;
            } else if (key == "sample_at") {
                for (const auto& t : split_list(value)) {
                    plan.sample_at.push_back(parse_int_field(key, t));
                }
                have_sample = true;
            } else if (key.rfind("model.", 0) == 0) {
                plan.model_overrides[key.substr(6)] = value;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError("plan line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    if (!have_model) throw ConfigError("plan: missing required field 'model'");
    if (!have_regimes) throw ConfigError("plan: missing required field 'regimes'");
    if (!have_modes) throw ConfigError("plan: missing required field 'modes'");
    if (!have_seeds) throw ConfigError("plan: missing required field 'seeds'");
    if (!have_master_seed) throw ConfigError("plan: missing required field 'master_seed'");
    if (!have_horizon) throw ConfigError("plan: missing required field 'horizon'");
    if (!have_sample) throw ConfigError("plan: missing required field 'sample_at'");

    for (const auto& name : regime_names) {
        RegimeSpec spec;
        spec.kind = parse_regime_kind(name);
        spec.conflict_policy = conflict_policy;
        spec.exponential_rate = exponential_rate;
        plan.regimes.push_back(spec);
    }
    for (const auto& name : mode_names) {
        ModeSpec spec;
        spec.mode = parse_activation_mode(name);
        spec.rule_order = rule_order;
        spec.by_rule_reuse_step_order = by_rule_reuse;
        plan.modes.push_back(spec);
    }
    plan.validate();
    return plan;
}

ExperimentPlan read_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open plan file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_plan(buffer.str());
}

} // namespace actlab
