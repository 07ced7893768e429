#pragma once

#include "actlab/dpd.hpp"
#include "actlab/schelling.hpp"
#include "actlab/spatial_pd.hpp"
#include "actlab/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace actlab {

enum class ModelKind { Schelling, Dpd, SpatialPd };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

// Fully resolved model configuration for one run cell.
struct ModelSetup {
    ModelKind kind = ModelKind::Schelling;
    SchellingConfig schelling;
    DpdConfig dpd;
    SpatialPdConfig spatialpd;
    std::optional<int> setting; // DPD preset id when one was applied
};

// Applies "field = value" to the setup. Field names are the single
// configuration vocabulary shared by plan files and CLI flags; unknown names
// raise ConfigError listing the model's valid fields.
void apply_model_field(ModelSetup& setup, const std::string& field, const std::string& value);

// Valid field names for the model, in documentation order.
std::vector<std::string> model_field_names(ModelKind kind);

std::unique_ptr<Model> build_model(const ModelSetup& setup, RngStream& rng);

// Declarative sweep: the cartesian product of sweep values, movement rules
// (Schelling only), regimes, modes and seed indices.
struct ExperimentPlan {
    ModelKind model = ModelKind::Schelling;
    std::map<std::string, std::string> model_overrides; // field -> raw value
    std::vector<RegimeSpec> regimes;
    std::vector<ModeSpec> modes;
    std::string sweep_name;                 // empty -> no sweep axis
    std::vector<std::string> sweep_values;  // raw values, echoed into CSV
    std::vector<MovementRule> movement_rules; // empty -> not applicable
    int seeds = 0;
    std::uint64_t master_seed = 0;
    int horizon = 0;
    std::vector<int> sample_at;

    void validate() const;
};

// One expanded run: everything needed to execute it deterministically.
struct RunDescriptor {
    std::size_t run_index = 0;
    ModelSetup setup;
    std::string sweep_name;
    std::string sweep_value;
    std::optional<MovementRule> movement_rule;
    RegimeSpec regime;
    ModeSpec mode;
    std::uint64_t master_seed = 0;
    int seed_index = 0;
    int horizon = 0;
    std::vector<int> sample_at;
};

// Expansion is sweep-major: sweep value, then movement rule, regime, mode,
// and seed index innermost. Run seeds derive from (master_seed, run_index).
std::vector<RunDescriptor> expand_plan(const ExperimentPlan& plan);

// Parses the nested key-value plan format (see the bundled plans/ files).
// Unknown or duplicate keys and malformed values raise ConfigError with the
// offending line.
ExperimentPlan parse_plan(const std::string& text);
ExperimentPlan read_plan(const std::string& path);

} // namespace actlab
