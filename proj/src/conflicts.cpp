#include "actlab/conflicts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace actlab {

ConflictOutcome resolve_conflicts(std::span<const MoveIntent> intents, ConflictPolicy policy,
                                  RngStream& rng) {
    std::set<AgentId> seen;
    std::map<GridPos, std::vector<AgentId>> by_cell;
    for (const auto& intent : intents) {
        if (!seen.insert(intent.agent).second) {
            throw ConfigError("resolve_conflicts: duplicate intent from agent " +
                              std::to_string(intent.agent.value));
        }
        by_cell[intent.target].push_back(intent.agent);
    }

    ConflictOutcome outcome;
    for (auto& [cell, contenders] : by_cell) {
        std::sort(contenders.begin(), contenders.end());
        if (contenders.size() == 1) {
            outcome.accepted.push_back(contenders.front());
            continue;
        }
        if (policy == ConflictPolicy::AllLose) {
            for (AgentId a : contenders) outcome.rejected.push_back(a);
            continue;
        }
        const std::size_t winner = static_cast<std::size_t>(rng.uniform_below(contenders.size()));
        for (std::size_t i = 0; i < contenders.size(); ++i) {
            (i == winner ? outcome.accepted : outcome.rejected).push_back(contenders[i]);
        }
    }
    std::sort(outcome.accepted.begin(), outcome.accepted.end());
    std::sort(outcome.rejected.begin(), outcome.rejected.end());
    return outcome;
}

} // namespace actlab
