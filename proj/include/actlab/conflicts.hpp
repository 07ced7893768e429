#pragma once

#include "actlab/rng.hpp"
#include "actlab/types.hpp"

#include <span>
#include <vector>

namespace actlab {

// A synchronous claim on an exclusive grid cell. The target must have been
// vacant in the buffered (t-1) state; the claiming model guarantees that.
struct MoveIntent {
    AgentId agent;
    GridPos target;
};

struct ConflictOutcome {
    std::vector<AgentId> accepted; // ascending id
    std::vector<AgentId> rejected; // ascending id
};

// Arbitrates simultaneous claims under synchronous updating. Uncontested
// intents are always accepted. For a contested cell, random_winner accepts
// exactly one contender, chosen uniformly; all_lose rejects every contender.
//
// Contested cells are processed in ascending (row, col) order, contenders
// sorted ascending by id, one uniform_below(k) draw per contested cell under
// random_winner and none under all_lose. Two intents from the same agent are
// a configuration error.
ConflictOutcome resolve_conflicts(std::span<const MoveIntent> intents, ConflictPolicy policy,
                                  RngStream& rng);

} // namespace actlab
