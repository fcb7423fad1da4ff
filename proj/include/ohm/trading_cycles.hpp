#pragma once

#include <vector>

#include "ohm/instance.hpp"
#include "ohm/partitions.hpp"
#include "ohm/trace.hpp"

namespace ohm {

// Pointing graph for one exchange round: every vertex has exactly one
// outgoing edge, to the owner of her best item among the group's endowments.
struct TtcGraph {
  std::vector<int> vertices;   // agent indices, ascending
  std::vector<int> points_to;  // parallel to vertices
};

TtcGraph build_ttc_graph(const std::vector<int>& group, const Instance& inst);

// All cycles of the graph, each rotated to start at its smallest member and
// listed in pointing direction; cycles ordered by smallest member.
std::vector<std::vector<int>> find_cycles(const TtcGraph& graph);

// Classic top trading cycles within the group: repeatedly build the graph,
// assign along every cycle, remove the matched agents. Returns a partial
// allocation (-1 outside the group). rounds, when given, records each round.
Allocation run_ttc(const std::vector<int>& group, const Instance& inst,
                   std::vector<TtcRound>* rounds = nullptr);

struct TtcOutcome {
  Allocation allocation;
  ExecutionTrace trace;
};

// At each departure of an unmatched agent, runs TTC on that agent's block of
// rule(I_{<d})). The block is re-derived from the full instance as a guard;
// any mismatch or overlap with matched agents throws NotProgressPreserving.
TtcOutcome run_online_ttc(const Instance& inst, const PartitionRule& rule);
Allocation run_online_ttc_allocation(const Instance& inst, const PartitionRule& rule);

}  // namespace ohm
