#include "ohm/trading_cycles.hpp"

#include <algorithm>

#include "ohm/errors.hpp"
#include "ohm/orderings.hpp"

namespace ohm {

namespace {

// next[a] valid only for group members; -1 elsewhere
std::vector<int> pointing_map(const std::vector<int>& group, const Instance& inst) {
  std::vector<char> in_group(inst.size(), 0);
  for (int a : group) in_group[a] = 1;
  std::vector<int> next(inst.size(), -1);
  for (int a : group) {
    for (int item : inst.pref(a)) {
      if (in_group[item]) {  // item index == owner index
        next[a] = item;
        break;
      }
    }
  }
  return next;
}

TtcGraph graph_from_map(std::vector<int> group, const std::vector<int>& next) {
  std::sort(group.begin(), group.end());
  TtcGraph graph;
  graph.vertices = std::move(group);
  graph.points_to.reserve(graph.vertices.size());
  for (int a : graph.vertices) graph.points_to.push_back(next[a]);
  return graph;
}

}  // namespace

TtcGraph build_ttc_graph(const std::vector<int>& group, const Instance& inst) {
  return graph_from_map(group, pointing_map(group, inst));
}

std::vector<std::vector<int>> find_cycles(const TtcGraph& graph) {
  const int m = static_cast<int>(graph.vertices.size());
  std::vector<int> slot_of(graph.vertices.empty() ? 0 : graph.vertices.back() + 1, -1);
  for (int s = 0; s < m; ++s) slot_of[graph.vertices[s]] = s;

  std::vector<std::vector<int>> cycles;
  std::vector<int> state(m, 0);  // 0 fresh, 1 on current walk, 2 done
  for (int start = 0; start < m; ++start) {
    if (state[start]) continue;
    std::vector<int> walk;
    int s = start;
    while (state[s] == 0) {
      state[s] = 1;
      walk.push_back(s);
      s = slot_of[graph.points_to[s]];
    }
    if (state[s] == 1) {  // closed a new cycle at s
      auto it = std::find(walk.begin(), walk.end(), s);
      std::vector<int> cycle;
      for (; it != walk.end(); ++it) cycle.push_back(graph.vertices[*it]);
      auto smallest = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), smallest, cycle.end());
      cycles.push_back(std::move(cycle));
    }
    for (int v : walk) state[v] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return cycles;
}

Allocation run_ttc(const std::vector<int>& group, const Instance& inst,
                   std::vector<TtcRound>* rounds) {
  Allocation alloc;
  alloc.item_of.assign(inst.size(), -1);
  std::vector<int> remaining = group;
  std::sort(remaining.begin(), remaining.end());

  while (!remaining.empty()) {
    const auto graph = build_ttc_graph(remaining, inst);
    const auto cycles = find_cycles(graph);

    if (rounds) {
      TtcRound round;
      for (std::size_t s = 0; s < graph.vertices.size(); ++s) {
        round.edges.emplace_back(inst.id_of(graph.vertices[s]), inst.id_of(graph.points_to[s]));
      }
      for (const auto& cycle : cycles) {
        std::vector<int> ids;
        ids.reserve(cycle.size());
        for (int a : cycle) ids.push_back(inst.id_of(a));
        round.cycles.push_back(std::move(ids));
      }
      rounds->push_back(std::move(round));
    }

    std::vector<char> matched(inst.size(), 0);
    for (const auto& cycle : cycles) {
      for (std::size_t p = 0; p < cycle.size(); ++p) {
        const int giver = cycle[(p + 1) % cycle.size()];
        alloc.item_of[cycle[p]] = giver;  // receives the endowment of who she points to
        matched[cycle[p]] = 1;
      }
    }
    std::erase_if(remaining, [&](int a) { return matched[a]; });
  }
  return alloc;
}

namespace {

Allocation run_online_impl(const Instance& inst, const PartitionRule& rule,
                           ExecutionTrace* trace) {
  const int n = inst.size();
  Allocation alloc;
  alloc.item_of.assign(n, -1);
  std::vector<char> matched(n, 0);
  const auto full_partition = rule.evaluate(inst);

  for (int dep : ascending_departure(inst)) {
    if (matched[dep]) continue;
    const TimePoint& now = inst.departure(dep);
    const auto local = rule.evaluate(truncate(inst, now));
    const auto& block = block_of(local, dep);

    if (block != block_of(full_partition, dep)) {
      throw Error(Errc::not_progress_preserving,
                  "block of agent " + std::to_string(inst.id_of(dep)) +
                      " differs between evaluation points");
    }
    for (int a : block) {
      if (matched[a]) {
        throw Error(Errc::not_progress_preserving,
                    "block of agent " + std::to_string(inst.id_of(dep)) +
                        " contains already matched agent " + std::to_string(inst.id_of(a)));
      }
    }

    TtcPhase phase;
    std::vector<TtcRound>* rounds = nullptr;
    if (trace) {
      phase.time = now;
      phase.departing_agent = inst.id_of(dep);
      for (int a : block) phase.block.push_back(inst.id_of(a));
      rounds = &phase.rounds;
    }

    const auto local_alloc = run_ttc(block, inst, rounds);
    for (int a : block) {
      alloc.item_of[a] = local_alloc.item_of[a];
      matched[a] = 1;
      if (trace) phase.assignments.emplace_back(inst.id_of(a), inst.item_name(local_alloc.item_of[a]));
    }
    if (trace) trace->phases.emplace_back(std::move(phase));
  }
  return alloc;
}

}  // namespace

TtcOutcome run_online_ttc(const Instance& inst, const PartitionRule& rule) {
  TtcOutcome out;
  out.allocation = run_online_impl(inst, rule, &out.trace);
  return out;
}

Allocation run_online_ttc_allocation(const Instance& inst, const PartitionRule& rule) {
  return run_online_impl(inst, rule, nullptr);
}

}  // namespace ohm
