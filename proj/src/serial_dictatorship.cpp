#include "ohm/serial_dictatorship.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "ohm/errors.hpp"

namespace ohm {

namespace {

int best_masked(const Instance& inst, int agent, int item_limit, const std::vector<char>& taken) {
  for (int item : inst.pref(agent)) {
    if (item < item_limit && !taken[item]) return item;
  }
  throw std::logic_error("no pick left for agent " + std::to_string(inst.id_of(agent)));
}

// Kuhn's augmenting-path matching; returns true when every left vertex is
// matched. Desk-scale sizes, no need for anything fancier.
bool saturating_matching(const std::vector<std::vector<int>>& adj, int right_size) {
  std::vector<int> match_right(right_size, -1);
  std::vector<char> visited;

  std::function<bool(int)> augment = [&](int left) {
    for (int r : adj[left]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_right[r] < 0 || augment(match_right[r])) {
        match_right[r] = left;
        return true;
      }
    }
    return false;
  };

  for (std::size_t l = 0; l < adj.size(); ++l) {
    visited.assign(right_size, 0);
    if (!augment(static_cast<int>(l))) return false;
  }
  return true;
}

bool acceptable(const Instance& inst, int agent, int item) {
  return inst.rank(agent, item) <= inst.rank(agent, agent);
}

bool completable(const Instance& inst, const std::vector<int>& remaining,
                 const std::vector<int>& available) {
  std::vector<std::vector<int>> adj(remaining.size());
  for (std::size_t l = 0; l < remaining.size(); ++l) {
    for (std::size_t r = 0; r < available.size(); ++r) {
      if (acceptable(inst, remaining[l], available[r])) adj[l].push_back(static_cast<int>(r));
    }
  }
  return saturating_matching(adj, static_cast<int>(available.size()));
}

int best_safe_masked(const Instance& inst, int agent, int item_limit, const std::vector<char>& taken,
                     const std::vector<char>& unmatched_in_market,
                     const std::vector<std::pair<int, int>>& reservations) {
  std::vector<int> remaining;
  for (int a = 0; a < item_limit; ++a) {
    if (!unmatched_in_market[a] || a == agent) continue;
    bool reserved = false;
    for (const auto& [ra, ri] : reservations) {
      if (ra == a) reserved = true;
    }
    if (!reserved) remaining.push_back(a);
  }

  for (int item : inst.pref(agent)) {
    if (item >= item_limit || taken[item]) continue;
    std::vector<int> available;
    for (int e = 0; e < item_limit; ++e) {
      if (!taken[e] && e != item) available.push_back(e);
    }
    if (completable(inst, remaining, available)) return item;
  }
  throw std::logic_error("no safe pick left for agent " + std::to_string(inst.id_of(agent)));
}

void check_consumed_prefix(const Instance& inst, const std::vector<int>& pi,
                           const std::vector<int>& consumed, int departing) {
  if (pi.size() < consumed.size()) {
    throw Error(Errc::not_prefix_stable,
                "priority order at departure of agent " + std::to_string(inst.id_of(departing)) +
                    " is shorter than the consumed prefix");
  }
  for (std::size_t p = 0; p < consumed.size(); ++p) {
    if (pi[p] != consumed[p]) {
      throw Error(Errc::not_prefix_stable,
                  "priority order changed at position " + std::to_string(p + 1) +
                      " by the departure of agent " + std::to_string(inst.id_of(departing)));
    }
  }
}

Allocation run_static_impl(const Instance& inst, const OrderingRule& rule, ExecutionTrace* trace) {
  const int n = inst.size();
  Allocation alloc;
  alloc.item_of.assign(n, -1);
  PhaseState state;
  state.assigned_items.assign(n, 0);
  state.matched_agents.assign(n, 0);
  std::vector<int> consumed;
  consumed.reserve(n);

  for (int dep : ascending_departure(inst)) {
    if (state.matched_agents[dep]) continue;
    const TimePoint& now = inst.departure(dep);
    const int k = inst.count_arrived_before(now);
    const auto pi = rule.evaluate(inst.prefix(k));
    check_consumed_prefix(inst, pi, consumed, dep);

    SdPhase phase;
    phase.time = now;
    phase.departing_agent = inst.id_of(dep);

    while (true) {
      if (state.pointer >= static_cast<int>(pi.size())) {
        throw Error(Errc::not_prefix_stable,
                    "departing agent " + std::to_string(inst.id_of(dep)) +
                        " never reached in the priority order");
      }
      const int cur = pi[state.pointer];
      const int item = best_masked(inst, cur, k, state.assigned_items);
      alloc.item_of[cur] = item;
      state.assigned_items[item] = 1;
      state.matched_agents[cur] = 1;
      consumed.push_back(cur);
      ++state.pointer;
      if (cur == dep) {
        phase.assignment = {inst.id_of(cur), inst.item_name(item)};
        break;
      }
      phase.reservations.emplace_back(inst.id_of(cur), inst.item_name(item));
    }
    if (trace) trace->phases.emplace_back(std::move(phase));
  }
  return alloc;
}

template <bool Safe>
Allocation run_phased_impl(const Instance& inst, const OrderingRule& rule, ExecutionTrace* trace) {
  const int n = inst.size();
  Allocation alloc;
  alloc.item_of.assign(n, -1);
  PhaseState state;
  state.assigned_items.assign(n, 0);
  state.matched_agents.assign(n, 0);
  std::vector<char> taken(n, 0);  // assigned or reserved this phase
  std::vector<char> unmatched(n, 0);

  for (int dep : ascending_departure(inst)) {
    const TimePoint& now = inst.departure(dep);
    const int k = inst.count_arrived_before(now);
    const auto pi = rule.evaluate(inst.prefix(k));

    state.reservations.clear();
    taken = state.assigned_items;
    if constexpr (Safe) {
      for (int a = 0; a < n; ++a) unmatched[a] = a < k && !state.matched_agents[a];
    }

    SdPhase phase;
    phase.time = now;
    phase.departing_agent = inst.id_of(dep);

    int pos = 0;
    while (true) {
      if (pos >= static_cast<int>(pi.size()))
        throw std::logic_error("priority order omits the departing agent");
      const int cur = pi[pos];
      if (cur == dep) break;
      if (!state.matched_agents[cur]) {
        int item;
        if constexpr (Safe) {
          item = best_safe_masked(inst, cur, k, taken, unmatched, state.reservations);
        } else {
          item = best_masked(inst, cur, k, taken);
        }
        taken[item] = 1;
        state.reservations.emplace_back(cur, item);
        phase.reservations.emplace_back(inst.id_of(cur), inst.item_name(item));
      }
      ++pos;
    }

    int item;
    if constexpr (Safe) {
      item = best_safe_masked(inst, dep, k, taken, unmatched, state.reservations);
    } else {
      item = best_masked(inst, dep, k, taken);
    }
    alloc.item_of[dep] = item;
    state.assigned_items[item] = 1;
    state.matched_agents[dep] = 1;
    phase.assignment = {inst.id_of(dep), inst.item_name(item)};
    if (trace) trace->phases.emplace_back(std::move(phase));
  }
  return alloc;
}

}  // namespace

int best_item(const Instance& inst, int agent, const std::vector<int>& available) {
  if (available.empty())
    throw Error(Errc::empty_choice_set,
                "agent " + std::to_string(inst.id_of(agent)) + " has nothing to pick from");
  int best = -1;
  for (int item : available) {
    if (best < 0 || inst.rank(agent, item) < inst.rank(agent, best)) best = item;
  }
  return best;
}

bool safeness_check(const Instance& inst, const std::vector<std::pair<int, int>>& fixed,
                    const std::vector<int>& remaining_agents,
                    const std::vector<int>& available_items) {
  std::vector<int> remaining;
  for (int a : remaining_agents) {
    bool is_fixed = false;
    for (const auto& [fa, fi] : fixed) {
      if (fa == a) is_fixed = true;
    }
    if (!is_fixed) remaining.push_back(a);
  }
  std::vector<int> available;
  for (int e : available_items) {
    bool is_fixed = false;
    for (const auto& [fa, fi] : fixed) {
      if (fi == e) is_fixed = true;
    }
    if (!is_fixed) available.push_back(e);
  }
  return completable(inst, remaining, available);
}

int best_safe_item(const Instance& inst, int agent, const std::vector<int>& available,
                   const std::vector<int>& in_market_unmatched,
                   const std::vector<std::pair<int, int>>& reservations) {
  if (available.empty())
    throw Error(Errc::empty_choice_set,
                "agent " + std::to_string(inst.id_of(agent)) + " has nothing to pick from");
  int chosen = -1;
  int chosen_rank = 0;
  for (int item : available) {
    const int r = inst.rank(agent, item);
    if (chosen >= 0 && r >= chosen_rank) continue;
    auto fixed = reservations;
    fixed.emplace_back(agent, item);
    if (safeness_check(inst, fixed, in_market_unmatched, available)) {
      chosen = item;
      chosen_rank = r;
    }
  }
  if (chosen < 0)
    throw std::logic_error("no safe pick left for agent " + std::to_string(inst.id_of(agent)));
  return chosen;
}

SdOutcome run_static_sd(const Instance& inst, const OrderingRule& rule) {
  SdOutcome out;
  out.allocation = run_static_impl(inst, rule, &out.trace);
  return out;
}

Allocation run_static_sd_allocation(const Instance& inst, const OrderingRule& rule) {
  return run_static_impl(inst, rule, nullptr);
}

SdOutcome run_dynamic_sd(const Instance& inst, const OrderingRule& rule) {
  SdOutcome out;
  out.allocation = run_phased_impl<false>(inst, rule, &out.trace);
  return out;
}

Allocation run_dynamic_sd_allocation(const Instance& inst, const OrderingRule& rule) {
  return run_phased_impl<false>(inst, rule, nullptr);
}

SdOutcome run_safe_sd(const Instance& inst, const OrderingRule& rule) {
  SdOutcome out;
  out.allocation = run_phased_impl<true>(inst, rule, &out.trace);
  return out;
}

Allocation run_safe_sd_allocation(const Instance& inst, const OrderingRule& rule) {
  return run_phased_impl<true>(inst, rule, nullptr);
}

}  // namespace ohm
