#pragma once

#include <utility>
#include <vector>

#include "ohm/instance.hpp"
#include "ohm/orderings.hpp"
#include "ohm/trace.hpp"

namespace ohm {

// Mutable state threaded through the phase loops: items already given away,
// agents already matched, this phase's tentative picks, and the static
// variant's persistent position in the priority order.
struct PhaseState {
  std::vector<char> assigned_items;
  std::vector<char> matched_agents;
  std::vector<std::pair<int, int>> reservations;  // (agent index, item index)
  int pointer = 0;
};

struct SdOutcome {
  Allocation allocation;
  ExecutionTrace trace;
};

// Most-preferred member of available (item indices). Throws EmptyChoiceSet.
int best_item(const Instance& inst, int agent, const std::vector<int>& available);

// True iff every remaining agent can be given a distinct available item at
// least as good as her endowment, with `fixed` commitments taken out.
bool safeness_check(const Instance& inst, const std::vector<std::pair<int, int>>& fixed,
                    const std::vector<int>& remaining_agents,
                    const std::vector<int>& available_items);

// Most-preferred available item whose commitment keeps the phase completable:
// the current reservations plus the candidate are treated as fixed and every
// other in-market unmatched agent must still admit an acceptable completion.
int best_safe_item(const Instance& inst, int agent, const std::vector<int>& available,
                   const std::vector<int>& in_market_unmatched,
                   const std::vector<std::pair<int, int>>& reservations);

// Single priority order consumed across phases; every pick is permanent.
// Requires a prefix-stable rule and re-checks the consumed prefix at every
// phase, throwing NotPrefixStable when the rule contradicts itself.
SdOutcome run_static_sd(const Instance& inst, const OrderingRule& rule);
Allocation run_static_sd_allocation(const Instance& inst, const OrderingRule& rule);

// Per-phase restart: agents ranked before the departing one make reservations
// that expire with the phase; only the departing agent's pick is permanent.
SdOutcome run_dynamic_sd(const Instance& inst, const OrderingRule& rule);
Allocation run_dynamic_sd_allocation(const Instance& inst, const OrderingRule& rule);

// Dynamic variant with best_safe_item in place of best_item.
SdOutcome run_safe_sd(const Instance& inst, const OrderingRule& rule);
Allocation run_safe_sd_allocation(const Instance& inst, const OrderingRule& rule);

}  // namespace ohm
