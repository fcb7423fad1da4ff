#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ohm/instance.hpp"

namespace ohm {

// A priority rule over the agents of an instance. evaluate returns a
// permutation of agent indices (position 0 picks first) and must depend only
// on arrival/departure times, never on preferences.
struct OrderingRule {
  std::string name;
  std::function<std::vector<int>(const Instance&)> evaluate;
};

std::vector<int> ascending_departure(const Instance& inst);
std::vector<int> ascending_arrival(const Instance& inst);
std::vector<int> descending_arrival(const Instance& inst);

OrderingRule ascending_departure_rule();  // "delta"
OrderingRule ascending_arrival_rule();    // "alpha"
OrderingRule descending_arrival_rule();   // "desc-arrival"; negative control, not prefix stable

struct PsViolation {
  int agent = 0;     // id whose consulted prefix changed
  int position = 0;  // 1-based position where the full and truncated orders differ
};

// Prefix stability: for each agent at position p of rule(I), the first p
// entries of rule(I) and rule(I_{<d_agent}) must coincide. Returns the first
// violation scanning agents in arrival order, positions ascending.
std::optional<PsViolation> check_prefix_stable(const OrderingRule& rule, const Instance& inst);

struct PfeViolation {
  int agent_i = 0;
  int agent_j = 0;
  int agent_k = 0;
};

// Priority fairness: whenever i outranks k in the order consulted at k's
// departure, and j either arrives after that departure or is also outranked by
// i there, then j may not outrank i in the order consulted at
// min(d_i, d_j). First witness in arrival-order scan over (i, j, k).
std::optional<PfeViolation> check_pfe(const OrderingRule& rule, const Instance& inst);

}  // namespace ohm
