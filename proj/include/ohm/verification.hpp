#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ohm/instance.hpp"
#include "ohm/orderings.hpp"
#include "ohm/partitions.hpp"

namespace ohm {

// A fully configured mechanism. time_marks lists the fixed times the
// mechanism compares departures against (scheduling bounds, thresholds) so
// the misreport search can keep its time reduction exact.
struct Mechanism {
  std::string name;
  std::function<Allocation(const Instance&)> run;
  std::vector<TimePoint> time_marks;
};

Mechanism make_static_sd(const OrderingRule& rule);
Mechanism make_dynamic_sd(const OrderingRule& rule);
Mechanism make_safe_sd(const OrderingRule& rule);
Mechanism make_online_ttc(const PartitionRule& rule);

struct DominationWitness {
  Allocation dominating;
};

struct AgentWitness {
  int agent = 0;
};

struct OnlineWitness {
  int agent = 0;
  std::string full_item;
  std::string truncated_item;
};

struct ManipulationWitness {
  int agent = 0;
  std::optional<TimePoint> reported_arrival;      // set only when misreported
  std::optional<TimePoint> reported_departure;    // set only when misreported
  std::optional<std::vector<std::string>> reported_preference;  // set only when misreported
  std::string truthful_item;
  std::string improved_item;
};

using Witness =
    std::variant<std::monostate, DominationWitness, AgentWitness, OnlineWitness, ManipulationWitness>;

struct PropertyReport {
  std::string property;
  bool holds = true;
  bool sampled = false;  // verdict rests on random sampling, not exhaustion
  Witness witness;
};

// All bijections M with M(i) owned by an agent arrived before d_i, in
// lexicographic order of the assignment vector. Throws TooLarge past cap.
std::vector<Allocation> enumerate_compatible(const Instance& inst, int cap = 7);

// No compatible allocation Pareto-dominates alloc.
PropertyReport is_mpo(const Allocation& alloc, const Instance& inst, int cap = 7);

// Every agent weakly prefers her assignment to her endowment. The witness
// scan starts at the latest arrival.
PropertyReport is_ir(const Allocation& alloc, const Instance& inst);

// alloc is individually rational and, at every departure, the agents staying
// behind can still be completed injectively with acceptable items.
PropertyReport is_safe_allocation(const Allocation& alloc, const Instance& inst);

// No safe allocation Pareto-dominates alloc. Requires alloc itself safe.
PropertyReport is_spo(const Allocation& alloc, const Instance& inst, int cap = 7);

// Each agent's assignment is already determined by the market as of her
// departure: running the mechanism on I_{<d_i} gives her the same item.
PropertyReport check_online(const Mechanism& mech, const Instance& inst);

// Representatives of every event-interleaving class a misreported time in
// (lo, hi) can realize: midpoints between consecutive other-agent event times
// (plus extra_marks) inside the window, and one point just inside each end.
// All returned times are distinct from existing event times.
std::vector<TimePoint> candidate_times(const Instance& inst, int agent, const TimePoint& lo,
                                       const TimePoint& hi,
                                       const std::vector<TimePoint>& extra_marks = {});

enum class Notion {
  wic,   // preference misreports only
  a_ic,  // arrival delays plus preference misreports
  d_ic,  // departure advances plus preference misreports
  sic,   // both window edges plus preference misreports
};

const char* notion_name(Notion notion);

struct Misreport {
  int agent_id = 0;
  TimePoint arrival;
  TimePoint departure;
  std::vector<std::string> preference;
};

// Rebuilds the instance with one agent's report replaced. The reported window
// must satisfy a <= a' < d' <= d (shrink-only deviations).
Instance apply_misreport(const Instance& inst, const Misreport& report);

struct SearchOptions {
  int ic_cap = 4;   // exhaustive limit for searches over misreported times
  int wic_cap = 7;  // exhaustive limit for preference-only searches
  bool sample_fallback = true;
  int samples = 200;
  std::uint64_t seed = 0;
};

// Searches the notion's misreport class for a strict improvement under the
// agent's true preferences. Deterministic first witness: agents in arrival
// order, times ascending (truthful first), truthful preference order first.
// Above the cap, falls back to seeded sampling (never reported as proof) or
// throws TooLarge when sampling is disabled.
PropertyReport find_manipulation(const Mechanism& mech, const Instance& inst, Notion notion,
                                 const SearchOptions& options = {});

}  // namespace ohm
