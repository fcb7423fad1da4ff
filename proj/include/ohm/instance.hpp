#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ohm/time_point.hpp"

namespace ohm {

struct AgentRecord {
  int id = 0;
  std::string endowment;
  TimePoint arrival;
  TimePoint departure;
  std::vector<std::string> preference;  // item names, best first, strict and total

  bool operator==(const AgentRecord&) const = default;
};

// Validated market instance. Agents are held in canonical order (ascending
// arrival), and item j is the endowment of the j-th agent in that order, so
// the items present before time t are exactly the item indices below
// count_arrived_before(t).
class Instance {
 public:
  Instance() = default;

  int size() const { return static_cast<int>(recs_.size()); }
  const TimePoint& market_open() const { return open_; }
  const TimePoint& market_close() const { return close_; }

  const AgentRecord& agent(int i) const { return recs_[i]; }
  const std::vector<AgentRecord>& records() const { return recs_; }

  const TimePoint& arrival(int i) const { return recs_[i].arrival; }
  const TimePoint& departure(int i) const { return recs_[i].departure; }
  int id_of(int i) const { return recs_[i].id; }
  int index_of_id(int id) const;

  const std::string& item_name(int j) const { return recs_[j].endowment; }
  int item_index(const std::string& name) const;

  // rank 0 is the agent's best item
  int rank(int i, int item) const { return rank_[i][item]; }
  const std::vector<int>& pref(int i) const { return pref_[i]; }

  int count_arrived_before(const TimePoint& t) const;
  Instance prefix(int k) const;

  bool operator==(const Instance& other) const {
    return open_ == other.open_ && close_ == other.close_ && recs_ == other.recs_;
  }

 private:
  friend Instance validate_instance(std::vector<AgentRecord> agents, const TimePoint& open,
                                    const TimePoint& close);

  void build_tables();

  TimePoint open_;
  TimePoint close_{1};
  std::vector<AgentRecord> recs_;
  std::vector<std::vector<int>> pref_;  // [agent][rank] = item
  std::vector<std::vector<int>> rank_;  // [agent][item] = rank
};

// Checks identifiers, windows, global time distinctness and preference
// completeness, then re-sorts agents by arrival. Throws Error on violation.
Instance validate_instance(std::vector<AgentRecord> agents, const TimePoint& open,
                           const TimePoint& close);

// Ids of agents with arrival strictly before t, in arrival order.
std::vector<int> agents_before(const Instance& inst, const TimePoint& t);

// Endowments of those agents.
std::vector<std::string> items_before(const Instance& inst, const TimePoint& t);

// Sub-instance of agents arrived strictly before t, preferences restricted to
// the surviving items; times and market bounds unchanged.
Instance truncate(const Instance& inst, const TimePoint& t);

struct Allocation {
  std::vector<int> item_of;  // agent index -> item index, -1 while unassigned

  bool operator==(const Allocation&) const = default;
};

Allocation identity_allocation(const Instance& inst);

// True iff assignment is a bijection and every agent receives an item whose
// owner arrived before the agent's departure.
bool is_compatible(const Allocation& alloc, const Instance& inst);

// Strict Pareto dominance of a over b: nobody worse off, somebody better off.
bool pareto_dominates(const Allocation& a, const Allocation& b, const Instance& inst);

enum class EventKind { arrival, departure };

struct Event {
  TimePoint time;
  EventKind kind = EventKind::arrival;
  int agent_id = 0;

  bool operator==(const Event&) const = default;
};

// All 2n arrival/departure events in strictly increasing time order.
std::vector<Event> event_stream(const Instance& inst);

}  // namespace ohm
