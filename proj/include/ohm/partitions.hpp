#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ohm/instance.hpp"

namespace ohm {

// Half-open slot [start, end).
struct Interval {
  TimePoint start;
  TimePoint end;

  bool operator==(const Interval&) const = default;
};

// Disjoint scheduling slots; times outside every slot fall into the implicit
// residual slot 0.
class Scheduling {
 public:
  Scheduling() = default;

  // Sorts the slots and rejects empty or overlapping ones.
  static Scheduling validated(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }

  // 1-based slot index containing t, or 0 for the residual slot.
  int interval_of(const TimePoint& t) const;

  std::vector<TimePoint> bounds() const;

 private:
  std::vector<Interval> intervals_;
};

struct Threshold {
  TimePoint tau;
};

using Partition = std::vector<std::vector<int>>;  // blocks of agent indices

// Timing-only grouping rule. evaluate partitions the instance's agents;
// blocks are normalized (members ascending, blocks ordered by first member).
// time_marks lists the fixed times the rule compares departures against.
struct PartitionRule {
  std::string name;
  std::function<Partition(const Instance&)> evaluate;
  std::vector<TimePoint> time_marks;
};

// At each departure of a not-yet-grouped agent: that agent alone, then all
// other present agents not yet grouped as one block.
Partition departing_agent_excluded(const Instance& inst);

// First departure inside an unconsumed slot groups every present agent whose
// departure falls in that slot; all other departures become singletons.
Partition scheduled_departure(const Instance& inst, const Scheduling& scheduling);

// First departure at or past tau splits the present agents as
// departing-agent-excluded does, once; every other agent is a singleton.
Partition threshold_triggered(const Instance& inst, const Threshold& threshold);

PartitionRule gamma_rule();
PartitionRule theta_rule(Scheduling scheduling);
PartitionRule zeta_rule(Threshold threshold);

const std::vector<int>& block_of(const Partition& partition, int agent);

struct PpViolation {
  int agent = 0;  // id whose block differs between the full and truncated view
};

// Progress preservation: each agent's block must be identical in rule(I) and
// rule(I_{<d_agent})). First witness in arrival order.
std::optional<PpViolation> check_pp(const PartitionRule& rule, const Instance& inst);

}  // namespace ohm
