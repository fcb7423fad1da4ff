#include "ohm/partitions.hpp"

#include <algorithm>
#include <stdexcept>

#include "ohm/errors.hpp"
#include "ohm/orderings.hpp"

namespace ohm {

namespace {

void normalize(Partition& partition) {
  for (auto& block : partition) std::sort(block.begin(), block.end());
  std::sort(partition.begin(), partition.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
}

}  // namespace

Scheduling Scheduling::validated(std::vector<Interval> intervals) {
  for (const auto& slot : intervals) {
    if (!(slot.start < slot.end))
      throw Error(Errc::bad_scheduling, "slot [" + slot.start.str() + ", " + slot.end.str() +
                                            ") is empty or reversed");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].start < intervals[i - 1].end)
      throw Error(Errc::bad_scheduling, "slots overlap at " + intervals[i].start.str());
  }
  Scheduling s;
  s.intervals_ = std::move(intervals);
  return s;
}

int Scheduling::interval_of(const TimePoint& t) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(t < intervals_[i].start) && t < intervals_[i].end) return static_cast<int>(i) + 1;
  }
  return 0;
}

std::vector<TimePoint> Scheduling::bounds() const {
  std::vector<TimePoint> out;
  out.reserve(intervals_.size() * 2);
  for (const auto& slot : intervals_) {
    out.push_back(slot.start);
    out.push_back(slot.end);
  }
  return out;
}

Partition departing_agent_excluded(const Instance& inst) {
  const int n = inst.size();
  Partition blocks;
  std::vector<char> grouped(n, 0);
  for (int dep : ascending_departure(inst)) {
    if (grouped[dep]) continue;
    const int k = inst.count_arrived_before(inst.departure(dep));
    blocks.push_back({dep});
    std::vector<int> rest;
    for (int a = 0; a < k; ++a) {
      if (!grouped[a] && a != dep) rest.push_back(a);
    }
    if (!rest.empty()) blocks.push_back(std::move(rest));
    for (int a = 0; a < k; ++a) grouped[a] = 1;
  }
  normalize(blocks);
  return blocks;
}

Partition scheduled_departure(const Instance& inst, const Scheduling& scheduling) {
  const int n = inst.size();
  Partition blocks;
  std::vector<char> grouped(n, 0);
  std::vector<char> consumed(scheduling.intervals().size() + 1, 0);
  for (int dep : ascending_departure(inst)) {
    const int slot = scheduling.interval_of(inst.departure(dep));
    if (slot >= 1 && !consumed[slot]) {
      const int k = inst.count_arrived_before(inst.departure(dep));
      std::vector<int> block;
      for (int a = 0; a < k; ++a) {
        if (scheduling.interval_of(inst.departure(a)) == slot) {
          block.push_back(a);
          grouped[a] = 1;
        }
      }
      consumed[slot] = 1;
      blocks.push_back(std::move(block));
    } else if (!grouped[dep]) {
      blocks.push_back({dep});
      grouped[dep] = 1;
    }
  }
  normalize(blocks);
  return blocks;
}

Partition threshold_triggered(const Instance& inst, const Threshold& threshold) {
  const int n = inst.size();
  Partition blocks;
  std::vector<char> grouped(n, 0);
  bool triggered = false;
  for (int dep : ascending_departure(inst)) {
    if (!triggered && !(inst.departure(dep) < threshold.tau)) {
      triggered = true;
      const int k = inst.count_arrived_before(inst.departure(dep));
      blocks.push_back({dep});
      std::vector<int> rest;
      for (int a = 0; a < k; ++a) {
        if (!grouped[a] && a != dep) rest.push_back(a);
      }
      if (!rest.empty()) blocks.push_back(std::move(rest));
      for (int a = 0; a < k; ++a) grouped[a] = 1;
    } else if (!grouped[dep]) {
      blocks.push_back({dep});
      grouped[dep] = 1;
    }
  }
  normalize(blocks);
  return blocks;
}

PartitionRule gamma_rule() {
  return {"gamma", [](const Instance& inst) { return departing_agent_excluded(inst); }, {}};
}

PartitionRule theta_rule(Scheduling scheduling) {
  auto marks = scheduling.bounds();
  return {"theta",
          [s = std::move(scheduling)](const Instance& inst) { return scheduled_departure(inst, s); },
          std::move(marks)};
}

PartitionRule zeta_rule(Threshold threshold) {
  return {"zeta",
          [threshold](const Instance& inst) { return threshold_triggered(inst, threshold); },
          {threshold.tau}};
}

const std::vector<int>& block_of(const Partition& partition, int agent) {
  for (const auto& block : partition) {
    if (std::find(block.begin(), block.end(), agent) != block.end()) return block;
  }
  throw std::logic_error("agent missing from partition");
}

std::optional<PpViolation> check_pp(const PartitionRule& rule, const Instance& inst) {
  const auto full = rule.evaluate(inst);
  for (int i = 0; i < inst.size(); ++i) {
    const auto trunc = rule.evaluate(truncate(inst, inst.departure(i)));
    if (block_of(full, i) != block_of(trunc, i)) return PpViolation{inst.id_of(i)};
  }
  return std::nullopt;
}

}  // namespace ohm
