#include "ohm/instance.hpp"

#include <algorithm>
#include <set>

#include "ohm/errors.hpp"

namespace ohm {

int Instance::index_of_id(int id) const {
  for (int i = 0; i < size(); ++i) {
    if (recs_[i].id == id) return i;
  }
  return -1;
}

int Instance::item_index(const std::string& name) const {
  for (int j = 0; j < size(); ++j) {
    if (recs_[j].endowment == name) return j;
  }
  return -1;
}

int Instance::count_arrived_before(const TimePoint& t) const {
  int k = 0;
  while (k < size() && recs_[k].arrival < t) ++k;
  return k;
}

void Instance::build_tables() {
  const int n = size();
  pref_.assign(n, {});
  rank_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    pref_[i].reserve(n);
    for (const auto& name : recs_[i].preference) {
      int j = item_index(name);
      pref_[i].push_back(j);
      rank_[i][j] = static_cast<int>(pref_[i].size()) - 1;
    }
  }
}

Instance Instance::prefix(int k) const {
  Instance out;
  out.open_ = open_;
  out.close_ = close_;
  out.recs_.reserve(k);
  for (int i = 0; i < k; ++i) {
    AgentRecord rec = recs_[i];
    rec.preference.clear();
    for (int item : pref_[i]) {
      if (item < k) rec.preference.push_back(recs_[item].endowment);
    }
    out.recs_.push_back(std::move(rec));
  }
  out.build_tables();
  return out;
}

Instance validate_instance(std::vector<AgentRecord> agents, const TimePoint& open,
                           const TimePoint& close) {
  if (!(open < close)) throw Error(Errc::bad_window, "market open must precede market close");

  std::set<int> ids;
  std::set<std::string> endowments;
  for (const auto& a : agents) {
    if (!ids.insert(a.id).second)
      throw Error(Errc::duplicate_id, "agent id " + std::to_string(a.id) + " appears twice");
    if (!endowments.insert(a.endowment).second)
      throw Error(Errc::duplicate_id, "endowment " + a.endowment + " appears twice");
    if (!(a.arrival < a.departure))
      throw Error(Errc::bad_window,
                  "agent " + std::to_string(a.id) + " must arrive before departing");
    if (a.arrival < open || close < a.departure)
      throw Error(Errc::bad_window,
                  "agent " + std::to_string(a.id) + " is active outside the market timeline");
  }

  std::vector<TimePoint> times;
  times.reserve(agents.size() * 2);
  for (const auto& a : agents) {
    times.push_back(a.arrival);
    times.push_back(a.departure);
  }
  std::sort(times.begin(), times.end());
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i - 1] == times[i])
      throw Error(Errc::duplicate_time, "two events share time " + times[i].str());
  }

  for (const auto& a : agents) {
    if (a.preference.size() != agents.size())
      throw Error(Errc::bad_preference,
                  "agent " + std::to_string(a.id) + " must rank every item exactly once");
    std::set<std::string> seen;
    for (const auto& name : a.preference) {
      if (!endowments.count(name))
        throw Error(Errc::bad_preference,
                    "agent " + std::to_string(a.id) + " ranks unknown item " + name);
      if (!seen.insert(name).second)
        throw Error(Errc::bad_preference,
                    "agent " + std::to_string(a.id) + " ranks item " + name + " twice");
    }
  }

  std::sort(agents.begin(), agents.end(),
            [](const AgentRecord& a, const AgentRecord& b) { return a.arrival < b.arrival; });

  Instance inst;
  inst.open_ = open;
  inst.close_ = close;
  inst.recs_ = std::move(agents);
  inst.build_tables();
  return inst;
}

std::vector<int> agents_before(const Instance& inst, const TimePoint& t) {
  std::vector<int> ids;
  const int k = inst.count_arrived_before(t);
  ids.reserve(k);
  for (int i = 0; i < k; ++i) ids.push_back(inst.id_of(i));
  return ids;
}

std::vector<std::string> items_before(const Instance& inst, const TimePoint& t) {
  std::vector<std::string> names;
  const int k = inst.count_arrived_before(t);
  names.reserve(k);
  for (int j = 0; j < k; ++j) names.push_back(inst.item_name(j));
  return names;
}

Instance truncate(const Instance& inst, const TimePoint& t) {
  return inst.prefix(inst.count_arrived_before(t));
}

Allocation identity_allocation(const Instance& inst) {
  Allocation alloc;
  alloc.item_of.resize(inst.size());
  for (int i = 0; i < inst.size(); ++i) alloc.item_of[i] = i;
  return alloc;
}

bool is_compatible(const Allocation& alloc, const Instance& inst) {
  const int n = inst.size();
  if (static_cast<int>(alloc.item_of.size()) != n) return false;
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    int item = alloc.item_of[i];
    if (item < 0 || item >= n || used[item]) return false;
    used[item] = 1;
    if (!(inst.arrival(item) < inst.departure(i))) return false;
  }
  return true;
}

bool pareto_dominates(const Allocation& a, const Allocation& b, const Instance& inst) {
  bool strict = false;
  for (int i = 0; i < inst.size(); ++i) {
    int ra = inst.rank(i, a.item_of[i]);
    int rb = inst.rank(i, b.item_of[i]);
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

std::vector<Event> event_stream(const Instance& inst) {
  std::vector<Event> events;
  events.reserve(inst.size() * 2);
  for (int i = 0; i < inst.size(); ++i) {
    events.push_back({inst.arrival(i), EventKind::arrival, inst.id_of(i)});
    events.push_back({inst.departure(i), EventKind::departure, inst.id_of(i)});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.time < b.time; });
  return events;
}

}  // namespace ohm
