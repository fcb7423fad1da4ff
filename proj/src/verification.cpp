#include "ohm/verification.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "ohm/errors.hpp"
#include "ohm/serial_dictatorship.hpp"
#include "ohm/trading_cycles.hpp"

namespace ohm {

namespace {

bool acceptable(const Instance& inst, int agent, int item) {
  return inst.rank(agent, item) <= inst.rank(agent, agent);
}

bool completable(const Instance& inst, const std::vector<int>& remaining,
                 const std::vector<int>& available) {
  std::vector<std::pair<int, int>> no_fixed;
  return safeness_check(inst, no_fixed, remaining, available);
}

bool safe_quick(const Allocation& alloc, const Instance& inst, int* failing_agent) {
  const int n = inst.size();
  for (int i = 0; i < n; ++i) {
    if (!acceptable(inst, i, alloc.item_of[i])) {
      if (failing_agent) *failing_agent = i;
      return false;
    }
  }
  for (int i = 0; i < n; ++i) {
    const int k = inst.count_arrived_before(inst.departure(i));
    std::vector<char> fixed_item(n, 0);
    std::vector<int> remaining;
    for (int j = 0; j < k; ++j) {
      if (inst.departure(j) < inst.departure(i) || j == i) {
        fixed_item[alloc.item_of[j]] = 1;
      } else {
        remaining.push_back(j);
      }
    }
    std::vector<int> available;
    for (int e = 0; e < k; ++e) {
      if (!fixed_item[e]) available.push_back(e);
    }
    if (!completable(inst, remaining, available)) {
      if (failing_agent) *failing_agent = i;
      return false;
    }
  }
  return true;
}

// All strict orders over the instance's items, lexicographic by item index.
std::vector<std::vector<int>> all_preference_orders(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<std::string> names_of(const Instance& inst, const std::vector<int>& items) {
  std::vector<std::string> names;
  names.reserve(items.size());
  for (int item : items) names.push_back(inst.item_name(item));
  return names;
}

// Event times of other agents plus marks, strictly inside (lo, hi).
std::vector<TimePoint> window_breakpoints(const Instance& inst, int agent, const TimePoint& lo,
                                          const TimePoint& hi,
                                          const std::vector<TimePoint>& extra_marks) {
  std::vector<TimePoint> marks;
  for (int j = 0; j < inst.size(); ++j) {
    if (j == agent) continue;
    for (const TimePoint& t : {inst.arrival(j), inst.departure(j)}) {
      if (lo < t && t < hi) marks.push_back(t);
    }
  }
  for (const TimePoint& t : extra_marks) {
    if (lo < t && t < hi) marks.push_back(t);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  return marks;
}

struct ManipulationSearch {
  const Mechanism& mech;
  const Instance& inst;
  Notion notion;

  Allocation truthful;

  bool time_deviations_arrival() const { return notion == Notion::a_ic || notion == Notion::sic; }
  bool time_deviations_departure() const { return notion == Notion::d_ic || notion == Notion::sic; }

  // Returns the improved item index (in the true instance) or -1.
  int try_misreport(int agent, const Misreport& report) const {
    const Instance deviated = apply_misreport(inst, report);
    const Allocation outcome = mech.run(deviated);
    const int where = deviated.index_of_id(report.agent_id);
    const std::string& received = deviated.item_name(outcome.item_of[where]);
    const int received_item = inst.item_index(received);
    if (inst.rank(agent, received_item) < inst.rank(agent, truthful.item_of[agent])) {
      return received_item;
    }
    return -1;
  }

  ManipulationWitness witness_for(int agent, const Misreport& report, int improved) const {
    ManipulationWitness w;
    w.agent = report.agent_id;
    if (!(report.arrival == inst.arrival(agent))) w.reported_arrival = report.arrival;
    if (!(report.departure == inst.departure(agent))) w.reported_departure = report.departure;
    const auto truthful_names = inst.agent(agent).preference;
    if (report.preference != truthful_names) w.reported_preference = report.preference;
    w.truthful_item = inst.item_name(truthful.item_of[agent]);
    w.improved_item = inst.item_name(improved);
    return w;
  }
};

}  // namespace

Mechanism make_static_sd(const OrderingRule& rule) {
  return {"static-sd+" + rule.name,
          [rule](const Instance& inst) { return run_static_sd_allocation(inst, rule); },
          {}};
}

Mechanism make_dynamic_sd(const OrderingRule& rule) {
  return {"dynamic-sd+" + rule.name,
          [rule](const Instance& inst) { return run_dynamic_sd_allocation(inst, rule); },
          {}};
}

Mechanism make_safe_sd(const OrderingRule& rule) {
  return {"safe-sd+" + rule.name,
          [rule](const Instance& inst) { return run_safe_sd_allocation(inst, rule); },
          {}};
}

Mechanism make_online_ttc(const PartitionRule& rule) {
  return {"online-ttc+" + rule.name,
          [rule](const Instance& inst) { return run_online_ttc_allocation(inst, rule); },
          rule.time_marks};
}

std::vector<Allocation> enumerate_compatible(const Instance& inst, int cap) {
  const int n = inst.size();
  if (n > cap)
    throw Error(Errc::too_large, "enumeration over " + std::to_string(n) +
                                     " agents exceeds the cap of " + std::to_string(cap));
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  std::vector<Allocation> out;
  do {
    Allocation alloc{items};
    if (is_compatible(alloc, inst)) out.push_back(std::move(alloc));
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

PropertyReport is_mpo(const Allocation& alloc, const Instance& inst, int cap) {
  if (!is_compatible(alloc, inst))
    throw Error(Errc::not_compatible, "allocation is not compatible with the instance");
  PropertyReport report{"M-PO", true, false, {}};
  for (const auto& other : enumerate_compatible(inst, cap)) {
    if (pareto_dominates(other, alloc, inst)) {
      report.holds = false;
      report.witness = DominationWitness{other};
      break;
    }
  }
  return report;
}

PropertyReport is_ir(const Allocation& alloc, const Instance& inst) {
  if (!is_compatible(alloc, inst))
    throw Error(Errc::not_compatible, "allocation is not compatible with the instance");
  PropertyReport report{"IR", true, false, {}};
  for (int i = inst.size() - 1; i >= 0; --i) {
    if (inst.rank(i, alloc.item_of[i]) > inst.rank(i, i)) {
      report.holds = false;
      report.witness = AgentWitness{inst.id_of(i)};
      break;
    }
  }
  return report;
}

PropertyReport is_safe_allocation(const Allocation& alloc, const Instance& inst) {
  if (!is_compatible(alloc, inst))
    throw Error(Errc::not_compatible, "allocation is not compatible with the instance");
  PropertyReport report{"safe", true, false, {}};
  int failing = -1;
  if (!safe_quick(alloc, inst, &failing)) {
    report.holds = false;
    report.witness = AgentWitness{inst.id_of(failing)};
  }
  return report;
}

PropertyReport is_spo(const Allocation& alloc, const Instance& inst, int cap) {
  if (!is_compatible(alloc, inst))
    throw Error(Errc::not_compatible, "allocation is not compatible with the instance");
  if (!safe_quick(alloc, inst, nullptr))
    throw Error(Errc::not_safe, "allocation is not safe, so safe-optimality is undefined");
  PropertyReport report{"S-PO", true, false, {}};
  for (const auto& other : enumerate_compatible(inst, cap)) {
    if (!safe_quick(other, inst, nullptr)) continue;
    if (pareto_dominates(other, alloc, inst)) {
      report.holds = false;
      report.witness = DominationWitness{other};
      break;
    }
  }
  return report;
}

PropertyReport check_online(const Mechanism& mech, const Instance& inst) {
  PropertyReport report{"online", true, false, {}};
  const Allocation full = mech.run(inst);
  for (int i = 0; i < inst.size(); ++i) {
    const Instance head = truncate(inst, inst.departure(i));
    const Allocation local = mech.run(head);
    if (local.item_of[i] != full.item_of[i]) {
      report.holds = false;
      report.witness = OnlineWitness{inst.id_of(i), inst.item_name(full.item_of[i]),
                                     head.item_name(local.item_of[i])};
      break;
    }
  }
  return report;
}

std::vector<TimePoint> candidate_times(const Instance& inst, int agent, const TimePoint& lo,
                                       const TimePoint& hi,
                                       const std::vector<TimePoint>& extra_marks) {
  const auto marks = window_breakpoints(inst, agent, lo, hi, extra_marks);
  std::vector<TimePoint> out;
  if (marks.empty()) {
    const TimePoint center = TimePoint::midpoint(lo, hi);
    out.push_back(TimePoint::midpoint(lo, center));
    out.push_back(TimePoint::midpoint(center, hi));
    return out;
  }
  out.push_back(TimePoint::midpoint(lo, marks.front()));
  for (std::size_t i = 1; i < marks.size(); ++i) {
    out.push_back(TimePoint::midpoint(marks[i - 1], marks[i]));
  }
  out.push_back(TimePoint::midpoint(marks.back(), hi));
  return out;
}

const char* notion_name(Notion notion) {
  switch (notion) {
    case Notion::wic: return "WIC";
    case Notion::a_ic: return "a-IC";
    case Notion::d_ic: return "d-IC";
    case Notion::sic: return "SIC";
  }
  return "?";
}

Instance apply_misreport(const Instance& inst, const Misreport& report) {
  const int where = inst.index_of_id(report.agent_id);
  if (where < 0) throw std::invalid_argument("misreport names an unknown agent");
  if (inst.arrival(where) > report.arrival || !(report.arrival < report.departure) ||
      inst.departure(where) < report.departure) {
    throw std::invalid_argument("misreported window must shrink the truthful one");
  }
  auto records = inst.records();
  records[where].arrival = report.arrival;
  records[where].departure = report.departure;
  records[where].preference = report.preference;
  return validate_instance(std::move(records), inst.market_open(), inst.market_close());
}

PropertyReport find_manipulation(const Mechanism& mech, const Instance& inst, Notion notion,
                                 const SearchOptions& options) {
  PropertyReport report{notion_name(notion), true, false, {}};
  const int n = inst.size();
  if (n == 0) return report;

  ManipulationSearch search{mech, inst, notion, mech.run(inst)};

  const int cap = notion == Notion::wic ? options.wic_cap : options.ic_cap;
  const bool exhaustive = n <= cap;
  if (!exhaustive && !options.sample_fallback)
    throw Error(Errc::too_large, "misreport search over " + std::to_string(n) +
                                     " agents exceeds the cap of " + std::to_string(cap));

  const auto orders = all_preference_orders(n);

  if (exhaustive) {
    for (int i = 0; i < n; ++i) {
      const TimePoint truth_a = inst.arrival(i);
      const TimePoint truth_d = inst.departure(i);

      std::vector<TimePoint> arrivals{truth_a};
      if (search.time_deviations_arrival()) {
        for (const auto& t : candidate_times(inst, i, truth_a, truth_d, mech.time_marks)) {
          arrivals.push_back(t);
        }
      }

      std::vector<TimePoint> departures{truth_d};
      if (search.time_deviations_departure()) {
        const auto marks = window_breakpoints(inst, i, truth_a, truth_d, mech.time_marks);
        if (notion == Notion::d_ic) {
          for (const auto& t : candidate_times(inst, i, truth_a, truth_d, mech.time_marks)) {
            departures.push_back(t);
          }
        } else {
          // For joint deviations, keep one departure point per gap strictly
          // to the right of the gap's arrival representative, so every
          // ordered pair of gaps has a witness pair.
          std::vector<TimePoint> bounds{truth_a};
          bounds.insert(bounds.end(), marks.begin(), marks.end());
          bounds.push_back(truth_d);
          for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
            const TimePoint primary = TimePoint::midpoint(bounds[g], bounds[g + 1]);
            departures.push_back(TimePoint::midpoint(primary, bounds[g + 1]));
          }
        }
      }

      // truthful preference first, then the remaining orders lexicographically
      std::vector<const std::vector<int>*> prefs;
      prefs.push_back(&inst.pref(i));
      for (const auto& order : orders) {
        if (order != inst.pref(i)) prefs.push_back(&order);
      }

      for (const auto& arr : arrivals) {
        for (const auto& dep : departures) {
          if (!(arr < dep)) continue;
          for (const auto* order : prefs) {
            if (arr == truth_a && dep == truth_d && order == &inst.pref(i)) continue;
            Misreport m{inst.id_of(i), arr, dep, names_of(inst, *order)};
            const int improved = search.try_misreport(i, m);
            if (improved >= 0) {
              report.holds = false;
              report.witness = search.witness_for(i, m, improved);
              return report;
            }
          }
        }
      }
    }
    return report;
  }

  report.sampled = true;
  std::mt19937_64 rng(options.seed);
  auto draw = [&rng](std::size_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % bound);
  };

  for (int s = 0; s < options.samples; ++s) {
    const int i = static_cast<int>(draw(n));
    const TimePoint truth_a = inst.arrival(i);
    const TimePoint truth_d = inst.departure(i);

    TimePoint arr = truth_a;
    if (search.time_deviations_arrival()) {
      auto cands = candidate_times(inst, i, truth_a, truth_d, mech.time_marks);
      cands.push_back(truth_a);
      arr = cands[draw(cands.size())];
    }
    TimePoint dep = truth_d;
    if (search.time_deviations_departure()) {
      auto cands = candidate_times(inst, i, truth_a, truth_d, mech.time_marks);
      cands.push_back(truth_d);
      dep = cands[draw(cands.size())];
      if (!(arr < dep)) dep = truth_d;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      std::swap(order[j], order[draw(static_cast<std::size_t>(j) + 1)]);
    }

    Misreport m{inst.id_of(i), arr, dep, names_of(inst, order)};
    const int improved = search.try_misreport(i, m);
    if (improved >= 0) {
      report.holds = false;
      report.witness = search.witness_for(i, m, improved);
      return report;
    }
  }
  return report;
}

}  // namespace ohm
