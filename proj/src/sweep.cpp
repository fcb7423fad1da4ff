#include "ohm/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace ohm {

std::uint64_t interleaving_count(int n) {
  std::uint64_t total = 1;
  for (int k = 3; k <= 2 * n - 1; k += 2) total *= static_cast<std::uint64_t>(k);
  return total;
}

std::uint64_t sweep_size(int n) {
  std::uint64_t fact = 1;
  for (int k = 2; k <= n; ++k) fact *= static_cast<std::uint64_t>(k);
  std::uint64_t profiles = 1;
  for (int i = 0; i < n; ++i) profiles *= fact;
  return interleaving_count(n) * profiles;
}

namespace {

using Interleaving = std::pair<std::vector<int>, std::vector<int>>;  // arrival, departure slots

void collect_interleavings(int n, int arrived, int slot, std::vector<int>& open,
                           std::vector<int>& arrival_slot, std::vector<int>& departure_slot,
                           std::vector<Interleaving>& out) {
  if (slot == 2 * n) {
    out.emplace_back(arrival_slot, departure_slot);
    return;
  }
  if (arrived < n) {
    arrival_slot[arrived] = slot;
    open.push_back(arrived);
    collect_interleavings(n, arrived + 1, slot + 1, open, arrival_slot, departure_slot, out);
    open.pop_back();
  }
  for (std::size_t k = 0; k < open.size(); ++k) {
    const int agent = open[k];
    departure_slot[agent] = slot;
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
    collect_interleavings(n, arrived, slot + 1, open, arrival_slot, departure_slot, out);
    open.insert(open.begin() + static_cast<std::ptrdiff_t>(k), agent);
  }
}

}  // namespace

void for_each_sweep_instance(int n, const std::function<void(const Instance&)>& fn) {
  std::vector<std::string> items(n);
  for (int i = 0; i < n; ++i) items[i] = "e" + std::to_string(i + 1);

  std::vector<std::vector<std::string>> orders;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::string> order;
    order.reserve(n);
    for (int j : perm) order.push_back(items[j]);
    orders.push_back(std::move(order));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Interleaving> interleavings;
  std::vector<int> open;
  std::vector<int> arrival_slot(n), departure_slot(n);
  collect_interleavings(n, 0, 0, open, arrival_slot, departure_slot, interleavings);

  const std::size_t base = orders.size();
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (const auto& [arr, dep] : interleavings) {
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      std::vector<AgentRecord> records;
      records.reserve(n);
      for (int i = 0; i < n; ++i) {
        records.push_back(
            {i + 1, items[i], TimePoint(arr[i] + 1), TimePoint(dep[i] + 1), orders[digits[i]]});
      }
      fn(validate_instance(std::move(records), TimePoint(0), TimePoint(2 * n + 1)));
      int pos = n - 1;
      while (pos >= 0 && ++digits[pos] == base) {
        digits[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
}

namespace {

std::vector<TimePoint> sorted_event_times(const Instance& inst) {
  std::vector<TimePoint> times;
  times.reserve(2 * static_cast<std::size_t>(inst.size()));
  for (const auto& rec : inst.records()) {
    times.push_back(rec.arrival);
    times.push_back(rec.departure);
  }
  std::sort(times.begin(), times.end());
  return times;
}

std::vector<TimePoint> sorted_departures(const Instance& inst) {
  std::vector<TimePoint> times;
  times.reserve(inst.size());
  for (const auto& rec : inst.records()) times.push_back(rec.departure);
  std::sort(times.begin(), times.end());
  return times;
}

}  // namespace

Scheduling split_scheduling(const Instance& inst) {
  const auto events = sorted_event_times(inst);
  const auto deps = sorted_departures(inst);
  const TimePoint lo = TimePoint::midpoint(inst.market_open(), events.front());
  const TimePoint hi = TimePoint::midpoint(events.back(), inst.market_close());
  const TimePoint pivot = deps[(deps.size() - 1) / 2];
  const auto next = std::upper_bound(events.begin(), events.end(), pivot);
  const TimePoint split = next == events.end() ? hi : TimePoint::midpoint(pivot, *next);
  std::vector<Interval> slots{{lo, split}};
  if (split < hi) slots.push_back({split, hi});
  return Scheduling::validated(std::move(slots));
}

Scheduling cover_scheduling(const Instance& inst) {
  const auto events = sorted_event_times(inst);
  return Scheduling::validated({{TimePoint::midpoint(inst.market_open(), events.front()),
                                 TimePoint::midpoint(events.back(), inst.market_close())}});
}

Threshold early_threshold(const Instance& inst) {
  const auto events = sorted_event_times(inst);
  return {TimePoint::midpoint(inst.market_open(), events.front())};
}

Threshold late_threshold(const Instance& inst) {
  const auto events = sorted_event_times(inst);
  const TimePoint first_dep = sorted_departures(inst).front();
  const auto next = std::upper_bound(events.begin(), events.end(), first_dep);
  return {next == events.end() ? TimePoint::midpoint(first_dep, inst.market_close())
                               : TimePoint::midpoint(first_dep, *next)};
}

}  // namespace ohm
