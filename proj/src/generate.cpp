#include "ohm/generate.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ohm/errors.hpp"

namespace ohm {

Instance generate_instance(const GenConfig& config) {
  const int n = config.agent_count;
  if (n < 1) throw std::invalid_argument("agent_count must be positive");

  std::mt19937_64 rng(config.seed);
  auto draw = [&rng](std::size_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % bound);
  };

  const std::uint64_t arrival_weight = config.overlap == Overlap::dense ? 2 : 1;

  std::vector<TimePoint> arrival(n), departure(n);
  std::vector<int> open;
  int arrived = 0;
  for (int slot = 0; slot < 2 * n; ++slot) {
    const TimePoint now(slot + 1);
    const bool can_open = arrived < n;
    bool pick_arrival;
    if (!can_open) {
      pick_arrival = false;
    } else if (open.empty()) {
      pick_arrival = true;
    } else {
      pick_arrival = draw(3) < arrival_weight;
    }
    if (pick_arrival) {
      arrival[arrived] = now;
      open.push_back(arrived);
      ++arrived;
    } else {
      const std::size_t who = draw(open.size());
      departure[open[who]] = now;
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(who));
    }
  }

  std::vector<std::string> items(n);
  for (int i = 0; i < n; ++i) items[i] = "e" + std::to_string(i + 1);

  std::vector<AgentRecord> records;
  records.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      std::swap(order[j], order[draw(static_cast<std::size_t>(j) + 1)]);
    }
    std::vector<std::string> pref;
    pref.reserve(n);
    for (int j : order) pref.push_back(items[j]);
    records.push_back({i + 1, items[i], arrival[i], departure[i], std::move(pref)});
  }
  return validate_instance(std::move(records), TimePoint(0), TimePoint(2 * n + 1));
}

}  // namespace ohm
