#include "ohm/orderings.hpp"

#include <algorithm>
#include <numeric>

namespace ohm {

namespace {

std::vector<int> iota_order(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

// positions[i] = 0-based rank of agent index i in the permutation
std::vector<int> positions_of(const std::vector<int>& perm, int n) {
  std::vector<int> pos(n, -1);
  for (int p = 0; p < static_cast<int>(perm.size()); ++p) pos[perm[p]] = p;
  return pos;
}

}  // namespace

std::vector<int> ascending_departure(const Instance& inst) {
  auto order = iota_order(inst.size());
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return inst.departure(a) < inst.departure(b); });
  return order;
}

std::vector<int> ascending_arrival(const Instance& inst) {
  return iota_order(inst.size());  // canonical order is already by arrival
}

std::vector<int> descending_arrival(const Instance& inst) {
  auto order = iota_order(inst.size());
  std::reverse(order.begin(), order.end());
  return order;
}

OrderingRule ascending_departure_rule() {
  return {"delta", [](const Instance& inst) { return ascending_departure(inst); }};
}

OrderingRule ascending_arrival_rule() {
  return {"alpha", [](const Instance& inst) { return ascending_arrival(inst); }};
}

OrderingRule descending_arrival_rule() {
  return {"desc-arrival", [](const Instance& inst) { return descending_arrival(inst); }};
}

std::optional<PsViolation> check_prefix_stable(const OrderingRule& rule, const Instance& inst) {
  const int n = inst.size();
  const auto full = rule.evaluate(inst);
  const auto full_pos = positions_of(full, n);
  for (int i = 0; i < n; ++i) {
    const auto trunc = rule.evaluate(truncate(inst, inst.departure(i)));
    const int upto = full_pos[i];  // agent i's own 0-based position in the full order
    for (int p = 0; p <= upto; ++p) {
      if (p >= static_cast<int>(trunc.size()) || trunc[p] != full[p]) {
        return PsViolation{inst.id_of(i), p + 1};
      }
    }
  }
  return std::nullopt;
}

std::optional<PfeViolation> check_pfe(const OrderingRule& rule, const Instance& inst) {
  const int n = inst.size();

  // rule(I_{<d_x}) for every x, as position tables over agent indices
  std::vector<std::vector<int>> pos_at_dep(n);
  for (int x = 0; x < n; ++x) {
    pos_at_dep[x] = positions_of(rule.evaluate(truncate(inst, inst.departure(x))), n);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!(inst.arrival(i) < inst.departure(k))) continue;
        if (!(inst.departure(k) < inst.departure(i))) continue;
        if (!(inst.departure(k) < inst.departure(j))) continue;
        if (!(inst.arrival(j) < inst.departure(i))) continue;

        const auto& at_k = pos_at_dep[k];
        if (at_k[i] < 0 || at_k[k] < at_k[i]) continue;  // i must outrank k there

        const bool j_absent = inst.departure(k) < inst.arrival(j);
        if (!j_absent && (at_k[j] < 0 || at_k[j] < at_k[i])) continue;

        const int first_out = inst.departure(i) < inst.departure(j) ? i : j;
        const auto& at_min = pos_at_dep[first_out];
        if (at_min[j] >= 0 && at_min[i] >= 0 && at_min[j] < at_min[i]) {
          return PfeViolation{inst.id_of(i), inst.id_of(j), inst.id_of(k)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace ohm
