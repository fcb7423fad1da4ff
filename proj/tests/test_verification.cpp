#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ohm/errors.hpp"
#include "ohm/instance.hpp"
#include "ohm/instance_io.hpp"
#include "ohm/serial_dictatorship.hpp"
#include "ohm/trading_cycles.hpp"
#include "ohm/verification.hpp"

using namespace ohm;

namespace {

Instance offline_lookahead_market() {
  // the full-market cycle 2<->3 only forms after agent 2 is gone, so deciding
  // agent 2 from her truncation must disagree with the offline run
  std::vector<AgentRecord> recs{
      {1, "e1", TimePoint(1), TimePoint(6), {"e1", "e2", "e3"}},
      {2, "e2", TimePoint(2), TimePoint(3), {"e3", "e2", "e1"}},
      {3, "e3", TimePoint(4), TimePoint(5), {"e2", "e3", "e1"}},
  };
  return validate_instance(std::move(recs), TimePoint(0), TimePoint(7));
}

Mechanism offline_ttc() {
  return {"offline-ttc",
          [](const Instance& inst) {
            std::vector<int> all(inst.size());
            std::iota(all.begin(), all.end(), 0);
            return run_ttc(all, inst);
          },
          {}};
}

std::map<int, std::string> outcome_by_id(const Instance& inst, const Allocation& alloc) {
  std::map<int, std::string> out;
  for (int i = 0; i < inst.size(); ++i) out[inst.id_of(i)] = inst.item_name(alloc.item_of[i]);
  return out;
}

const ManipulationWitness& manipulation(const PropertyReport& report) {
  REQUIRE(std::holds_alternative<ManipulationWitness>(report.witness));
  return std::get<ManipulationWitness>(report.witness);
}

}  // namespace

TEST_CASE("compatible allocations enumerate in lexicographic order") {
  const Instance f1 = fixtures::fig1();
  const auto all = enumerate_compatible(f1);
  REQUIRE(all.size() == 4);
  CHECK(all[0].item_of == std::vector<int>{0, 1, 2});
  CHECK(all[1].item_of == std::vector<int>{1, 0, 2});
  CHECK(all[2].item_of == std::vector<int>{2, 0, 1});
  CHECK(all[3].item_of == std::vector<int>{2, 1, 0});

  // independent count: raw bijection scan with direct time comparisons
  std::vector<int> perm{0, 1, 2};
  int count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      if (!(f1.arrival(perm[i]) < f1.departure(i))) ok = false;
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 4);

  try {
    enumerate_compatible(fixtures::fig5(), 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_large);
  }
}

TEST_CASE("market optimality flags a dominated allocation") {
  const Instance f1 = fixtures::fig1();
  const PropertyReport good = is_mpo(Allocation{{2, 0, 1}}, f1);
  CHECK(good.holds);
  CHECK(good.property == "M-PO");

  const PropertyReport bad = is_mpo(identity_allocation(f1), f1);
  CHECK(!bad.holds);
  REQUIRE(std::holds_alternative<DominationWitness>(bad.witness));
  CHECK(std::get<DominationWitness>(bad.witness).dominating.item_of == std::vector<int>{1, 0, 2});
}

TEST_CASE("rationality reports the latest-arriving losing agent") {
  const Instance f5 = fixtures::fig5();
  const Allocation sd{{1, 2, 3, 4, 0}};
  const PropertyReport bad = is_ir(sd, f5);
  CHECK(!bad.holds);
  CHECK(bad.property == "IR");
  REQUIRE(std::holds_alternative<AgentWitness>(bad.witness));
  CHECK(std::get<AgentWitness>(bad.witness).agent == 5);

  CHECK(is_ir(identity_allocation(f5), f5).holds);
  CHECK(is_ir(Allocation{{0, 2, 1, 3, 4}}, f5).holds);
}

TEST_CASE("safeness inspects every departure") {
  const Instance f3 = fixtures::fig3();
  CHECK(is_safe_allocation(Allocation{{0, 2, 1, 3}}, f3).holds);
  CHECK(is_safe_allocation(identity_allocation(f3), f3).holds);

  const Instance f5 = fixtures::fig5();
  const PropertyReport bad = is_safe_allocation(Allocation{{1, 2, 3, 4, 0}}, f5);
  CHECK(!bad.holds);
  CHECK(bad.property == "safe");
  REQUIRE(std::holds_alternative<AgentWitness>(bad.witness));
  CHECK(std::get<AgentWitness>(bad.witness).agent == 4);
}

TEST_CASE("safe optimality compares against safe allocations only") {
  const Instance f5 = fixtures::fig5();
  const PropertyReport good = is_spo(Allocation{{0, 2, 1, 3, 4}}, f5);
  CHECK(good.holds);
  CHECK(good.property == "S-PO");

  const PropertyReport bad = is_spo(identity_allocation(f5), f5);
  CHECK(!bad.holds);
  REQUIRE(std::holds_alternative<DominationWitness>(bad.witness));
  CHECK(std::get<DominationWitness>(bad.witness).dominating.item_of ==
        std::vector<int>{0, 1, 3, 2, 4});

  try {
    is_spo(Allocation{{1, 2, 3, 4, 0}}, f5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_safe);
  }
}

TEST_CASE("online decidability fails for a mechanism that looks ahead") {
  CHECK(check_online(make_static_sd(ascending_departure_rule()), fixtures::fig1()).holds);
  CHECK(check_online(make_online_ttc(gamma_rule()), fixtures::fig5()).holds);

  const Instance market = offline_lookahead_market();
  const PropertyReport bad = check_online(offline_ttc(), market);
  CHECK(!bad.holds);
  CHECK(bad.property == "online");
  REQUIRE(std::holds_alternative<OnlineWitness>(bad.witness));
  const auto& w = std::get<OnlineWitness>(bad.witness);
  CHECK(w.agent == 2);
  CHECK(w.full_item == "e3");
  CHECK(w.truncated_item == "e2");
}

TEST_CASE("candidate times cover every interleaving class once") {
  const Instance aic = fixtures::ce_aic_sd();
  CHECK(candidate_times(aic, 0, TimePoint(1), TimePoint(6)) ==
        std::vector<TimePoint>{TimePoint(3, 2), TimePoint(5, 2), TimePoint(7, 2), TimePoint(9, 2),
                               TimePoint(11, 2)});

  const Instance theta = fixtures::ce_dic_theta();
  CHECK(candidate_times(theta, 0, TimePoint(1), TimePoint(7)) ==
        std::vector<TimePoint>{TimePoint(3, 2), TimePoint(3), TimePoint(11, 2)});
  CHECK(candidate_times(theta, 0, TimePoint(1), TimePoint(7), {TimePoint(3), TimePoint(6)}) ==
        std::vector<TimePoint>{TimePoint(3, 2), TimePoint(5, 2), TimePoint(7, 2), TimePoint(5),
                               TimePoint(13, 2)});
  CHECK(candidate_times(theta, 0, TimePoint(5), TimePoint(6)) ==
        std::vector<TimePoint>{TimePoint(21, 4), TimePoint(23, 4)});
}

TEST_CASE("any misreported time behaves like its class candidate") {
  const Instance inst = fixtures::ce_aic_sd();
  const Mechanism mech = make_static_sd(ascending_departure_rule());
  const std::vector<TimePoint> breaks{TimePoint(2), TimePoint(3), TimePoint(4), TimePoint(5)};
  const auto cands = candidate_times(inst, 0, TimePoint(1), TimePoint(6));
  REQUIRE(cands.size() == breaks.size() + 1);

  auto cell_of = [&](const TimePoint& t) {
    int cell = 0;
    for (const auto& b : breaks) {
      if (b < t) ++cell;
    }
    return cell;
  };
  for (std::size_t i = 0; i < cands.size(); ++i) REQUIRE(cell_of(cands[i]) == static_cast<int>(i));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> den_dist(1, 64);
  int tried = 0;
  while (tried < 100) {
    const long long den = den_dist(rng);
    if (6 * den - den - 1 < den + 1) continue;
    std::uniform_int_distribution<long long> num_dist(den + 1, 6 * den - 1);
    const TimePoint t(num_dist(rng), den);
    if (std::find(breaks.begin(), breaks.end(), t) != breaks.end()) continue;
    ++tried;

    const Misreport as_t{1, t, TimePoint(6), inst.agent(0).preference};
    const Misreport as_cand{1, cands[cell_of(t)], TimePoint(6), inst.agent(0).preference};
    const Instance with_t = apply_misreport(inst, as_t);
    const Instance with_cand = apply_misreport(inst, as_cand);
    CAPTURE(t.str());
    CHECK(outcome_by_id(with_t, mech.run(with_t)) ==
          outcome_by_id(with_cand, mech.run(with_cand)));
  }
}

TEST_CASE("misreports may only shrink the reported window") {
  const Instance f1 = fixtures::fig1();
  const Instance shifted = apply_misreport(f1, {1, TimePoint(3, 2), TimePoint(6), {"e2", "e1", "e3"}});
  CHECK(shifted.arrival(0) == TimePoint(3, 2));
  CHECK(shifted.id_of(0) == 1);

  CHECK_THROWS_AS(apply_misreport(f1, {1, TimePoint(0), TimePoint(6), {"e2", "e1", "e3"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_misreport(f1, {1, TimePoint(2, 1), TimePoint(7), {"e2", "e1", "e3"}}),
                  std::invalid_argument);
}

TEST_CASE("arrival delays can game the picking orders") {
  const Instance inst = fixtures::ce_aic_sd();

  const PropertyReport under_delta =
      find_manipulation(make_static_sd(ascending_departure_rule()), inst, Notion::a_ic);
  CHECK(!under_delta.holds);
  CHECK(!under_delta.sampled);
  CHECK(under_delta.property == "a-IC");
  const auto& wd = manipulation(under_delta);
  CHECK(wd.agent == 1);
  CHECK(wd.reported_arrival == TimePoint(7, 2));
  CHECK(!wd.reported_departure.has_value());
  CHECK(!wd.reported_preference.has_value());
  CHECK(wd.truthful_item == "e2");
  CHECK(wd.improved_item == "e3");

  const PropertyReport under_alpha =
      find_manipulation(make_static_sd(ascending_arrival_rule()), inst, Notion::a_ic);
  const auto& wa = manipulation(under_alpha);
  CHECK(wa.agent == 1);
  CHECK(wa.reported_arrival == TimePoint(5, 2));
  CHECK(wa.truthful_item == "e1");
  CHECK(wa.improved_item == "e3");

  const PropertyReport dyn =
      find_manipulation(make_dynamic_sd(ascending_departure_rule()), inst, Notion::a_ic);
  CHECK(manipulation(dyn).reported_arrival == TimePoint(7, 2));

  // the witness actually delivers the better item when replayed
  const Instance replayed =
      apply_misreport(inst, {wd.agent, *wd.reported_arrival, inst.departure(0),
                             inst.agent(0).preference});
  const Allocation out = make_static_sd(ascending_departure_rule()).run(replayed);
  CHECK(outcome_by_id(replayed, out).at(1) == "e3");
}

TEST_CASE("a preference misreport can beat the safe picking run") {
  const Instance inst = fixtures::ce_wic_safe();
  const PropertyReport report =
      find_manipulation(make_safe_sd(ascending_departure_rule()), inst, Notion::wic);
  CHECK(!report.holds);
  CHECK(report.property == "WIC");
  const auto& w = manipulation(report);
  CHECK(w.agent == 3);
  CHECK(w.reported_preference == std::vector<std::string>{"e1", "e3", "e2"});
  CHECK(!w.reported_arrival.has_value());
  CHECK(w.truthful_item == "e2");
  CHECK(w.improved_item == "e1");
}

TEST_CASE("an arrival delay can game the excluded-agent grouping") {
  const Instance inst = fixtures::ce_aic_gamma();
  SearchOptions wide;
  wide.ic_cap = 5;
  const PropertyReport report =
      find_manipulation(make_online_ttc(gamma_rule()), inst, Notion::a_ic, wide);
  CHECK(!report.holds);
  CHECK(!report.sampled);
  const auto& w = manipulation(report);
  CHECK(w.agent == 1);
  CHECK(w.reported_arrival == TimePoint(9, 2));
  CHECK(!w.reported_preference.has_value());
  CHECK(w.truthful_item == "e1");
  CHECK(w.improved_item == "e4");
}

TEST_CASE("a departure advance can game the scheduled grouping") {
  const Instance inst = fixtures::ce_dic_theta();
  const Mechanism mech = make_online_ttc(theta_rule(fixtures::ce_dic_theta_scheduling()));
  const PropertyReport report = find_manipulation(mech, inst, Notion::d_ic);
  CHECK(!report.holds);
  CHECK(report.property == "d-IC");
  const auto& w = manipulation(report);
  CHECK(w.agent == 1);
  CHECK(w.reported_departure == TimePoint(7, 2));
  CHECK(w.truthful_item == "e1");
  CHECK(w.improved_item == "e2");

  const Instance replayed =
      apply_misreport(inst, {1, inst.arrival(0), *w.reported_departure, inst.agent(0).preference});
  CHECK(outcome_by_id(replayed, mech.run(replayed)).at(1) == "e2");
}

TEST_CASE("past the cap the search samples deterministically or refuses") {
  const Instance inst = fixtures::ce_aic_gamma();
  const Mechanism mech = make_online_ttc(gamma_rule());

  const PropertyReport first = find_manipulation(mech, inst, Notion::a_ic);
  const PropertyReport second = find_manipulation(mech, inst, Notion::a_ic);
  CHECK(first.sampled);
  CHECK(!first.holds);
  const auto& w1 = manipulation(first);
  const auto& w2 = manipulation(second);
  CHECK(w1.agent == w2.agent);
  CHECK(w1.reported_arrival == w2.reported_arrival);
  CHECK(w1.reported_preference == w2.reported_preference);
  CHECK(w1.improved_item == w2.improved_item);

  SearchOptions strict;
  strict.sample_fallback = false;
  try {
    find_manipulation(mech, inst, Notion::a_ic, strict);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_large);
  }
}

TEST_CASE("notion labels match the report vocabulary") {
  CHECK(std::string(notion_name(Notion::wic)) == "WIC");
  CHECK(std::string(notion_name(Notion::a_ic)) == "a-IC");
  CHECK(std::string(notion_name(Notion::d_ic)) == "d-IC");
  CHECK(std::string(notion_name(Notion::sic)) == "SIC");
}
