#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ohm/errors.hpp"
#include "ohm/instance.hpp"
#include "ohm/instance_io.hpp"
#include "ohm/partitions.hpp"
#include "ohm/trading_cycles.hpp"

using namespace ohm;

namespace {

PartitionRule size_dependent_rule() {
  // groups everyone only when the whole market is visible, so truncated views
  // disagree with the full one
  return {"unstable",
          [](const Instance& inst) {
            Partition p;
            if (inst.size() >= 3) {
              std::vector<int> all(inst.size());
              std::iota(all.begin(), all.end(), 0);
              p.push_back(std::move(all));
            } else {
              for (int i = 0; i < inst.size(); ++i) p.push_back({i});
            }
            return p;
          },
          {}};
}

}  // namespace

TEST_CASE("the pointing graph sends everyone to her best owner in the group") {
  const Instance f5 = fixtures::fig5();
  const TtcGraph g = build_ttc_graph({1, 2}, f5);
  CHECK(g.vertices == std::vector<int>{1, 2});
  CHECK(g.points_to == std::vector<int>{2, 1});
  CHECK(find_cycles(g) == std::vector<std::vector<int>>{{1, 2}});

  const TtcGraph self = build_ttc_graph({0, 1}, f5);
  CHECK(self.points_to == std::vector<int>{1, 1});
  CHECK(find_cycles(self) == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("a ttc run clears cycles round by round") {
  const Instance f5 = fixtures::fig5();
  std::vector<TtcRound> rounds;
  const Allocation sub = run_ttc({0, 1}, f5, &rounds);
  CHECK(sub.item_of == std::vector<int>{0, 1, -1, -1, -1});
  REQUIRE(rounds.size() == 2);
  CHECK(rounds[0].edges == std::vector<std::pair<int, int>>{{1, 2}, {2, 2}});
  CHECK(rounds[0].cycles == std::vector<std::vector<int>>{{2}});
  CHECK(rounds[1].edges == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK(rounds[1].cycles == std::vector<std::vector<int>>{{1}});

  const Allocation swap = run_ttc({1, 2}, f5);
  CHECK(swap.item_of == std::vector<int>{-1, 2, 1, -1, -1});
}

TEST_CASE("the online run under the excluded-agent rule trades the middle pair") {
  const Instance f5 = fixtures::fig5();
  const TtcOutcome out = run_online_ttc(f5, gamma_rule());
  CHECK(out.allocation.item_of == std::vector<int>{0, 2, 1, 3, 4});
  CHECK(trace_to_text(out.trace) ==
        "t=4 dep=1 block={1} round1: edges=[1->1] cycles=[(1)] assign=[(1,e1)]\n"
        "t=6 dep=2 block={2,3} round1: edges=[2->3,3->2] cycles=[(2,3)] assign=[(2,e3),(3,e2)]\n"
        "t=9 dep=4 block={4} round1: edges=[4->4] cycles=[(4)] assign=[(4,e4)]\n"
        "t=10 dep=5 block={5} round1: edges=[5->5] cycles=[(5)] assign=[(5,e5)]\n");

  const TtcOutcome identity = run_online_ttc(fixtures::fig1(), gamma_rule());
  CHECK(identity.allocation == identity_allocation(fixtures::fig1()));
}

TEST_CASE("the online run under a scheduling clears slot groups at first departure") {
  const Instance f5 = fixtures::fig5();
  const TtcOutcome out = run_online_ttc(f5, theta_rule(fixtures::fig5_scheduling()));
  CHECK(out.allocation.item_of == std::vector<int>{0, 1, 3, 2, 4});
  CHECK(trace_to_text(out.trace) ==
        "t=4 dep=1 block={1,2} round1: edges=[1->2,2->2] cycles=[(2)] "
        "round2: edges=[1->1] cycles=[(1)] assign=[(1,e1),(2,e2)]\n"
        "t=7 dep=3 block={3,4} round1: edges=[3->4,4->3] cycles=[(3,4)] assign=[(3,e4),(4,e3)]\n"
        "t=10 dep=5 block={5} round1: edges=[5->5] cycles=[(5)] assign=[(5,e5)]\n");
}

TEST_CASE("the online run under a threshold splits once past it") {
  const Instance f5 = fixtures::fig5();
  const TtcOutcome out = run_online_ttc(f5, zeta_rule({fixtures::fig5_tau_prime()}));
  CHECK(out.allocation.item_of == std::vector<int>{0, 1, 3, 2, 4});
  CHECK(trace_to_text(out.trace) ==
        "t=4 dep=1 block={1} round1: edges=[1->1] cycles=[(1)] assign=[(1,e1)]\n"
        "t=6 dep=2 block={2} round1: edges=[2->2] cycles=[(2)] assign=[(2,e2)]\n"
        "t=7 dep=3 block={3,4} round1: edges=[3->4,4->3] cycles=[(3,4)] assign=[(3,e4),(4,e3)]\n"
        "t=10 dep=5 block={5} round1: edges=[5->5] cycles=[(5)] assign=[(5,e5)]\n");

  // a threshold below every departure degenerates to the excluded-agent rule
  CHECK(run_online_ttc_allocation(f5, zeta_rule({TimePoint(0)})) ==
        run_online_ttc_allocation(f5, gamma_rule()));
}

TEST_CASE("a block that shifts with the horizon stops the online run") {
  try {
    run_online_ttc(fixtures::fig1(), size_dependent_rule());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_progress_preserving);
  }
}
