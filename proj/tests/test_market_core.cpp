#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "ohm/errors.hpp"
#include "ohm/instance.hpp"
#include "ohm/instance_io.hpp"

using namespace ohm;

namespace {

AgentRecord rec(int id, const std::string& endowment, long long a, long long d,
                std::vector<std::string> pref) {
  return {id, endowment, TimePoint(a), TimePoint(d), std::move(pref)};
}

template <typename F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::syntax;
}

}  // namespace

TEST_CASE("time point parsing and canonical form") {
  CHECK(TimePoint::parse("7")->str() == "7");
  CHECK(TimePoint::parse("-3")->str() == "-3");
  CHECK(TimePoint::parse("7/2")->str() == "7/2");
  CHECK(TimePoint::parse("6/4")->str() == "3/2");
  CHECK(TimePoint::parse("0/5")->str() == "0");
  CHECK(TimePoint::parse("-2/6")->str() == "-1/3");

  for (const char* bad : {"", "1.5", "1/0", "1/-2", "a", "1 /2", "7/", "/2", "1/2/3"}) {
    CAPTURE(bad);
    CHECK(!TimePoint::parse(bad).has_value());
  }
}

TEST_CASE("time point ordering and arithmetic are exact") {
  CHECK(TimePoint(1, 3) < TimePoint(1, 2));
  CHECK(TimePoint(7, 2) == *TimePoint::parse("14/4"));
  CHECK(TimePoint(1, 2) + TimePoint(1, 3) == TimePoint(5, 6));
  CHECK(TimePoint(1, 2) - TimePoint(1, 3) == TimePoint(1, 6));
  CHECK(TimePoint::midpoint(TimePoint(3), TimePoint(4)) == TimePoint(7, 2));
  CHECK(TimePoint::midpoint(TimePoint(1, 3), TimePoint(1, 2)) == TimePoint(5, 12));
  CHECK(TimePoint::midpoint(TimePoint(5), TimePoint(5)) == TimePoint(5));
  CHECK(TimePoint(7, 2).divided_by(7) == TimePoint(1, 2));

  const TimePoint a(1, 3), b(1, 2);
  const TimePoint m = TimePoint::midpoint(a, b);
  CHECK(a < m);
  CHECK(m < b);
}

TEST_CASE("time point serialization round-trips") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long long> num(-1000000, 1000000);
  std::uniform_int_distribution<long long> den(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    const TimePoint t(num(rng), den(rng));
    const auto back = TimePoint::parse(t.str());
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
}

TEST_CASE("validation accepts the shipped instances") {
  const Instance f1 = fixtures::fig1();
  CHECK(f1.size() == 3);
  CHECK(f1.market_open() == TimePoint(0));
  CHECK(f1.market_close() == TimePoint(100));
  CHECK(f1.id_of(0) == 1);
  CHECK(f1.item_name(1) == "e2");
  CHECK(f1.rank(0, f1.item_index("e2")) == 0);
  CHECK(f1.index_of_id(3) == 2);
}

TEST_CASE("validation sorts records into arrival order") {
  const Instance inst = validate_instance(
      {
          rec(3, "e3", 4, 5, {"e2", "e3", "e1"}),
          rec(1, "e1", 1, 6, {"e2", "e1", "e3"}),
          rec(2, "e2", 2, 3, {"e1", "e2", "e3"}),
      },
      TimePoint(0), TimePoint(100));
  CHECK(inst == fixtures::fig1());
}

TEST_CASE("validation accepts an empty agent list") {
  const Instance inst = validate_instance({}, TimePoint(0), TimePoint(1));
  CHECK(inst.size() == 0);
}

TEST_CASE("validation rejects malformed instances") {
  const std::vector<std::string> p{"e1", "e2"};
  const std::vector<std::string> q{"e2", "e1"};

  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, p), rec(1, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::duplicate_id);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, p), rec(2, "e1", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::duplicate_id);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 3, 1, p), rec(2, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::bad_window);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, p)}, TimePoint(5), TimePoint(2));
        }) == Errc::bad_window);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 20, p), rec(2, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::bad_window);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, p), rec(2, "e2", 3, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::duplicate_time);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, {"e1"}), rec(2, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::bad_preference);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, {"e1", "e1"}), rec(2, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::bad_preference);
  CHECK(code_of([&] {
          validate_instance({rec(1, "e1", 1, 3, {"e1", "e9"}), rec(2, "e2", 2, 4, q)}, TimePoint(0),
                            TimePoint(10));
        }) == Errc::bad_preference);
}

TEST_CASE("present agents and items grow with time") {
  const Instance f5 = fixtures::fig5();
  CHECK(agents_before(f5, f5.market_open()).empty());
  CHECK(agents_before(f5, f5.departure(0)) == std::vector<int>{1, 2, 3});
  CHECK(agents_before(f5, f5.departure(3)) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(items_before(f5, f5.departure(0)) == std::vector<std::string>{"e1", "e2", "e3"});
}

TEST_CASE("truncation keeps the arrived prefix and restricts preferences") {
  const Instance f1 = fixtures::fig1();
  const Instance head = truncate(f1, f1.departure(1));
  REQUIRE(head.size() == 2);
  CHECK(head.id_of(0) == 1);
  CHECK(head.id_of(1) == 2);
  CHECK(head.agent(0).preference == std::vector<std::string>{"e2", "e1"});
  CHECK(head.arrival(0) == f1.arrival(0));
  CHECK(head.market_close() == f1.market_close());

  CHECK(truncate(f1, TimePoint(100)) == f1);
  CHECK(truncate(fixtures::fig5(), fixtures::fig5().departure(1)).size() == 4);

  const Instance f5 = fixtures::fig5();
  CHECK(truncate(truncate(f5, f5.departure(2)), f5.departure(1)) ==
        truncate(f5, f5.departure(1)));
}

TEST_CASE("prefix matches truncation between arrivals") {
  const Instance f1 = fixtures::fig1();
  CHECK(f1.prefix(2) == truncate(f1, TimePoint(3)));
  CHECK(f1.prefix(3) == f1);
  CHECK(f1.prefix(0).size() == 0);
}

TEST_CASE("compatibility needs every item to arrive before its taker departs") {
  const Instance f1 = fixtures::fig1();
  CHECK(is_compatible(identity_allocation(f1), f1));

  Allocation m;
  m.item_of = {1, 2, 0};  // agent 2 takes e3, which arrives after d_2
  CHECK(!is_compatible(m, f1));

  Allocation m_prime;
  m_prime.item_of = {2, 0, 1};
  CHECK(is_compatible(m_prime, f1));

  Allocation partial;
  partial.item_of = {2, 0, -1};
  CHECK(!is_compatible(partial, f1));

  Allocation doubled;
  doubled.item_of = {0, 0, 1};
  CHECK(!is_compatible(doubled, f1));
}

TEST_CASE("pareto dominance is strict and irreflexive") {
  const Instance f2 = fixtures::fig2();
  Allocation stat;  // the picking order 1,2 then 3,4 settles these
  stat.item_of = {2, 0, 1, 3};
  Allocation dyn;
  dyn.item_of = {3, 0, 1, 2};
  CHECK(pareto_dominates(dyn, stat, f2));
  CHECK(!pareto_dominates(stat, dyn, f2));
  CHECK(!pareto_dominates(stat, stat, f2));
  CHECK(!pareto_dominates(dyn, dyn, f2));
}

TEST_CASE("event stream interleaves arrivals and departures by time") {
  const Instance f1 = fixtures::fig1();
  const std::vector<Event> expected{
      {TimePoint(1), EventKind::arrival, 1},   {TimePoint(2), EventKind::arrival, 2},
      {TimePoint(3), EventKind::departure, 2}, {TimePoint(4), EventKind::arrival, 3},
      {TimePoint(5), EventKind::departure, 3}, {TimePoint(6), EventKind::departure, 1},
  };
  CHECK(event_stream(f1) == expected);

  const Instance solo =
      validate_instance({rec(1, "e1", 1, 2, {"e1"})}, TimePoint(0), TimePoint(3));
  const std::vector<Event> solo_expected{
      {TimePoint(1), EventKind::arrival, 1},
      {TimePoint(2), EventKind::departure, 1},
  };
  CHECK(event_stream(solo) == solo_expected);
}
