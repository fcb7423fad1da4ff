#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ohm/time_point.hpp"

namespace ohm {

// One serial-dictatorship phase: picks made while walking the priority order
// down to the departing agent, then the departing agent's own assignment.
struct SdPhase {
  TimePoint time;
  int departing_agent = 0;
  std::vector<std::pair<int, std::string>> reservations;  // (agent id, item name)
  std::pair<int, std::string> assignment;
};

struct TtcRound {
  std::vector<std::pair<int, int>> edges;  // agent id -> agent id it points to
  std::vector<std::vector<int>> cycles;    // canonical rotation, smallest id first
};

struct TtcPhase {
  TimePoint time;
  int departing_agent = 0;
  std::vector<int> block;  // agent ids, ascending
  std::vector<TtcRound> rounds;
  std::vector<std::pair<int, std::string>> assignments;  // (agent id, item name)
};

struct ExecutionTrace {
  std::vector<std::variant<SdPhase, TtcPhase>> phases;
};

// One line per phase; SD phases render as
//   t=<time> dep=<agent> reserve=[(a,i),...] assign=(a,i)
std::string trace_to_text(const ExecutionTrace& trace);

}  // namespace ohm
