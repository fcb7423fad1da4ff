#include "ohm/trace.hpp"

#include <sstream>

namespace ohm {

namespace {

void render_pick(std::ostringstream& out, const std::pair<int, std::string>& pick) {
  out << "(" << pick.first << "," << pick.second << ")";
}

void render_sd(std::ostringstream& out, const SdPhase& phase) {
  out << "t=" << phase.time.str() << " dep=" << phase.departing_agent << " reserve=[";
  for (std::size_t i = 0; i < phase.reservations.size(); ++i) {
    if (i) out << ",";
    render_pick(out, phase.reservations[i]);
  }
  out << "] assign=";
  render_pick(out, phase.assignment);
}

void render_ttc(std::ostringstream& out, const TtcPhase& phase) {
  out << "t=" << phase.time.str() << " dep=" << phase.departing_agent << " block={";
  for (std::size_t i = 0; i < phase.block.size(); ++i) {
    if (i) out << ",";
    out << phase.block[i];
  }
  out << "}";
  for (std::size_t r = 0; r < phase.rounds.size(); ++r) {
    const auto& round = phase.rounds[r];
    out << " round" << (r + 1) << ": edges=[";
    for (std::size_t i = 0; i < round.edges.size(); ++i) {
      if (i) out << ",";
      out << round.edges[i].first << "->" << round.edges[i].second;
    }
    out << "] cycles=[";
    for (std::size_t c = 0; c < round.cycles.size(); ++c) {
      if (c) out << ",";
      out << "(";
      for (std::size_t i = 0; i < round.cycles[c].size(); ++i) {
        if (i) out << ",";
        out << round.cycles[c][i];
      }
      out << ")";
    }
    out << "]";
  }
  out << " assign=[";
  for (std::size_t i = 0; i < phase.assignments.size(); ++i) {
    if (i) out << ",";
    render_pick(out, phase.assignments[i]);
  }
  out << "]";
}

}  // namespace

std::string trace_to_text(const ExecutionTrace& trace) {
  std::ostringstream out;
  for (const auto& phase : trace.phases) {
    if (std::holds_alternative<SdPhase>(phase)) {
      render_sd(out, std::get<SdPhase>(phase));
    } else {
      render_ttc(out, std::get<TtcPhase>(phase));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace ohm
