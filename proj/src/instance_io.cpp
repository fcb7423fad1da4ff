#include "ohm/instance_io.hpp"

#include "ohm/errors.hpp"

namespace ohm {

namespace {

TimePoint parse_time_field(const ordered_json& value, const std::string& context) {
  if (!value.is_string())
    throw Error(Errc::syntax, context + " must be a string time like \"7\" or \"7/2\"");
  auto parsed = TimePoint::parse(value.get<std::string>());
  if (!parsed)
    throw Error(Errc::syntax, context + ": cannot read time \"" + value.get<std::string>() + "\"");
  return *parsed;
}

ordered_json parse_json(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(Errc::syntax, "input is not valid JSON");
  return doc;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const ordered_json doc = parse_json(text);
  if (!doc.is_object()) throw Error(Errc::syntax, "instance must be a JSON object");
  if (!doc.contains("marketOpen") || !doc.contains("marketClose"))
    throw Error(Errc::syntax, "instance needs marketOpen and marketClose");
  if (!doc.contains("agents") || !doc["agents"].is_array())
    throw Error(Errc::syntax, "instance needs an agents array");

  const TimePoint open = parse_time_field(doc["marketOpen"], "marketOpen");
  const TimePoint close = parse_time_field(doc["marketClose"], "marketClose");

  std::vector<AgentRecord> records;
  int position = 0;
  for (const auto& entry : doc["agents"]) {
    ++position;
    const std::string context = "agent #" + std::to_string(position);
    if (!entry.is_object()) throw Error(Errc::syntax, context + " must be an object");
    for (const char* key : {"id", "endowment", "arrival", "departure", "preferences"}) {
      if (!entry.contains(key)) throw Error(Errc::syntax, context + " is missing " + key);
    }
    AgentRecord rec;
    if (!entry["id"].is_number_integer())
      throw Error(Errc::syntax, context + ": id must be an integer");
    rec.id = entry["id"].get<int>();
    if (!entry["endowment"].is_string())
      throw Error(Errc::syntax, context + ": endowment must be a string");
    rec.endowment = entry["endowment"].get<std::string>();
    rec.arrival = parse_time_field(entry["arrival"], context + ": arrival");
    rec.departure = parse_time_field(entry["departure"], context + ": departure");
    if (!entry["preferences"].is_array())
      throw Error(Errc::syntax, context + ": preferences must be an array");
    for (const auto& name : entry["preferences"]) {
      if (!name.is_string())
        throw Error(Errc::syntax, context + ": preferences must hold item names");
      rec.preference.push_back(name.get<std::string>());
    }
    records.push_back(std::move(rec));
  }
  return validate_instance(std::move(records), open, close);
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["marketOpen"] = inst.market_open().str();
  doc["marketClose"] = inst.market_close().str();
  doc["agents"] = ordered_json::array();
  for (const auto& rec : inst.records()) {
    ordered_json entry;
    entry["id"] = rec.id;
    entry["endowment"] = rec.endowment;
    entry["arrival"] = rec.arrival.str();
    entry["departure"] = rec.departure.str();
    entry["preferences"] = rec.preference;
    doc["agents"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

Scheduling parse_scheduling(const std::string& text) {
  const ordered_json doc = parse_json(text);
  if (!doc.is_array()) throw Error(Errc::syntax, "scheduling must be a JSON array of slots");
  std::vector<Interval> intervals;
  int position = 0;
  for (const auto& entry : doc) {
    ++position;
    const std::string context = "slot #" + std::to_string(position);
    if (!entry.is_object() || !entry.contains("start") || !entry.contains("end"))
      throw Error(Errc::syntax, context + " must be an object with start and end");
    intervals.push_back({parse_time_field(entry["start"], context + ": start"),
                         parse_time_field(entry["end"], context + ": end")});
  }
  return Scheduling::validated(std::move(intervals));
}

std::string serialize_scheduling(const Scheduling& scheduling) {
  ordered_json doc = ordered_json::array();
  for (const auto& slot : scheduling.intervals()) {
    ordered_json entry;
    entry["start"] = slot.start.str();
    entry["end"] = slot.end.str();
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string allocation_to_text(const Instance& inst, const Allocation& alloc) {
  std::string out;
  for (int i = 0; i < inst.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(inst.id_of(i));
    out += ":";
    out += alloc.item_of[i] >= 0 ? inst.item_name(alloc.item_of[i]) : "-";
  }
  return out;
}

ordered_json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  ordered_json doc;
  for (int i = 0; i < inst.size(); ++i) {
    doc[std::to_string(inst.id_of(i))] =
        alloc.item_of[i] >= 0 ? inst.item_name(alloc.item_of[i]) : "-";
  }
  return doc;
}

namespace {

ordered_json pick_to_json(const std::pair<int, std::string>& pick) {
  ordered_json doc;
  doc["agent"] = pick.first;
  doc["item"] = pick.second;
  return doc;
}

}  // namespace

ordered_json trace_to_json(const ExecutionTrace& trace) {
  ordered_json doc;
  doc["phases"] = ordered_json::array();
  for (const auto& phase : trace.phases) {
    ordered_json entry;
    if (const auto* sd = std::get_if<SdPhase>(&phase)) {
      entry["time"] = sd->time.str();
      entry["departing"] = sd->departing_agent;
      entry["reservations"] = ordered_json::array();
      for (const auto& pick : sd->reservations) entry["reservations"].push_back(pick_to_json(pick));
      entry["assignment"] = pick_to_json(sd->assignment);
    } else {
      const auto& ttc = std::get<TtcPhase>(phase);
      entry["time"] = ttc.time.str();
      entry["departing"] = ttc.departing_agent;
      entry["block"] = ttc.block;
      entry["rounds"] = ordered_json::array();
      for (const auto& round : ttc.rounds) {
        ordered_json r;
        r["edges"] = ordered_json::array();
        for (const auto& [from, to] : round.edges) {
          ordered_json e;
          e["from"] = from;
          e["to"] = to;
          r["edges"].push_back(std::move(e));
        }
        r["cycles"] = round.cycles;
        entry["rounds"].push_back(std::move(r));
      }
      entry["assignments"] = ordered_json::array();
      for (const auto& pick : ttc.assignments) entry["assignments"].push_back(pick_to_json(pick));
    }
    doc["phases"].push_back(std::move(entry));
  }
  return doc;
}

ordered_json report_to_json(const PropertyReport& report, const Instance& inst) {
  ordered_json doc;
  doc["property"] = report.property;
  doc["verdict"] = report.holds ? "holds" : "violated";
  if (report.sampled) doc["mode"] = "sampled";

  if (const auto* domination = std::get_if<DominationWitness>(&report.witness)) {
    doc["witness"] = ordered_json{{"dominating", allocation_to_json(inst, domination->dominating)}};
  } else if (const auto* agent = std::get_if<AgentWitness>(&report.witness)) {
    doc["witness"] = ordered_json{{"agent", agent->agent}};
  } else if (const auto* online = std::get_if<OnlineWitness>(&report.witness)) {
    doc["witness"] = ordered_json{{"agent", online->agent},
                                  {"full_item", online->full_item},
                                  {"truncated_item", online->truncated_item}};
  } else if (const auto* deviation = std::get_if<ManipulationWitness>(&report.witness)) {
    ordered_json w;
    w["agent"] = deviation->agent;
    if (deviation->reported_arrival) w["reported_arrival"] = deviation->reported_arrival->str();
    if (deviation->reported_departure)
      w["reported_departure"] = deviation->reported_departure->str();
    if (deviation->reported_preference) w["reported_preference"] = *deviation->reported_preference;
    w["truthful_item"] = deviation->truthful_item;
    w["improved_item"] = deviation->improved_item;
    doc["witness"] = std::move(w);
  }
  return doc;
}

namespace fixtures {

namespace {

AgentRecord make_agent(int id, const std::string& endowment, long long arrival, long long departure,
                       std::vector<std::string> preference) {
  return {id, endowment, TimePoint(arrival), TimePoint(departure), std::move(preference)};
}

}  // namespace

Instance fig1() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 6, {"e2", "e1", "e3"}),
          make_agent(2, "e2", 2, 3, {"e1", "e2", "e3"}),
          make_agent(3, "e3", 4, 5, {"e2", "e3", "e1"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance fig2() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 6, {"e4", "e3", "e2", "e1"}),
          make_agent(2, "e2", 2, 4, {"e1", "e2", "e3", "e4"}),
          make_agent(3, "e3", 3, 7, {"e1", "e2", "e3", "e4"}),
          make_agent(4, "e4", 5, 8, {"e1", "e2", "e3", "e4"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance fig3() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 3, {"e2", "e1", "e3", "e4"}),
          make_agent(2, "e2", 2, 7, {"e3", "e2", "e1", "e4"}),
          make_agent(3, "e3", 4, 6, {"e2", "e3", "e4", "e1"}),
          make_agent(4, "e4", 5, 8, {"e4", "e1", "e2", "e3"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance fig5() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 4, {"e2", "e1", "e3", "e4", "e5"}),
          make_agent(2, "e2", 2, 6, {"e3", "e2", "e1", "e4", "e5"}),
          make_agent(3, "e3", 3, 7, {"e2", "e4", "e3", "e1", "e5"}),
          make_agent(4, "e4", 5, 9, {"e3", "e4", "e5", "e1", "e2"}),
          make_agent(5, "e5", 8, 10, {"e2", "e5", "e1", "e3", "e4"}),
      },
      TimePoint(0), TimePoint(100));
}

Scheduling fig5_scheduling() {
  return Scheduling::validated({{TimePoint(5, 2), TimePoint(13, 2)},
                                {TimePoint(13, 2), TimePoint(21, 2)}});
}

TimePoint fig5_tau_prime() { return TimePoint(11, 2); }

Instance ce_aic_sd() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 6, {"e3", "e1", "e2"}),
          make_agent(2, "e2", 2, 3, {"e1", "e2", "e3"}),
          make_agent(3, "e3", 4, 5, {"e1", "e3", "e2"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance ce_wic_safe() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 4, {"e3", "e2", "e1"}),
          make_agent(2, "e2", 2, 5, {"e1", "e3", "e2"}),
          make_agent(3, "e3", 3, 6, {"e1", "e2", "e3"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance ce_aic_gamma() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 10, {"e4", "e1", "e2", "e3", "e5"}),
          make_agent(2, "e2", 2, 5, {"e1", "e2", "e3", "e4", "e5"}),
          make_agent(3, "e3", 3, 4, {"e3", "e1", "e2", "e4", "e5"}),
          make_agent(4, "e4", 6, 9, {"e1", "e4", "e2", "e3", "e5"}),
          make_agent(5, "e5", 7, 8, {"e5", "e1", "e2", "e3", "e4"}),
      },
      TimePoint(0), TimePoint(100));
}

Instance ce_dic_theta() {
  return validate_instance(
      {
          make_agent(1, "e1", 1, 7, {"e2", "e1"}),
          make_agent(2, "e2", 2, 4, {"e1", "e2"}),
      },
      TimePoint(0), TimePoint(100));
}

Scheduling ce_dic_theta_scheduling() {
  return Scheduling::validated({{TimePoint(3), TimePoint(6)}});
}

std::vector<std::pair<std::string, std::string>> shipped_files() {
  return {
      {"fig1.json", serialize_instance(fig1())},
      {"fig2.json", serialize_instance(fig2())},
      {"fig3.json", serialize_instance(fig3())},
      {"fig5.json", serialize_instance(fig5())},
      {"fig5_scheduling.json", serialize_scheduling(fig5_scheduling())},
      {"ce_aic_sd.json", serialize_instance(ce_aic_sd())},
      {"ce_wic_safe.json", serialize_instance(ce_wic_safe())},
      {"ce_aic_gamma.json", serialize_instance(ce_aic_gamma())},
      {"ce_dic_theta.json", serialize_instance(ce_dic_theta())},
      {"ce_dic_theta_scheduling.json", serialize_scheduling(ce_dic_theta_scheduling())},
  };
}

}  // namespace fixtures

}  // namespace ohm
