#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ohm/instance.hpp"
#include "ohm/partitions.hpp"
#include "ohm/trace.hpp"
#include "ohm/verification.hpp"

namespace ohm {

using ordered_json = nlohmann::ordered_json;

// Throws Error(SyntaxError) with field context on malformed input, and the
// validation errors of validate_instance on semantic problems.
Instance parse_instance(const std::string& text);

// Canonical bytes: fixed key order, 2-space indent, trailing newline.
// parse_instance(serialize_instance(I)) == I, and serialization is a fixed
// point on already canonical text.
std::string serialize_instance(const Instance& inst);

Scheduling parse_scheduling(const std::string& text);
std::string serialize_scheduling(const Scheduling& scheduling);

std::string allocation_to_text(const Instance& inst, const Allocation& alloc);
ordered_json allocation_to_json(const Instance& inst, const Allocation& alloc);

ordered_json trace_to_json(const ExecutionTrace& trace);

ordered_json report_to_json(const PropertyReport& report, const Instance& inst);

// Built-in example instances. shipped_files lists every fixture file the CLI
// emits as (name, canonical content) pairs.
namespace fixtures {

Instance fig1();
Instance fig2();
Instance fig3();
Instance fig5();
Scheduling fig5_scheduling();
TimePoint fig5_tau_prime();
Instance ce_aic_sd();
Instance ce_wic_safe();
Instance ce_aic_gamma();
Instance ce_dic_theta();
Scheduling ce_dic_theta_scheduling();

std::vector<std::pair<std::string, std::string>> shipped_files();

}  // namespace fixtures

}  // namespace ohm
