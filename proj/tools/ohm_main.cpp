#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ohm/errors.hpp"
#include "ohm/generate.hpp"
#include "ohm/instance_io.hpp"
#include "ohm/orderings.hpp"
#include "ohm/partitions.hpp"
#include "ohm/serial_dictatorship.hpp"
#include "ohm/sweep.hpp"
#include "ohm/trading_cycles.hpp"
#include "ohm/verification.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violated = 1;
constexpr int exit_usage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ohm::Error(ohm::Errc::syntax, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ohm::Error(ohm::Errc::syntax, "cannot write " + path);
  out << content;
}

ohm::TimePoint parse_time_arg(const std::string& text) {
  const auto t = ohm::TimePoint::parse(text);
  if (!t) throw ohm::Error(ohm::Errc::syntax, "cannot read time \"" + text + "\"");
  return *t;
}

// ------------------------------------------------------------ mechanism flags

struct MechanismChoice {
  std::string mechanism;
  std::string ordering;
  std::string partition;
  std::string scheduling_path;
  std::string tau;
};

void add_mechanism_flags(CLI::App* cmd, MechanismChoice& mc) {
  cmd->add_option("--mechanism", mc.mechanism, "static-sd | dynamic-sd | safe-sd | online-ttc")
      ->required()
      ->check(CLI::IsMember({"static-sd", "dynamic-sd", "safe-sd", "online-ttc"}));
  cmd->add_option("--ordering", mc.ordering, "delta | alpha | desc-arrival (sd mechanisms)")
      ->check(CLI::IsMember({"delta", "alpha", "desc-arrival"}));
  cmd->add_option("--partition", mc.partition, "gamma | theta | zeta (online-ttc)")
      ->check(CLI::IsMember({"gamma", "theta", "zeta"}));
  cmd->add_option("--scheduling", mc.scheduling_path, "scheduling slots file (theta)");
  cmd->add_option("--tau", mc.tau, "threshold time (zeta)");
}

// auto_params lets sweep mode derive theta/zeta inputs per instance.
void validate_choice(const MechanismChoice& mc, bool auto_params) {
  const bool sd = mc.mechanism != "online-ttc";
  if (sd) {
    if (mc.ordering.empty())
      throw ohm::Error(ohm::Errc::syntax, "--ordering is required for sd mechanisms");
    if (!mc.partition.empty())
      throw ohm::Error(ohm::Errc::syntax, "--partition only applies to online-ttc");
  } else {
    if (mc.partition.empty())
      throw ohm::Error(ohm::Errc::syntax, "--partition is required for online-ttc");
    if (!mc.ordering.empty())
      throw ohm::Error(ohm::Errc::syntax, "--ordering only applies to sd mechanisms");
  }
  if (!mc.scheduling_path.empty() && mc.partition != "theta")
    throw ohm::Error(ohm::Errc::syntax, "--scheduling only applies to theta");
  if (!mc.tau.empty() && mc.partition != "zeta")
    throw ohm::Error(ohm::Errc::syntax, "--tau only applies to zeta");
  if (!auto_params && mc.partition == "theta" && mc.scheduling_path.empty())
    throw ohm::Error(ohm::Errc::syntax, "theta needs --scheduling");
  if (!auto_params && mc.partition == "zeta" && mc.tau.empty())
    throw ohm::Error(ohm::Errc::syntax, "zeta needs --tau");
}

ohm::OrderingRule ordering_rule(const std::string& name) {
  if (name == "delta") return ohm::ascending_departure_rule();
  if (name == "alpha") return ohm::ascending_arrival_rule();
  return ohm::descending_arrival_rule();
}

// In sweep mode a missing scheduling or tau falls back to the canonical
// per-instance derivation.
ohm::PartitionRule partition_rule(const MechanismChoice& mc, const ohm::Instance& inst) {
  if (mc.partition == "gamma") return ohm::gamma_rule();
  if (mc.partition == "theta") {
    return ohm::theta_rule(mc.scheduling_path.empty()
                               ? ohm::split_scheduling(inst)
                               : ohm::parse_scheduling(read_file(mc.scheduling_path)));
  }
  return ohm::zeta_rule(mc.tau.empty() ? ohm::late_threshold(inst)
                                       : ohm::Threshold{parse_time_arg(mc.tau)});
}

ohm::Mechanism build_mechanism(const MechanismChoice& mc, const ohm::Instance& inst) {
  if (mc.mechanism == "static-sd") return ohm::make_static_sd(ordering_rule(mc.ordering));
  if (mc.mechanism == "dynamic-sd") return ohm::make_dynamic_sd(ordering_rule(mc.ordering));
  if (mc.mechanism == "safe-sd") return ohm::make_safe_sd(ordering_rule(mc.ordering));
  return ohm::make_online_ttc(partition_rule(mc, inst));
}

struct RunOutput {
  ohm::Allocation allocation;
  ohm::ExecutionTrace trace;
};

RunOutput run_traced(const MechanismChoice& mc, const ohm::Instance& inst) {
  if (mc.mechanism == "static-sd") {
    auto out = ohm::run_static_sd(inst, ordering_rule(mc.ordering));
    return {std::move(out.allocation), std::move(out.trace)};
  }
  if (mc.mechanism == "dynamic-sd") {
    auto out = ohm::run_dynamic_sd(inst, ordering_rule(mc.ordering));
    return {std::move(out.allocation), std::move(out.trace)};
  }
  if (mc.mechanism == "safe-sd") {
    auto out = ohm::run_safe_sd(inst, ordering_rule(mc.ordering));
    return {std::move(out.allocation), std::move(out.trace)};
  }
  auto out = ohm::run_online_ttc(inst, partition_rule(mc, inst));
  return {std::move(out.allocation), std::move(out.trace)};
}

// ---------------------------------------------------------------- subcommands

int cmd_run(const MechanismChoice& mc, const std::string& instance_path, bool with_trace,
            const std::string& format) {
  validate_choice(mc, false);
  const ohm::Instance inst = ohm::parse_instance(read_file(instance_path));
  const RunOutput out = run_traced(mc, inst);
  if (format == "json") {
    ohm::ordered_json doc;
    doc["allocation"] = ohm::allocation_to_json(inst, out.allocation);
    if (with_trace) doc["trace"] = ohm::trace_to_json(out.trace);
    std::cout << doc.dump(2) << "\n";
  } else {
    if (with_trace) std::cout << ohm::trace_to_text(out.trace);
    std::cout << ohm::allocation_to_text(inst, out.allocation) << "\n";
  }
  return exit_ok;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string property_label(const std::string& prop) {
  if (prop == "ir") return "IR";
  if (prop == "mpo" || prop == "m-po") return "M-PO";
  if (prop == "spo" || prop == "s-po") return "S-PO";
  if (prop == "safe") return "safe";
  if (prop == "online") return "online";
  if (prop == "wic") return "WIC";
  if (prop == "a-ic") return "a-IC";
  if (prop == "d-ic") return "d-IC";
  if (prop == "sic") return "SIC";
  throw ohm::Error(ohm::Errc::syntax, "unknown property \"" + prop + "\"");
}

ohm::PropertyReport evaluate_property(const std::string& prop, const ohm::Mechanism& mech,
                                      const ohm::Instance& inst) {
  if (prop == "ir") return ohm::is_ir(mech.run(inst), inst);
  if (prop == "mpo" || prop == "m-po") return ohm::is_mpo(mech.run(inst), inst);
  if (prop == "spo" || prop == "s-po") return ohm::is_spo(mech.run(inst), inst);
  if (prop == "safe") return ohm::is_safe_allocation(mech.run(inst), inst);
  if (prop == "online") return ohm::check_online(mech, inst);
  if (prop == "wic") return ohm::find_manipulation(mech, inst, ohm::Notion::wic);
  if (prop == "a-ic") return ohm::find_manipulation(mech, inst, ohm::Notion::a_ic);
  if (prop == "d-ic") return ohm::find_manipulation(mech, inst, ohm::Notion::d_ic);
  return ohm::find_manipulation(mech, inst, ohm::Notion::sic);
}

int parse_sweep_arg(const std::string& arg) {
  if (arg.rfind("n=", 0) != 0)
    throw ohm::Error(ohm::Errc::syntax, "--sweep expects n=<count>");
  int n = 0;
  try {
    n = std::stoi(arg.substr(2));
  } catch (const std::exception&) {
    throw ohm::Error(ohm::Errc::syntax, "--sweep expects n=<count>");
  }
  if (n < 1) throw ohm::Error(ohm::Errc::syntax, "sweep needs n >= 1");
  if (n > 3)
    throw ohm::Error(ohm::Errc::too_large, "exhaustive sweep is limited to n <= 3");
  return n;
}

int cmd_verify(const MechanismChoice& mc, const std::string& instance_path,
               const std::string& sweep_arg, const std::string& property_csv) {
  const std::vector<std::string> props = split_csv(property_csv);
  if (props.empty()) throw ohm::Error(ohm::Errc::syntax, "--property needs at least one name");
  for (const auto& prop : props) property_label(prop);
  if (instance_path.empty() == sweep_arg.empty())
    throw ohm::Error(ohm::Errc::syntax, "pass exactly one of --instance and --sweep");
  validate_choice(mc, !sweep_arg.empty());

  bool violated = false;
  bool too_large = false;
  const auto emit = [&](const ohm::Instance& inst, int index) {
    const ohm::Mechanism mech = build_mechanism(mc, inst);
    for (const auto& prop : props) {
      ohm::ordered_json doc;
      if (index >= 0) doc["instance"] = index;
      try {
        const ohm::PropertyReport report = evaluate_property(prop, mech, inst);
        const ohm::ordered_json fields = ohm::report_to_json(report, inst);
        for (const auto& [key, value] : fields.items()) {
          doc[key] = value;
        }
        if (!report.holds) violated = true;
      } catch (const ohm::Error& err) {
        if (err.code() != ohm::Errc::too_large) throw;
        doc["property"] = property_label(prop);
        doc["verdict"] = "error";
        doc["error"] = "TooLarge";
        too_large = true;
      }
      std::cout << doc.dump() << "\n";
    }
  };

  if (!instance_path.empty()) {
    emit(ohm::parse_instance(read_file(instance_path)), -1);
  } else {
    int index = 0;
    ohm::for_each_sweep_instance(parse_sweep_arg(sweep_arg),
                                 [&](const ohm::Instance& inst) { emit(inst, index++); });
  }
  if (too_large) return exit_usage;
  return violated ? exit_violated : exit_ok;
}

int cmd_gen(int n, std::uint64_t seed, const std::string& profile, const std::string& out_path) {
  const ohm::GenConfig cfg{n, seed,
                           profile == "sparse" ? ohm::Overlap::sparse : ohm::Overlap::dense};
  const std::string text = ohm::serialize_instance(ohm::generate_instance(cfg));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return exit_ok;
}

int cmd_fixtures(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, content] : ohm::fixtures::shipped_files()) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    write_file(path.string(), content);
    std::cout << path.string() << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exchange mechanisms and property checks for timed one-item markets"};
  app.require_subcommand(1);

  MechanismChoice run_mc;
  std::string run_instance;
  bool run_trace = false;
  std::string run_format = "text";
  CLI::App* run_cmd = app.add_subcommand("run", "run a mechanism on one instance");
  add_mechanism_flags(run_cmd, run_mc);
  run_cmd->add_option("--instance", run_instance, "instance file")->required();
  run_cmd->add_flag("--trace", run_trace, "print the phase-by-phase trace");
  run_cmd->add_option("--format", run_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  MechanismChoice verify_mc;
  std::string verify_instance;
  std::string verify_sweep;
  std::string verify_props;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check properties of a mechanism");
  add_mechanism_flags(verify_cmd, verify_mc);
  verify_cmd->add_option("--instance", verify_instance, "instance file");
  verify_cmd->add_option("--sweep", verify_sweep, "exhaustive canonical sweep, e.g. n=3");
  verify_cmd->add_option("--property", verify_props,
                         "comma list: ir,mpo,spo,safe,online,wic,a-ic,d-ic,sic")
      ->required();

  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_profile = "dense";
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  gen_cmd->add_option("--n", gen_n, "agent count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_cmd->add_option("--profile", gen_profile, "dense | sparse")
      ->check(CLI::IsMember({"dense", "sparse"}));
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::string fixtures_dir = ".";
  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "write the shipped fixture files");
  fixtures_cmd->add_option("--out-dir", fixtures_dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_mc, run_instance, run_trace, run_format);
    if (verify_cmd->parsed())
      return cmd_verify(verify_mc, verify_instance, verify_sweep, verify_props);
    if (gen_cmd->parsed()) return cmd_gen(gen_n, gen_seed, gen_profile, gen_out);
    return cmd_fixtures(fixtures_dir);
  } catch (const ohm::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ohm::Errc::empty_choice_set:
      case ohm::Errc::not_prefix_stable:
      case ohm::Errc::not_progress_preserving:
      case ohm::Errc::not_compatible:
      case ohm::Errc::not_safe:
        return exit_violated;
      default:
        return exit_usage;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
}
