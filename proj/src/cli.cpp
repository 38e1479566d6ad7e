#include "untangle/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "untangle/engine.hpp"
#include "untangle/generators.hpp"
#include "untangle/io.hpp"
#include "untangle/reductions.hpp"
#include "untangle/svg.hpp"

namespace untangle {

namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError(path + ": cannot write");
  file << text;
}

struct GenArgs {
  std::string kind = "random";
  std::size_t points = 0;
  std::uint64_t seed = 0;
  std::int64_t box = 1000;
  std::size_t interior = 0;
  std::string version = "MM";
  std::size_t g_edges = 0;
  std::uint32_t g_max_degree = 3;
  std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GenSpec spec;
  spec.kind = parse_gen_kind(a.kind);
  spec.n_points = a.points;
  spec.seed = a.seed;
  spec.box = a.box;
  spec.interior = a.interior;
  const auto generated = gen_points(spec);
  ConfigOptions options;
  options.g_edges = a.g_edges;
  options.g_max_degree = a.g_max_degree;
  Instance instance{gen_configuration(generated.points, parse_version(a.version), a.seed, options),
                    generated.convex_subset};
  emit(a.output, dump(instance_to_json(instance)), out);
  return kExitOk;
}

struct RunArgs {
  std::string instance;
  std::string strategy = "first-lex";
  std::string potential = "full";
  std::optional<std::size_t> max_steps;
  std::uint64_t seed = 0;
  std::string record;
  std::string csv;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  const Instance instance = read_instance(a.instance);
  const LineSet lines =
      line_set_for(instance.config.points(), parse_line_set_kind(a.potential), instance.convex_subset);
  Strategy strategy{parse_strategy(a.strategy), a.seed, std::nullopt};
  const SequenceRecord rec = run(instance.config, strategy, lines, a.max_steps);

  RecordFile file{rec, instance.convex_subset, a.strategy, a.seed};
  if (!a.record.empty()) emit(a.record, dump(record_to_json(file)), out);
  std::ostringstream csv;
  write_csv(rec, csv);
  emit(a.csv, csv.str(), out);
  return kExitOk;
}

struct ReduceArgs {
  std::string instance;
  std::string to;
  std::string with_sequence;
  std::string output;
  std::string record_out;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<RecordFile> source_record;
  Configuration source = [&] {
    if (!a.with_sequence.empty()) {
      source_record = read_record(a.with_sequence);
      return source_record->record.initial;
    }
    if (a.instance.empty()) throw CLI::ValidationError("reduce needs an instance or --with-sequence");
    return read_instance(a.instance).config;
  }();

  ReductionKind kind;
  Version needed;
  if (a.to == "mm") {
    kind = ReductionKind::GtoMM;
    needed = Version::G;
  } else if (a.to == "rb") {
    kind = ReductionKind::MMtoRB;
    needed = Version::MM;
  } else if (a.to == "tsp") {
    kind = ReductionKind::RBtoTSP;
    needed = Version::RB;
  } else {
    throw CLI::ValidationError("--to must be mm, rb or tsp");
  }
  // Matchings and tours are multigraphs; red-blue matchings are matchings.
  const bool embeddable = needed == Version::G || (needed == Version::MM && source.version() == Version::RB);
  if (source.version() != needed) {
    if (!embeddable) {
      err << "error: --to " << a.to << " needs a " << to_string(needed) << " source, got "
          << to_string(source.version()) << "\n";
      return kExitFailure;
    }
    source = source.with_version(needed);
  }

  const Reduction initial = build_reduction(kind, source, [&] {
    std::vector<Segment> distinct;
    for (const auto& [s, m] : source.edges()) distinct.push_back(s);
    return safe_epsilon(source.points(), distinct);
  }());

  std::optional<TransformedSequence> transformed;
  if (source_record) transformed = transform_sequence(initial, source_record->record.flips());
  const Reduction& r = transformed ? transformed->reduction : initial;

  emit(a.output, dump(instance_to_json(Instance{r.target, {}})), out);
  err << "reduction " << to_string(r.kind) << ": " << r.source.edge_count() << " -> " << r.target.edge_count()
      << " segments, epsilon " << format_coord(r.epsilon) << "\n";

  if (transformed) {
    const auto lines = build_line_set(r.target.points(), LineSetKind::Full);
    RecordFile file{record_sequence(r.target, transformed->flips, lines), {},
                    "reduced " + std::string(to_string(r.kind)), std::nullopt};
    if (!a.record_out.empty()) emit(a.record_out, dump(record_to_json(file)), out);
    err << "sequence: " << source_record->record.steps.size() << " -> " << transformed->flips.size() << " flips\n";
  }
  return kExitOk;
}

struct OracleArgs {
  std::string instance;
  std::string mode = "longest";
  std::size_t depth_cap = 64;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const Instance instance = read_instance(a.instance);
  if (a.mode == "longest") {
    const auto result = oracle_longest(instance.config, a.depth_cap);
    out << result.length << "\n";
    for (const auto& f : result.witness) out << f.to_string() << "\n";
  } else if (a.mode == "shortest") {
    out << oracle_shortest_untangle(instance.config) << "\n";
  } else {
    throw CLI::ValidationError("--mode must be longest or shortest");
  }
  return kExitOk;
}

struct AuditArgs {
  std::string record;
  std::vector<std::int64_t> thresholds;
};

int cmd_audit(const AuditArgs& a, std::ostream& out) {
  const RecordFile file = read_record(a.record);
  auto thresholds = a.thresholds;
  if (thresholds.empty()) thresholds.push_back(cube_root_ceil(file.record.initial.edge_count()));
  const auto report = audit(file.record, file.record.lines, thresholds);
  if (!report.ok) {
    out << "FAIL step " << *report.failed_step << ": " << report.message << "\n";
    return kExitFailure;
  }
  out << "PASS " << file.record.steps.size() << " steps, " << distinct_count(file.record) << " distinct flips\n";
  for (const auto& s : report.splits) {
    out << "k=" << s.k << " drop>=k: " << s.at_least << " drop<k: " << s.below << "\n";
  }
  return kExitOk;
}

struct RenderArgs {
  std::string input;
  std::optional<std::size_t> step;
  std::string output;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw FormatError(a.input + ": cannot open");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(a.input + ": malformed JSON: " + e.what());
  }
  if (j.is_object() && j.contains("steps")) {
    const auto file = record_from_json(j, a.input, std::filesystem::path(a.input).parent_path());
    const auto& rec = file.record;
    const std::size_t k = a.step.value_or(rec.steps.size());
    if (k > rec.steps.size()) throw CLI::ValidationError("--step beyond the record length");
    std::optional<Flip> highlight;
    if (k < rec.steps.size()) highlight = rec.steps[k].flip;
    emit(a.output, render_svg(rec.replay(k), highlight), out);
  } else {
    if (a.step) throw CLI::ValidationError("--step needs a record file");
    emit(a.output, render_svg(instance_from_json(j, a.input).config), out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flip sequences on crossing segment configurations", "untangle"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", gen.kind, "random | convex | nearconvex")->check(CLI::IsMember({"random", "convex", "nearconvex"}));
  gen_cmd->add_option("--points", gen.points, "Number of points")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--box", gen.box, "Coordinate range [0, box)");
  gen_cmd->add_option("--interior", gen.interior, "nearconvex: points inside the hull");
  gen_cmd->add_option("--version", gen.version, "MM | RB | TSP | G")->check(CLI::IsMember({"MM", "RB", "TSP", "G"}, CLI::ignore_case));
  gen_cmd->add_option("--g-edges", gen.g_edges, "G: number of segments (default: number of points)");
  gen_cmd->add_option("--g-max-degree", gen.g_max_degree, "G: degree bound, 0 for none");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Flip until crossing-free; write a record and per-step CSV");
  run_cmd->add_option("instance", run_args.instance, "Instance file")->required();
  run_cmd->add_option("--strategy", run_args.strategy)
      ->check(CLI::IsMember({"first-lex", "random", "greedy-max-new-crossings", "greedy-min-drop", "exhaustive"}));
  run_cmd->add_option("--potential", run_args.potential, "full | nearconvex")->check(CLI::IsMember({"full", "nearconvex"}));
  run_cmd->add_option("--max-steps", run_args.max_steps, "Step budget (default: termination certificate)");
  run_cmd->add_option("--seed", run_args.seed, "Seed for the random strategy");
  run_cmd->add_option("--record", run_args.record, "Record file to write");
  run_cmd->add_option("--csv", run_args.csv, "CSV file (default stdout)");

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Rebuild an instance in a stronger version");
  reduce_cmd->add_option("instance", reduce.instance, "Instance file (omit with --with-sequence)");
  reduce_cmd->add_option("--to", reduce.to, "mm | rb | tsp")->required()->check(CLI::IsMember({"mm", "rb", "tsp"}, CLI::ignore_case));
  reduce_cmd->add_option("--with-sequence", reduce.with_sequence, "Record whose flips are transformed too");
  reduce_cmd->add_option("-o,--output", reduce.output, "Reduced instance file (default stdout)");
  reduce_cmd->add_option("--record-out", reduce.record_out, "Transformed record file");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive longest / shortest flip sequences (tiny instances)");
  oracle_cmd->add_option("instance", oracle.instance, "Instance file")->required();
  oracle_cmd->add_option("--mode", oracle.mode, "longest | shortest")->check(CLI::IsMember({"longest", "shortest"}));
  oracle_cmd->add_option("--depth-cap", oracle.depth_cap, "Recursion limit for the longest search");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Replay and verify a record file");
  audit_cmd->add_option("record", audit_args.record, "Record file")->required();
  audit_cmd->add_option("--k", audit_args.thresholds, "Drop thresholds (default ceil(n^(1/3)))");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "SVG of an instance or a record step");
  render_cmd->add_option("input", render.input, "Instance or record file")->required();
  render_cmd->add_option("--step", render.step, "Record: state after this many steps, next flip highlighted");
  render_cmd->add_option("-o,--output", render.output, "SVG file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*run_cmd) return cmd_run(run_args, out);
    if (*reduce_cmd) return cmd_reduce(reduce, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle, out);
    if (*audit_cmd) return cmd_audit(audit_args, out);
    if (*render_cmd) return cmd_render(render, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace untangle
