// Batch front-end: present, solve, cohomology, classify, bend, check.
// Exit codes: 0 success / golden match, 1 failure or golden mismatch, 2 usage or config error.

#include "cdeform/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace cdeform;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> starts;
  std::optional<double> box;
  std::string format = "json";
  bool exact = false;
  bool numeric = false;
  bool timing = false;
  std::string output;
};

void add_knot_options(CLI::App* cmd, CommonArgs& args, bool solver_flags) {
  cmd->add_option("--config", args.config, "Knot config (JSON)")->required()->check(CLI::ExistingFile);
  if (!solver_flags) return;
  cmd->add_option("--seed", args.seed, "Override solver.seed");
  cmd->add_option("--starts", args.starts, "Override solver.starts")->check(CLI::PositiveNumber);
  cmd->add_option("--box", args.box, "Override solver.box (half-width of the start cube)")->check(CLI::PositiveNumber);
  auto* exact = cmd->add_flag("--exact", args.exact, "Certify configured exact points (default)");
  auto* numeric = cmd->add_flag("--numeric", args.numeric, "Run the multistart solver");
  exact->excludes(numeric);
}

KnotConfig load_config(const CommonArgs& args) {
  KnotConfig config = KnotConfig::load(args.config);
  if (args.seed) config.solver.seed = *args.seed;
  if (args.starts) config.solver.starts = *args.starts;
  if (args.box) config.solver.box = *args.box;
  return config;
}

PipelineOptions pipeline_options(const CommonArgs& args, bool cohomology) {
  PipelineOptions o;
  o.backend = args.numeric ? Backend::numeric : Backend::exact;
  o.cohomology = cohomology;
  o.timing = args.timing;
  return o;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kFailure;
  }
  out << text;
  return kOk;
}

Json classify_json(const KnotConfig& config, const RunReport& report) {
  const Presentation pres = two_bridge_presentation(config.p, config.q);
  const PolyTemplate tmpl = template_by_name(config.template_name);
  Json reps = Json::array();
  for (std::size_t i = 0; i < report.solutions.size(); ++i) {
    const auto& s = report.solutions[i];
    if (!s.exact) continue;
    const QRepresentation rep(tmpl.generators, tmpl.instantiate(*s.exact));
    std::optional<QuadricDomain> domain;
    try {
      domain.emplace(invariant_form(rep));
    } catch (const FormNotPreserved&) {
    }
    Json curves = Json::array();
    auto classify = [&](const std::string& name, const Word& w) {
      const QMatrix m = evaluate_word(w, rep);
      curves.push_back(Json{{"curve", name},
                            {"word", w.empty() ? std::string("1") : w.to_string(pres.generators)},
                            {"isometry", domain ? to_string(classify_isometry(m, *domain)) : std::string("undefined")},
                            {"so31_parabolic", is_so31_parabolic(m)}});
    };
    for (std::size_t g = 0; g < pres.generators.size(); ++g) classify(pres.generators[g], Word::generator(static_cast<int>(g)));
    for (const auto& c : config.curves) classify(c.name, parse_word(c.word, pres.generators));
    reps.push_back(Json{{"rep", "solution " + std::to_string(i)}, {"form_preserved", domain.has_value()}, {"curves", curves}});
  }
  return Json{{"schema", 1}, {"knot", config.name}, {"classifications", reps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective deformations of two-bridge knot and link groups"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string golden, t_override;

  auto* present = app.add_subcommand("present", "Print the two-bridge presentation and configured curves");
  add_knot_options(present, args, false);

  auto* solve = app.add_subcommand("solve", "Run the full pipeline and print the report");
  add_knot_options(solve, args, true);
  solve->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  solve->add_flag("--timing", args.timing, "Include wall-clock seconds (breaks byte-identical output)");
  solve->add_option("--output,-o", args.output, "Write to a file instead of stdout");

  auto* cohomology = app.add_subcommand("cohomology", "Cohomology dimensions and restriction ranks at each exact solution");
  add_knot_options(cohomology, args, true);

  auto* classify = app.add_subcommand("classify", "Isometry type of generators and configured curves");
  add_knot_options(classify, args, true);

  auto* bend_cmd = app.add_subcommand("bend", "Bend a representation along an amalgam or HNN splitting");
  bend_cmd->add_option("--config", args.config, "Bending config (JSON)")->required()->check(CLI::ExistingFile);
  bend_cmd->add_option("--t", t_override, "Bending parameter (rational p/q for exact output, or decimal)");

  auto* check = app.add_subcommand("check", "Compare the pipeline report against a golden file");
  add_knot_options(check, args, true);
  check->add_option("--golden", golden, "Golden report (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (present->parsed()) {
      std::cout << dump_json(presentation_json(load_config(args)));
      return kOk;
    }
    if (bend_cmd->parsed()) {
      const BendConfig config = BendConfig::load(args.config);
      std::cout << dump_json(run_bend(config, t_override.empty() ? config.t : t_override));
      return kOk;
    }

    const KnotConfig config = load_config(args);
    if (solve->parsed()) {
      const RunReport report = run_pipeline(config, pipeline_options(args, true));
      return write_output(emit(report, args.format == "csv" ? Format::csv : Format::json), args.output);
    }
    if (cohomology->parsed()) {
      const Json full = to_json(run_pipeline(config, pipeline_options(args, true)));
      std::cout << dump_json(Json{{"schema", 1}, {"knot", config.name}, {"cohomology", full.at("cohomology")}});
      return kOk;
    }
    if (classify->parsed()) {
      std::cout << dump_json(classify_json(config, run_pipeline(config, pipeline_options(args, false))));
      return kOk;
    }
    if (check->parsed()) {
      Json expected;
      {
        std::ifstream in(golden);
        try {
          expected = Json::parse(in);
        } catch (const Json::parse_error& e) {
          std::cerr << "error: golden file is not valid JSON: " << e.what() << '\n';
          return kUsage;
        }
      }
      std::vector<std::string> diffs;
      if (golden_matches(expected, to_json(run_pipeline(config, pipeline_options(args, true))), &diffs)) {
        std::cout << "match: " << golden << '\n';
        return kOk;
      }
      std::cout << "mismatch: " << golden << '\n';
      for (const auto& d : diffs) std::cout << "  " << d << '\n';
      return kFailure;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
