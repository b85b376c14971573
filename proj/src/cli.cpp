#include "localprod/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "localprod/error.hpp"
#include "localprod/falsify.hpp"
#include "localprod/local_product.hpp"
#include "localprod/selftest.hpp"
#include "localprod/serialize.hpp"
#include "localprod/theorems.hpp"

namespace localprod {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFiniteIntegrand:
    case ErrorKind::Overflow:
      return kExitNumericalFailure;
    default:
      return kExitInputError;
  }
}

void write_error(std::ostream& err, std::string_view kind, std::string_view message) {
  Json j;
  j["type"] = "error";
  j["kind"] = kind;
  j["message"] = message;
  err << dump_line(j) << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ValidationError, "cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ValidationError, "\"" + path + "\" is not valid JSON: " + e.what());
  }
}

Json value_json(const LocalProductValue& v) {
  Json j;
  j["re"] = v.value.real();
  j["im"] = v.value.imag();
  j["error_estimate"] = v.error_estimate;
  j["budget_exceeded"] = v.budget_exceeded;
  return j;
}

int cmd_eval(const std::string& instance_path, const std::string& path, std::ostream& out) {
  const InstanceDocument doc = parse_instance_document(read_json_file(instance_path));
  if (doc.s) throw Error(ErrorKind::ValidationError, "field \"s\": eval takes k, not s");
  const LocalProductInstance inst = local_product_instance_of(doc);
  const QuadratureConfig cfg = quadrature_of(doc);

  Json j;
  j["path"] = path;
  bool budget_exceeded = false;
  if (path == "both") {
    const LocalProductValue direct = local_product_direct(inst, cfg);
    const LocalProductValue closed = local_product_closed(inst, cfg);
    const double diff = std::abs(direct.value - closed.value);
    const double magnitude = std::abs(closed.value);
    j["direct"] = value_json(direct);
    j["closed"] = value_json(closed);
    j["discrepancy"] = magnitude > 0.0 ? diff / magnitude : diff;
    budget_exceeded = direct.budget_exceeded || closed.budget_exceeded;
  } else {
    const LocalProductValue v = path == "direct" ? local_product_direct(inst, cfg) : local_product_closed(inst, cfg);
    const Json fields = value_json(v);
    for (const auto& item : fields.items()) j[item.key()] = item.value();
    budget_exceeded = v.budget_exceeded;
  }
  out << dump_line(j) << '\n';
  return budget_exceeded ? kExitNumericalFailure : kExitOk;
}

int cmd_check(const std::string& theorem, const std::string& instance_path, bool allow_s_zero, std::ostream& out) {
  const TheoremId id = theorem_from_name(theorem);
  const InstanceDocument doc = parse_instance_document(read_json_file(instance_path));
  if (doc.k) throw Error(ErrorKind::ValidationError, "field \"k\": check takes s, not k");
  if (!doc.s) throw Error(ErrorKind::ValidationError, "field \"s\": is required for check");
  if (doc.sheet) throw Error(ErrorKind::ValidationError, "field \"sheet\": not used by check");
  if (doc.pairing != "dot") throw Error(ErrorKind::ValidationError, "field \"pairing\": the theorems use the dot product");
  const int min_s = allow_s_zero ? 0 : 1;
  if (*doc.s < min_s)
    throw Error(ErrorKind::ValidationError, "field \"s\": s must be >= " + std::to_string(min_s));

  const TheoremReport report = theorem_report(id, RealVector(doc.a), RealVector(doc.b), *doc.s, quadrature_of(doc),
                                              TheoremOptions{.allow_s_zero = allow_s_zero});
  Json j = to_json(report);
  if (allow_s_zero && report.s == 0) j["exploratory"] = true;
  out << dump_line(j) << '\n';
  if (report.verdict == Verdict::Violated) return kExitViolations;
  if (report.verdict == Verdict::Inconclusive && report.budget_exceeded) return kExitNumericalFailure;
  return kExitOk;
}

int cmd_hunt(const std::optional<std::string>& theorem, const std::string& config_path, const std::string& out_path,
             const std::optional<std::uint64_t>& seed, unsigned workers, std::ostream& out, std::ostream& err) {
  const Json config = read_json_file(config_path);
  std::optional<QuadratureConfig> quadrature;
  SearchConfig sc = parse_search_config(config, &quadrature);
  if (theorem) {
    sc.theorem = theorem_from_name(*theorem);
  } else if (!config.contains("theorem")) {
    throw Error(ErrorKind::ValidationError, "field \"theorem\": required via --theorem or the config file");
  }
  if (seed) sc.seed = *seed;
  sc.validate();
  const QuadratureConfig cfg = quadrature ? *quadrature : QuadratureConfig::defaults_for(static_cast<std::size_t>(sc.n_range.hi));
  cfg.validate(static_cast<std::size_t>(sc.n_range.hi));

  std::ofstream records(out_path, std::ios::binary | std::ios::trunc);
  if (!records) throw Error(ErrorKind::ValidationError, "cannot write \"" + out_path + "\"");
  HuntOptions opts;
  opts.workers = workers;
  opts.on_record = [&records](const ViolationRecord& r) { records << dump_line(to_json(r)) << '\n' << std::flush; };
  const HuntResult result = hunt(sc, cfg, opts);

  for (const SampleError& e : result.errors) {
    Json j;
    j["type"] = "sample_error";
    j["sample_index"] = e.sample_index;
    j["message"] = e.message;
    err << dump_line(j) << '\n';
  }
  out << dump_line(to_json(result.summary)) << '\n';
  return result.summary.violations > 0 ? kExitViolations : kExitOk;
}

int cmd_props(const std::string& suite, std::int64_t trials, std::uint64_t seed, std::ostream& out) {
  if (trials < 0) throw Error(ErrorKind::ValidationError, "--trials must be >= 0");
  const QuadratureConfig cfg;
  SuiteOutcome o;
  if (suite == "swap") {
    o = run_swap_suite(trials, seed, cfg);
  } else {
    o = run_modulus_suite(trials, seed, cfg);
  }
  Json j;
  j["type"] = "props_summary";
  j["suite"] = suite;
  j["trials"] = o.trials;
  j["passed"] = o.passed;
  j["failed"] = o.failed;
  j["errors"] = o.errors;
  j["worst"] = o.worst;
  j["seed"] = seed;
  out << dump_line(j) << '\n';
  if (o.failed > 0) return kExitViolations;
  return o.errors > 0 ? kExitNumericalFailure : kExitOk;
}

int cmd_selftest(const std::optional<std::string>& log_path, unsigned workers, std::ostream& out) {
  SelftestOptions opts;
  opts.workers = workers;
  opts.on_result = [&out](const CriterionResult& r) { out << format_result_line(r) << '\n' << std::flush; };
  const std::vector<CriterionResult> results = run_selftest(opts);
  if (log_path) {
    std::ofstream log(*log_path, std::ios::binary | std::ios::trunc);
    if (!log) throw Error(ErrorKind::ValidationError, "cannot write \"" + *log_path + "\"");
    log << selftest_log(results);
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
  out << (all ? "selftest: all criteria passed" : "selftest: FAILED") << '\n';
  return all ? kExitOk : kExitViolations;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local products over sheet functions and numerical checks of two box-integral inequalities",
               "localprod"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string eval_path = "direct";
  auto* eval = app.add_subcommand("eval", "Evaluate G^k_f(a;b) for an instance file");
  eval->add_option("--instance", instance_path, "Instance JSON file")->required();
  eval->add_option("--path", eval_path, "direct | closed | both")->check(CLI::IsMember({"direct", "closed", "both"}));

  std::string theorem;
  bool allow_s_zero = false;
  auto* check = app.add_subcommand("check", "Check one theorem instance");
  check->add_option("--theorem", theorem, "app2 | app3")->required()->check(CLI::IsMember({"app2", "app3"}));
  check->add_option("--instance", instance_path, "Instance JSON file")->required();
  check->add_flag("--allow-s-zero", allow_s_zero, "Accept s = 0 (outside the natural numbers)");

  std::optional<std::string> hunt_theorem;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  auto* hunt_cmd = app.add_subcommand("hunt", "Random search for theorem violations");
  hunt_cmd->add_option("--theorem", hunt_theorem, "app2 | app3 (overrides the config file)")
      ->check(CLI::IsMember({"app2", "app3"}));
  hunt_cmd->add_option("--config", config_path, "Search configuration JSON file")->required();
  hunt_cmd->add_option("--out", out_path, "Output JSONL file for violation records")->required();
  hunt_cmd->add_option("--seed", seed, "Seed (overrides the config file)");
  hunt_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  std::string suite;
  std::int64_t trials = 100;
  std::uint64_t props_seed = kDefaultSeed;
  auto* props = app.add_subcommand("props", "Run the proposition suites");
  props->add_option("--suite", suite, "swap | modulus")->required()->check(CLI::IsMember({"swap", "modulus"}));
  props->add_option("--trials", trials, "Number of seeded instances");
  props->add_option("--seed", props_seed, "Seed");

  std::optional<std::string> log_path;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--log", log_path, "Write the JSONL criterion log here");
  selftest->add_option("--workers", workers, "Worker threads for the hunts");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return kExitInputError;
  }

  try {
    if (*eval) return cmd_eval(instance_path, eval_path, out);
    if (*check) return cmd_check(theorem, instance_path, allow_s_zero, out);
    if (*hunt_cmd) return cmd_hunt(hunt_theorem, config_path, out_path, seed, workers, out, err);
    if (*props) return cmd_props(suite, trials, props_seed, out);
    if (*selftest) return cmd_selftest(log_path, workers, out);
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
    return kExitNumericalFailure;
  }
  return kExitInputError;
}

}  // namespace localprod
