#include "pmcp/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmcp/automata.hpp"
#include "pmcp/errors.hpp"
#include "pmcp/estimate.hpp"
#include "pmcp/explore.hpp"
#include "pmcp/measure.hpp"
#include "pmcp/model_io.hpp"

namespace pmcp::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Report {
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json results = ordered_json::object();
  std::vector<std::string> warnings;
  std::optional<double> timing_ms;

  void add_rational(const char* key, const Rat& value) {
    results[key] = rat_to_string(value);
    results[std::string(key) + "_decimal"] = rat_to_decimal(value);
  }

  ordered_json to_json() const {
    ordered_json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["results"] = results;
    doc["warnings"] = warnings;
    if (timing_ms) doc["timing_ms"] = *timing_ms;
    return doc;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    for (const auto& [key, value] : inputs.items())
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    for (const auto& [key, value] : results.items()) {
      if (key.ends_with("_decimal")) continue;
      out << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump());
      std::string decimal_key = key + "_decimal";
      if (results.contains(decimal_key)) out << " (" << results[decimal_key].get<std::string>() << ")";
      out << "\n";
    }
    for (const auto& warning : warnings) out << "warning: " << warning << "\n";
    if (timing_ms) out << "time_ms: " << *timing_ms << "\n";
    return out.str();
  }
};

ordered_json witness_json(const LassoWitness& witness) {
  ordered_json doc;
  doc["stem"] = witness.stem;
  doc["cycle"] = witness.cycle;
  return doc;
}

Pts load_valid_model(const std::string& path) {
  Pts model = load_model(path);
  std::vector<std::string> violations = validate(model);
  if (!violations.empty()) {
    std::string what = path + ": model does not validate:";
    for (const auto& v : violations) what += "\n  " + v;
    throw Error(what);
  }
  return model;
}

Search load_checked_search(const std::string& path, const Pts& model) {
  Search search = load_search(path);
  require_valid_search(model, search);
  return search;
}

FormulaPtr parse_positive_formula(const std::string& text, const Pts& model, Report& report) {
  FormulaPtr f = parse_formula(text);
  if (!is_positive(f))
    throw Error("formula \"" + text + "\" is not negation-free; progress is defined for the positive fragment only");
  for (const auto& atom : atoms_of(f))
    if (!model.ap.count(atom))
      report.warnings.push_back("atom \"" + atom + "\" is not in the model's AP set; it holds nowhere");
  return f;
}

std::vector<std::size_t> parse_budgets(const std::string& text) {
  std::vector<std::size_t> budgets;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad budget list \"" + text + "\" (expected comma-separated nonnegative integers)");
    budgets.push_back(std::stoull(item));
  }
  if (budgets.empty()) throw Error("empty budget list");
  return budgets;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"progress measures for partially explored probabilistic transition systems"};
  app.require_subcommand(1);

  bool json_mode = false;
  bool with_timing = false;
  app.add_flag("--json", json_mode, "emit the report as JSON");
  app.add_flag("--timing", with_timing, "include wall-clock timing in the report");

  std::string model_path, search_path, formula_text, method = "both", strategy_name,
              budgets_text, csv_path, delta_text = "1/100";
  std::uint64_t samples = 0, seed = 0;
  std::uint32_t horizon = 0;
  bool complete_final_states = false;

  CLI::App* cmd_validate = app.add_subcommand("validate", "check model well-formedness");
  cmd_validate->add_option("model", model_path)->required();
  cmd_validate->add_flag("--complete-final-states", complete_final_states,
                         "add probability-1 self-loops to states without outgoing transitions");

  CLI::App* cmd_progress = app.add_subcommand("progress", "progress of a search toward a formula");
  cmd_progress->add_option("model", model_path)->required();
  cmd_progress->add_option("search", search_path)->required();
  cmd_progress->add_option("--formula", formula_text)->required();
  cmd_progress->add_option("--method", method)->check(CLI::IsMember({"exact", "bound", "both"}));

  CLI::App* cmd_violation = app.add_subcommand("violation", "has the search found a violation?");
  cmd_violation->add_option("model", model_path)->required();
  cmd_violation->add_option("search", search_path)->required();
  cmd_violation->add_option("--formula", formula_text)->required();

  CLI::App* cmd_explore = app.add_subcommand("explore", "progress curve along an exploration strategy");
  cmd_explore->add_option("model", model_path)->required();
  cmd_explore->add_option("--formula", formula_text)->required();
  cmd_explore->add_option("--strategy", strategy_name)->required()
      ->check(CLI::IsMember({"bfs", "dfs", "greedy"}));
  cmd_explore->add_option("--budgets", budgets_text)->required();
  cmd_explore->add_option("--csv", csv_path);

  CLI::App* cmd_estimate = app.add_subcommand("estimate", "guaranteed-interval Monte Carlo cross-check");
  cmd_estimate->add_option("model", model_path)->required();
  cmd_estimate->add_option("search", search_path)->required();
  cmd_estimate->add_option("--formula", formula_text)->required();
  cmd_estimate->add_option("--samples", samples)->required();
  cmd_estimate->add_option("--horizon", horizon)->required();
  cmd_estimate->add_option("--seed", seed)->required();
  cmd_estimate->add_option("--delta", delta_text);

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv{"pmcprog"};
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    int code = app.exit(e, message, message);
    (code == 0 ? out : err) << message.str();
    return code == 0 ? kOk : kInputError;
  }

  Report report;
  int exit_code = kOk;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (cmd_validate->parsed()) {
      report.command = "validate";
      report.inputs["model"] = model_path;
      Pts model = load_model(model_path);
      if (complete_final_states) {
        report.inputs["complete_final_states"] = true;
        for (const auto& [id, labels] : model.states) {
          bool has_outgoing = false;
          for (const auto& [tid, t] : model.transitions)
            if (t.source == id) {
              has_outgoing = true;
              break;
            }
          if (!has_outgoing) {
            std::string tid = id + "__loop";
            if (model.transitions.count(tid))
              throw Error("cannot repair: generated id \"" + tid + "\" already exists");
            model.transitions[tid] = Transition{id, id, Rat(1)};
          }
        }
        report.results["repaired_model"] = ordered_json::parse(model_to_json(model));
      }
      std::vector<std::string> violations = validate(model);
      report.results["ok"] = violations.empty();
      report.results["violations"] = violations;
      if (!violations.empty()) exit_code = kInputError;
    } else if (cmd_progress->parsed()) {
      report.command = "progress";
      report.inputs["model"] = model_path;
      report.inputs["search"] = search_path;
      report.inputs["formula"] = formula_text;
      report.inputs["method"] = method;
      Pts model = load_valid_model(model_path);
      Search search = load_checked_search(search_path, model);
      FormulaPtr f = parse_positive_formula(formula_text, model, report);
      LassoWitness witness;
      if (has_found_violation(model, search, f, &witness)) {
        report.results["violation"] = true;
        report.results["witness"] = witness_json(witness);
        exit_code = kViolation;
      } else {
        report.results["violation"] = false;
        if (method == "exact" || method == "both")
          report.add_rational("exact", prog_exact_unchecked(model, search, f));
        if (method == "bound" || method == "both")
          report.add_rational("lower_bound", prog_lower_bound(model, search));
      }
    } else if (cmd_violation->parsed()) {
      report.command = "violation";
      report.inputs["model"] = model_path;
      report.inputs["search"] = search_path;
      report.inputs["formula"] = formula_text;
      Pts model = load_valid_model(model_path);
      Search search = load_checked_search(search_path, model);
      FormulaPtr f = parse_positive_formula(formula_text, model, report);
      LassoWitness witness;
      bool found = has_found_violation(model, search, f, &witness);
      report.results["violation"] = found;
      if (found) {
        report.results["witness"] = witness_json(witness);
        exit_code = kViolation;
      }
    } else if (cmd_explore->parsed()) {
      report.command = "explore";
      report.inputs["model"] = model_path;
      report.inputs["formula"] = formula_text;
      report.inputs["strategy"] = strategy_name;
      report.inputs["budgets"] = budgets_text;
      Pts model = load_valid_model(model_path);
      FormulaPtr f = parse_positive_formula(formula_text, model, report);
      std::vector<CurveRow> rows =
          progress_curve(model, f, strategy_from_string(strategy_name), parse_budgets(budgets_text));
      ordered_json rows_json = ordered_json::array();
      for (const auto& row : rows) {
        ordered_json r;
        r["budget"] = row.budget;
        r["search_size"] = row.search_size;
        r["lower_bound"] = rat_to_string(row.lower_bound);
        r["lower_bound_decimal"] = rat_to_decimal(row.lower_bound);
        if (row.exact) {
          r["exact"] = rat_to_string(*row.exact);
          r["exact_decimal"] = rat_to_decimal(*row.exact);
        } else {
          r["exact"] = "VIOLATION";
        }
        rows_json.push_back(std::move(r));
      }
      report.results["rows"] = std::move(rows_json);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw Error("cannot write \"" + csv_path + "\"");
        csv << curve_to_csv(rows);
        report.results["csv"] = csv_path;
      }
    } else if (cmd_estimate->parsed()) {
      report.command = "estimate";
      report.inputs["model"] = model_path;
      report.inputs["search"] = search_path;
      report.inputs["formula"] = formula_text;
      report.inputs["samples"] = samples;
      report.inputs["horizon"] = horizon;
      report.inputs["seed"] = seed;
      report.inputs["delta"] = delta_text;
      Pts model = load_valid_model(model_path);
      Search search = load_checked_search(search_path, model);
      FormulaPtr f = parse_positive_formula(formula_text, model, report);
      Chain chain = chain_of(build_minimal_extension(model, search).pts);
      IntervalEstimate est =
          interval_estimate(chain, f, samples, horizon, seed, rat_from_string(delta_text));
      report.results["n_samples"] = est.n_samples;
      report.results["n_definitely_sat"] = est.n_definitely_sat;
      report.results["n_definitely_unsat"] = est.n_definitely_unsat;
      report.results["n_unknown"] = est.n_unknown;
      report.add_rational("lo", est.lo);
      report.add_rational("hi", est.hi);
      report.results["confidence_delta"] = rat_to_string(est.confidence_delta);
      report.results["rng"] = est.rng_name;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (with_timing) {
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  out << (json_mode ? report.to_json().dump(2) + "\n" : report.to_text());
  return exit_code;
}

}  // namespace pmcp::cli
