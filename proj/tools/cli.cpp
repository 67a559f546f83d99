#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "csf/axioms.hpp"
#include "csf/csf.hpp"
#include "csf/equilibrium.hpp"
#include "csf/falsifier.hpp"
#include "csf/report.hpp"
#include "csf/spec_file.hpp"

namespace csf::cli {

namespace {

struct Options {
  std::string spec_path;
  std::string axiom = "all";
  std::uint64_t seed = SamplingPlan{}.seed;
  std::size_t samples = SamplingPlan{}.samples;
  std::string subset;
  std::string profile;
  std::optional<double> lambda;
  std::string format = "text";
  std::string out_path;
  std::string expect;
  std::string backend;
  std::string b_grid = "0,0.1,0.2,0.3";
};

/// Bad flags or flag combinations; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// CSV rows plus the human-readable rendering of the same results.
struct Report {
  std::vector<ReportRow> rows;
  std::ostringstream text;
  int exit_code = 0;
};

struct Loaded {
  ContestSpecFile file;
  ImpactSpec spec;
};

Loaded load(const Options& o) {
  if (o.spec_path.empty()) throw UsageError("--spec is required");
  ContestSpecFile file = load_spec_file(o.spec_path);
  if (!o.backend.empty()) {
    auto b = parse_backend(o.backend);
    if (!b) throw UsageError("--backend must be float64 or rational");
    file.backend = *b;
  }
  ImpactSpec spec = file.build();
  return {std::move(file), std::move(spec)};
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
  }
  return out;
}

std::vector<Rational> exact_profile(const std::string& text) {
  std::vector<Rational> x;
  for (const auto& item : split(text)) {
    auto q = parse_rational(item);
    if (!q || *q < 0) throw CsfError(ErrorCode::InvalidProfile, "bad effort '" + item + "'");
    x.push_back(*q);
  }
  if (x.size() < 2) throw CsfError(ErrorCode::InvalidProfile, "a profile needs at least two efforts");
  return x;
}

std::vector<double> float_profile(const Options& o) {
  if (o.profile.empty()) throw UsageError("--profile is required");
  const EffortProfile x = parse_profile(o.profile);
  return {x.values().begin(), x.values().end()};
}

std::vector<double> number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split(text)) {
    auto q = parse_rational(item);
    if (!q) throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(to_double(*q));
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

Mask parse_subset(const std::string& text, std::size_t n) {
  if (text.empty()) return full_mask(n);
  std::size_t used = 0;
  unsigned long long m = 0;
  try {
    m = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("--subset must be an integer bitmask");
  return static_cast<Mask>(m);
}

std::string name_of(const ContestSpecFile& file, const std::string& stem, std::size_t i) {
  if (i < file.labels.size()) return stem + "_" + file.labels[i];
  return stem + "_" + std::to_string(i + 1);
}

std::string json_list(const std::vector<double>& x) { return nlohmann::json(x).dump(); }

SamplingPlan plan_from(const Options& o, Backend backend) {
  SamplingPlan plan;
  plan.seed = o.seed;
  plan.samples = o.samples;
  plan.backend = backend;
  plan.validate();
  return plan;
}

std::vector<AxiomId> axioms_from(const Options& o) {
  if (o.axiom == "all") return {kAllAxioms.begin(), kAllAxioms.end()};
  auto a = parse_axiom(o.axiom);
  if (!a) throw UsageError("unknown axiom '" + o.axiom + "'");
  return {*a};
}

void check_expect(const Options& o) {
  if (!o.expect.empty() && o.expect != "holds" && o.expect != "violated") {
    throw UsageError("--expect must be holds or violated");
  }
}

bool meets_expectation(const Options& o, bool violated) {
  if (o.expect == "holds") return !violated;
  if (o.expect == "violated") return violated;
  return true;
}

// ---------------------------------------------------------------- eval

template <class T>
std::vector<T> eval_probabilities(const ImpactSpec& spec, Mask m, const std::vector<T>& x) {
  return evaluate<T>(spec, m, std::span<const T>(x));
}

void cmd_eval(const Options& o, Report& r) {
  const Loaded l = load(o);
  if (o.profile.empty()) throw UsageError("--profile is required");
  const bool exact = l.file.backend == Backend::ExactRational;
  std::vector<std::string> values;
  std::vector<std::string> csv_values;
  std::vector<double> xd;
  if (exact) {
    const auto x = exact_profile(o.profile);
    for (const auto& q : x) xd.push_back(to_double(q));
    const Mask m = parse_subset(o.subset, x.size());
    const auto p = eval_probabilities<Rational>(l.spec, m, x);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!contains(m, i)) continue;
      values.push_back(format_rational(p[i]));
      csv_values.push_back(values.back());
    }
  } else {
    xd = float_profile(o);
    const Mask m = parse_subset(o.subset, xd.size());
    const auto p = eval_probabilities<double>(l.spec, m, xd);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!contains(m, i)) continue;
      values.push_back(format_short(p[i]));
      csv_values.push_back(format_shortest(p[i]));
    }
  }
  const Mask m = parse_subset(o.subset, xd.size());
  const std::string witness = nlohmann::json{{"x", xd}, {"subset", members(m)}}.dump();
  std::size_t k = 0;
  for (std::size_t i : members(m)) {
    r.rows.push_back({"eval", l.file.family, name_of(l.file, "p", i), "ok", witness, csv_values[k++], "", "", o.seed});
  }
  for (std::size_t k2 = 0; k2 < values.size(); ++k2) r.text << (k2 ? ", " : "") << values[k2];
  r.text << '\n';
}

// ---------------------------------------------------------------- check

void verdict_text(Report& r, const AxiomVerdict& v, Backend backend) {
  r.text << std::left << std::setw(5) << to_string(v.predicate) << std::setw(16) << to_string(v.status)
         << "evaluated=" << v.evaluated << " skipped=" << v.skipped;
  if (!v.note.empty()) r.text << "  (" << v.note << ")";
  r.text << '\n';
  if (v.witness) {
    const Outcome& w = v.witness->outcome;
    const bool exact = backend == Backend::ExactRational;
    r.text << "      witness " << witness_json(v.predicate, v.witness->sample) << '\n'
           << "      lhs=" << (exact ? w.lhs_text : format_short(w.lhs))
           << " rhs=" << (exact ? w.rhs_text : format_short(w.rhs)) << " gap=" << format_short(w.gap) << '\n';
  }
}

ReportRow verdict_row(const std::string& command, const Loaded& l, const AxiomVerdict& v, std::uint64_t seed) {
  ReportRow row{command, l.file.family, std::string(to_string(v.predicate)), std::string(to_string(v.status)),
                "", "", "", "", seed};
  if (v.witness) {
    row.witness = witness_json(v.predicate, v.witness->sample);
    row.lhs = v.witness->outcome.lhs_text;
    row.rhs = v.witness->outcome.rhs_text;
    row.gap = format_shortest(v.witness->outcome.gap);
  }
  return row;
}

void cmd_check(const Options& o, Report& r) {
  check_expect(o);
  const Loaded l = load(o);
  const SamplingPlan plan = plan_from(o, l.file.backend);
  bool all_met = true;
  for (AxiomId a : axioms_from(o)) {
    AxiomVerdict v;
    if (!o.profile.empty()) {
      const std::vector<double> x = float_profile(o);
      const std::vector<double> lambdas =
          o.lambda ? std::vector<double>{*o.lambda} : std::vector<double>{2.0, 0.5};
      v = check_at_profile(l.spec, predicate_of(a), x, lambdas, plan);
    } else {
      v = check_axiom(l.spec, a, plan);
    }
    all_met = meets_expectation(o, v.status == VerdictStatus::Violated) && all_met;
    r.rows.push_back(verdict_row("check", l, v, o.seed));
    verdict_text(r, v, l.file.backend);
  }
  if (!all_met) r.exit_code = 1;
}

// ---------------------------------------------------------------- falsify

void cmd_falsify(const Options& o, Report& r) {
  check_expect(o);
  const Loaded l = load(o);
  const SamplingPlan plan = plan_from(o, l.file.backend);
  bool all_met = true;
  for (AxiomId a : axioms_from(o)) {
    const auto ce = falsify(l.spec, a, plan);
    all_met = meets_expectation(o, ce.has_value()) && all_met;
    ReportRow row{"falsify", l.file.family, std::string(to_string(a)), ce ? "Counterexample" : "NoneFound",
                  "", "", "", "", o.seed};
    r.text << std::left << std::setw(5) << to_string(a) << (ce ? "Counterexample" : "NoneFound") << '\n';
    if (ce) {
      auto w = nlohmann::ordered_json::parse(witness_json(ce->predicate, ce->sample));
      w["shrunk"] = ce->shrunk;
      row.witness = w.dump();
      row.lhs = ce->outcome.lhs_text;
      row.rhs = ce->outcome.rhs_text;
      row.gap = format_shortest(ce->outcome.gap);
      const bool exact = ce->backend == Backend::ExactRational;
      r.text << "      witness " << row.witness << '\n'
             << "      lhs=" << (exact ? row.lhs : format_short(ce->outcome.lhs))
             << " rhs=" << (exact ? row.rhs : format_short(ce->outcome.rhs))
             << " gap=" << format_short(ce->outcome.gap) << '\n';
    }
    r.rows.push_back(std::move(row));
  }
  if (!all_met) r.exit_code = 1;
}

// ---------------------------------------------------------------- decompose

template <class T>
void decompose_rows(const Loaded& l, const std::vector<T>& x, const Options& o, Report& r) {
  const auto d = decompose_two_level<T>(l.spec, std::span<const T>(x));
  std::vector<double> xd;
  for (const T& v : x) xd.push_back(to_double(v));
  const std::string witness = nlohmann::json{{"x", xd}}.dump();
  auto text = [&](const T& v) {
    if constexpr (is_exact_v<T>) {
      return std::make_pair(format_rational(v), format_rational(v));
    } else {
      return std::make_pair(format_short(v), format_shortest(v));
    }
  };
  auto emit = [&](const std::string& metric, const T& v) {
    const auto [human, machine] = text(v);
    r.rows.push_back({"decompose", l.file.family, metric, "ok", witness, machine, "", "", o.seed});
    r.text << std::left << std::setw(10) << metric << human << '\n';
  };
  for (std::size_t i = 0; i < d.mu.size(); ++i) emit(name_of(l.file, "mu", i), d.mu[i]);
  emit("mu_null", d.mu_null);
  if (d.alpha) {
    for (std::size_t i = 0; i < d.alpha->size(); ++i) emit(name_of(l.file, "alpha", i), (*d.alpha)[i]);
  }
}

void cmd_decompose(const Options& o, Report& r) {
  const Loaded l = load(o);
  if (o.profile.empty()) throw UsageError("--profile is required");
  if (l.file.backend == Backend::ExactRational) {
    decompose_rows<Rational>(l, exact_profile(o.profile), o, r);
  } else {
    decompose_rows<double>(l, float_profile(o), o, r);
  }
}

// ---------------------------------------------------------------- equilibrium

std::size_t game_size(const Loaded& l) {
  if (!l.spec.size_generic()) return l.spec.size();
  if (!l.file.v.empty()) return l.file.v.size();
  return 2;
}

void equilibrium_rows(const std::string& command, const Loaded& l, const EquilibriumResult& e, const Options& o,
                      Report& r) {
  const std::string status(to_string(e.status));
  for (std::size_t i = 0; i < e.x_star.size(); ++i) {
    r.rows.push_back({command, l.file.family, name_of(l.file, "x", i), status, "", format_shortest(e.x_star[i]),
                      format_shortest(e.payoffs[i]), "", o.seed});
  }
  nlohmann::ordered_json info{{"iterations", e.iterations},
                              {"max_audit_gain", e.max_audit_gain},
                              {"existence_warning", e.existence_warning}};
  r.rows.push_back({command, l.file.family, "status", status, info.dump(), std::to_string(e.iterations),
                    format_shortest(e.max_audit_gain), "", o.seed});
  r.text << "status " << status << " after " << e.iterations << " iterations, max audit gain "
         << format_short(e.max_audit_gain) << '\n';
  for (std::size_t i = 0; i < e.x_star.size(); ++i) {
    r.text << "  " << std::left << std::setw(8) << name_of(l.file, "x", i) << format_short(e.x_star[i])
           << "  payoff " << format_short(e.payoffs[i]) << (e.boundary_flags[i] ? "  (corner)" : "") << '\n';
  }
  if (e.existence_warning) r.text << "  warning: r > 1, a pure-strategy equilibrium need not exist\n";
}

void cmd_equilibrium(const Options& o, Report& r) {
  const Loaded l = load(o);
  const std::size_t n = game_size(l);
  const ImpactSpec spec = l.spec.size_generic() ? l.spec.with_size(n) : l.spec;
  const ContestGame game(spec, l.file.valuations(n));
  const EquilibriumResult e = solve_nash(game);
  equilibrium_rows("equilibrium", l, e, o, r);
}

void cmd_sweep(const Options& o, Report& r) {
  const Loaded l = load(o);
  if (l.file.family != "symmetric_luck" && l.file.family != "ratio") {
    throw UsageError("sweep needs a symmetric_luck or ratio spec");
  }
  const std::size_t n = game_size(l);
  const double v = l.file.valuations(n).front();
  const auto table = comparative_static_b(n, l.spec.r(), v, number_list(o.b_grid, "--b-grid"));
  r.text << std::left << std::setw(10) << "b" << std::setw(14) << "total" << "status\n";
  for (const auto& row : table.rows) {
    const std::string status(to_string(row.result.status));
    r.rows.push_back({"sweep", l.file.family, "total_effort@b=" + format_shortest(row.b), status,
                      json_list(row.result.x_star), format_shortest(row.total), "", "", o.seed});
    r.text << std::setw(10) << format_short(row.b) << std::setw(14) << format_short(row.total) << status << '\n';
  }
  r.rows.push_back({"sweep", l.file.family, "monotone", table.monotone ? "true" : "false", "", "", "", "", o.seed});
  r.text << "monotone " << (table.monotone ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------- paper-examples

void cmd_examples(const Options& o, Report& r) {
  const PaperExamples ex = reproduce_paper_examples();
  for (const auto& c : ex.checks) {
    r.rows.push_back({"paper-examples", "luck_tullock", c.name, c.pass ? "PASS" : "FAIL",
                      R"({"x":[2,1,0],"i":0,"j":1,"lambda":2})", c.lhs, c.rhs, "", o.seed});
    r.text << std::left << std::setw(5) << c.name << c.lhs << " vs " << c.rhs << "  (expected " << c.expected_lhs
           << " vs " << c.expected_rhs << ")  " << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  r.text << (ex.pass ? "PASS" : "FAIL") << '\n';
  if (!ex.pass) r.exit_code = 1;
}

int exit_for(const CsfError& e) {
  switch (e.code()) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidProfile:
    case ErrorCode::InvalidSubset:
    case ErrorCode::BackendUnavailable:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contest success function laboratory", "csf_lab"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec_path, "Contest spec (JSON)");
    sub->add_option("--seed", o.seed, "Sampling seed");
    sub->add_option("--samples", o.samples, "Samples per axiom")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--out", o.out_path, "Write the report to this file");
    sub->add_option("--backend", o.backend, "Override the spec backend (float64|rational)");
  };
  auto profile = [&](CLI::App* sub) { sub->add_option("--profile", o.profile, "Efforts, e.g. 2,1,0"); };
  auto axiom = [&](CLI::App* sub) {
    sub->add_option("--axiom", o.axiom, "Axiom id or 'all'");
    sub->add_option("--expect", o.expect, "Assert holds|violated");
  };

  auto* eval = app.add_subcommand("eval", "Winning probabilities at a profile");
  common(eval);
  profile(eval);
  eval->add_option("--subset", o.subset, "Sub-contest bitmask (bit i = contestant i+1)");

  auto* check = app.add_subcommand("check", "Sample axioms");
  common(check);
  axiom(check);
  profile(check);
  check->add_option("--lambda", o.lambda, "Scale factor for checks at a fixed profile");

  auto* fals = app.add_subcommand("falsify", "Search for shrunk counterexamples");
  common(fals);
  axiom(fals);

  auto* decompose = app.add_subcommand("decompose", "Two-level decomposition at a profile");
  common(decompose);
  profile(decompose);

  auto* equilibrium = app.add_subcommand("equilibrium", "Pure-strategy Nash equilibrium");
  common(equilibrium);

  auto* sweep = app.add_subcommand("sweep", "Equilibrium effort across common head starts");
  common(sweep);
  sweep->add_option("--b-grid", o.b_grid, "Comma list of b values");

  auto* examples = app.add_subcommand("paper-examples", "Exact three-contestant worked example");
  common(examples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  Report r;
  try {
    if (eval->parsed()) cmd_eval(o, r);
    if (check->parsed()) cmd_check(o, r);
    if (fals->parsed()) cmd_falsify(o, r);
    if (decompose->parsed()) cmd_decompose(o, r);
    if (equilibrium->parsed()) cmd_equilibrium(o, r);
    if (sweep->parsed()) cmd_sweep(o, r);
    if (examples->parsed()) cmd_examples(o, r);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CsfError& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream rendered;
  if (o.format == "csv") {
    write_csv(rendered, r.rows);
  } else {
    rendered << r.text.str();
  }
  if (o.out_path.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << o.out_path << "'\n";
      return 2;
    }
    file << rendered.str();
  }
  return r.exit_code;
}

}  // namespace csf::cli
