#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "actconv/dm.hpp"
#include "actconv/error.hpp"
#include "actconv/experiments.hpp"
#include "actconv/graphop.hpp"
#include "actconv/io.hpp"
#include "actconv/norms.hpp"
#include "actconv/oracles.hpp"
#include "actconv/profiles.hpp"
#include "json.hpp"
#include "opspec.hpp"

namespace {

using namespace actconv;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct Common {
  int k_max = 2;
  int budget = 16;
  std::uint64_t seed = 1;
  std::string mode = "paired";
  std::string out;
  std::string format;
  std::string config;
  std::vector<std::string> strategies;
  std::string norm = "euclidean";
};

void add_budget_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "test tuples per strategy and k")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--strategies", c.strategies, "uniform_box,rademacher,partition_indicators,...")->delimiter(',');
  cmd->add_option("--norm", c.norm, "point norm of profile measures")->check(CLI::IsMember({"euclidean", "chebyshev"}));
}

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

SamplingBudget make_budget(const Common& c) {
  SamplingBudget b;
  b.vectors_per_k = c.budget;
  b.seed = c.seed;
  b.norm = point_norm_from_string(c.norm);
  if (!c.strategies.empty()) {
    b.strategies.clear();
    for (const auto& s : c.strategies) b.strategies.push_back(strategy_from_string(s));
  }
  return b;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::invalid_argument("cannot write " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const auto v = std::stoull(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad size list: " + s);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int cmd_profile(const Common& c, const std::string& spec, int k, bool partition) {
  const auto op = cli::parse_operator(spec);
  const auto b = make_budget(c);
  const Profile p = partition ? sample_partition_profile(*op, k, b) : sample_profile(*op, k, b);
  if (c.format == "json") {
    emit(c, profile_to_json(p));
    return kOk;
  }
  std::ostringstream os;
  os << "# operator=" << p.operator_id << ",k=" << k << ",seed=" << b.seed << '\n';
  os << "measure,mass";
  const std::size_t dim = p.measures.dim();
  for (std::size_t d = 0; d < dim; ++d) os << ",x" << d + 1;
  os << '\n';
  for (std::size_t m = 0; m < p.measures.size(); ++m) {
    const auto& mu = p.measures[m];
    for (std::size_t i = 0; i < mu.size(); ++i) {
      os << m << ',' << fmt(mu.mass(i));
      for (double x : mu.point(i)) os << ',' << fmt(x);
      os << '\n';
    }
  }
  emit(c, os.str());
  return kOk;
}

int cmd_dist(const Common& c, const std::string& a_spec, const std::string& b_spec, int refine) {
  const auto a = cli::parse_operator(a_spec);
  const auto b = cli::parse_operator(b_spec);
  DmOptions opts;
  opts.refine_steps = refine;
  const auto e = dm_estimate(*a, *b, c.k_max, make_budget(c), dm_mode_from_string(c.mode), opts);
  if (c.format == "json") {
    emit(c, dm_to_json(e, c.seed));
  } else {
    std::ostringstream os;
    write_dm_csv(os, e, c.seed);
    emit(c, os.str());
  }
  return kOk;
}

ExperimentConfig build_config(const Common& c, CLI::App* cmd, const std::string& family, const std::string& sizes,
                              int refine, const std::string& base, int reps) {
  ExperimentConfig cfg;
  const bool from_file = !c.config.empty();
  if (from_file) cfg = config_from_json(read_text_file(c.config));
  // Without a config file every flag applies; with one, only flags given explicitly override it.
  auto given = [&](const char* flag) { return !from_file || cmd->count(flag) > 0; };
  if (!family.empty()) cfg.family = family_from_string(family);
  if (cmd->count("--sizes")) cfg.sizes = parse_sizes(sizes);
  if (given("--k-max")) cfg.k_max = c.k_max;
  if (given("--budget")) cfg.budget.vectors_per_k = c.budget;
  if (given("--seed")) cfg.budget.seed = c.seed;
  if (given("--strategies") || given("--norm")) {
    const auto b = make_budget(c);
    cfg.budget.strategies = b.strategies;
    cfg.budget.norm = b.norm;
  }
  if (cmd->get_option_no_throw("--refine") && given("--refine")) cfg.refine_steps = refine;
  if (cmd->get_option_no_throw("--base") && given("--base")) cfg.base_graph = base;
  if (cmd->get_option_no_throw("--reps") && given("--reps")) cfg.reps = reps;
  if (cmd->count("--out")) cfg.output_path = c.out;
  return cfg;
}

void emit_to(const ExperimentConfig& cfg, const Common& c, const std::string& text) {
  Common target = c;
  target.out = cfg.output_path;
  emit(target, text);
}

int cmd_curve(const Common& c, CLI::App* cmd, const std::string& family, const std::string& sizes, int refine,
              const std::string& base) {
  const auto cfg = build_config(c, cmd, family, sizes, refine, base, 0);
  if (cfg.family == Family::Rmt) throw std::invalid_argument("use the rmt subcommand for the rmt family");
  const auto res = run_curve(cfg);
  if (c.format == "json") {
    emit_to(cfg, c, curve_to_json(res));
  } else {
    std::ostringstream os;
    write_curve_csv(os, res);
    emit_to(cfg, c, os.str());
  }
  for (const auto& r : res.rows)
    if (!(r.estimate.value >= 0.0)) return kViolation;
  return kOk;
}

int cmd_rmt(const Common& c, CLI::App* cmd, const std::string& sizes, int reps) {
  const auto cfg = build_config(c, cmd, "rmt", sizes, 0, "K3", reps);
  const auto rep = run_rmt_concentration(cfg);
  if (c.format == "json") {
    emit_to(cfg, c, rmt_to_json(rep));
  } else {
    std::ostringstream os;
    write_rmt_csv(os, rep);
    emit_to(cfg, c, os.str());
  }
  for (const auto& row : rep.rows)
    if (!row.column_bound_holds) return kViolation;
  return kOk;
}

int cmd_props(const Common& c, const std::string& spec, double tol, const std::string& require, bool rep_csv) {
  const auto op = cli::parse_operator(spec);
  if (rep_csv) {
    std::ostringstream os;
    write_measure_rep_csv(os, measure_rep(*op));
    emit(c, os.str());
    return kOk;
  }
  const auto r = check_properties(*op, tol);
  json j = {{"operator", op->metadata()},
            {"self_adjoint", r.self_adjoint},
            {"self_adjoint_deviation", r.self_adjoint_deviation},
            {"positive", r.positive},
            {"min_quadratic_form", r.min_quadratic_form},
            {"positivity_preserving", r.positivity_preserving},
            {"regular_constant", r.regular_constant ? json(*r.regular_constant) : json(nullptr)},
            {"regularity_deviation", r.regularity_deviation},
            {"is_graphop", r.is_graphop},
            {"is_markov_graphop", r.is_markov_graphop}};
  if (r.witness) j["witness"] = *r.witness;
  if (c.format == "json") {
    emit(c, j.dump(2));
  } else {
    std::ostringstream os;
    os << "property,value\n";
    for (const auto& [key, value] : j.items())
      if (key != "witness") os << key << ',' << value.dump() << '\n';
    emit(c, os.str());
  }
  if (require == "graphop" && !r.is_graphop) return kViolation;
  if (require == "markov" && !r.is_markov_graphop) return kViolation;
  if (require == "self-adjoint" && !r.self_adjoint) return kViolation;
  return kOk;
}

int cmd_spectrum(const Common& c, const std::string& spec) {
  const auto op = cli::parse_operator(spec);
  const auto ev = self_adjoint_spectrum(*op);
  if (c.format == "json") {
    emit(c, json{{"operator", op->metadata()}, {"eigenvalues", ev}}.dump());
  } else {
    std::ostringstream os;
    os << "eigenvalue\n";
    for (double v : ev) os << fmt(v) << '\n';
    emit(c, os.str());
  }
  return kOk;
}

int cmd_quotient(const Common& c, const std::string& spec, int k) {
  const auto op = cli::parse_operator(spec);
  const auto qs = sample_quotients(*op, k, make_budget(c));
  const std::vector<double> one(op->size(), 1.0);
  const double total = bilinear_form(*op, one, one);
  double worst = 0.0;
  json mats = json::array();
  for (const auto& m : qs.matrices) {
    worst = std::max(worst, std::abs(m.sum() - total));
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::vector<double> row(m.cols());
      for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  if (c.format == "json") {
    emit(c, json{{"k", k}, {"seed", c.seed}, {"one_form", total}, {"max_sum_deviation", worst}, {"matrices", mats}}.dump());
  } else {
    std::ostringstream os;
    os << "# k=" << k << ",seed=" << c.seed << ",one_form=" << fmt(total) << ",max_sum_deviation=" << fmt(worst) << '\n';
    os << "matrix,i,j,value\n";
    for (std::size_t s = 0; s < qs.matrices.size(); ++s) {
      const auto& m = qs.matrices[s];
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << s << ',' << i << ',' << j << ',' << fmt(m(i, j)) << '\n';
    }
    emit(c, os.str());
  }
  return worst <= 1e-10 ? kOk : kViolation;
}

int cmd_stars(const Common& c, const std::string& source, int k, int d) {
  const Graph g = cli::parse_graph(source);
  const auto r = star_profile_bijection_check(g, k, d);
  const json j = {{"graph", g.name()},
                  {"k", k},
                  {"d", d},
                  {"colorings", r.colorings},
                  {"distinct", r.distinct},
                  {"per_coloring_equal", r.per_coloring_equal},
                  {"sets_equal", r.sets_equal}};
  if (c.format == "json") {
    emit(c, j.dump());
  } else {
    std::ostringstream os;
    os << "colorings,distinct,per_coloring_equal,sets_equal\n"
       << r.colorings << ',' << r.distinct << ',' << r.per_coloring_equal << ',' << r.sets_equal << '\n';
    emit(c, os.str());
  }
  return r.ok() ? kOk : kViolation;
}

int cmd_oracle(const Common& c, const std::string& lemma, int trials) {
  const auto r = verify_lemma(lemma, trials, c.seed);
  if (c.format == "json") {
    emit(c, lemma_report_to_json(r));
  } else {
    std::ostringstream os;
    os << "# seed=" << c.seed << "\nlemma,trials,violations,max_ratio\n"
       << r.lemma << ',' << r.trials << ',' << r.violations << ',' << fmt(r.max_ratio) << '\n';
    emit(c, os.str());
  }
  return r.violations == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"actconv: profiles and action-convergence distances of P-operators"};
  app.require_subcommand(1);
  Common c;

  std::string op_spec;
  std::string a_spec;
  std::string b_spec;
  std::string graph_src;
  std::string family;
  std::string sizes;
  std::string base = "K3";
  std::string require;
  std::string lemma;
  int k = 1;
  int star_k = 2;
  int d = 3;
  int refine = 0;
  int reps = 10;
  int trials = 200;
  double tol = 1e-9;
  bool partition = false;
  bool rep_csv = false;

  auto* profile = app.add_subcommand("profile", "sample a k-profile of an operator");
  profile->add_option("--op", op_spec, "operator spec REP[/SCALE]:SOURCE")->required();
  profile->add_option("--k", k, "tuple length")->check(CLI::Range(1, 16));
  profile->add_flag("--partition", partition, "only 0-1 partitions");
  add_budget_flags(profile, c);
  add_output_flags(profile, c);

  auto* dist = app.add_subcommand("dist", "estimate the truncated action-convergence distance");
  dist->add_option("--a", a_spec, "first operator spec")->required();
  dist->add_option("--b", b_spec, "second operator spec")->required();
  dist->add_option("--k-max", c.k_max, "largest profile level")->check(CLI::Range(1, 16));
  dist->add_option("--mode", c.mode, "paired or cross")->check(CLI::IsMember({"paired", "cross"}));
  dist->add_option("--refine", refine, "cross-search local-search steps")->check(CLI::NonNegativeNumber);
  add_budget_flags(dist, c);
  add_output_flags(dist, c);

  auto* curve = app.add_subcommand("curve", "run a convergence curve");
  curve->add_option("family", family, "hypercube|star|subdivision|projective|power|quasirandom");
  curve->add_option("--sizes", sizes, "comma separated, strictly increasing");
  curve->add_option("--k-max", c.k_max, "largest profile level")->check(CLI::Range(1, 16));
  curve->add_option("--refine", refine, "cross-search local-search steps")->check(CLI::NonNegativeNumber);
  curve->add_option("--base", base, "base graph of the power family (K<n> or C<n>)");
  curve->add_option("--config", c.config, "JSON experiment config");
  add_budget_flags(curve, c);
  add_output_flags(curve, c);

  auto* props = app.add_subcommand("props", "check graphop properties");
  props->add_option("--op", op_spec, "operator spec")->required();
  props->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
  props->add_option("--require", require, "exit 2 unless the property holds")
      ->check(CLI::IsMember({"graphop", "markov", "self-adjoint"}));
  props->add_flag("--measure-rep", rep_csv, "write the measure representation as CSV");
  add_output_flags(props, c);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a self-adjoint operator");
  spectrum->add_option("--op", op_spec, "operator spec")->required();
  add_output_flags(spectrum, c);

  auto* quotient = app.add_subcommand("quotient", "sample quotient matrices");
  quotient->add_option("--op", op_spec, "operator spec")->required();
  quotient->add_option("--k", k, "number of cells")->check(CLI::Range(1, 16));
  add_budget_flags(quotient, c);
  add_output_flags(quotient, c);

  auto* stars = app.add_subcommand("stars", "check the colored-star bijection by enumeration");
  stars->add_option("--graph", graph_src, "graph source")->required();
  stars->add_option("--k", star_k, "number of colors")->check(CLI::Range(1, 8));
  stars->add_option("--d", d, "degree bound")->check(CLI::Range(1, 16));
  add_output_flags(stars, c);

  auto* rmt = app.add_subcommand("rmt", "random-matrix concentration experiment");
  rmt->add_option("--sizes", sizes, "comma separated n");
  rmt->add_option("--reps", reps, "repetitions per size")->check(CLI::Range(2, 1000));
  rmt->add_option("--k-max", c.k_max, "tuple length of the column check")->check(CLI::Range(1, 16));
  rmt->add_option("--config", c.config, "JSON experiment config");
  add_budget_flags(rmt, c);
  add_output_flags(rmt, c);

  auto* oracle = app.add_subcommand("oracle", "randomized inequality suites");
  oracle->add_option("lemma", lemma, "coupdist|coupdist2|limlem3|limspdm")->required();
  oracle->add_option("--trials", trials, "number of trials")->check(CLI::Range(1, 1000000));
  oracle->add_option("--seed", c.seed, "master seed");
  add_output_flags(oracle, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  // Tabular results default to CSV, structured ones to JSON.
  if (c.format.empty()) c.format = (*dist || *curve || *spectrum || *rmt) ? "csv" : "json";

  try {
    if (*profile) return cmd_profile(c, op_spec, k, partition);
    if (*dist) return cmd_dist(c, a_spec, b_spec, refine);
    if (*curve) return cmd_curve(c, curve, family, sizes, refine, base);
    if (*props) return cmd_props(c, op_spec, tol, require, rep_csv);
    if (*spectrum) return cmd_spectrum(c, op_spec);
    if (*quotient) return cmd_quotient(c, op_spec, k);
    if (*stars) return cmd_stars(c, graph_src, star_k, d);
    if (*rmt) return cmd_rmt(c, rmt, sizes, reps);
    if (*oracle) return cmd_oracle(c, lemma, trials);
  } catch (const PreconditionFailed& e) {
    std::cerr << "actconv: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "actconv: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
