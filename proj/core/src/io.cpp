#include "actconv/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace actconv {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool skip_line(const std::string& line) { return line.empty() || line[0] == '#'; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::size_t parse_index(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v)) throw std::invalid_argument("not an index: '" + s + "'");
  return static_cast<std::size_t>(v);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed json: ") + e.what());
  }
}

// Wraps nlohmann type errors so callers see one exception type.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json measure_json(const EmpiricalMeasure& mu) {
  json atoms = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto p = mu.point(i);
    atoms.push_back(json::array({json(std::vector<double>(p.begin(), p.end())), mu.mass(i)}));
  }
  return {{"dim", mu.dim()}, {"atoms", atoms}, {"norm", to_string(mu.norm())}};
}

EmpiricalMeasure measure_of(const json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<std::vector<double>> pts;
  std::vector<double> masses;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("measure atom must be [point, mass]");
    pts.push_back(a[0].get<std::vector<double>>());
    masses.push_back(a[1].get<double>());
  }
  const auto norm = j.contains("norm") ? point_norm_from_string(j.at("norm").get<std::string>()) : PointNorm::Euclidean;
  return EmpiricalMeasure(dim, std::move(pts), std::move(masses), norm);
}

json budget_json(const SamplingBudget& b) {
  json s = json::array();
  for (auto k : b.strategies) s.push_back(to_string(k));
  return {{"vectors_per_k", b.vectors_per_k},
          {"strategies", s},
          {"seed", b.seed},
          {"quantize_levels", b.quantize_levels},
          {"norm", to_string(b.norm)}};
}

SamplingBudget budget_of(const json& j) {
  SamplingBudget b;
  if (j.contains("vectors_per_k")) b.vectors_per_k = j.at("vectors_per_k").get<int>();
  if (j.contains("strategies")) {
    b.strategies.clear();
    for (const auto& s : j.at("strategies")) b.strategies.push_back(strategy_from_string(s.get<std::string>()));
  }
  if (j.contains("seed")) b.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("quantize_levels")) b.quantize_levels = j.at("quantize_levels").get<int>();
  if (j.contains("norm")) b.norm = point_norm_from_string(j.at("norm").get<std::string>());
  if (b.vectors_per_k < 1) throw std::invalid_argument("budget: vectors_per_k must be positive");
  if (b.strategies.empty()) throw std::invalid_argument("budget: no strategies");
  return b;
}

json dm_json(const DmEstimate& e) {
  json rows = json::array();
  for (const auto& [k, d] : e.per_k) rows.push_back({{"k", k}, {"d_H", d}, {"weight", std::ldexp(1.0, -k)}});
  return {{"dm", e.value}, {"per_k", rows}, {"k_max", e.k_max}, {"tail_bound", e.tail_bound}, {"mode", to_string(e.mode)}};
}

json null_if_nan(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

Eigen::MatrixXd read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (skip_line(line)) continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("dense csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("dense csv: no rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd a(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << fmt(a(i, j));
    out << '\n';
  }
}

OperatorPtr read_sparse_json(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = parse_json(ss.str());
  return guarded("sparse json", [&] {
    const auto n = j.at("n").get<std::size_t>();
    if (n == 0) throw std::invalid_argument("sparse json: n must be positive");
    SpacePtr space;
    if (!j.contains("weights") || (j.at("weights").is_string() && j.at("weights") == "uniform")) {
      space = make_uniform_space(n);
    } else {
      const auto w = j.at("weights").get<std::vector<double>>();
      if (w.size() != n) throw std::invalid_argument("sparse json: weights length differs from n");
      space = make_space(w);
    }
    SparseKernel k;
    k.in.resize(n);
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("sparse json: entries must be [i, j, value]");
      const auto r = e[0].get<std::size_t>();
      const auto c = e[1].get<std::size_t>();
      if (r >= n || c >= n) throw std::invalid_argument("sparse json: entry index out of range");
      k.in[c].emplace_back(r, e[2].get<double>());
    }
    return make_sparse(space, std::move(k), j.value("name", std::string{}));
  });
}

std::string sparse_to_json(const Operator& op) {
  const Eigen::MatrixXd a = op.to_dense();
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index jj = 0; jj < a.cols(); ++jj)
      if (a(i, jj) != 0.0) entries.push_back(json::array({i, jj, a(i, jj)}));
  json j = {{"n", op.size()}, {"entries", entries}};
  if (op.space()->is_uniform()) {
    j["weights"] = "uniform";
  } else {
    j["weights"] = op.space()->weights();
  }
  if (!op.metadata().empty()) j["name"] = op.metadata();
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

OperatorPtr read_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  if (ends_with(path, ".json")) return read_sparse_json(in);
  Eigen::MatrixXd a = read_dense_csv(in);
  if (a.rows() != a.cols()) throw std::invalid_argument("dense csv: matrix is not square");
  auto space = make_uniform_space(static_cast<std::size_t>(a.rows()));
  return make_dense(std::move(space), std::move(a), path);
}

std::string measure_to_json(const EmpiricalMeasure& mu) { return measure_json(mu).dump(); }

EmpiricalMeasure measure_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("measure json", [&] { return measure_of(j); });
}

std::string budget_to_json(const SamplingBudget& b) { return budget_json(b).dump(); }

SamplingBudget budget_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("budget json", [&] { return budget_of(j); });
}

std::string profile_to_json(const Profile& p) {
  json ms = json::array();
  for (const auto& m : p.measures.members()) ms.push_back(measure_json(m));
  json j = {{"k", p.k},
            {"extended", p.extended},
            {"operator", p.operator_id},
            {"budget", budget_json(p.budget)},
            {"measures", ms}};
  return j.dump();
}

Profile profile_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("profile json", [&] {
    Profile p;
    p.k = j.at("k").get<int>();
    p.extended = j.value("extended", false);
    p.operator_id = j.value("operator", std::string{});
    if (j.contains("budget")) p.budget = budget_of(j.at("budget"));
    for (const auto& m : j.at("measures")) p.measures.add(measure_of(m));
    return p;
  });
}

void write_dm_csv(std::ostream& out, const DmEstimate& e, std::uint64_t seed) {
  out << "k,d_H,weight\n";
  for (const auto& [k, d] : e.per_k) out << k << ',' << fmt(d) << ',' << fmt(std::ldexp(1.0, -k)) << '\n';
  out << "# dm=" << fmt(e.value) << ",tail_bound=" << fmt(e.tail_bound) << ",mode=" << to_string(e.mode)
      << ",seed=" << seed << '\n';
}

std::string dm_to_json(const DmEstimate& e, std::uint64_t seed) {
  json j = dm_json(e);
  j["seed"] = seed;
  return j.dump();
}

Graph read_edge_list_csv(std::istream& in, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t top = 0;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (skip_line(line)) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw std::invalid_argument("edge list: expected 'u,v', got '" + line + "'");
    const auto u = parse_index(cells[0]);
    const auto v = parse_index(cells[1]);
    top = std::max({top, u + 1, v + 1});
    edges.emplace_back(u, v);
  }
  return Graph(n ? n : top, std::move(edges));
}

void write_edge_list_csv(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ',' << v << '\n';
}

Graph graph_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("graph json", [&] {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph json: edges must be [u, v]");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return Graph(j.at("n").get<std::size_t>(), std::move(edges), j.value("name", std::string{}));
  });
}

std::string graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  json j = {{"n", g.n()}, {"edges", edges}};
  if (!g.name().empty()) j["name"] = g.name();
  return j.dump();
}

Graph read_graph_file(const std::string& path) {
  if (ends_with(path, ".json")) return graph_from_json(read_text_file(path));
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_edge_list_csv(in);
}

void write_measure_rep_csv(std::ostream& out, const MeasureRep& rep) {
  out << "x,y,mass\n";
  for (Eigen::Index x = 0; x < rep.nu.rows(); ++x)
    for (Eigen::Index y = 0; y < rep.nu.cols(); ++y)
      if (rep.nu(x, y) != 0.0) out << x << ',' << y << ',' << fmt(rep.nu(x, y)) << '\n';
  out << "x,marginal,degree\n";
  for (std::size_t x = 0; x < rep.marginal.size(); ++x)
    out << x << ',' << fmt(rep.marginal[x]) << ',' << fmt(rep.degree_fn.values[x]) << '\n';
}

std::string lemma_report_to_json(const LemmaReport& r) {
  return json{{"lemma", r.lemma}, {"trials", r.trials}, {"violations", r.violations}, {"max_ratio", r.max_ratio}}.dump();
}

void write_curve_csv(std::ostream& out, const CurveResult& c) {
  out << "# family=" << to_string(c.family) << ",seed=" << c.seed << '\n';
  int k_max = 0;
  for (const auto& r : c.rows) k_max = std::max(k_max, r.estimate.k_max);
  out << "size,compared_to,dm,tail_bound,exact,seconds";
  for (int k = 1; k <= k_max; ++k) out << ",d" << k;
  out << '\n';
  for (const auto& r : c.rows) {
    out << r.size << ',' << r.compared_to << ',' << fmt(r.estimate.value) << ',' << fmt(r.estimate.tail_bound) << ','
        << (std::isnan(r.exact) ? std::string{} : fmt(r.exact)) << ',' << fmt(r.seconds);
    for (const auto& pk : r.estimate.per_k) out << ',' << fmt(pk.second);
    out << '\n';
  }
}

std::string curve_to_json(const CurveResult& c) {
  json rows = json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"size", r.size},
                    {"compared_to", r.compared_to},
                    {"estimate", dm_json(r.estimate)},
                    {"exact", null_if_nan(r.exact)},
                    {"seconds", r.seconds}});
  }
  return json{{"family", to_string(c.family)}, {"seed", c.seed}, {"rows", rows}}.dump();
}

void write_rmt_csv(std::ostream& out, const RmtReport& r) {
  out << "# family=rmt,seed=" << r.seed << '\n';
  out << "n,reps,mean,stddev,norm_in_band_fraction,max_column_shift,column_bound_holds\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.statistics.size() << ',' << fmt(row.mean) << ',' << fmt(row.stddev) << ','
        << fmt(row.norm_in_band_fraction) << ',' << fmt(row.max_column_shift) << ',' << (row.column_bound_holds ? 1 : 0)
        << '\n';
  }
}

std::string rmt_to_json(const RmtReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"statistics", row.statistics},
                    {"mean", row.mean},
                    {"stddev", row.stddev},
                    {"norms", row.norms},
                    {"norm_in_band_fraction", row.norm_in_band_fraction},
                    {"max_column_shift", row.max_column_shift},
                    {"column_bound_holds", row.column_bound_holds}});
  }
  return json{{"family", "rmt"}, {"seed", r.seed}, {"rows", rows}}.dump();
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("config json", [&] {
    ExperimentConfig c;
    if (j.contains("family")) c.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    c.k_max = j.value("k_max", c.k_max);
    if (j.contains("budget")) c.budget = budget_of(j.at("budget"));
    c.output_path = j.value("output_path", c.output_path);
    c.refine_steps = j.value("refine_steps", c.refine_steps);
    c.base_graph = j.value("base_graph", c.base_graph);
    c.reps = j.value("reps", c.reps);
    return c;
  });
}

std::string config_to_json(const ExperimentConfig& c) {
  return json{{"family", to_string(c.family)},
              {"sizes", c.sizes},
              {"k_max", c.k_max},
              {"budget", budget_json(c.budget)},
              {"output_path", c.output_path},
              {"refine_steps", c.refine_steps},
              {"base_graph", c.base_graph},
              {"reps", c.reps}}
      .dump(2);
}

}  // namespace actconv
