#include "opspec.hpp"

#include <regex>
#include <stdexcept>
#include <vector>

#include "actconv/experiments.hpp"
#include "actconv/io.hpp"
#include "actconv/norms.hpp"

namespace actconv::cli {

namespace {

struct Call {
  std::string name;
  std::vector<std::string> args;
};

bool parse_call(const std::string& s, Call& out) {
  static const std::regex re(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return false;
  out.name = m[1];
  out.args.clear();
  std::string cur;
  for (char c : std::string(m[2])) {
    if (c == ',') {
      out.args.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.args.empty()) out.args.push_back(cur);
  return true;
}

void arity(const Call& c, std::size_t n) {
  if (c.args.size() != n) {
    throw std::invalid_argument(c.name + " takes " + std::to_string(n) + " argument(s)");
  }
}

std::size_t as_size(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

int as_int(const std::string& s) { return static_cast<int>(as_size(s)); }

double as_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

OperatorPtr named_operator(const Call& c) {
  if (c.name == "star_limit") return arity(c, 1), star_limit(as_size(c.args[0]));
  if (c.name == "subdiv_limit") return arity(c, 1), subdivision_limit(as_size(c.args[0]));
  if (c.name == "star_markov") return arity(c, 1), star_markov(as_size(c.args[0]));
  if (c.name == "subdiv_markov") return arity(c, 1), subdivision_markov(as_size(c.args[0]));
  if (c.name == "rank2") return arity(c, 1), projective_rank_two(as_int(c.args[0]));
  if (c.name == "graphon") return arity(c, 1), projective_graphon(as_int(c.args[0]));
  if (c.name == "constant") return arity(c, 1), constant_graphon(as_size(c.args[0]));
  if (c.name == "hn") return arity(c, 2), random_sign_matrix(as_size(c.args[0]), as_size(c.args[1]));
  throw std::invalid_argument("unknown operator source: " + c.name);
}

}  // namespace

Graph parse_graph(const std::string& source) {
  Call c;
  if (!parse_call(source, c)) return read_graph_file(source);
  if (c.name == "hypercube") return arity(c, 1), hypercube(as_int(c.args[0]));
  if (c.name == "star") return arity(c, 1), star(as_size(c.args[0]));
  if (c.name == "subdiv") return arity(c, 1), subdivision_complete(as_size(c.args[0]));
  if (c.name == "projective") return arity(c, 1), projective_incidence(as_int(c.args[0]));
  if (c.name == "cycle") return arity(c, 1), cycle(as_size(c.args[0]));
  if (c.name == "complete") return arity(c, 1), complete(as_size(c.args[0]));
  if (c.name == "er") return arity(c, 3), erdos_renyi(as_size(c.args[0]), as_double(c.args[1]), as_size(c.args[2]));
  if (c.name == "power") return arity(c, 2), graph_power(parse_base_graph(c.args[0]), as_int(c.args[1]));
  throw std::invalid_argument("unknown graph: " + c.name);
}

OperatorPtr parse_operator(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("operator spec must look like REP[/SCALE]:SOURCE");
  std::string rep = spec.substr(0, colon);
  const std::string source = spec.substr(colon + 1);
  std::string scale;
  if (const auto slash = rep.find('/'); slash != std::string::npos) {
    scale = rep.substr(slash + 1);
    rep = rep.substr(0, slash);
  }

  OperatorPtr op;
  if (rep == "matrix") {
    op = read_operator_file(source);
  } else if (rep == "op") {
    Call c;
    if (!parse_call(source, c)) throw std::invalid_argument("op: expected name(args), got '" + source + "'");
    op = named_operator(c);
  } else {
    const Graph g = parse_graph(source);
    if (rep == "adj") {
      op = adjacency_op(g);
    } else if (rep == "markov") {
      op = markov_op(g).op;
    } else if (rep == "laplace") {
      op = laplace_op(g);
    } else if (rep == "degw") {
      op = degree_weighted_op(g).op;
    } else {
      throw std::invalid_argument("unknown representation: " + rep);
    }
  }

  if (scale.empty()) return op;
  double c = 0.0;
  if (scale == "n") {
    c = static_cast<double>(op->size());
  } else if (scale == "norm") {
    c = norm_pq(*op, 2.0, 2.0, NormMode::Exact);
  } else {
    c = as_double(scale);
  }
  if (!(c > 0.0)) throw std::invalid_argument("scale must be positive");
  return make_scaled(op, 1.0 / c, op->metadata() + "/" + scale);
}

}  // namespace actconv::cli
