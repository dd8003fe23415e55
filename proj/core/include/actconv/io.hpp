#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "actconv/dm.hpp"
#include "actconv/experiments.hpp"
#include "actconv/graphop.hpp"
#include "actconv/graphs.hpp"
#include "actconv/measure.hpp"
#include "actconv/operator.hpp"
#include "actconv/oracles.hpp"
#include "actconv/profiles.hpp"

namespace actconv {

// Text formats. Parsers throw std::invalid_argument on malformed input.
// Doubles are written with 17 significant digits so files round-trip.

/// Row-major dense matrix, one row per line, comma separated. Lines starting
/// with '#' and blank lines are skipped.
Eigen::MatrixXd read_dense_csv(std::istream& in);
void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& a);

/// {"n": n, "weights": [...] | "uniform", "entries": [[i, j, a_ij], ...]}
/// with (vA)(j) = sum_i v(i) a_ij. Repeated (i, j) entries add up.
OperatorPtr read_sparse_json(std::istream& in);
std::string sparse_to_json(const Operator& op);

/// Dispatches on the extension: .json is sparse, anything else dense CSV on
/// the uniform space.
OperatorPtr read_operator_file(const std::string& path);

/// {"dim": d, "atoms": [[[x...], mass], ...], "norm": "euclidean"}
std::string measure_to_json(const EmpiricalMeasure& mu);
EmpiricalMeasure measure_from_json(const std::string& text);

std::string budget_to_json(const SamplingBudget& b);
SamplingBudget budget_from_json(const std::string& text);

/// Measures in stored order (strategy, then tuple index) plus budget metadata.
std::string profile_to_json(const Profile& p);
Profile profile_from_json(const std::string& text);

/// Rows "k,d_H,weight" followed by a "# dm=...,tail_bound=...,mode=...,seed=..." line.
void write_dm_csv(std::ostream& out, const DmEstimate& e, std::uint64_t seed);
std::string dm_to_json(const DmEstimate& e, std::uint64_t seed);

/// One "u,v" pair per line, 0-indexed. The vertex count is the largest
/// endpoint plus one unless n is given.
Graph read_edge_list_csv(std::istream& in, std::size_t n = 0);
void write_edge_list_csv(std::ostream& out, const Graph& g);
/// {"n": n, "edges": [[u, v], ...]}
Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);
/// .json or edge-list CSV by extension.
Graph read_graph_file(const std::string& path);

/// Nonzero triples "x,y,mass" followed by a "x,marginal,degree" section.
void write_measure_rep_csv(std::ostream& out, const MeasureRep& rep);

std::string lemma_report_to_json(const LemmaReport& r);

void write_curve_csv(std::ostream& out, const CurveResult& c);
std::string curve_to_json(const CurveResult& c);
void write_rmt_csv(std::ostream& out, const RmtReport& r);
std::string rmt_to_json(const RmtReport& r);

/// Mirrors ExperimentConfig; missing keys keep their defaults.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

std::string read_text_file(const std::string& path);

}  // namespace actconv
