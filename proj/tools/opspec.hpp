#pragma once

#include <string>

#include "actconv/graphs.hpp"
#include "actconv/operator.hpp"

namespace actconv::cli {

// Operator specs on the command line: REP[/SCALE]:SOURCE
//
//   REP     adj | markov | laplace | degw | matrix | op
//   SCALE   n | norm | <number>        (divides the operator)
//   SOURCE  a graph: hypercube(d) star(n) subdiv(n) projective(q) cycle(n)
//           complete(n) er(n,p,seed) power(K3,i) or an edge-list .csv/.json file
//           for matrix: a dense .csv or sparse .json file
//           for op: star_limit(m) subdiv_limit(m) star_markov(n) subdiv_markov(n)
//                   rank2(q) graphon(q) constant(m) hn(n,seed)
//
// Examples: markov:star(16)  adj/n:er(64,0.5,7)  adj/4:cycle(8)  matrix:a.csv

Graph parse_graph(const std::string& source);
OperatorPtr parse_operator(const std::string& spec);

}  // namespace actconv::cli
