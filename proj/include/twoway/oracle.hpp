#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoway/gaussian_bounds.hpp"
#include "twoway/gf2.hpp"
#include "twoway/modk.hpp"

namespace twoway::oracle {

enum class StrategyClass { nonadaptive, partial, full };

std::string class_name(StrategyClass c);
StrategyClass class_from_name(const std::string& s);

/// Message list per topology, in the fixed order used by size tuples.
struct MessageSpec {
  std::string name;
  int tx;
  int rx;
};
const std::vector<MessageSpec>& model_messages(ld::Topology model);

/// Nodes forced to message-only encoding under the partial class:
/// ic {1,3}; macbc {1,3}; z {1,4}.
const std::vector<int>& restricted_nodes(ld::Topology model);

/// Blocklength-n encoding tables for one node: tables[t] is indexed by
/// msg_index * hist_count(t) + hist_index, where hist_index enumerates the
/// node's own output prefix y^t in base out_size. A non-adaptive node's
/// tables simply repeat each msg row across the history axis.
struct NodeStrategy {
  std::vector<std::vector<int>> tables;
};

/// Exact zero-error feasible set of message-size tuples at blocklength n for
/// one strategy class; downward closed, sorted.
struct ZeroErrorRegion {
  ld::Topology model;
  int n = 1;
  StrategyClass cls = StrategyClass::nonadaptive;
  std::vector<std::vector<int>> feasible;

  bool contains(const std::vector<int>& sizes) const;
  /// Tuples with no feasible strict componentwise superset.
  std::vector<std::vector<int>> maximal() const;
  std::string to_json() const;
};

/// Search exceeded its candidate budget; carries whatever was classified.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string what, ZeroErrorRegion partial)
      : std::runtime_error(std::move(what)), partial_result(std::move(partial)) {}
  ZeroErrorRegion partial_result;
};

/// Exhaustive zero-error region for the class, blocklength n <= 3, message
/// sizes componentwise <= max_sizes (each <= 4). Uses anti-monotonicity,
/// lower-class witnesses, and message-relabeling canonicalization; counts
/// complete strategy evaluations against the budget and throws
/// BudgetExceeded rather than truncating silently. With jobs > 1 the search
/// splits over node 1's outermost strategy choices; feasibility merging is a
/// set union, so the result is independent of the worker count.
ZeroErrorRegion enumerate_zero_error(const ld::DetLaw& law, ld::Topology model,
                                     int n, const std::vector<int>& max_sizes,
                                     StrategyClass cls,
                                     std::uint64_t budget = 1000000000ull,
                                     int jobs = 1);

struct ClassComparison {
  ZeroErrorRegion nonadaptive;
  ZeroErrorRegion partial;
  ZeroErrorRegion full;
  bool nonadaptive_eq_partial = false;
  bool partial_eq_full = false;
  bool all_equal = false;
};

/// Runs all three classes with shared memoization. When nonadaptive == full
/// the partial region is sandwiched and needs no search of its own.
ClassComparison compare_classes(const ld::DetLaw& law, ld::Topology model,
                                int n, const std::vector<int>& max_sizes,
                                std::uint64_t budget = 1000000000ull,
                                int jobs = 1);

/// Verifies one explicit strategy tree for zero error (the witness path; no
/// search). Strategy order matches node ids 1..node_count.
bool check_zero_error(const ld::DetLaw& law, ld::Topology model, int n,
                      const std::vector<int>& sizes,
                      const std::vector<NodeStrategy>& strategies);

/// True when the strategy is structurally non-adaptive (tables constant
/// across the history axis).
bool is_nonadaptive(const ld::DetLaw& law, int node, int n,
                    const NodeStrategy& s, int msg_count);

/// Truth tables of a linear deterministic network with N <= 2 over the
/// alphabet of 2^N-valued level vectors, for feeding LD topologies to the
/// zero-error search.
ld::DetLaw law_from_ld_network(const ld::LDNetwork& net, int node_count);

/// Dense grid argmax of the backward-bound correlation objective; the
/// independent check for the closed-form optimizer. |lambda| steps by
/// `resolution`, theta by 2*pi*resolution.
gauss::CorrCoeffs grid_search_lambda(const gauss::GaussianSymParams& p,
                                     double resolution);

}  // namespace twoway::oracle
