#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twoway::ld {

enum class Topology { macbc, z, ic };

std::string topology_name(Topology t);
Topology topology_from_name(const std::string& s);

/// Modulo-kappa sum channel on one of the three topologies:
///   macbc: Y1=X1+X2, Y2=X1+X2+X3, Y3=X2+X3
///   z:     Y1=X1+X2, Y2=X1+X2+X3, Y3=X2+X3+X4, Y4=X3+X4
///   ic:    Y1=Y3=X2+X4, Y2=Y4=X1+X3        (no self terms)
/// all sums taken mod kappa.
struct ModKChannel {
  int kappa = 2;
  Topology topology = Topology::macbc;

  ModKChannel(int kappa_, Topology t);
  int node_count() const { return topology == Topology::macbc ? 3 : 4; }
};

/// Modulo-kappa sum at receiver k. Symbols must lie in {0..kappa-1}.
int modk_output(const ModKChannel& ch, const std::map<int, int>& inputs, int k);

/// A deterministic multi-user channel law given as complete truth tables.
/// Inputs are indexed x1-major: flat = x1 + in1*(x2 + in2*(x3 + ...)).
struct DetLaw {
  int node_count = 3;                 // 3 (macbc) or 4 (z, ic)
  std::vector<int> in_sizes;          // per-node input alphabet size
  std::vector<int> out_sizes;         // per-node output alphabet size
  std::vector<std::vector<int>> outputs;  // outputs[k-1][flat input index]

  int flat_index(const std::vector<int>& x) const;
  int output(int k, const std::vector<int>& x) const;
  void validate() const;  // throws on incomplete/out-of-range tables

  /// Stable content hash of the tables (used as an oracle cache key).
  std::string content_hash() const;

  std::string to_json() const;
  static DetLaw from_json(const std::string& text);
};

/// Truth tables of a modulo-kappa channel.
DetLaw law_from_modk(const ModKChannel& ch);

/// Binary multiplier interference channel: Y1=Y3=X2*X4, Y2=Y4=X1*X3.
DetLaw law_binary_multiplier_ic();

/// Binary (non-modulo) adder MAC/BC: Y2=X1+X3 over {0,1,2}; used as the
/// canonical alphabet-restriction failure case.
DetLaw law_binary_adder_macbc();

/// One inverse-function witness: X_arg recovered from Y_k and the other
/// inputs, as a table over (flat index of the other inputs) * out_size + y.
struct InverseWitness {
  int receiver = 0;
  int arg = 0;
  std::vector<int> table;
};

/// One P-condition verdict with its witnesses, when found.
struct ConditionReport {
  bool p1 = false;  // input/output alphabets all equal kappa
  bool p2 = false;  // per-argument invertibility (the G functions exist)
  bool p3 = false;  // pinning symbols preserving uniformity exist
  int kappa = 0;    // common alphabet size when p1 holds
  // P2 witnesses: one inverse table per required G function.
  std::vector<InverseWitness> inverses;
  // P3 witnesses, by node id (e.g. x1* -> pinning[1]).
  std::map<int, int> pinning;
  std::vector<std::string> failures;  // human-readable causes

  bool all() const { return p1 && p2 && p3; }
};

/// Checks the deterministic-invertible-alphabet-restricted conditions for
/// the given topology. Tables must be complete; alphabets are capped at 8.
ConditionReport check_class_conditions(const DetLaw& law, Topology model);

}  // namespace twoway::ld
