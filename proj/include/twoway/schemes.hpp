#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twoway/gf2.hpp"
#include "twoway/rate_region.hpp"
#include "twoway/rational.hpp"

namespace twoway::schemes {

/// Time-share fractions: a splits the -> direction, b splits the <-
/// direction. Denominators must divide the run's blocklength.
struct TimeShareConfig {
  Rat a{1, 2};
  Rat b{1, 2};
};

struct TranscriptEntry {
  int time;  // 1-based
  int node;
  ld::GF2Vector input;
  ld::GF2Vector output;
};

/// One executed scheme: payloads in, transcript, decodes, achieved rates.
/// `passed` requires decoded == payloads bit-exactly. `nonadaptive` is the
/// result of the counterfactual check: every encoder re-invoked with
/// randomized fake received histories produced identical inputs.
struct SchemeRun {
  ld::LDNetwork network;
  int blocklength = 0;
  std::map<std::string, std::string> payloads;
  std::vector<TranscriptEntry> transcript;
  std::map<std::string, std::string> decoded;
  std::map<std::string, Rat> achieved_rates;
  bool passed = false;
  bool nonadaptive = false;
  std::string failure;

  /// One JSON record per (time, node) with input/output bit vectors.
  std::string transcript_jsonl() const;
};

struct Message {
  std::string name;
  int tx = 0;
  int rx = 0;
  int bits = 0;
};

/// One payload bit placed on one input level of one slot; placing the same
/// bit on several levels repeats it.
struct Placement {
  int slot;   // 0-based
  int node;
  int level;  // top-index into the node's input vector
  int msg;    // index into messages
  int bit;    // index into the message's payload
};

/// A non-adaptive linear scheme: inputs are XORs of payload bits at fixed
/// levels. Decoding solves each receiver's GF(2) system; zero error means
/// every wanted bit is uniquely determined and matches.
struct LinearScheme {
  ld::LDNetwork net;
  int blocklength = 1;
  std::vector<Message> messages;
  std::vector<Placement> placements;
};

SchemeRun run_linear_scheme(const LinearScheme& s, std::uint64_t seed = 1);

/// Canonical networks. Self links of gain max(n_jk) are attached so that the
/// runs exercise self-interference cancellation; pass self_links=false for
/// the bare topology.
ld::LDNetwork macbc_network(int n12, int n32, int n21, int n23,
                            bool self_links = true);
ld::LDNetwork z_network(int n12, int n32, int n34, int n43, int n23, int n21,
                        bool self_links = true);
ld::LDNetwork ic_sym_network(int p, int q, bool self_links = true);
/// Forward cross links and reverse direct links only (the relay-gain
/// topology): n14 = n32 = n43 = n21 = k.
ld::LDNetwork routing_network(int k);

/// Time-sharing/level-allocation runs. Payload sizes are per message name
/// ("M12", ...); requested rates payload/blocklength must lie inside the
/// corresponding region or the run is rejected before simulating. The
/// blocklength is the lcm of the cfg denominators, scaled as needed by the
/// vertex decomposition of the requested point.
SchemeRun run_macbc_timeshare(const ld::LDNetwork& net,
                              const TimeShareConfig& cfg,
                              const std::map<std::string, int>& payload_bits,
                              std::uint64_t seed = 1);
SchemeRun run_z_timeshare(const ld::LDNetwork& net, const TimeShareConfig& cfg,
                          const std::map<std::string, int>& payload_bits,
                          std::uint64_t seed = 1);

/// Runs a region point directly (vertices of the MAC/BC and Z regions in
/// particular); blocklength is the lcm of the coordinate denominators.
SchemeRun run_macbc_point(const ld::LDNetwork& net,
                          const region::RatePoint& target,
                          std::uint64_t seed = 1);
SchemeRun run_z_point(const ld::LDNetwork& net, const region::RatePoint& target,
                      std::uint64_t seed = 1);

/// Canonical payload sizes realized by pure time sharing at the given cfg
/// (rate a*n_A for the first message of each direction).
std::map<std::string, int> timeshare_payloads_macbc(const ld::LDNetwork& net,
                                                    const TimeShareConfig& cfg,
                                                    int blocklength);

/// Symmetric-IC static bit allocation; achieves the per-user target rate
/// C_sym(q/p)*p on the supported alpha grid, both directions running in the
/// same channel uses. Unsupported alpha is rejected.
SchemeRun run_ic_symmetric(int p, int q, const Rat& target_per_user,
                           std::uint64_t seed = 1);

/// The adaptive relay demonstration on routing_network(k): delivers the
/// message over three hops at rate k/3 while the non-adaptive class is stuck
/// at rate zero (certified by the zero-error oracle).
struct RoutingDemo {
  SchemeRun run;
  Rat adaptive_rate;             // k/3
  bool nonadaptive_rate_zero;    // oracle: |M| = 2 infeasible non-adaptively
};
RoutingDemo run_routing_demo(int k = 1, const std::string& message = "M12",
                             std::uint64_t seed = 1);

}  // namespace twoway::schemes
