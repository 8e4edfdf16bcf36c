#include "twoway/modk.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace twoway::ld {

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::macbc: return "macbc";
    case Topology::z: return "z";
    case Topology::ic: return "ic";
  }
  return "?";
}

Topology topology_from_name(const std::string& s) {
  if (s == "macbc") return Topology::macbc;
  if (s == "z") return Topology::z;
  if (s == "ic") return Topology::ic;
  throw std::invalid_argument("unknown topology: " + s);
}

ModKChannel::ModKChannel(int kappa_, Topology t) : kappa(kappa_), topology(t) {
  if (kappa < 2) throw std::invalid_argument("ModKChannel: kappa must be >= 2");
}

namespace {

// Receiver input lists per topology; 0 entries mean "not connected".
const std::vector<std::vector<int>>& receiver_terms(Topology t) {
  static const std::vector<std::vector<int>> macbc = {
      {1, 2}, {1, 2, 3}, {2, 3}};
  static const std::vector<std::vector<int>> z = {
      {1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4}};
  static const std::vector<std::vector<int>> ic = {
      {2, 4}, {1, 3}, {2, 4}, {1, 3}};
  switch (t) {
    case Topology::macbc: return macbc;
    case Topology::z: return z;
    case Topology::ic: return ic;
  }
  throw std::logic_error("receiver_terms");
}

}  // namespace

int modk_output(const ModKChannel& ch, const std::map<int, int>& inputs,
                int k) {
  const auto& terms = receiver_terms(ch.topology);
  if (k < 1 || k > ch.node_count())
    throw std::invalid_argument("modk_output: bad receiver id");
  int sum = 0;
  for (int j : terms[static_cast<std::size_t>(k - 1)]) {
    auto it = inputs.find(j);
    if (it == inputs.end())
      throw std::invalid_argument("modk_output: missing input for node " +
                                  std::to_string(j));
    if (it->second < 0 || it->second >= ch.kappa)
      throw std::invalid_argument("modk_output: symbol out of range");
    sum = (sum + it->second) % ch.kappa;
  }
  return sum;
}

int DetLaw::flat_index(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != node_count)
    throw std::invalid_argument("DetLaw: wrong input arity");
  int idx = 0;
  int stride = 1;
  for (int j = 0; j < node_count; ++j) {
    if (x[static_cast<std::size_t>(j)] < 0 ||
        x[static_cast<std::size_t>(j)] >= in_sizes[static_cast<std::size_t>(j)])
      throw std::invalid_argument("DetLaw: input symbol out of range");
    idx += x[static_cast<std::size_t>(j)] * stride;
    stride *= in_sizes[static_cast<std::size_t>(j)];
  }
  return idx;
}

int DetLaw::output(int k, const std::vector<int>& x) const {
  return outputs.at(static_cast<std::size_t>(k - 1))
      .at(static_cast<std::size_t>(flat_index(x)));
}

void DetLaw::validate() const {
  if (node_count != 3 && node_count != 4)
    throw std::invalid_argument("DetLaw: node_count must be 3 or 4");
  if (static_cast<int>(in_sizes.size()) != node_count ||
      static_cast<int>(out_sizes.size()) != node_count ||
      static_cast<int>(outputs.size()) != node_count)
    throw std::invalid_argument("DetLaw: table arity mismatch");
  long total = 1;
  for (int s : in_sizes) {
    if (s < 1) throw std::invalid_argument("DetLaw: empty input alphabet");
    total *= s;
  }
  for (int k = 0; k < node_count; ++k) {
    const auto& tab = outputs[static_cast<std::size_t>(k)];
    if (static_cast<long>(tab.size()) != total)
      throw std::invalid_argument("DetLaw: incomplete table for receiver " +
                                  std::to_string(k + 1));
    for (int v : tab)
      if (v < 0 || v >= out_sizes[static_cast<std::size_t>(k)])
        throw std::invalid_argument("DetLaw: output symbol out of range");
  }
}

std::string DetLaw::content_hash() const {
  // FNV-1a over a canonical serialization.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(node_count));
  for (int s : in_sizes) mix(static_cast<std::uint64_t>(s));
  for (int s : out_sizes) mix(static_cast<std::uint64_t>(s));
  for (const auto& tab : outputs)
    for (int v : tab) mix(static_cast<std::uint64_t>(v));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string DetLaw::to_json() const {
  nlohmann::json j;
  j["node_count"] = node_count;
  j["in_sizes"] = in_sizes;
  j["out_sizes"] = out_sizes;
  j["outputs"] = outputs;
  return j.dump(2);
}

DetLaw DetLaw::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  DetLaw law;
  law.node_count = j.at("node_count").get<int>();
  law.in_sizes = j.at("in_sizes").get<std::vector<int>>();
  law.out_sizes = j.at("out_sizes").get<std::vector<int>>();
  law.outputs = j.at("outputs").get<std::vector<std::vector<int>>>();
  law.validate();
  return law;
}

DetLaw law_from_modk(const ModKChannel& ch) {
  DetLaw law;
  law.node_count = ch.node_count();
  law.in_sizes.assign(static_cast<std::size_t>(law.node_count), ch.kappa);
  law.out_sizes.assign(static_cast<std::size_t>(law.node_count), ch.kappa);
  long total = 1;
  for (int j = 0; j < law.node_count; ++j) total *= ch.kappa;
  law.outputs.assign(static_cast<std::size_t>(law.node_count), {});
  for (auto& tab : law.outputs) tab.resize(static_cast<std::size_t>(total));
  std::vector<int> x(static_cast<std::size_t>(law.node_count), 0);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    std::map<int, int> in;
    for (int j = 0; j < law.node_count; ++j) {
      x[static_cast<std::size_t>(j)] = static_cast<int>(rem % ch.kappa);
      in[j + 1] = x[static_cast<std::size_t>(j)];
      rem /= ch.kappa;
    }
    for (int k = 1; k <= law.node_count; ++k)
      law.outputs[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(idx)] =
          modk_output(ch, in, k);
  }
  return law;
}

DetLaw law_binary_multiplier_ic() {
  DetLaw law;
  law.node_count = 4;
  law.in_sizes = {2, 2, 2, 2};
  law.out_sizes = {2, 2, 2, 2};
  law.outputs.assign(4, std::vector<int>(16, 0));
  for (int idx = 0; idx < 16; ++idx) {
    int x1 = idx & 1, x2 = (idx >> 1) & 1, x3 = (idx >> 2) & 1,
        x4 = (idx >> 3) & 1;
    int fwd = x1 * x3;
    int rev = x2 * x4;
    law.outputs[0][static_cast<std::size_t>(idx)] = rev;
    law.outputs[1][static_cast<std::size_t>(idx)] = fwd;
    law.outputs[2][static_cast<std::size_t>(idx)] = rev;
    law.outputs[3][static_cast<std::size_t>(idx)] = fwd;
  }
  return law;
}

DetLaw law_binary_adder_macbc() {
  DetLaw law;
  law.node_count = 3;
  law.in_sizes = {2, 2, 2};
  law.out_sizes = {3, 3, 3};
  law.outputs.assign(3, std::vector<int>(8, 0));
  for (int idx = 0; idx < 8; ++idx) {
    int x1 = idx & 1, x2 = (idx >> 1) & 1, x3 = (idx >> 2) & 1;
    law.outputs[0][static_cast<std::size_t>(idx)] = x1 + x2;
    law.outputs[1][static_cast<std::size_t>(idx)] = x1 + x3;  // MAC direction
    law.outputs[2][static_cast<std::size_t>(idx)] = x2 + x3;
  }
  return law;
}

namespace {

// Enumerates all input tuples, calling f(x).
void for_all_inputs(const DetLaw& law,
                    const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> x(static_cast<std::size_t>(law.node_count), 0);
  while (true) {
    f(x);
    int j = 0;
    for (; j < law.node_count; ++j) {
      if (++x[static_cast<std::size_t>(j)] < law.in_sizes[static_cast<std::size_t>(j)]) break;
      x[static_cast<std::size_t>(j)] = 0;
    }
    if (j == law.node_count) break;
  }
}

// When y_k is injective in argument `arg` (1-based node) for every fixed
// setting of the other inputs, returns the inverse table indexed by
// (flat index over the other inputs, in node order) * out_size + y.
std::optional<std::vector<int>> invert_in(const DetLaw& law, int k, int arg) {
  int out_size = law.out_sizes[static_cast<std::size_t>(k - 1)];
  long others = 1;
  for (int j = 1; j <= law.node_count; ++j)
    if (j != arg) others *= law.in_sizes[static_cast<std::size_t>(j - 1)];
  std::vector<int> table(static_cast<std::size_t>(others * out_size), -1);

  bool ok = true;
  std::vector<int> x(static_cast<std::size_t>(law.node_count), 0);
  long flat_others = 0;
  std::function<void(int)> rec = [&](int j) {
    if (!ok) return;
    if (j == law.node_count + 1) {
      std::vector<bool> seen(static_cast<std::size_t>(out_size), false);
      for (int v = 0; v < law.in_sizes[static_cast<std::size_t>(arg - 1)]; ++v) {
        x[static_cast<std::size_t>(arg - 1)] = v;
        int y = law.output(k, x);
        if (seen[static_cast<std::size_t>(y)]) {
          ok = false;
          return;
        }
        seen[static_cast<std::size_t>(y)] = true;
        table[static_cast<std::size_t>(flat_others * out_size + y)] = v;
      }
      ++flat_others;
      return;
    }
    if (j == arg) {
      rec(j + 1);
      return;
    }
    for (int v = 0; v < law.in_sizes[static_cast<std::size_t>(j - 1)]; ++v) {
      x[static_cast<std::size_t>(j - 1)] = v;
      rec(j + 1);
      if (!ok) return;
    }
  };
  rec(1);
  if (!ok) return std::nullopt;
  return table;
}

// With node `pin` fixed to value `pv` and the nodes in `uniform` i.i.d.
// uniform, is y_k uniform? Counts preimages.
bool uniform_under_pin(const DetLaw& law, int k, int pin, int pv,
                       const std::vector<int>& uniform) {
  int kappa = law.out_sizes[static_cast<std::size_t>(k - 1)];
  std::vector<long> count(static_cast<std::size_t>(kappa), 0);
  long total = 0;
  std::vector<int> x(static_cast<std::size_t>(law.node_count), 0);
  if (pin >= 1) x[static_cast<std::size_t>(pin - 1)] = pv;
  std::function<void(std::size_t)> rec = [&](std::size_t ui) {
    if (ui == uniform.size()) {
      ++count[static_cast<std::size_t>(law.output(k, x))];
      ++total;
      return;
    }
    int node = uniform[ui];
    for (int v = 0; v < law.in_sizes[static_cast<std::size_t>(node - 1)]; ++v) {
      x[static_cast<std::size_t>(node - 1)] = v;
      rec(ui + 1);
    }
  };
  rec(0);
  if (total % kappa != 0) return false;
  long each = total / kappa;
  for (long c : count)
    if (c != each) return false;
  return true;
}

}  // namespace

ConditionReport check_class_conditions(const DetLaw& law, Topology model) {
  law.validate();
  for (int s : law.in_sizes)
    if (s > 8) throw std::invalid_argument("class checker: alphabet > 8");
  if ((model == Topology::macbc && law.node_count != 3) ||
      (model != Topology::macbc && law.node_count != 4))
    throw std::invalid_argument("class checker: node count does not match model");

  ConditionReport rep;

  // P1: all input and output alphabets share one size kappa.
  rep.p1 = true;
  int kappa = law.in_sizes[0];
  for (int s : law.in_sizes)
    if (s != kappa) rep.p1 = false;
  for (int s : law.out_sizes)
    if (s != kappa) rep.p1 = false;
  if (rep.p1)
    rep.kappa = kappa;
  else
    rep.failures.push_back("P1: alphabet sizes differ");

  // P2: the receiver-side inverse functions exist. The G functions take only
  // the listed arguments, so the law must also be structurally independent of
  // the inputs outside each receiver's term list, and the ic class must have
  // the common outputs Y1=Y3, Y2=Y4.
  rep.p2 = true;
  auto fail2 = [&rep](const std::string& why) {
    rep.p2 = false;
    rep.failures.push_back("P2: " + why);
  };

  auto depends_on = [&law](int k, int arg) {
    bool dep = false;
    for_all_inputs(law, [&](const std::vector<int>& x0) {
      if (dep) return;
      std::vector<int> x = x0;
      int base = law.output(k, x);
      for (int v = 0; v < law.in_sizes[static_cast<std::size_t>(arg - 1)]; ++v) {
        x[static_cast<std::size_t>(arg - 1)] = v;
        if (law.output(k, x) != base) {
          dep = true;
          return;
        }
      }
    });
    return dep;
  };

  std::vector<std::vector<int>> terms;  // terms[k-1] = inputs Y_k may depend on
  switch (model) {
    case Topology::macbc: terms = {{1, 2}, {1, 2, 3}, {2, 3}}; break;
    case Topology::z: terms = {{1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4}}; break;
    case Topology::ic: terms = {{2, 4}, {1, 3}, {2, 4}, {1, 3}}; break;
  }
  for (int k = 1; k <= law.node_count; ++k) {
    for (int j = 1; j <= law.node_count; ++j) {
      bool allowed = false;
      for (int t : terms[static_cast<std::size_t>(k - 1)]) allowed |= (t == j);
      if (!allowed && depends_on(k, j))
        fail2("Y" + std::to_string(k) + " depends on X" + std::to_string(j));
    }
  }
  if (model == Topology::ic && rep.p2) {
    if (law.outputs[0] != law.outputs[2]) fail2("Y1 != Y3");
    if (law.outputs[1] != law.outputs[3]) fail2("Y2 != Y4");
  }

  struct Inv { int k; int arg; };
  std::vector<Inv> invs;
  switch (model) {
    case Topology::macbc:
      // X2 = G1(X1,Y1); X1 = G21(X2,X3,Y2); X3 = G23(X1,X2,Y2); X2 = G3(X3,Y3)
      invs = {{1, 2}, {2, 1}, {2, 3}, {3, 2}};
      break;
    case Topology::ic:
      // X3 = G2(X1,Y2); X4 = G1(X2,Y1); X2 = G3(X4,Y3); X1 = G4(X3,Y4)
      invs = {{2, 3}, {1, 4}, {3, 2}, {4, 1}};
      break;
    case Topology::z:
      // natural extension: each receiver can invert each unknown argument
      // given the rest
      invs = {{1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}};
      break;
  }
  for (const auto& iv : invs) {
    auto table = invert_in(law, iv.k, iv.arg);
    if (table)
      rep.inverses.push_back({iv.k, iv.arg, std::move(*table)});
    else
      fail2("Y" + std::to_string(iv.k) + " not invertible in X" +
            std::to_string(iv.arg));
  }

  // P3: pinning symbols preserving output uniformity.
  auto find_pin = [&](int pin_node, const std::vector<int>& uniform,
                      const std::vector<int>& receivers) -> std::optional<int> {
    for (int pv = 0; pv < law.in_sizes[static_cast<std::size_t>(pin_node - 1)]; ++pv) {
      bool ok = true;
      for (int k : receivers)
        if (!uniform_under_pin(law, k, pin_node, pv, uniform)) ok = false;
      if (ok) return pv;
    }
    return std::nullopt;
  };

  rep.p3 = true;
  auto require_pin = [&](int pin_node, const std::vector<int>& uniform,
                         const std::vector<int>& receivers) {
    auto w = find_pin(pin_node, uniform, receivers);
    if (w) {
      rep.pinning[pin_node] = *w;
    } else {
      rep.p3 = false;
      rep.failures.push_back("P3: no pinning symbol x" +
                             std::to_string(pin_node) + "*");
    }
  };
  switch (model) {
    case Topology::macbc:
      require_pin(3, {1, 2}, {1, 2});
      require_pin(1, {2, 3}, {2, 3});
      break;
    case Topology::ic:
      // pinned partner leaves the common output a bijection of the live input
      require_pin(3, {1}, {2});
      require_pin(1, {3}, {2});
      require_pin(4, {2}, {1});
      require_pin(2, {4}, {1});
      break;
    case Topology::z:
      require_pin(4, {1, 2, 3}, {1, 2});
      require_pin(1, {2, 3, 4}, {3, 4});
      break;
  }
  return rep;
}

}  // namespace twoway::ld
