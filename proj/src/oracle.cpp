#include "twoway/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "json.hpp"

namespace twoway::oracle {

std::string class_name(StrategyClass c) {
  switch (c) {
    case StrategyClass::nonadaptive: return "nonadaptive";
    case StrategyClass::partial: return "partial";
    case StrategyClass::full: return "full";
  }
  return "?";
}

StrategyClass class_from_name(const std::string& s) {
  if (s == "nonadaptive") return StrategyClass::nonadaptive;
  if (s == "partial") return StrategyClass::partial;
  if (s == "full") return StrategyClass::full;
  throw std::invalid_argument("unknown strategy class: " + s);
}

const std::vector<MessageSpec>& model_messages(ld::Topology model) {
  static const std::vector<MessageSpec> macbc = {
      {"M12", 1, 2}, {"M32", 3, 2}, {"M21", 2, 1}, {"M23", 2, 3}};
  static const std::vector<MessageSpec> z = {{"M12", 1, 2}, {"M32", 3, 2},
                                             {"M34", 3, 4}, {"M43", 4, 3},
                                             {"M23", 2, 3}, {"M21", 2, 1}};
  static const std::vector<MessageSpec> ic = {
      {"M12", 1, 2}, {"M34", 3, 4}, {"M21", 2, 1}, {"M43", 4, 3}};
  switch (model) {
    case ld::Topology::macbc: return macbc;
    case ld::Topology::z: return z;
    case ld::Topology::ic: return ic;
  }
  throw std::logic_error("model_messages");
}

const std::vector<int>& restricted_nodes(ld::Topology model) {
  static const std::vector<int> mac = {1, 3};
  static const std::vector<int> zz = {1, 4};
  static const std::vector<int> icc = {1, 3};
  switch (model) {
    case ld::Topology::macbc: return mac;
    case ld::Topology::z: return zz;
    case ld::Topology::ic: return icc;
  }
  throw std::logic_error("restricted_nodes");
}

bool ZeroErrorRegion::contains(const std::vector<int>& sizes) const {
  return std::binary_search(feasible.begin(), feasible.end(), sizes);
}

std::vector<std::vector<int>> ZeroErrorRegion::maximal() const {
  std::vector<std::vector<int>> out;
  for (const auto& f : feasible) {
    bool dominated = false;
    for (const auto& g : feasible) {
      if (&f == &g || f == g) continue;
      bool ge = true, strict = false;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (g[i] < f[i]) ge = false;
        if (g[i] > f[i]) strict = true;
      }
      if (ge && strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(f);
  }
  return out;
}

std::string ZeroErrorRegion::to_json() const {
  nlohmann::json j;
  j["class"] = class_name(cls);
  j["model"] = ld::topology_name(model);
  j["n"] = n;
  j["feasible"] = feasible;
  j["maximal"] = maximal();
  return j.dump(2);
}

namespace {

// Fixed evaluation context for one (law, model, n, sizes) instance.
struct EvalContext {
  const ld::DetLaw* law;
  ld::Topology model;
  int n;
  int nodes;
  std::vector<MessageSpec> msgs;
  std::vector<int> sizes;

  int total_tuples = 1;
  std::vector<int> in_stride;               // law flat-index strides
  std::vector<int> node_msg_count;          // product of the node's msg sizes
  std::vector<std::vector<int>> node_msg_idx;  // [node][tuple] -> own index
  std::vector<std::vector<int>> wanted_key;    // [node][tuple] -> packed D_k
  std::vector<int> wanted_count;               // messages decoded at node

  // separability tables, epoch-stamped to avoid clearing
  mutable std::vector<std::vector<int>> seen_epoch;
  mutable std::vector<std::vector<int>> seen_val;
  mutable int epoch = 0;

  EvalContext(const ld::DetLaw& l, ld::Topology m, int n_,
              const std::vector<int>& sz)
      : law(&l), model(m), n(n_), nodes(l.node_count),
        msgs(model_messages(m)), sizes(sz) {
    for (int s : sizes) total_tuples *= s;
    in_stride.resize(static_cast<std::size_t>(nodes));
    int stride = 1;
    for (int j = 0; j < nodes; ++j) {
      in_stride[static_cast<std::size_t>(j)] = stride;
      stride *= l.in_sizes[static_cast<std::size_t>(j)];
    }
    node_msg_count.assign(static_cast<std::size_t>(nodes), 1);
    for (std::size_t mi = 0; mi < msgs.size(); ++mi)
      node_msg_count[static_cast<std::size_t>(msgs[mi].tx - 1)] *=
          sizes[mi];
    node_msg_idx.assign(static_cast<std::size_t>(nodes),
                        std::vector<int>(static_cast<std::size_t>(total_tuples)));
    wanted_key.assign(static_cast<std::size_t>(nodes),
                      std::vector<int>(static_cast<std::size_t>(total_tuples)));
    wanted_count.assign(static_cast<std::size_t>(nodes), 0);
    for (std::size_t mi = 0; mi < msgs.size(); ++mi)
      ++wanted_count[static_cast<std::size_t>(msgs[mi].rx - 1)];

    for (int g = 0; g < total_tuples; ++g) {
      std::vector<int> vals(msgs.size());
      int rem = g;
      for (std::size_t mi = 0; mi < msgs.size(); ++mi) {
        vals[mi] = rem % sizes[mi];
        rem /= sizes[mi];
      }
      std::vector<int> own(static_cast<std::size_t>(nodes), 0);
      std::vector<int> own_stride(static_cast<std::size_t>(nodes), 1);
      std::vector<int> want(static_cast<std::size_t>(nodes), 0);
      std::vector<int> want_stride(static_cast<std::size_t>(nodes), 1);
      for (std::size_t mi = 0; mi < msgs.size(); ++mi) {
        auto tx = static_cast<std::size_t>(msgs[mi].tx - 1);
        own[tx] += vals[mi] * own_stride[tx];
        own_stride[tx] *= sizes[mi];
        auto rx = static_cast<std::size_t>(msgs[mi].rx - 1);
        want[rx] += vals[mi] * want_stride[rx];
        want_stride[rx] *= sizes[mi];
      }
      for (int j = 0; j < nodes; ++j) {
        node_msg_idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)] =
            own[static_cast<std::size_t>(j)];
        wanted_key[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)] =
            want[static_cast<std::size_t>(j)];
      }
    }

    seen_epoch.resize(static_cast<std::size_t>(nodes));
    seen_val.resize(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
      long hist = 1;
      for (int t = 0; t < n; ++t) hist *= l.out_sizes[static_cast<std::size_t>(k)];
      long span = hist * node_msg_count[static_cast<std::size_t>(k)];
      seen_epoch[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(span), -1);
      seen_val[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(span), 0);
    }
  }

  int hist_count(int node, int t, bool adaptive) const {
    if (!adaptive) return 1;
    int h = 1;
    for (int i = 1; i < t; ++i)
      h *= law->out_sizes[static_cast<std::size_t>(node)];
    return h;
  }

  // Zero-error check for a complete strategy profile. tables[j][t] indexed by
  // msg_idx * hist_count + hist_idx; adapt[j] says whether node j sees
  // history.
  bool zero_error(const std::vector<const std::vector<int>*>* slot_tables,
                  const std::vector<bool>& adapt) const {
    ++epoch;
    int x[4];
    int hist_idx[4];
    int trans[4];
    for (int g = 0; g < total_tuples; ++g) {
      for (int j = 0; j < nodes; ++j) {
        hist_idx[j] = 0;
        trans[j] = 0;
      }
      for (int t = 0; t < n; ++t) {
        int flat = 0;
        for (int j = 0; j < nodes; ++j) {
          const auto& tab = *slot_tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
          int mi = node_msg_idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)];
          int idx = adapt[static_cast<std::size_t>(j)]
                        ? mi * hist_count(j, t + 1, true) + hist_idx[j]
                        : mi;
          x[j] = tab[static_cast<std::size_t>(idx)];
          flat += x[j] * in_stride[static_cast<std::size_t>(j)];
        }
        for (int j = 0; j < nodes; ++j) {
          int y = (*law).outputs[static_cast<std::size_t>(j)][static_cast<std::size_t>(flat)];
          int os = law->out_sizes[static_cast<std::size_t>(j)];
          if (adapt[static_cast<std::size_t>(j)])
            hist_idx[j] = hist_idx[j] * os + y;
          trans[j] = trans[j] * os + y;
        }
      }
      for (int k = 0; k < nodes; ++k) {
        if (wanted_count[static_cast<std::size_t>(k)] == 0) continue;
        long key = static_cast<long>(trans[k]) *
                       node_msg_count[static_cast<std::size_t>(k)] +
                   node_msg_idx[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)];
        auto& ep = seen_epoch[static_cast<std::size_t>(k)][static_cast<std::size_t>(key)];
        auto& sv = seen_val[static_cast<std::size_t>(k)][static_cast<std::size_t>(key)];
        int want = wanted_key[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)];
        if (ep == epoch) {
          if (sv != want) return false;  // same view, different messages
        } else {
          ep = epoch;
          sv = want;
        }
      }
    }
    return true;
  }
};

std::vector<bool> adaptivity(ld::Topology model, int nodes, StrategyClass cls) {
  std::vector<bool> adapt(static_cast<std::size_t>(nodes),
                          cls == StrategyClass::full ||
                              cls == StrategyClass::partial);
  if (cls == StrategyClass::partial)
    for (int r : restricted_nodes(model))
      adapt[static_cast<std::size_t>(r - 1)] = false;
  return adapt;
}

// Enumerable strategy space of one node: per slot an entry table; flattened
// odometer with a canonicalization filter on the first nontrivial message.
struct NodeSpace {
  int node;
  int in_size;
  std::vector<int> slot_dom;   // table length per slot
  long total_entries = 0;
  double count_estimate = 1;   // in_size^total_entries
  int first_msg_size = 1;      // for the relabeling filter

  // iterate as one flat entry vector
  std::vector<int> entries;
  bool first = true;

  void reset() {
    entries.assign(static_cast<std::size_t>(total_entries), 0);
    first = true;
  }
  bool next() {
    if (first) {
      first = false;
      return skip_forward();
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (++entries[i] < in_size) return skip_forward();
      entries[i] = 0;
    }
    return false;
  }

 private:
  // Relabel-canonical representative filter: entries of the slot-1 table for
  // the first message's values (others fixed to 0, empty history) must be
  // nondecreasing. Advances the odometer past violating settings.
  bool skip_forward() {
    while (!canonical()) {
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (++entries[i] < in_size) goto advanced;
        entries[i] = 0;
      }
      return false;
    advanced:;
    }
    return true;
  }
  bool canonical() const {
    for (int v = 1; v < first_msg_size; ++v)
      if (entries[static_cast<std::size_t>(v)] <
          entries[static_cast<std::size_t>(v - 1)])
        return false;
    return true;
  }
};

NodeSpace make_node_space(const EvalContext& ctx, int node, bool adaptive) {
  NodeSpace sp;
  sp.node = node;
  sp.in_size = ctx.law->in_sizes[static_cast<std::size_t>(node)];
  for (int t = 1; t <= ctx.n; ++t) {
    int dom = ctx.node_msg_count[static_cast<std::size_t>(node)] *
              ctx.hist_count(node, t, adaptive);
    sp.slot_dom.push_back(dom);
    sp.total_entries += dom;
  }
  sp.count_estimate = std::pow(static_cast<double>(sp.in_size),
                               static_cast<double>(sp.total_entries));
  // first message owned by this node, in tuple order (stride 1 in msg idx)
  for (std::size_t mi = 0; mi < ctx.msgs.size(); ++mi) {
    if (ctx.msgs[mi].tx - 1 == node) {
      sp.first_msg_size = ctx.sizes[mi];
      break;
    }
  }
  return sp;
}

struct Budget {
  std::uint64_t limit;
  std::atomic<std::uint64_t> used{0};
};

// Exhaustive feasibility search for one size tuple, split over node 1's
// outermost strategy choices when jobs > 1. Feasibility is a disjunction
// over the profile space, so the merge is order-independent.
bool tuple_feasible(const ld::DetLaw& law, ld::Topology model, int n,
                    const std::vector<int>& sizes, StrategyClass cls,
                    Budget& budget, bool& budget_hit, int jobs) {
  EvalContext sizing(law, model, n, sizes);
  auto adapt = adaptivity(model, sizing.nodes, cls);

  double est = 1;
  for (int j = 0; j < sizing.nodes; ++j)
    est *= make_node_space(sizing, j, adapt[static_cast<std::size_t>(j)])
               .count_estimate;
  if (est > static_cast<double>(budget.limit - budget.used.load()) * 1.05 + 1) {
    budget_hit = true;
    return false;
  }

  std::atomic<bool> found{false};
  std::atomic<bool> over{false};

  auto worker = [&](int w) {
    EvalContext ctx(law, model, n, sizes);
    std::vector<NodeSpace> spaces;
    for (int j = 0; j < ctx.nodes; ++j)
      spaces.push_back(
          make_node_space(ctx, j, adapt[static_cast<std::size_t>(j)]));

    std::vector<std::vector<const std::vector<int>*>> slot_tables(
        static_cast<std::size_t>(ctx.nodes));
    std::vector<std::vector<std::vector<int>>> tables(
        static_cast<std::size_t>(ctx.nodes));
    for (int j = 0; j < ctx.nodes; ++j) {
      tables[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
      slot_tables[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
    }
    auto load_tables = [&](int j) {
      const auto& sp = spaces[static_cast<std::size_t>(j)];
      std::size_t off = 0;
      for (int t = 0; t < n; ++t) {
        auto& tab = tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
        auto dom = static_cast<std::size_t>(sp.slot_dom[static_cast<std::size_t>(t)]);
        tab.assign(sp.entries.begin() + static_cast<std::ptrdiff_t>(off),
                   sp.entries.begin() + static_cast<std::ptrdiff_t>(off + dom));
        slot_tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = &tab;
        off += dom;
      }
    };

    std::function<bool(int)> rec = [&](int j) -> bool {
      if (found.load(std::memory_order_relaxed) ||
          over.load(std::memory_order_relaxed))
        return false;
      if (j == ctx.nodes) {
        if (budget.used.fetch_add(1) >= budget.limit) {
          over = true;
          return false;
        }
        return ctx.zero_error(slot_tables.data(), adapt);
      }
      auto& sp = spaces[static_cast<std::size_t>(j)];
      sp.reset();
      while (sp.next()) {
        load_tables(j);
        if (rec(j + 1)) return true;
        if (found.load(std::memory_order_relaxed) ||
            over.load(std::memory_order_relaxed))
          return false;
      }
      return false;
    };

    // stride over node 1's strategies
    auto& sp0 = spaces[0];
    sp0.reset();
    long idx = 0;
    while (sp0.next()) {
      if (idx++ % jobs != w) continue;
      load_tables(0);
      if (rec(1)) {
        found = true;
        return;
      }
      if (found.load() || over.load()) return;
    }
  };

  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (over.load()) budget_hit = true;
  return found.load();
}

std::vector<std::vector<int>> all_tuples(const std::vector<int>& max_sizes) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(max_sizes.size(), 1);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (++cur[i] <= max_sizes[i]) break;
      cur[i] = 1;
    }
    if (i == cur.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    long pa = 1, pb = 1;
    for (int v : a) pa *= v;
    for (int v : b) pb *= v;
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return out;
}

bool leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

ZeroErrorRegion enumerate_impl(const ld::DetLaw& law, ld::Topology model,
                               int n, const std::vector<int>& max_sizes,
                               StrategyClass cls, Budget& budget, int jobs,
                               const std::vector<std::vector<int>>& seed_feasible,
                               const std::vector<std::vector<int>>& seed_infeasible) {
  law.validate();
  if (n < 1 || n > 3)
    throw std::invalid_argument("enumerate_zero_error: n must be 1..3");
  const auto& msgs = model_messages(model);
  if (max_sizes.size() != msgs.size())
    throw std::invalid_argument("enumerate_zero_error: size tuple arity");
  for (int s : max_sizes)
    if (s < 1 || s > 4)
      throw std::invalid_argument("enumerate_zero_error: sizes must be 1..4");
  for (int s : law.in_sizes)
    if (s > 4) throw std::invalid_argument("enumerate_zero_error: alphabet > 4");
  if ((model == ld::Topology::macbc) != (law.node_count == 3))
    throw std::invalid_argument("enumerate_zero_error: law/model node count");

  ZeroErrorRegion region;
  region.model = model;
  region.n = n;
  region.cls = cls;

  std::vector<std::vector<int>> feas;
  std::vector<std::vector<int>> infeas = seed_infeasible;
  for (const auto& f : seed_feasible)
    if (leq(f, max_sizes)) feas.push_back(f);

  for (const auto& tuple : all_tuples(max_sizes)) {
    bool classified = false;
    for (const auto& f : feas)
      if (leq(tuple, f)) {
        region.feasible.push_back(tuple);
        classified = true;
        break;
      }
    if (classified) continue;
    for (const auto& i : infeas)
      if (leq(i, tuple)) {
        classified = true;
        break;
      }
    if (classified) continue;

    bool budget_hit = false;
    bool ok = tuple_feasible(law, model, n, tuple, cls, budget, budget_hit, jobs);
    if (budget_hit) {
      std::sort(region.feasible.begin(), region.feasible.end());
      region.feasible.erase(
          std::unique(region.feasible.begin(), region.feasible.end()),
          region.feasible.end());
      throw BudgetExceeded(
          "zero-error search budget exceeded at tuple; partial region attached",
          region);
    }
    if (ok) {
      feas.push_back(tuple);
      region.feasible.push_back(tuple);
    } else {
      infeas.push_back(tuple);
    }
  }
  std::sort(region.feasible.begin(), region.feasible.end());
  region.feasible.erase(
      std::unique(region.feasible.begin(), region.feasible.end()),
      region.feasible.end());
  return region;
}

}  // namespace

ZeroErrorRegion enumerate_zero_error(const ld::DetLaw& law, ld::Topology model,
                                     int n, const std::vector<int>& max_sizes,
                                     StrategyClass cls, std::uint64_t budget,
                                     int jobs) {
  Budget b{budget};
  if (cls == StrategyClass::nonadaptive)
    return enumerate_impl(law, model, n, max_sizes, cls, b, jobs, {}, {});
  // lower-class witnesses carry up; nonadaptive is cheap
  auto non = enumerate_impl(law, model, n, max_sizes,
                            StrategyClass::nonadaptive, b, jobs, {}, {});
  return enumerate_impl(law, model, n, max_sizes, cls, b, jobs, non.feasible, {});
}

ClassComparison compare_classes(const ld::DetLaw& law, ld::Topology model,
                                int n, const std::vector<int>& max_sizes,
                                std::uint64_t budget, int jobs) {
  Budget b{budget};
  ClassComparison cmp;
  cmp.nonadaptive = enumerate_impl(law, model, n, max_sizes,
                                   StrategyClass::nonadaptive, b, jobs, {}, {});
  cmp.full = enumerate_impl(law, model, n, max_sizes, StrategyClass::full, b,
                            jobs, cmp.nonadaptive.feasible, {});
  if (cmp.nonadaptive.feasible == cmp.full.feasible) {
    // nonadaptive <= partial <= full pins the middle class
    cmp.partial = cmp.full;
    cmp.partial.cls = StrategyClass::partial;
  } else {
    std::vector<std::vector<int>> full_infeasible;
    for (const auto& t : all_tuples(max_sizes))
      if (!cmp.full.contains(t)) full_infeasible.push_back(t);
    cmp.partial = enumerate_impl(law, model, n, max_sizes,
                                 StrategyClass::partial, b, jobs,
                                 cmp.nonadaptive.feasible, full_infeasible);
  }
  cmp.nonadaptive_eq_partial =
      cmp.nonadaptive.feasible == cmp.partial.feasible;
  cmp.partial_eq_full = cmp.partial.feasible == cmp.full.feasible;
  cmp.all_equal = cmp.nonadaptive_eq_partial && cmp.partial_eq_full;
  return cmp;
}

bool check_zero_error(const ld::DetLaw& law, ld::Topology model, int n,
                      const std::vector<int>& sizes,
                      const std::vector<NodeStrategy>& strategies) {
  law.validate();
  EvalContext ctx(law, model, n, sizes);
  if (static_cast<int>(strategies.size()) != ctx.nodes)
    throw std::invalid_argument("check_zero_error: strategy count");
  std::vector<bool> adapt(static_cast<std::size_t>(ctx.nodes), true);
  std::vector<std::vector<const std::vector<int>*>> slot_tables(
      static_cast<std::size_t>(ctx.nodes));
  for (int j = 0; j < ctx.nodes; ++j) {
    if (static_cast<int>(strategies[static_cast<std::size_t>(j)].tables.size()) != n)
      throw std::invalid_argument("check_zero_error: table slots");
    for (int t = 0; t < n; ++t) {
      const auto& tab = strategies[static_cast<std::size_t>(j)].tables[static_cast<std::size_t>(t)];
      int expect = ctx.node_msg_count[static_cast<std::size_t>(j)] *
                   ctx.hist_count(j, t + 1, true);
      if (static_cast<int>(tab.size()) != expect)
        throw std::invalid_argument("check_zero_error: table size for node " +
                                    std::to_string(j + 1));
      for (int v : tab)
        if (v < 0 || v >= law.in_sizes[static_cast<std::size_t>(j)])
          throw std::invalid_argument("check_zero_error: symbol out of range");
      slot_tables[static_cast<std::size_t>(j)].push_back(&tab);
    }
  }
  return ctx.zero_error(slot_tables.data(), adapt);
}

bool is_nonadaptive(const ld::DetLaw& law, int node, int n,
                    const NodeStrategy& s, int msg_count) {
  int os = law.out_sizes[static_cast<std::size_t>(node - 1)];
  int hist = 1;
  for (int t = 0; t < n; ++t) {
    const auto& tab = s.tables[static_cast<std::size_t>(t)];
    for (int m = 0; m < msg_count; ++m)
      for (int h = 1; h < hist; ++h)
        if (tab[static_cast<std::size_t>(m * hist + h)] !=
            tab[static_cast<std::size_t>(m * hist)])
          return false;
    hist *= os;
  }
  return true;
}

ld::DetLaw law_from_ld_network(const ld::LDNetwork& net, int node_count) {
  if (net.N > 2)
    throw std::invalid_argument("law_from_ld_network: N must be <= 2");
  int A = 1 << net.N;
  ld::DetLaw law;
  law.node_count = node_count;
  law.in_sizes.assign(static_cast<std::size_t>(node_count), A);
  law.out_sizes.assign(static_cast<std::size_t>(node_count), A);
  long total = 1;
  for (int j = 0; j < node_count; ++j) total *= A;
  law.outputs.assign(static_cast<std::size_t>(node_count),
                     std::vector<int>(static_cast<std::size_t>(total)));
  for (long flat = 0; flat < total; ++flat) {
    std::map<int, ld::GF2Vector> in;
    long rem = flat;
    for (int j = 1; j <= node_count; ++j) {
      in[j] = ld::GF2Vector::from_uint(static_cast<unsigned>(rem % A),
                                       static_cast<std::size_t>(net.N));
      rem /= A;
    }
    for (int k = 1; k <= node_count; ++k)
      law.outputs[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(flat)] =
          static_cast<int>(ld::channel_output(net, in, k).to_uint());
  }
  return law;
}

gauss::CorrCoeffs grid_search_lambda(const gauss::GaussianSymParams& p,
                                     double resolution) {
  if (!(resolution > 0 && resolution < 1))
    throw std::invalid_argument("grid_search_lambda: resolution in (0,1)");
  if (p.inr == 0) return {0.0, 0.0, false};
  const double two_pi = 2.0 * 3.14159265358979323846;
  gauss::CorrCoeffs best{0.0, 0.0, true};
  double best_val = gauss::lambda24_objective(p, 0.0, 0.0);
  long msteps = std::lround(1.0 / resolution);
  long tsteps = std::lround(1.0 / resolution);
  for (long mi = 0; mi <= msteps; ++mi) {
    double mag = static_cast<double>(mi) / static_cast<double>(msteps);
    for (long ti = 0; ti < tsteps; ++ti) {
      double theta = two_pi * static_cast<double>(ti) / static_cast<double>(tsteps);
      double v = gauss::lambda24_objective(p, mag, theta);
      if (v > best_val) {
        best_val = v;
        best = {mag, theta, true};
      }
    }
  }
  return best;
}

}  // namespace twoway::oracle
