// Command-line front end: capacity regions, symmetric-capacity curves,
// Gaussian gap sweeps, scheme simulation, and the zero-error search, all as
// reproducible file-based runs.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "twoway/gaussian_bounds.hpp"
#include "twoway/gf2.hpp"
#include "twoway/modk.hpp"
#include "twoway/oracle.hpp"
#include "twoway/rate_region.hpp"
#include "twoway/regions.hpp"
#include "twoway/schemes.hpp"
#include "twoway/sym_curves.hpp"

namespace fs = std::filesystem;
using namespace twoway;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitAssertion = 3;

// No partial files: write to a temp sibling, then rename into place.
void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, p);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::map<std::string, int> parse_payload_list(const std::string& s) {
  std::map<std::string, int> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("payload item must be NAME=BITS: " + item);
    out[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  return out;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Deterministic chunked parallel map over [0, n).
void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
  if (jobs <= 1 || n < 2 * jobs) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& t : pool) t.join();
}

struct GlobalOpts {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  int jobs = 1;
};

// ---- region ---------------------------------------------------------------

struct RegionArgs {
  std::string model;
  int kappa = 2;
  std::string topology = "macbc";
  std::string params_file;
  int n12 = 0, n32 = 0, n21 = 0, n23 = 0, n34 = 0, n43 = 0, n14 = 0, n41 = 0;
  bool irredundant = false;
};

int cmd_region(const GlobalOpts& g, const RegionArgs& a) {
  std::optional<region::RateRegion> reg;
  RegionArgs v = a;
  auto gains_from_file = [&](std::initializer_list<std::pair<int, int>> links,
                             std::vector<int*> slots) {
    auto net = ld::LDNetwork::from_json(read_file(a.params_file));
    std::size_t i = 0;
    for (auto [j, k] : links)
      *(slots[i++]) = net.has_link(j, k) ? net.gain(j, k) : 0;
  };
  if (a.model == "mod2-macbc") {
    reg = region::region_mod2_macbc();
  } else if (a.model == "modk") {
    reg = region::region_modk(ld::topology_from_name(a.topology), a.kappa);
  } else if (a.model == "ld-macbc") {
    if (!a.params_file.empty())
      gains_from_file({{1, 2}, {3, 2}, {2, 1}, {2, 3}},
                      {&v.n12, &v.n32, &v.n21, &v.n23});
    reg = region::region_ld_macbc(v.n12, v.n32, v.n21, v.n23);
  } else if (a.model == "ld-z") {
    if (!a.params_file.empty())
      gains_from_file({{1, 2}, {3, 2}, {3, 4}, {4, 3}, {2, 3}, {2, 1}},
                      {&v.n12, &v.n32, &v.n34, &v.n43, &v.n23, &v.n21});
    reg = region::region_ld_z(v.n12, v.n32, v.n34, v.n43, v.n23, v.n21);
  } else if (a.model == "ld-ic") {
    if (!a.params_file.empty())
      gains_from_file(
          {{1, 2}, {3, 4}, {3, 2}, {1, 4}, {2, 1}, {4, 3}, {2, 3}, {4, 1}},
          {&v.n12, &v.n34, &v.n32, &v.n14, &v.n21, &v.n43, &v.n23, &v.n41});
    reg = region::region_ld_ic(v.n12, v.n34, v.n32, v.n14, v.n21, v.n43, v.n23,
                               v.n41);
  } else {
    throw std::invalid_argument("unknown region model: " + a.model);
  }
  if (a.irredundant) reg = reg->irredundant();

  if (g.out.empty()) throw std::invalid_argument("region: --out is required");
  write_file_atomic(g.out + ".json", reg->to_json() + "\n");
  write_file_atomic(g.out + ".csv", reg->vertices_csv());
  std::cout << "region: " << reg->ineqs().size() << " inequalities, "
            << reg->vertices().size() << " vertices, adaptation "
            << reg->adaptation_mode() << "\n";
  return kExitOk;
}

// ---- curve ----------------------------------------------------------------

struct CurveArgs {
  std::string alphas;  // comma list of rationals; empty = k/12, k=0..36
};

int cmd_curve(const GlobalOpts& g, const CurveArgs& a) {
  std::vector<Rat> grid;
  if (a.alphas.empty()) {
    for (int k = 0; k <= 36; ++k) grid.push_back(Rat(k, 12));
  } else {
    for (const auto& tok : split(a.alphas, ',')) grid.push_back(Rat::parse(tok));
  }
  auto rows = curves::sweep_curves(grid);
  std::string body = g.format == "json" ? curves::curves_json(rows) + "\n"
                                        : curves::curves_csv(rows);
  if (g.out.empty())
    std::cout << body;
  else
    write_file_atomic(g.out, body);
  return kExitOk;
}

// ---- gaps -----------------------------------------------------------------

struct GapsArgs {
  double snr_min_db = 0, snr_max_db = 60;
  int snr_steps = 50;
  double inr_min_db = 0, inr_max_db = 60;
  int inr_steps = 50;
  bool refined = false;
};

int cmd_gaps(const GlobalOpts& g, const GapsArgs& a) {
  if (a.snr_steps < 1 || a.inr_steps < 1)
    throw std::invalid_argument("gaps: grids must be non-empty");
  auto grid_db = [](double lo, double hi, int steps) {
    std::vector<double> v;
    for (int i = 0; i < steps; ++i)
      v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return v;
  };
  auto snrs = grid_db(a.snr_min_db, a.snr_max_db, a.snr_steps);
  auto inrs = grid_db(a.inr_min_db, a.inr_max_db, a.inr_steps);

  struct Row {
    double snr_db, inr_db;
    gauss::GapReport rep;
  };
  const int total = static_cast<int>(snrs.size() * inrs.size());
  std::vector<Row> rows(static_cast<std::size_t>(total));
  gauss::GapOptions opt;
  opt.refined_strong_forward = a.refined;
  parallel_for(total, g.jobs, [&](int i) {
    int si = i / static_cast<int>(inrs.size());
    int ii = i % static_cast<int>(inrs.size());
    double sdb = snrs[static_cast<std::size_t>(si)];
    double idb = inrs[static_cast<std::size_t>(ii)];
    gauss::GaussianSymParams p(std::pow(10.0, sdb / 10.0),
                               std::pow(10.0, idb / 10.0));
    rows[static_cast<std::size_t>(i)] = {sdb, idb, gauss::gap_report(p, opt)};
  });

  std::string csv = "snr_db,inr_db,regime,outer,inner,gap,limit,pass\n";
  std::map<std::string, double> max_gap;
  bool all_pass = true;
  for (const auto& r : rows) {
    const auto& c = r.rep.binding();
    csv += fmt6(r.snr_db) + "," + fmt6(r.inr_db) + "," + c.name + "," +
           fmt6(c.outer) + "," + fmt6(c.inner) + "," + fmt6(c.gap_bits) + "," +
           fmt6(c.table_limit) + "," + (r.rep.pass ? "true" : "false") + "\n";
    for (const auto& cc : r.rep.cases) {
      auto it = max_gap.find(cc.name);
      if (it == max_gap.end() || cc.gap_bits > it->second)
        max_gap[cc.name] = cc.gap_bits;
    }
    all_pass &= r.rep.pass;
  }
  nlohmann::json summary;
  summary["points"] = total;
  summary["all_pass"] = all_pass;
  for (const auto& [name, vmax] : max_gap) summary["max_gap_bits"][name] = vmax;

  if (g.out.empty()) {
    std::cout << csv;
    std::cout << summary.dump(2) << "\n";
  } else {
    write_file_atomic(g.out + ".csv", csv);
    write_file_atomic(g.out + ".summary.json", summary.dump(2) + "\n");
  }
  std::cout << (all_pass ? "gaps: all points pass" : "gaps: FAILURES present")
            << "\n";
  return all_pass ? kExitOk : kExitAssertion;
}

// ---- simulate -------------------------------------------------------------

struct SimArgs {
  std::string scheme;  // macbc | z | ic | routing
  std::string net_file;
  int n12 = 1, n32 = 1, n21 = 1, n23 = 1, n34 = 1, n43 = 1;
  std::string alpha = "1/2", beta = "1/2";
  std::string payload;
  int p = 1, q = 0;
  int k = 1;
  std::string message = "M12";
  bool no_self = false;
};

int cmd_simulate(const GlobalOpts& g, const SimArgs& a) {
  schemes::SchemeRun run;
  schemes::TimeShareConfig cfg{Rat::parse(a.alpha), Rat::parse(a.beta)};
  if (a.scheme == "macbc") {
    auto net = a.net_file.empty()
                   ? schemes::macbc_network(a.n12, a.n32, a.n21, a.n23, !a.no_self)
                   : ld::LDNetwork::from_json(read_file(a.net_file));
    auto payload =
        a.payload.empty()
            ? schemes::timeshare_payloads_macbc(
                  net, cfg, static_cast<int>(lcm64(cfg.a.den(), cfg.b.den())))
            : parse_payload_list(a.payload);
    run = schemes::run_macbc_timeshare(net, cfg, payload, g.seed);
  } else if (a.scheme == "z") {
    auto net = a.net_file.empty()
                   ? schemes::z_network(a.n12, a.n32, a.n34, a.n43, a.n23,
                                        a.n21, !a.no_self)
                   : ld::LDNetwork::from_json(read_file(a.net_file));
    if (a.payload.empty())
      throw std::invalid_argument("z simulate: --payload is required");
    run = schemes::run_z_timeshare(net, cfg, parse_payload_list(a.payload),
                                   g.seed);
  } else if (a.scheme == "ic") {
    Rat target = curves::csym_twoway_partial(Rat(a.q, a.p)) * a.p;
    run = schemes::run_ic_symmetric(a.p, a.q, target, g.seed);
  } else if (a.scheme == "routing") {
    auto demo = schemes::run_routing_demo(a.k, a.message, g.seed);
    run = demo.run;
    std::cout << "routing: adaptive rate " << demo.adaptive_rate.str()
              << ", non-adaptive rate zero: "
              << (demo.nonadaptive_rate_zero ? "true" : "false") << "\n";
  } else {
    throw std::invalid_argument("unknown scheme: " + a.scheme);
  }

  if (!g.out.empty()) write_file_atomic(g.out, run.transcript_jsonl());
  std::cout << (run.passed ? "PASS" : "FAIL") << " blocklength "
            << run.blocklength << " nonadaptive "
            << (run.nonadaptive ? "true" : "false");
  for (const auto& [m, r] : run.achieved_rates)
    std::cout << " " << m << "=" << r.str();
  std::cout << "\n";
  if (!run.passed) std::cerr << "failure: " << run.failure << "\n";
  return run.passed ? kExitOk : kExitAssertion;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  std::string channel_file;
  std::string builtin;  // mod2-* | modk-* | bmult-ic
  int kappa = 2;
  std::string model;  // macbc | z | ic (needed with --channel)
  int n = 1;
  std::string sizes;  // "2,2,2,2" or single int broadcast
  std::string cls = "nonadaptive";
  std::uint64_t budget = 1000000000ull;
  std::string cache_dir;
};

int cmd_oracle(const GlobalOpts& g, const OracleArgs& a) {
  ld::DetLaw law;
  ld::Topology model = ld::Topology::macbc;
  if (!a.channel_file.empty()) {
    law = ld::DetLaw::from_json(read_file(a.channel_file));
    if (a.model.empty())
      throw std::invalid_argument("oracle: --model required with --channel");
    model = ld::topology_from_name(a.model);
  } else if (a.builtin == "mod2-macbc" || a.builtin == "mod2-z" ||
             a.builtin == "mod2-ic" || a.builtin == "modk-macbc" ||
             a.builtin == "modk-z" || a.builtin == "modk-ic") {
    int kappa = a.builtin.rfind("mod2", 0) == 0 ? 2 : a.kappa;
    model = ld::topology_from_name(a.builtin.substr(a.builtin.find('-') + 1));
    law = ld::law_from_modk(ld::ModKChannel(kappa, model));
  } else if (a.builtin == "bmult-ic") {
    model = ld::Topology::ic;
    law = ld::law_binary_multiplier_ic();
  } else {
    throw std::invalid_argument("oracle: need --channel or a known --builtin");
  }

  const auto& msgs = oracle::model_messages(model);
  std::vector<int> max_sizes;
  if (a.sizes.find(',') != std::string::npos) {
    for (const auto& tok : split(a.sizes, ','))
      max_sizes.push_back(std::stoi(tok));
  } else {
    int s = a.sizes.empty() ? 2 : std::stoi(a.sizes);
    max_sizes.assign(msgs.size(), s);
  }

  // content-addressed cache
  std::string key = law.content_hash() + "_" + ld::topology_name(model) +
                    "_n" + std::to_string(a.n) + "_" + a.cls;
  for (int s : max_sizes) key += "_" + std::to_string(s);
  fs::path cache;
  if (!a.cache_dir.empty()) {
    cache = fs::path(a.cache_dir) / (key + ".json");
    if (fs::exists(cache)) {
      std::string cached = read_file(cache.string());
      if (!g.out.empty())
        write_file_atomic(g.out, cached);
      else
        std::cout << cached;
      std::cout << "oracle: cache hit " << cache.string() << "\n";
      return kExitOk;
    }
  }

  std::string body;
  try {
    if (a.cls == "compare") {
      auto cmp = oracle::compare_classes(law, model, a.n, max_sizes, a.budget,
                                         g.jobs);
      nlohmann::json j;
      j["nonadaptive"] = nlohmann::json::parse(cmp.nonadaptive.to_json());
      j["partial"] = nlohmann::json::parse(cmp.partial.to_json());
      j["full"] = nlohmann::json::parse(cmp.full.to_json());
      j["nonadaptive_eq_partial"] = cmp.nonadaptive_eq_partial;
      j["partial_eq_full"] = cmp.partial_eq_full;
      j["all_equal"] = cmp.all_equal;
      body = j.dump(2) + "\n";
    } else {
      auto region = oracle::enumerate_zero_error(
          law, model, a.n, max_sizes, oracle::class_from_name(a.cls), a.budget,
          g.jobs);
      body = region.to_json() + "\n";
    }
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kExitBudget;
  }

  if (!cache.empty()) write_file_atomic(cache.string(), body);
  if (!g.out.empty())
    write_file_atomic(g.out, body);
  else
    std::cout << body;
  return kExitOk;
}

// ---- macbc-gap ------------------------------------------------------------

struct MacBcArgs {
  double p1 = 1, p2 = 1, p3 = 1;
  double noise1 = 1, noise2 = 1, noise3 = 1;
  int alpha_steps = 21;
};

int cmd_macbc_gap(const GlobalOpts& g, const MacBcArgs& a) {
  gauss::MacBcParams m{a.p1, a.p2, a.p3, a.noise1, a.noise2, a.noise3};
  auto rep = gauss::macbc_bounds(m, a.alpha_steps);
  nlohmann::json j;
  j["mac_inner"] = rep.mac_inner;
  j["mac_outer"] = rep.mac_outer;
  j["mac_gap"] = rep.mac_gap;
  j["bc_gap"] = rep.bc_gap;
  j["limit"] = 0.5;
  j["pass"] = rep.pass;
  std::string body = j.dump(2) + "\n";
  if (!g.out.empty())
    write_file_atomic(g.out, body);
  else
    std::cout << body;
  std::cout << "macbc-gap: mac " << fmt6(rep.mac_gap) << " bc "
            << fmt6(rep.bc_gap) << " limit 0.5 "
            << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-way deterministic/Gaussian network capacity toolkit"};
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--out", g.out,
                 "output path (or stem where two files are written)");
  app.add_option("--format", g.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "seed for randomized payloads/sweeps");
  app.add_option("--jobs", g.jobs, "worker threads (output is order-independent)")
      ->check(CLI::PositiveNumber);
  app.require_subcommand(1);

  RegionArgs ra;
  auto* region_cmd =
      app.add_subcommand("region", "emit an H-rep region and its vertices");
  region_cmd->add_option("--model", ra.model,
                         "mod2-macbc|modk|ld-macbc|ld-z|ld-ic")
      ->required();
  region_cmd->add_option("--kappa", ra.kappa, "alphabet size for modk");
  region_cmd->add_option("--topology", ra.topology, "macbc|z|ic for modk");
  region_cmd->add_option("--params", ra.params_file, "LDNetwork JSON file");
  region_cmd->add_option("--n12", ra.n12);
  region_cmd->add_option("--n32", ra.n32);
  region_cmd->add_option("--n21", ra.n21);
  region_cmd->add_option("--n23", ra.n23);
  region_cmd->add_option("--n34", ra.n34);
  region_cmd->add_option("--n43", ra.n43);
  region_cmd->add_option("--n14", ra.n14);
  region_cmd->add_option("--n41", ra.n41);
  region_cmd->add_flag("--irredundant", ra.irredundant,
                       "drop redundant inequalities");

  CurveArgs ca;
  auto* curve_cmd =
      app.add_subcommand("curve", "normalized symmetric-capacity curves");
  curve_cmd->add_option("--alphas", ca.alphas,
                        "comma list of rationals (default k/12, k=0..36)");

  GapsArgs ga;
  auto* gaps_cmd =
      app.add_subcommand("gaps", "constant-gap sweep over (SNR,INR)");
  gaps_cmd->add_option("--snr-min-db", ga.snr_min_db);
  gaps_cmd->add_option("--snr-max-db", ga.snr_max_db);
  gaps_cmd->add_option("--snr-steps", ga.snr_steps);
  gaps_cmd->add_option("--inr-min-db", ga.inr_min_db);
  gaps_cmd->add_option("--inr-max-db", ga.inr_max_db);
  gaps_cmd->add_option("--inr-steps", ga.inr_steps);
  gaps_cmd->add_flag("--refined", ga.refined,
                     "add the half-bit strong-regime forward bound");

  SimArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "run an achievability scheme");
  sim_cmd->add_option("--scheme", sa.scheme, "macbc|z|ic|routing")->required();
  sim_cmd->add_option("--net", sa.net_file, "LDNetwork JSON file");
  sim_cmd->add_option("--n12", sa.n12);
  sim_cmd->add_option("--n32", sa.n32);
  sim_cmd->add_option("--n21", sa.n21);
  sim_cmd->add_option("--n23", sa.n23);
  sim_cmd->add_option("--n34", sa.n34);
  sim_cmd->add_option("--n43", sa.n43);
  sim_cmd->add_option("--alpha", sa.alpha, "forward time-share fraction");
  sim_cmd->add_option("--beta", sa.beta, "backward time-share fraction");
  sim_cmd->add_option("--payload", sa.payload, "M12=2,M32=0,...");
  sim_cmd->add_option("--p", sa.p, "symmetric IC direct gain");
  sim_cmd->add_option("--q", sa.q, "symmetric IC cross gain");
  sim_cmd->add_option("--k", sa.k, "routing demo link strength");
  sim_cmd->add_option("--message", sa.message, "routing demo message (M12|M34)");
  sim_cmd->add_flag("--no-self", sa.no_self, "omit self links");

  OracleArgs oa;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "zero-error feasible size tuples");
  oracle_cmd->add_option("--channel", oa.channel_file, "DetLaw JSON file");
  oracle_cmd->add_option("--builtin", oa.builtin,
                         "mod2-macbc|mod2-z|mod2-ic|bmult-ic|modk-*");
  oracle_cmd->add_option("--kappa", oa.kappa, "alphabet for modk builtins");
  oracle_cmd->add_option("--model", oa.model, "macbc|z|ic (with --channel)");
  oracle_cmd->add_option("--n", oa.n, "blocklength (1..3)");
  oracle_cmd->add_option("--sizes", oa.sizes, "max sizes, e.g. 4 or 2,2,2,2");
  oracle_cmd->add_option("--class", oa.cls, "nonadaptive|partial|full|compare");
  oracle_cmd->add_option("--budget", oa.budget, "candidate evaluation budget");
  oracle_cmd->add_option("--cache-dir", oa.cache_dir,
                         "cache results by channel content hash");

  MacBcArgs ma;
  auto* mac_cmd =
      app.add_subcommand("macbc-gap", "half-bit Gaussian MAC/BC check");
  mac_cmd->add_option("--p1", ma.p1);
  mac_cmd->add_option("--p2", ma.p2);
  mac_cmd->add_option("--p3", ma.p3);
  mac_cmd->add_option("--noise1", ma.noise1);
  mac_cmd->add_option("--noise2", ma.noise2);
  mac_cmd->add_option("--noise3", ma.noise3);
  mac_cmd->add_option("--alpha-steps", ma.alpha_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (region_cmd->parsed()) return cmd_region(g, ra);
    if (curve_cmd->parsed()) return cmd_curve(g, ca);
    if (gaps_cmd->parsed()) return cmd_gaps(g, ga);
    if (sim_cmd->parsed()) return cmd_simulate(g, sa);
    if (oracle_cmd->parsed()) return cmd_oracle(g, oa);
    if (mac_cmd->parsed()) return cmd_macbc_gap(g, ma);
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
