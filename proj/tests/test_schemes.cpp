#include <random>
#include <stdexcept>

#include "doctest.h"
#include "twoway/regions.hpp"
#include "twoway/schemes.hpp"
#include "twoway/sym_curves.hpp"

using namespace twoway;
using namespace twoway::schemes;

namespace {

region::RatePoint point(std::initializer_list<std::pair<std::string, Rat>> kv) {
  region::RatePoint p;
  for (const auto& [k, v] : kv) p.values[k] = v;
  return p;
}

void check_rates_in_region(const SchemeRun& run,
                           const region::RateRegion& reg) {
  std::vector<Rat> x(reg.coords().size(), Rat(0));
  for (const auto& [name, r] : run.achieved_rates)
    x[static_cast<std::size_t>(reg.coord_index("R" + name.substr(1)))] = r;
  CHECK(reg.contains(x));
}

}  // namespace

TEST_CASE("MAC/BC time share at the symmetric example point") {
  auto net = macbc_network(2, 2, 2, 2);
  TimeShareConfig cfg{Rat(1, 2), Rat(1, 2)};
  auto run = run_macbc_timeshare(net, cfg,
                                 {{"M12", 2}, {"M32", 2}, {"M21", 2}, {"M23", 2}});
  CHECK(run.passed);
  CHECK(run.nonadaptive);
  CHECK(run.blocklength == 2);
  for (const auto& name : {"M12", "M32", "M21", "M23"})
    CHECK(run.achieved_rates.at(name) == Rat(1));
  CHECK(run.decoded == run.payloads);
  check_rates_in_region(run, region::region_ld_macbc(2, 2, 2, 2));
}

TEST_CASE("alpha = 1 hits the single-user corner") {
  auto net = macbc_network(3, 2, 2, 1);
  TimeShareConfig cfg{Rat(1), Rat(1)};
  auto run = run_macbc_timeshare(net, cfg, {{"M12", 3}, {"M21", 2}});
  CHECK(run.passed);
  CHECK(run.blocklength == 1);
  CHECK(run.achieved_rates.at("M12") == Rat(3));
  CHECK(run.achieved_rates.at("M32") == Rat(0));
}

TEST_CASE("scalar mod-2 style network reaches sum one per direction") {
  auto net = macbc_network(1, 1, 1, 1);
  TimeShareConfig cfg{Rat(1, 2), Rat(1, 2)};
  auto run = run_macbc_timeshare(net, cfg,
                                 {{"M12", 1}, {"M32", 1}, {"M21", 1}, {"M23", 1}});
  CHECK(run.passed);
  CHECK(run.achieved_rates.at("M12") + run.achieved_rates.at("M32") == Rat(1));
  CHECK(run.achieved_rates.at("M21") + run.achieved_rates.at("M23") == Rat(1));
}

TEST_CASE("requests outside the region are rejected before running") {
  auto net = macbc_network(1, 1, 1, 1);
  TimeShareConfig cfg{Rat(1, 2), Rat(1, 2)};
  CHECK_THROWS_WITH_AS(
      run_macbc_timeshare(net, cfg, {{"M12", 2}, {"M32", 2}}),
      doctest::Contains("outside"), std::invalid_argument);
}

TEST_CASE("MAC/BC vertex sweep with gains up to 2") {
  for (int n12 = 0; n12 <= 2; ++n12)
    for (int n32 = 0; n32 <= 2; ++n32)
      for (int n21 = 0; n21 <= 2; ++n21)
        for (int n23 = 0; n23 <= 2; ++n23) {
          auto reg = region::region_ld_macbc(n12, n32, n21, n23);
          auto net = macbc_network(n12, n32, n21, n23);
          for (const auto& v : reg.vertex_points()) {
            auto run = run_macbc_point(net, v);
            INFO("gains ", n12, n32, n21, n23);
            CHECK(run.passed);
            CHECK(run.nonadaptive);
            for (const auto& [name, r] : run.achieved_rates)
              CHECK(r == v.values.at("R" + std::string(name).substr(1)));
          }
        }
}

TEST_CASE("Z equal-thirds time share") {
  auto net = z_network(1, 1, 1, 1, 1, 1);
  TimeShareConfig cfg{Rat(1, 3), Rat(1, 3)};
  auto run = run_z_timeshare(net, cfg,
                             {{"M12", 1}, {"M32", 1}, {"M34", 1},
                              {"M43", 1}, {"M23", 1}, {"M21", 1}});
  CHECK(run.passed);
  CHECK(run.blocklength == 3);
  Rat fwd = run.achieved_rates.at("M12") + run.achieved_rates.at("M32") +
            run.achieved_rates.at("M34");
  CHECK(fwd == Rat(1));
  check_rates_in_region(run, region::region_ld_z(1, 1, 1, 1, 1, 1));
}

TEST_CASE("Z vertex example with asymmetric gains") {
  auto net = z_network(2, 1, 3, 1, 1, 1);
  auto run = run_z_point(net, point({{"R12", Rat(2)},
                                     {"R32", Rat(0)},
                                     {"R34", Rat(2)},
                                     {"R43", Rat(1)},
                                     {"R23", Rat(0)},
                                     {"R21", Rat(0)}}));
  CHECK(run.passed);
  CHECK(run.achieved_rates.at("M12") == Rat(2));
  CHECK(run.achieved_rates.at("M34") == Rat(2));
}

TEST_CASE("Z degenerate n34 = 0 behaves like a MAC/BC") {
  auto net = z_network(2, 1, 0, 0, 1, 2);
  auto run = run_z_point(net, point({{"R12", Rat(1)},
                                     {"R32", Rat(1)},
                                     {"R34", Rat(0)},
                                     {"R43", Rat(0)},
                                     {"R23", Rat(1)},
                                     {"R21", Rat(1)}}));
  CHECK(run.passed);
}

TEST_CASE("Z vertex sweep with gains up to 2") {
  for (int g = 0; g < 3 * 3 * 3 * 3; ++g) {
    int n12 = g % 3, n32 = (g / 3) % 3, n34 = (g / 9) % 3, n43 = (g / 27) % 3;
    auto reg = region::region_ld_z(n12, n32, n34, n43, 1, 2);
    auto net = z_network(n12, n32, n34, n43, 1, 2);
    for (const auto& v : reg.vertex_points()) {
      auto run = run_z_point(net, v);
      INFO("gains ", n12, " ", n32, " ", n34, " ", n43);
      CHECK(run.passed);
      CHECK(run.nonadaptive);
    }
  }
}

TEST_CASE("symmetric IC allocations across the alpha grid") {
  struct Case {
    int p, q;
    Rat rate;
  };
  std::vector<Case> cases = {
      {3, 0, Rat(3)},      // alpha 0
      {4, 1, Rat(3)},      // 1/4
      {4, 2, Rat(2)},      // 1/2
      {3, 2, Rat(2)},      // 2/3
      {6, 4, Rat(4)},      // 2/3 again, larger
      {3, 3, Rat(3, 2)},   // 1 with odd p
      {4, 4, Rat(2)},      // 1 with even p
      {2, 3, Rat(3, 2)},   // 3/2 with odd q
      {4, 6, Rat(3)},      // 3/2 with even q
      {2, 4, Rat(2)},      // 2
      {2, 6, Rat(2)},      // 3
  };
  for (const auto& c : cases) {
    INFO("p=", c.p, " q=", c.q);
    auto run = run_ic_symmetric(c.p, c.q, c.rate);
    CHECK(run.passed);
    CHECK(run.nonadaptive);
    for (const auto& name : {"M12", "M34", "M21", "M43"})
      CHECK(run.achieved_rates.at(name) == c.rate);
    // the certified rate point sits in the partial-adaptation region
    auto reg = region::region_ld_ic_sym(c.p, c.q);
    std::vector<Rat> x(4, c.rate);
    CHECK(reg.contains(x));
  }
}

TEST_CASE("IC rejects off-grid alpha and wrong targets") {
  CHECK_THROWS(run_ic_symmetric(4, 3, Rat(1)));  // alpha = 3/4 unsupported
  CHECK_THROWS_WITH_AS(run_ic_symmetric(4, 2, Rat(3)),
                       doctest::Contains("C_sym"), std::invalid_argument);
}

TEST_CASE("routing demo delivers one bit over three hops") {
  auto demo = run_routing_demo(1, "M12");
  CHECK(demo.run.passed);
  CHECK(demo.adaptive_rate == Rat(1, 3));
  CHECK(demo.run.achieved_rates.at("M12") == Rat(1, 3));
  // the relay schedule is genuinely adaptive
  CHECK_FALSE(demo.run.nonadaptive);
  CHECK(demo.nonadaptive_rate_zero);

  auto mirror = run_routing_demo(1, "M34");
  CHECK(mirror.run.passed);
  CHECK(mirror.run.achieved_rates.at("M34") == Rat(1, 3));
}

TEST_CASE("transcripts serialize one record per node per slot") {
  auto net = macbc_network(1, 1, 1, 1);
  TimeShareConfig cfg{Rat(1), Rat(1)};
  auto run = run_macbc_timeshare(net, cfg, {{"M12", 1}, {"M21", 1}});
  auto jsonl = run.transcript_jsonl();
  int lines = 0;
  for (char c : jsonl) lines += c == '\n';
  CHECK(lines == 3 * run.blocklength);
  CHECK(jsonl.find("\"node\":1") != std::string::npos);
}

TEST_CASE("random interior points schedule and decode") {
  std::mt19937_64 rng(314);
  int ran = 0;
  while (ran < 40) {
    int g[6];
    for (int& x : g) x = static_cast<int>(rng() % 4);
    int L = 2 + static_cast<int>(rng() % 3);
    auto reg = region::region_ld_z(g[0], g[1], g[2], g[3], g[4], g[5]);
    // random integer payload totals, kept only when the rate point fits
    std::vector<Rat> rates;
    std::map<std::string, int> payload;
    const char* names[6] = {"M12", "M32", "M34", "M43", "M23", "M21"};
    for (int i = 0; i < 6; ++i) {
      int bits = static_cast<int>(rng() % (static_cast<unsigned>(g[i]) * L + 1));
      payload[names[i]] = bits;
      rates.push_back(Rat(bits, L));
    }
    if (!reg.contains(rates)) continue;
    ++ran;
    auto net = z_network(g[0], g[1], g[2], g[3], g[4], g[5]);
    TimeShareConfig cfg{Rat(1, L), Rat(1, L)};
    auto run = run_z_timeshare(net, cfg, payload);
    INFO("gains ", g[0], g[1], g[2], g[3], g[4], g[5], " L=", L);
    CHECK(run.passed);
    CHECK(run.blocklength == L);
  }
}

TEST_CASE("runs are reproducible per seed") {
  auto net = macbc_network(2, 1, 1, 2);
  TimeShareConfig cfg{Rat(1, 2), Rat(1, 2)};
  std::map<std::string, int> pl = {{"M12", 2}, {"M32", 1}, {"M21", 1}, {"M23", 2}};
  auto a = run_macbc_timeshare(net, cfg, pl, 42);
  auto b = run_macbc_timeshare(net, cfg, pl, 42);
  auto c = run_macbc_timeshare(net, cfg, pl, 43);
  CHECK(a.payloads == b.payloads);
  CHECK(a.transcript_jsonl() == b.transcript_jsonl());
  CHECK(a.payloads != c.payloads);
}
