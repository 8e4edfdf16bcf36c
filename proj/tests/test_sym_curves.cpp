#include "doctest.h"
#include "twoway/regions.hpp"
#include "twoway/sym_curves.hpp"

using namespace twoway;
using namespace twoway::curves;

TEST_CASE("the W piecewise form matches the region maximum (defining check)") {
  // for every rational alpha = q/p: csym * 2p == max(R12+R34) over the region
  for (int p = 1; p <= 8; ++p) {
    for (int q = 0; q <= 3 * p; ++q) {
      auto reg = region::region_ld_ic_sym(p, q);
      Rat max_sum =
          reg.max_weighted_sum({{"R12", Rat(1)}, {"R34", Rat(1)}});
      INFO("p=", p, " q=", q);
      CHECK(csym_oneway_ic(Rat(q, p)) * 2 * p == max_sum);
    }
  }
}

TEST_CASE("W curve breakpoints and samples") {
  CHECK(csym_oneway_ic(Rat(0)) == Rat(1));
  CHECK(csym_oneway_ic(Rat(1, 4)) == Rat(3, 4));
  CHECK(csym_oneway_ic(Rat(1, 2)) == Rat(1, 2));
  CHECK(csym_oneway_ic(Rat(2, 3)) == Rat(2, 3));
  CHECK(csym_oneway_ic(Rat(1)) == Rat(1, 2));
  CHECK(csym_oneway_ic(Rat(2)) == Rat(1));
  CHECK(csym_oneway_ic(Rat(5)) == Rat(1));
  CHECK_THROWS(csym_oneway_ic(Rat(-1, 2)));
}

TEST_CASE("two-way full adaptation curve") {
  auto at_23 = csym_twoway_full(Rat(2, 3));
  CHECK_FALSE(at_23.is_open());
  CHECK(at_23.value == Rat(2, 3));
  auto at_3 = csym_twoway_full(Rat(3));
  CHECK_FALSE(at_3.is_open());
  CHECK(at_3.value == Rat(1));
  auto at_half = csym_twoway_full(Rat(1, 2));
  CHECK(at_half.is_open());
  CHECK(at_half.value == Rat(3, 4));  // proved outer bound
}

TEST_CASE("feedback V curve") {
  CHECK(csym_ic_feedback(Rat(1)) == Rat(1, 2));
  CHECK(csym_ic_feedback(Rat(4)) == Rat(2));
  CHECK(csym_ic_feedback(Rat(2, 3)) == Rat(2, 3));
}

TEST_CASE("curve relations on a grid") {
  for (int k = 0; k <= 36; ++k) {
    Rat a(k, 12);
    // partial adaptation coincides with the one-way W everywhere
    CHECK(csym_twoway_partial(a) == csym_oneway_ic(a));
    // feedback dominates; the curves touch on [2/3, 2] and at alpha = 0
    CHECK(csym_ic_feedback(a) >= csym_oneway_ic(a));
    bool touching = (Rat(2, 3) <= a && a <= Rat(2)) || a == Rat(0);
    CHECK((csym_ic_feedback(a) == csym_oneway_ic(a)) == touching);
    // full coincides with W where known
    auto twf = csym_twoway_full(a);
    if (a >= Rat(2, 3)) {
      CHECK_FALSE(twf.is_open());
      CHECK(twf.value == csym_oneway_ic(a));
    } else {
      CHECK(twf.is_open());
    }
  }
}

TEST_CASE("sweep output formats") {
  std::vector<Rat> grid;
  for (int k = 0; k <= 36; ++k) grid.push_back(Rat(k, 12));
  auto rows = sweep_curves(grid);
  REQUIRE(rows.size() == 37);
  auto csv = curves_csv(rows);
  // header + 37 rows
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 38);
  CHECK(csv.rfind("alpha,w,v,twf,twp\n", 0) == 0);
  // alpha = 1/3 row is OPEN
  CHECK(csv.find("0.333333,0.666667,0.833333,OPEN,0.666667") != std::string::npos);
  // alpha = 2/3 row coincides across all curves
  CHECK(csv.find("0.666667,0.666667,0.666667,0.666667,0.666667") !=
        std::string::npos);
  auto json = curves_json(rows);
  CHECK(json.find("\"outer_bound\"") != std::string::npos);
  CHECK(json.find("\"2/3\"") != std::string::npos);
}
