#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "twoway/gaussian_bounds.hpp"

using namespace twoway::gauss;

namespace {

// independent long-double evaluation used to freeze expected values
long double lfull(long double s, long double i) {
  return 0.5L * std::log2(1.0L + s + i + 2.0L * std::sqrt(s * i)) +
         0.5L * std::log2(1.0L + s / (1.0L + i));
}

}  // namespace

TEST_CASE("regime classification with inclusive boundaries") {
  auto vs = classify_regime({100, 10100});  // INR = SNR(1+SNR) exactly
  CHECK(vs.regime == Regime::very_strong);
  auto st = classify_regime({10, 10});
  CHECK(st.regime == Regime::strong);
  auto wk = classify_regime({10, 0.5});
  CHECK(wk.regime == Regime::weak);
  CHECK(wk.inr_lt_1);
  CHECK_FALSE(st.inr_lt_1);
  CHECK_THROWS(GaussianSymParams(0, 1));
  CHECK_THROWS(GaussianSymParams(1, -1));
}

TEST_CASE("full-adaptation outer bound") {
  // tiny-SNR limit collapses to half the log of 1+INR
  CHECK(outer_full_rsym({1e-15, 3}) ==
        doctest::Approx(0.5 * std::log2(4.0)).epsilon(1e-6));
  // frozen from the independent evaluator: 1/2 log2(5) + 1/2 log2(1.5)
  CHECK(outer_full_rsym({1, 1}) ==
        doctest::Approx(static_cast<double>(lfull(1, 1))).epsilon(1e-12));
  CHECK(outer_full_rsym({1, 1}) == doctest::Approx(1.4534452978).epsilon(1e-9));
  CHECK(outer_full_rsym({100, 1000}) == doctest::Approx(5.4485).epsilon(1e-4));
}

TEST_CASE("partial-adaptation forward bound") {
  CHECK(outer_partial_forward({4, 0}) ==
        doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(outer_partial_forward({1, 1}) ==
        doctest::Approx(std::log2(2.5)).epsilon(1e-12));
}

TEST_CASE("partial-adaptation backward bound and its branches") {
  CHECK(outer_partial_backward({4, 2}) ==
        doctest::Approx(std::log2(5.0)).epsilon(1e-12));  // SNR <= INR^3
  double s = std::sqrt(100.0) + std::sqrt(2.0);
  CHECK(outer_partial_backward({100, 2}) ==
        doctest::Approx(std::log2(1 + s * s / 3.0)).epsilon(1e-12));
  // INR = 0 routes to the second branch
  CHECK(outer_partial_backward({9, 0}) ==
        doctest::Approx(std::log2(10.0)).epsilon(1e-12));
  // backward dominates forward (partial adaptation helps only one side)
  for (double sdb = 0; sdb <= 40; sdb += 4.5)
    for (double idb = 0; idb <= 40; idb += 4.5) {
      GaussianSymParams p(std::pow(10, sdb / 10), std::pow(10, idb / 10));
      CHECK(outer_partial_backward(p) >= outer_partial_forward(p) - 1e-12);
    }
}

TEST_CASE("lambda24 closed-form optimizer") {
  auto c = optimize_lambda24({4, 2});
  CHECK(c.defined);
  CHECK(c.theta == 0.0);
  CHECK(c.lambda24_mag == doctest::Approx(std::sqrt(8.0) / 4.0).epsilon(1e-12));
  auto clipped = optimize_lambda24({100, 2});
  CHECK(clipped.lambda24_mag == 1.0);
  auto undef = optimize_lambda24({4, 0});
  CHECK_FALSE(undef.defined);
  CHECK(undef.lambda24_mag == 0.0);

  // the objective at the optimizer reproduces the closed-form bound
  for (double sdb = 0; sdb <= 50; sdb += 7)
    for (double idb = 0; idb <= 50; idb += 7) {
      GaussianSymParams p(std::pow(10, sdb / 10), std::pow(10, idb / 10));
      auto cc = optimize_lambda24(p);
      CHECK(lambda24_objective(p, cc.lambda24_mag, cc.theta) ==
            doctest::Approx(outer_partial_backward(p)).epsilon(1e-9));
    }
}

TEST_CASE("appendix sum objective is extremal at (1,0,0)") {
  for (double sdb : {0.0, 10.0, 23.0, 40.0})
    for (double idb : {0.0, 7.0, 19.0, 33.0}) {
      GaussianSymParams p(std::pow(10, sdb / 10), std::pow(10, idb / 10));
      CHECK(full_sum_objective(p, 1.0, 0.0, 0.0) ==
            doctest::Approx(outer_full_rsym(p)).epsilon(1e-12));
      for (double l13 = 0; l13 <= 1.0; l13 += 0.125)
        for (double l34 = 0; l34 <= 1.0; l34 += 0.125)
          for (double th = 0; th < 6.3; th += 0.3)
            CHECK(full_sum_objective(p, l13, l34, th) <=
                  outer_full_rsym(p) + 1e-9);
    }
}

TEST_CASE("inner bounds") {
  GaussianSymParams p(1, 1);
  auto r = inner_rates(p);
  CHECK(r.sato == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
  CHECK(r.pt2pt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.hk_valid);
  auto low = inner_rates({10, 0.5});
  CHECK_FALSE(low.hk_valid);
  CHECK_THROWS(low.hk());
  CHECK(low.r_inr_lt1 == doctest::Approx(std::log2(1 + 10 / 1.5)).epsilon(1e-12));
}

TEST_CASE("gap report routing") {
  // strong: frozen example
  auto strong = gap_report({100, 1000});
  CHECK(strong.info.regime == Regime::strong);
  REQUIRE(strong.cases.size() == 1);
  CHECK(strong.cases[0].table_limit == 1.0);
  CHECK(strong.cases[0].gap_bits == doctest::Approx(0.3963).epsilon(1e-3));
  CHECK(strong.pass);

  // very strong: exact zero
  auto vs = gap_report({10, 10000});
  CHECK(vs.info.regime == Regime::very_strong);
  CHECK(vs.cases[0].gap_bits == 0.0);
  CHECK(vs.cases[0].table_limit == 0.0);
  CHECK(vs.pass);

  // weak with HK2 active and SNR > INR^3: backward limit 2
  GaussianSymParams wk(1e5, 40);
  auto rep = gap_report(wk);
  CHECK(rep.info.regime == Regime::weak);
  bool saw_bwd2 = false;
  for (const auto& c : rep.cases)
    if (c.name == "weak_hk2_bwd") {
      CHECK(c.table_limit == 2.0);
      saw_bwd2 = true;
    }
  if (rep.cases.size() == 2) CHECK(saw_bwd2);
  CHECK(rep.pass);

  // refined strong-forward flag adds the half-bit case
  GapOptions opt;
  opt.refined_strong_forward = true;
  auto refined = gap_report({100, 1000}, opt);
  REQUIRE(refined.cases.size() == 2);
  CHECK(refined.cases[1].table_limit == 0.5);
  CHECK(refined.pass);
}

TEST_CASE("gap report passes across a coarse grid") {
  for (double sdb = 0; sdb <= 60; sdb += 3)
    for (double idb = 0; idb <= 60; idb += 3) {
      GaussianSymParams p(std::pow(10, sdb / 10), std::pow(10, idb / 10));
      auto rep = gap_report(p);
      INFO("snr_db=", sdb, " inr_db=", idb, " case=", rep.binding().name);
      CHECK(rep.pass);
    }
}

TEST_CASE("bounds are monotone in SNR at fixed INR") {
  for (double idb : {0.0, 10.0, 30.0}) {
    double inr = std::pow(10, idb / 10);
    double prev_full = -1, prev_fwd = -1, prev_bwd = -1;
    for (double sdb = 0; sdb <= 60; sdb += 2) {
      GaussianSymParams p(std::pow(10, sdb / 10), inr);
      CHECK(outer_full_rsym(p) >= prev_full);
      CHECK(outer_partial_forward(p) >= prev_fwd);
      CHECK(outer_partial_backward(p) >= prev_bwd);
      prev_full = outer_full_rsym(p);
      prev_fwd = outer_partial_forward(p);
      prev_bwd = outer_partial_backward(p);
    }
  }
}

TEST_CASE("MAC/BC half-bit report") {
  auto rep = macbc_bounds({1, 1, 1, 1, 1, 1});
  CHECK(rep.mac_gap ==
        doctest::Approx(0.5 * std::log2(5.0 / 3.0)).epsilon(1e-12));
  CHECK(rep.mac_gap <= 0.5 + 1e-9);
  CHECK(rep.bc_gap <= 0.5 + 1e-9);
  CHECK(rep.pass);

  // vanishing P1 kills the correlation advantage
  auto lone = macbc_bounds({1e-300, 1, 1, 1, 1, 1});
  CHECK(lone.mac_gap == doctest::Approx(0.0).epsilon(1e-9));

  // N1 = N3 makes the BC outer factor exactly 2 (the tight 1/2-bit case)
  auto tight = macbc_bounds({1, 1e9, 1, 1, 1, 1});
  CHECK(tight.bc_gap <= 0.5 + 1e-9);
  CHECK(tight.bc_gap > 0.49);

  CHECK_THROWS_WITH_AS(macbc_bounds({1, 1, 1, 2, 1, 1}),
                       doctest::Contains("swap"), std::invalid_argument);
}
