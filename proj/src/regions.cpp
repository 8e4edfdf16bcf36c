#include "twoway/regions.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoway::region {

namespace {

int pos(int v) { return v > 0 ? v : 0; }

Inequality ineq(std::vector<Rat> a, Rat b, std::string label,
                bool full = true) {
  Inequality iq;
  iq.a = std::move(a);
  iq.b = std::move(b);
  iq.label = std::move(label);
  iq.full_adaptation = full;
  return iq;
}

void require_nonneg(std::initializer_list<int> gains) {
  for (int g : gains)
    if (g < 0) throw std::invalid_argument("link gains must be >= 0");
}

}  // namespace

RateRegion region_mod2_macbc() {
  std::vector<std::string> coords = {"R12", "R32", "R21", "R23"};
  std::vector<Inequality> iqs;
  iqs.push_back(ineq({1, 1, 0, 0}, 1, "-> sum"));
  iqs.push_back(ineq({0, 0, 1, 1}, 1, "<- sum"));
  return RateRegion(coords, iqs);
}

RateRegion region_modk(ld::Topology model, int kappa) {
  if (kappa < 2) throw std::invalid_argument("region_modk: kappa must be >= 2");
  switch (model) {
    case ld::Topology::macbc: {
      std::vector<std::string> coords = {"R12", "R32", "R21", "R23"};
      std::vector<Inequality> iqs;
      iqs.push_back(ineq({1, 1, 0, 0}, 1, "-> sum"));
      iqs.push_back(ineq({0, 0, 1, 1}, 1, "<- sum"));
      return RateRegion(coords, iqs, kappa);
    }
    case ld::Topology::z: {
      std::vector<std::string> coords = {"R12", "R32", "R34",
                                         "R43", "R23", "R21"};
      std::vector<Inequality> iqs;
      iqs.push_back(ineq({1, 1, 1, 0, 0, 0}, 1, "-> sum"));
      iqs.push_back(ineq({0, 0, 0, 1, 1, 1}, 1, "<- sum"));
      return RateRegion(coords, iqs, kappa);
    }
    case ld::Topology::ic: {
      std::vector<std::string> coords = {"R12", "R34", "R21", "R43"};
      std::vector<Inequality> iqs;
      iqs.push_back(ineq({1, 1, 0, 0}, 1, "-> sum"));
      iqs.push_back(ineq({0, 0, 1, 1}, 1, "<- sum"));
      return RateRegion(coords, iqs, kappa);
    }
  }
  throw std::logic_error("region_modk");
}

RateRegion region_ld_macbc(int n12, int n32, int n21, int n23) {
  require_nonneg({n12, n32, n21, n23});
  std::vector<std::string> coords = {"R12", "R32", "R21", "R23"};
  std::vector<Inequality> iqs;
  iqs.push_back(ineq({1, 0, 0, 0}, n12, "-> R12"));
  iqs.push_back(ineq({0, 1, 0, 0}, n32, "-> R32"));
  iqs.push_back(ineq({1, 1, 0, 0}, std::max(n12, n32), "-> sum"));
  iqs.push_back(ineq({0, 0, 1, 0}, n21, "<- R21"));
  iqs.push_back(ineq({0, 0, 0, 1}, n23, "<- R23"));
  iqs.push_back(ineq({0, 0, 1, 1}, std::max(n21, n23), "<- sum"));
  return RateRegion(coords, iqs);
}

RateRegion region_ld_z(int n12, int n32, int n34, int n43, int n23, int n21) {
  require_nonneg({n12, n32, n34, n43, n23, n21});
  std::vector<std::string> coords = {"R12", "R32", "R34", "R43", "R23", "R21"};
  std::vector<Inequality> iqs;
  iqs.push_back(ineq({1, 0, 0, 0, 0, 0}, n12, "-> R12"));
  iqs.push_back(ineq({0, 1, 0, 0, 0, 0}, n32, "-> R32"));
  iqs.push_back(ineq({0, 0, 1, 0, 0, 0}, n34, "-> R34"));
  iqs.push_back(ineq({1, 1, 0, 0, 0, 0}, std::max(n12, n32), "-> pair 12+32"));
  iqs.push_back(ineq({0, 1, 1, 0, 0, 0}, std::max(n32, n34), "-> pair 32+34"));
  iqs.push_back(ineq({1, 1, 1, 0, 0, 0},
                     std::max(n12, n32) + pos(n34 - n32), "-> triple"));
  iqs.push_back(ineq({0, 0, 0, 1, 0, 0}, n43, "<- R43"));
  iqs.push_back(ineq({0, 0, 0, 0, 1, 0}, n23, "<- R23"));
  iqs.push_back(ineq({0, 0, 0, 0, 0, 1}, n21, "<- R21"));
  iqs.push_back(ineq({0, 0, 0, 1, 1, 0}, std::max(n43, n23), "<- pair 43+23"));
  iqs.push_back(ineq({0, 0, 0, 0, 1, 1}, std::max(n23, n21), "<- pair 23+21"));
  iqs.push_back(ineq({0, 0, 0, 1, 1, 1},
                     std::max(n43, n23) + pos(n21 - n23), "<- triple"));
  return RateRegion(coords, iqs);
}

RateRegion region_ld_ic(int n12, int n34, int n32, int n14, int n21, int n43,
                        int n23, int n41) {
  require_nonneg({n12, n34, n32, n14, n21, n43, n23, n41});
  std::vector<std::string> coords = {"R12", "R34", "R21", "R43"};
  std::vector<Inequality> iqs;
  iqs.push_back(ineq({1, 0, 0, 0}, n12, "-> a R12"));
  iqs.push_back(ineq({0, 1, 0, 0}, n34, "-> a R34"));
  iqs.push_back(ineq({1, 1, 0, 0}, std::max(n12, n32) + pos(n34 - n32), "-> b"));
  iqs.push_back(ineq({1, 1, 0, 0}, std::max(n34, n14) + pos(n12 - n14), "-> c"));
  iqs.push_back(ineq({1, 1, 0, 0},
                     std::max(pos(n12 - n14), n32) + std::max(pos(n34 - n32), n14),
                     "-> d", false));
  iqs.push_back(ineq({2, 1, 0, 0},
                     std::max(n12, n32) + pos(n12 - n14) +
                         std::max(pos(n34 - n32), n14),
                     "-> e", false));
  iqs.push_back(ineq({1, 2, 0, 0},
                     std::max(n34, n14) + pos(n34 - n32) +
                         std::max(pos(n12 - n14), n32),
                     "-> f", false));
  iqs.push_back(ineq({0, 0, 1, 0}, n21, "<- a R21"));
  iqs.push_back(ineq({0, 0, 0, 1}, n43, "<- a R43"));
  iqs.push_back(ineq({0, 0, 1, 1}, std::max(n21, n41) + pos(n43 - n41), "<- b"));
  iqs.push_back(ineq({0, 0, 1, 1}, std::max(n43, n23) + pos(n21 - n23), "<- c"));
  iqs.push_back(ineq({0, 0, 1, 1},
                     std::max(pos(n21 - n23), n41) + std::max(pos(n43 - n41), n23),
                     "<- d", false));
  iqs.push_back(ineq({0, 0, 2, 1},
                     std::max(n21, n41) + pos(n21 - n23) +
                         std::max(pos(n43 - n41), n23),
                     "<- e", false));
  iqs.push_back(ineq({0, 0, 1, 2},
                     std::max(n43, n23) + pos(n43 - n41) +
                         std::max(pos(n21 - n23), n41),
                     "<- f", false));
  return RateRegion(coords, iqs);
}

RateRegion region_ld_ic_sym(int p, int q) {
  return region_ld_ic(p, p, q, q, p, p, q, q);
}

}  // namespace twoway::region
