#include "twoway/sym_curves.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace twoway::curves {

SymLDParams::SymLDParams(int p_, int q_) : p(p_), q(q_) {
  if (p < 1) throw std::invalid_argument("SymLDParams: p must be >= 1");
  if (q < 0) throw std::invalid_argument("SymLDParams: q must be >= 0");
}

namespace {

void require_nonneg(const Rat& alpha) {
  if (alpha.sign() < 0)
    throw std::invalid_argument("alpha must be nonnegative");
}

const Rat kHalf(1, 2);
const Rat kTwoThirds(2, 3);

}  // namespace

Rat csym_oneway_ic(const Rat& alpha) {
  require_nonneg(alpha);
  if (alpha <= kHalf) return Rat(1) - alpha;
  if (alpha <= kTwoThirds) return alpha;
  if (alpha <= Rat(1)) return Rat(1) - alpha / 2;
  if (alpha <= Rat(2)) return alpha / 2;
  return Rat(1);
}

CurveValue csym_twoway_full(const Rat& alpha) {
  require_nonneg(alpha);
  if (alpha < kTwoThirds)
    return CurveValue::open(Rat(1) - alpha / 2);
  return CurveValue::exact(rat_min(Rat(1), rat_max(Rat(1) - alpha / 2, alpha / 2)));
}

Rat csym_twoway_partial(const Rat& alpha) { return csym_oneway_ic(alpha); }

Rat csym_ic_feedback(const Rat& alpha) {
  require_nonneg(alpha);
  return rat_max(Rat(1) - alpha / 2, alpha / 2);
}

std::vector<CurveRow> sweep_curves(std::vector<Rat> alphas) {
  std::sort(alphas.begin(), alphas.end());
  std::vector<CurveRow> rows;
  rows.reserve(alphas.size());
  for (const auto& a : alphas)
    rows.push_back({a, csym_oneway_ic(a), csym_ic_feedback(a),
                    csym_twoway_full(a), csym_twoway_partial(a)});
  return rows;
}

std::string curves_csv(const std::vector<CurveRow>& rows) {
  std::string out = "alpha,w,v,twf,twp\n";
  char buf[64];
  auto num = [&buf](const Rat& r) {
    std::snprintf(buf, sizeof buf, "%.6f", r.to_double());
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out += num(r.alpha) + "," + num(r.w) + "," + num(r.v) + ",";
    out += r.twf.is_open() ? "OPEN" : num(r.twf.value);
    out += "," + num(r.twp) + "\n";
  }
  return out;
}

std::string curves_json(const std::vector<CurveRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e;
    e["alpha"] = r.alpha.str();
    e["w"] = r.w.str();
    e["v"] = r.v.str();
    if (r.twf.is_open()) {
      e["twf"] = {{"kind", "open"}, {"outer_bound", r.twf.value.str()}};
    } else {
      e["twf"] = {{"kind", "exact"}, {"value", r.twf.value.str()}};
    }
    e["twp"] = r.twp.str();
    arr.push_back(e);
  }
  return arr.dump(2);
}

}  // namespace twoway::curves
