#pragma once

#include <string>
#include <vector>

#include "twoway/rational.hpp"

namespace twoway::curves {

/// Symmetric linear-deterministic IC parameters: direct gain p, cross gain q,
/// alpha = q/p.
struct SymLDParams {
  int p = 1;
  int q = 0;
  SymLDParams(int p_, int q_);
  Rat alpha() const { return Rat(q, p); }
};

/// A curve sample that is either an exact value or an open problem carrying
/// the best proved outer bound. Downstream output must render the gap
/// honestly, so open values never collapse to a number.
struct CurveValue {
  enum class Kind { exact, open };
  Kind kind = Kind::exact;
  Rat value;  // the value when exact; the proved outer bound when open

  static CurveValue exact(Rat v) { return {Kind::exact, std::move(v)}; }
  static CurveValue open(Rat bound) { return {Kind::open, std::move(bound)}; }
  bool is_open() const { return kind == Kind::open; }
};

/// Normalized symmetric capacity C_sym/p of the one-way linear deterministic
/// IC (the W curve): 1-a, a, 1-a/2, a/2, 1 on the breakpoints 1/2, 2/3, 1, 2.
Rat csym_oneway_ic(const Rat& alpha);

/// Two-way IC under full adaptation: known capacity for alpha >= 2/3 (equal
/// to the W there, capped at 1); open below 2/3 with outer bound 1 - alpha/2.
CurveValue csym_twoway_full(const Rat& alpha);

/// Two-way IC under partial adaptation: coincides with the W curve.
Rat csym_twoway_partial(const Rat& alpha);

/// One-way IC with perfect output feedback (the V curve): max(1-a/2, a/2).
Rat csym_ic_feedback(const Rat& alpha);

struct CurveRow {
  Rat alpha;
  Rat w;
  Rat v;
  CurveValue twf;
  Rat twp;
};

/// Evaluates all four curves on the grid, ordered by alpha.
std::vector<CurveRow> sweep_curves(std::vector<Rat> alphas);

/// header `alpha,w,v,twf,twp`; decimals at 6 digits; open cells print OPEN.
std::string curves_csv(const std::vector<CurveRow>& rows);
/// Exact num/den variant; open cells carry kind and outer bound.
std::string curves_json(const std::vector<CurveRow>& rows);

}  // namespace twoway::curves
