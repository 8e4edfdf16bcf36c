#include "twoway/gaussian_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twoway::gauss {

GaussianSymParams::GaussianSymParams(double snr_, double inr_)
    : snr(snr_), inr(inr_) {
  if (!(snr > 0)) throw std::invalid_argument("GaussianSymParams: snr must be > 0");
  if (!(inr >= 0)) throw std::invalid_argument("GaussianSymParams: inr must be >= 0");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::weak: return "weak";
    case Regime::strong: return "strong";
    case Regime::very_strong: return "very_strong";
  }
  return "?";
}

RegimeInfo classify_regime(const GaussianSymParams& p) {
  RegimeInfo info{};
  info.inr_lt_1 = p.inr < 1.0;
  if (p.inr >= p.snr * (1.0 + p.snr))
    info.regime = Regime::very_strong;
  else if (p.inr >= p.snr)
    info.regime = Regime::strong;
  else
    info.regime = Regime::weak;
  return info;
}

double outer_full_rsym(const GaussianSymParams& p) {
  return 0.5 * std::log2(1.0 + p.snr + p.inr + 2.0 * std::sqrt(p.snr * p.inr)) +
         0.5 * std::log2(1.0 + p.snr / (1.0 + p.inr));
}

double outer_partial_forward(const GaussianSymParams& p) {
  return std::log2(1.0 + p.inr + p.snr - p.inr * p.snr / (1.0 + p.inr));
}

double outer_partial_backward(const GaussianSymParams& p) {
  if (p.inr > 0 && p.snr <= p.inr * p.inr * p.inr)
    return std::log2(1.0 + p.inr + p.snr / p.inr);
  double s = std::sqrt(p.snr) + std::sqrt(p.inr);
  return std::log2(1.0 + s * s / (1.0 + p.inr));
}

double outer_partial_strong_forward(const GaussianSymParams& p) {
  return 0.5 * std::log2(1.0 + p.snr + p.inr) +
         0.5 * std::log2(1.0 + p.snr / (1.0 + p.inr));
}

CorrCoeffs optimize_lambda24(const GaussianSymParams& p) {
  if (p.inr == 0) return {0.0, 0.0, false};
  double mag = std::sqrt(p.snr * p.inr) / (p.inr * p.inr);
  return {std::min(1.0, mag), 0.0, true};
}

double lambda24_objective(const GaussianSymParams& p, double mag,
                          double theta) {
  double c = std::cos(theta);
  double root = std::sqrt(p.snr * p.inr);
  double num = p.snr * p.inr + p.inr * p.inr * mag * mag +
               2.0 * std::sqrt(p.snr) * std::pow(p.inr, 1.5) * mag * c;
  return std::log2(1.0 + p.inr + p.snr + 2.0 * mag * c * root -
                   num / (1.0 + p.inr));
}

double full_sum_objective(const GaussianSymParams& p, double lambda13,
                          double lambda34, double theta) {
  double first = 0.5 * std::log2(p.snr + p.inr +
                                 2.0 * lambda13 * std::cos(theta) *
                                     std::sqrt(p.snr * p.inr) +
                                 1.0);
  double u = 1.0 - lambda34 * lambda34;
  double second = 0.5 * std::log2(1.0 + p.snr * u / (p.inr * u + 1.0));
  return first + second;
}

double InnerRates::hk() const {
  if (!hk_valid)
    throw std::domain_error("Han-Kobayashi split requires INR >= 1");
  return std::min(hk1, hk2);
}

InnerRates inner_rates(const GaussianSymParams& p) {
  InnerRates r{};
  r.sato = 0.5 * std::log2(1.0 + p.snr + p.inr);
  r.hk_valid = p.inr >= 1.0;
  if (r.hk_valid) {
    r.hk1 = 0.5 * std::log2(1.0 + p.inr + p.snr) +
            0.5 * std::log2(2.0 + p.snr / p.inr) - 1.0;
    r.hk2 = std::log2(1.0 + p.inr + p.snr / p.inr) - 1.0;
  } else {
    r.hk1 = r.hk2 = 0.0;
  }
  r.r_inr_lt1 = std::log2(1.0 + p.snr / (1.0 + p.inr));
  r.pt2pt = std::log2(1.0 + p.snr);
  return r;
}

const GapCase& GapReport::binding() const {
  if (cases.empty()) throw std::logic_error("GapReport: empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cases.size(); ++i)
    if (cases[i].gap_bits - cases[i].table_limit >=
        cases[best].gap_bits - cases[best].table_limit)
      best = i;
  return cases[best];
}

GapReport gap_report(const GaussianSymParams& p, const GapOptions& opt) {
  GapReport rep;
  rep.info = classify_regime(p);
  auto inner = inner_rates(p);

  auto add = [&rep, &opt](std::string name, std::string outer_name, double outer,
                          std::string inner_name, double inner_v, double limit) {
    GapCase c;
    c.name = std::move(name);
    c.outer_used = std::move(outer_name);
    c.inner_used = std::move(inner_name);
    c.outer = outer;
    c.inner = inner_v;
    c.gap_bits = outer - inner_v;
    c.table_limit = limit;
    c.pass = c.gap_bits <= limit + opt.tol;
    rep.cases.push_back(std::move(c));
  };

  switch (rep.info.regime) {
    case Regime::very_strong:
      // capacity: the partial-adaptation single-rate bound is achieved
      add("very_strong", "single_rate", inner.pt2pt, "pt2pt", inner.pt2pt, 0.0);
      break;
    case Regime::strong:
      add("strong", "outer_full", outer_full_rsym(p), "sato", inner.sato, 1.0);
      if (opt.refined_strong_forward)
        add("strong_refined_fwd_partial", "outer_partial_strong_forward",
            outer_partial_strong_forward(p), "sato", inner.sato, 0.5);
      break;
    case Regime::weak:
      if (rep.info.inr_lt_1) {
        add("weak_inr_lt_1", "outer_full", outer_full_rsym(p), "r_inr_lt1",
            inner.r_inr_lt1, 1.0);
      } else if (inner.hk1 <= inner.hk2) {
        add("weak_hk1", "outer_full", outer_full_rsym(p), "hk1", inner.hk1, 1.5);
      } else {
        add("weak_hk2_fwd", "outer_partial_forward", outer_partial_forward(p),
            "hk2", inner.hk2, 1.0);
        bool cubic = p.snr <= p.inr * p.inr * p.inr;
        add("weak_hk2_bwd", "outer_partial_backward", outer_partial_backward(p),
            "hk2", inner.hk2, cubic ? 1.0 : 2.0);
      }
      break;
  }
  rep.pass = true;
  for (const auto& c : rep.cases) rep.pass &= c.pass;
  return rep;
}

MacBcReport macbc_bounds(const MacBcParams& m, int alpha_steps, double tol) {
  if (!(m.p1 > 0 && m.p2 > 0 && m.p3 > 0 && m.n1 > 0 && m.n2 > 0 && m.n3 > 0))
    throw std::invalid_argument("macbc_bounds: powers and noises must be > 0");
  if (m.n3 < m.n1)
    throw std::invalid_argument(
        "macbc_bounds: requires N3 >= N1; swap the roles of receivers 1 and 3");
  if (alpha_steps < 2) throw std::invalid_argument("macbc_bounds: alpha_steps >= 2");

  MacBcReport rep;
  rep.mac_inner = 0.5 * std::log2(1.0 + (m.p1 + m.p3) / m.n2);
  rep.mac_outer =
      0.5 * std::log2(1.0 + (m.p1 + m.p3 + 2.0 * std::sqrt(m.p1 * m.p3)) / m.n2);
  rep.mac_gap = rep.mac_outer - rep.mac_inner;

  rep.bc_gap = 0;
  for (int i = 0; i < alpha_steps; ++i) {
    double a = static_cast<double>(i) / (alpha_steps - 1);
    double in21 = 0.5 * std::log2(1.0 + a * m.p2 / m.n1);
    double out21 =
        0.5 * std::log2(1.0 + a * m.p2 / m.n1 * (m.n1 + m.n3) / m.n3);
    double r23 = 0.5 * std::log2(1.0 + (1.0 - a) * m.p2 / (m.n3 + a * m.p2));
    rep.alphas.push_back(a);
    rep.bc_inner_r21.push_back(in21);
    rep.bc_outer_r21.push_back(out21);
    rep.bc_r23.push_back(r23);
    rep.bc_gap = std::max(rep.bc_gap, out21 - in21);
  }
  rep.pass = rep.mac_gap <= 0.5 + tol && rep.bc_gap <= 0.5 + tol;
  return rep;
}

}  // namespace twoway::gauss
