#pragma once

#include <string>
#include <vector>

namespace twoway::gauss {

/// Symmetric two-way Gaussian IC operating point. All rates below are in
/// bits (log base 2).
struct GaussianSymParams {
  double snr = 1.0;  // > 0
  double inr = 0.0;  // >= 0
  GaussianSymParams(double snr_, double inr_);
};

enum class Regime { weak, strong, very_strong };

std::string regime_name(Regime r);

/// very_strong iff INR >= SNR(1+SNR); strong iff SNR <= INR below that;
/// weak iff INR < SNR. Boundaries route to the stronger regime.
struct RegimeInfo {
  Regime regime;
  bool inr_lt_1;
};
RegimeInfo classify_regime(const GaussianSymParams& p);

/// Full-adaptation symmetric-rate outer bound:
/// 1/2 log2(1+SNR+INR+2 sqrt(SNR INR)) + 1/2 log2(1+SNR/(1+INR)).
double outer_full_rsym(const GaussianSymParams& p);

/// Partial-adaptation forward bound: log2(1+INR+SNR-INR*SNR/(1+INR)).
double outer_partial_forward(const GaussianSymParams& p);

/// Partial-adaptation backward bound with the internal lambda_24 optimum:
/// log2(1+INR+SNR/INR) when SNR <= INR^3, else
/// log2(1+(sqrt(SNR)+sqrt(INR))^2/(1+INR)). INR == 0 routes to the second
/// branch, which collapses to log2(1+SNR).
double outer_partial_backward(const GaussianSymParams& p);

/// Refined strong-interference forward bound under partial adaptation
/// (lambda_13 = 0): 1/2 log2(1+SNR+INR) + 1/2 log2(1+SNR/(1+INR)).
double outer_partial_strong_forward(const GaussianSymParams& p);

struct CorrCoeffs {
  double lambda24_mag = 0.0;  // clipped to [0,1]
  double theta = 0.0;         // radians
  bool defined = true;        // false when INR == 0 leaves lambda free
};

/// Closed-form maximizer of the backward-bound correlation objective:
/// theta = 0, |lambda_24| = min(1, sqrt(SNR INR)/INR^2).
CorrCoeffs optimize_lambda24(const GaussianSymParams& p);

/// The backward-bound objective as a function of the correlation coefficient;
/// evaluating it at optimize_lambda24(p) reproduces outer_partial_backward(p).
double lambda24_objective(const GaussianSymParams& p, double mag, double theta);

/// Full-adaptation sum bound before extremization, as a function of
/// (|lambda_13|, |lambda_34|, theta); the maximum over the box sits at
/// (1, 0, 0) where it equals outer_full_rsym.
double full_sum_objective(const GaussianSymParams& p, double lambda13,
                          double lambda34, double theta);

/// Non-adaptive inner bounds per user per direction.
struct InnerRates {
  double sato;       // 1/2 log2(1+SNR+INR), strong but not very strong
  double hk1;        // 1/2 log2(1+INR+SNR) + 1/2 log2(2+SNR/INR) - 1
  double hk2;        // log2(1+INR+SNR/INR) - 1
  bool hk_valid;     // Han-Kobayashi split needs INR >= 1
  double r_inr_lt1;  // log2(1+SNR/(1+INR))
  double pt2pt;      // log2(1+SNR)
  double hk() const;  // min(hk1, hk2); throws when !hk_valid
};
InnerRates inner_rates(const GaussianSymParams& p);

/// One outer/inner pairing with its constant-gap budget.
struct GapCase {
  std::string name;
  std::string outer_used;
  std::string inner_used;
  double outer = 0;
  double inner = 0;
  double gap_bits = 0;
  double table_limit = 0;
  bool pass = false;
};

struct GapOptions {
  bool refined_strong_forward = false;
  double tol = 1e-9;
};

struct GapReport {
  RegimeInfo info;
  std::vector<GapCase> cases;  // 1 entry, or 2 when the HK2 branch is active
  bool pass = false;
  /// The case with the least slack (ties keep the later entry).
  const GapCase& binding() const;
};

/// Routes the operating point to its outer/inner pairing and gap budget:
/// very strong 0; strong 1; weak INR<1 1; weak HK1-active 1.5; weak
/// HK2-active 1 forward and 1 or 2 backward (SNR <= INR^3 or not).
GapReport gap_report(const GaussianSymParams& p, const GapOptions& opt = {});

/// Two-way Gaussian MAC/BC with powers P_j and noise variances N_j.
struct MacBcParams {
  double p1, p2, p3;
  double n1, n2, n3;  // requires n3 >= n1
};

struct MacBcReport {
  double mac_inner = 0;
  double mac_outer = 0;
  double mac_gap = 0;
  std::vector<double> alphas;        // BC power splits
  std::vector<double> bc_inner_r21;
  std::vector<double> bc_outer_r21;
  std::vector<double> bc_r23;        // equal on both sides
  double bc_gap = 0;                 // max per-alpha R21 gap
  bool pass = false;                 // both gaps <= 1/2 + tol
};

/// Half-bit check for the two-way Gaussian MAC/BC. Throws when n3 < n1 with
/// guidance to swap receiver roles.
MacBcReport macbc_bounds(const MacBcParams& m, int alpha_steps = 21,
                         double tol = 1e-9);

}  // namespace twoway::gauss
