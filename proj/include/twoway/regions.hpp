#pragma once

#include "twoway/modk.hpp"
#include "twoway/rate_region.hpp"

namespace twoway::region {

/// Binary modulo-2 adder MAC/BC capacity region:
/// R12+R32 <= 1, R21+R23 <= 1 over (R12,R32,R21,R23).
RateRegion region_mod2_macbc();

/// Alphabet-restricted modulo-kappa region for the given topology. Each
/// direction carries a single log2(kappa)-bit sum bound (triple-rate sums for
/// the z topology). Non-power-of-two kappa is represented exactly in
/// log2(kappa)-bit units (see RateRegion::unit_log2_of).
RateRegion region_modk(ld::Topology model, int kappa);

/// Linear-deterministic MAC/BC capacity region.
RateRegion region_ld_macbc(int n12, int n32, int n21, int n23);

/// Linear-deterministic two-way Z capacity region,
/// coords (R12,R32,R34,R43,R23,R21).
RateRegion region_ld_z(int n12, int n32, int n34, int n43, int n23, int n21);

/// Linear-deterministic two-way IC region under partial adaptation,
/// coords (R12,R34,R21,R43). Singles and the first two sum bounds per
/// direction also hold under full adaptation and are flagged so.
RateRegion region_ld_ic(int n12, int n34, int n32, int n14, int n21, int n43,
                        int n23, int n41);

/// Symmetric IC region with direct gain p and cross gain q.
RateRegion region_ld_ic_sym(int p, int q);

}  // namespace twoway::region
