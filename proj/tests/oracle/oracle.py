"""Reference values for the C++ tests, computed by direct ODE integration.

Regenerate with:  python3 tests/oracle/oracle.py > tests/support/oracle_values.hpp
"""
import math

import numpy as np
from scipy.integrate import quad, solve_ivp

VOL = dict(mu_v=0.05, kappa_v=-0.7, sigma_v=-0.3, v0=1.0)


def bond_exponents(r0, r1, k_q, mu_v, sig, s_max, s_eval):
    # B = exp(b v - a), b' = -r1 + k_q b + sig^2 b^2 / 2, a' = r0 - mu_v b
    def rhs(_, y):
        b = y[0]
        return [-r1 + k_q * b + 0.5 * sig * sig * b * b, r0 - mu_v * b]

    sol = solve_ivp(rhs, (0.0, s_max), [0.0, 0.0], method="DOP853",
                    rtol=1e-13, atol=1e-15, dense_output=True)
    return [tuple(sol.sol(s)) for s in s_eval], sol


def finite_economy(investors):
    ts = sum(i["tau"] for i in investors)
    sE = sum(i["sigma_Y"] for i in investors)
    kE = sum(i["kappa_Y"] for i in investors)
    mE = sum(i["mu_Y"] for i in investors)
    bw = sum(i["beta_Y"] ** 2 / i["tau"] for i in investors)
    bs = sum(i["beta_Y"] ** 2 for i in investors)
    mu_S = sE / ts
    r0 = mE / ts
    # Spot rate from clearing: r = (mu_E + (kappa_E - beta_w/2 - sigma_E^2/(2 ts)) v) / ts
    r1 = (kE - 0.5 * bw - sE * sE / (2 * ts)) / ts
    r1_rep = kE / ts - 0.5 * bs / ts ** 2 - sE * sE / (2 * ts * ts)
    return dict(mu_S=mu_S, r0=r0, r1=r1, r1_rep=r1_rep)


def limit_economy(w, gA, gB):
    tb = w * gA["tau"] + (1 - w) * gB["tau"]
    sb = w * gA["sigma_Y"] + (1 - w) * gB["sigma_Y"]
    kb = w * gA["kappa_Y"] + (1 - w) * gB["kappa_Y"]
    bw = w * gA["beta_Y"] ** 2 / gA["tau"] + (1 - w) * gB["beta_Y"] ** 2 / gB["tau"]
    mu_S = sb / tb
    r1 = (kb - 0.5 * bw - sb * sb / (2 * tb)) / tb
    r1_rep = kb / tb - sb * sb / (2 * tb * tb)
    return dict(mu_S=mu_S, r0=0.0, r1=r1, r1_rep=r1_rep)


def gaps(e, U=1.0, v0=1.0):
    sig = VOL["sigma_v"]
    k_q = VOL["kappa_v"] - e["mu_S"] * sig
    (b, _), = bond_exponents(e["r0"], e["r1"], k_q, VOL["mu_v"], sig, U, [U])[0]
    (b_rep, _), = bond_exponents(e["r0"], e["r1_rep"], k_q, VOL["mu_v"], sig, U, [U])[0]
    rate_gap = (e["r1_rep"] - e["r1"]) * v0
    mpr_gap = -sig * (b - b_rep)
    return rate_gap, mpr_gap


def homogeneous(I):
    inv = dict(tau=0.5, sigma_Y=0.3, kappa_Y=0.0, mu_Y=0.0, beta_Y=0.2)
    return [inv] * I


def emit_array(name, values):
    body = ",\n    ".join(f"{v:.17g}" for v in values)
    print(f"inline constexpr double {name}[] = {{\n    {body}}};")


def main():
    print("#pragma once")
    print()
    print("// Generated by tests/oracle/oracle.py (scipy DOP853, rtol 1e-13).")
    print()
    print("namespace oracle {")
    print()

    t1_rate, t1_mpr = [], []
    for I in [2, 5, 10, 100, 1000]:
        r, m = gaps(finite_economy(homogeneous(I)))
        t1_rate.append(r)
        t1_mpr.append(m)
    gA = dict(tau=0.5, sigma_Y=0.3, kappa_Y=0.0, beta_Y=0.2)
    r, m = gaps(limit_economy(1.0, gA, gA))
    t1_rate.append(r)
    t1_mpr.append(m)
    emit_array("kInvestorRateGap", t1_rate)
    emit_array("kInvestorMprGap", t1_mpr)

    cells = []
    for w in [1.0, 0.75, 0.5, 0.25, 0.0]:
        for tA, tB in [(0.5, 0.5), (0.5, 1 / 3), (1 / 3, 0.5), (1 / 3, 1 / 3)]:
            A = dict(tau=tA, sigma_Y=0.3, kappa_Y=0.0, beta_Y=0.1)
            B = dict(tau=tB, sigma_Y=0.3, kappa_Y=0.0, beta_Y=0.4)
            cells.append(gaps(limit_economy(w, A, B))[1])
    emit_array("kTwoGroupMprGap", cells)

    # I = 2 economy: exponents, bond prices and the annuity at v0 = 1.
    e = finite_economy(homogeneous(2))
    sig = VOL["sigma_v"]
    k_q = VOL["kappa_v"] - e["mu_S"] * sig
    mats = [0.25, 0.5, 1.0]
    ex, sol = bond_exponents(e["r0"], e["r1"], k_q, VOL["mu_v"], sig, 1.0, mats)
    ex_rep, _ = bond_exponents(e["r0"], e["r1_rep"], k_q, VOL["mu_v"], sig, 1.0, mats)
    emit_array("kMaturities", mats)
    emit_array("kB", [b for b, _ in ex])
    emit_array("kA", [a for _, a in ex])
    emit_array("kBRep", [b for b, _ in ex_rep])
    emit_array("kBondPrice", [math.exp(b - a) for b, a in ex])
    emit_array("kBondPriceRep", [math.exp(b - a) for b, a in ex_rep])
    ann, _ = quad(lambda u: math.exp(sol.sol(u)[0] - sol.sol(u)[1]), 0.0, 1.0,
                  epsabs=1e-14, epsrel=1e-13)
    print(f"inline constexpr double kAnnuity = {ann:.17g};")

    # Heterogeneous economy with drift terms and negative-b regions.
    het = [dict(tau=0.5, sigma_Y=0.2, kappa_Y=0.1, mu_Y=0.02, beta_Y=0.1),
           dict(tau=0.5, sigma_Y=0.2, kappa_Y=0.1, mu_Y=0.02, beta_Y=0.1),
           dict(tau=1 / 3, sigma_Y=0.4, kappa_Y=-0.1, mu_Y=-0.01, beta_Y=0.4)]
    e = finite_economy(het)
    k_q = VOL["kappa_v"] - e["mu_S"] * sig
    ex, _ = bond_exponents(e["r0"], e["r1"], k_q, VOL["mu_v"], sig, 1.0, mats)
    emit_array("kHetB", [b for b, _ in ex])
    emit_array("kHetA", [a for _, a in ex])
    print(f"inline constexpr double kHetMuS = {e['mu_S']:.17g};")

    print()
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
