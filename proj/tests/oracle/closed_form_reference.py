#!/usr/bin/env python3
"""Arbitrary-precision reference values for the sizing-law and filter math.

Evaluates the closed-form expressions with mpmath at 60 digits and prints
them as C++ constants. The frozen copy lives in tests/expected_values.hpp;
rerun this script if a constant there ever needs to be re-derived.
"""

import mpmath as mp

mp.mp.dps = 60


def phi(t, kappa):
    return mp.atan(kappa * mp.log(t))


def calibrate(s_min, s_max, t_min, t_max, kappa):
    a = (s_max - s_min) / (phi(t_max, kappa) - phi(t_min, kappa))
    b = s_max - a * phi(t_max, kappa)
    return a, b


def sizing(t, a, b, kappa):
    return a * phi(t, kappa) + b


def t_flex(kappa, branch=-1):
    return mp.exp(branch * mp.sqrt(kappa**2 - 1) / kappa - 1)


def phi_d1(a, kappa):
    # d/dt atan(kappa ln t) = kappa / (t (kappa^2 ln^2 t + 1))
    return kappa / (a * (kappa**2 * mp.log(a) ** 2 + 1))


def fixed_point(beta0, beta1, p, s_min, s_max, t_min, t_max, kappa):
    a, b = calibrate(s_min, s_max, t_min, t_max, kappa)

    def h(s):
        t = beta0 + beta1 * s**p
        t = min(max(t, t_min), t_max)
        return sizing(t, a, b, kappa) - s

    lo, hi = s_min - 1, s_max + 1
    assert h(lo) > 0 and h(hi) < 0
    for _ in range(300):
        mid = (lo + hi) / 2
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 17)};")


print("// Generated by tests/oracle/closed_form_reference.py -- do not edit.")
print("#pragma once")
print()
print("namespace oracle {")
print()

emit("kPhi1e6Kappa5", phi(mp.mpf("1e-6"), 5))
emit("kPhi0p1Kappa5", phi(mp.mpf("0.1"), 5))
emit("kPhi1Kappa5", phi(1, 5))

A, B = calibrate(1, 1000, mp.mpf("1e-6"), mp.mpf("0.1"), 5)
emit("kDefaultA", A)
emit("kDefaultB", B)

# wide-range variant: s in [1, 1e4], t in [1e-6, 1]
for kappa in (10, 11):
    aw, bw = calibrate(1, 10000, mp.mpf("1e-6"), 1, kappa)
    emit(f"kWideAKappa{kappa}", aw)
    emit(f"kWideBKappa{kappa}", bw)

emit("kTflexKappa1", t_flex(1))
emit("kTflexKappa5", t_flex(5))
emit("kTflex2Kappa5", t_flex(5, branch=+1))

s001 = sizing(mp.mpf("0.01"), A, B, 5)
emit("kSizingRaw0p01", s001)
print(f"// rounds to {mp.nint(s001)}")

emit("kRminOver0p99", mp.mpf(100) / mp.mpf("0.99"))
emit("kPhiD1At1e3Kappa5", phi_d1(mp.mpf("1e-3"), 5))

sstar = fixed_point(mp.mpf("0.01"), mp.mpf("0.01"), 1, 1, 1000, mp.mpf("1e-6"), mp.mpf("0.1"), 5)
emit("kFixedPointBeta0p01", sstar)
sstar2 = fixed_point(mp.mpf("1e-5"), mp.mpf("1e-5"), 1, 1, 1000, mp.mpf("1e-6"), mp.mpf("0.1"), 5)
emit("kFixedPointBeta1e5", sstar2)

# settling check: t_k = 10 (1 - 0.5^k) enters +-1% of 10 at k = 7
k = 0
while not (10 - 10 * (1 - mp.mpf("0.5") ** k) < mp.mpf("0.1")):
    k += 1
print(f"// geometric settling index = {k}")
print()
print("}  // namespace oracle")
