#!/usr/bin/env python3
"""Fit the partition-function polynomials embedded in src/partition.cpp.

Q(T) is modelled as a rigid rotor (T^1.0 linear, T^1.5 non-linear) scaled to
the HITRAN Q(296 K) value, times the harmonic vibrational partition sum of
the main isotopologue. ln Q is then fitted with a degree-5 polynomial in
x = ln(T / 296 K) on two ranges, 70-500 K and 500-3000 K. Prints C++
initialisers.
"""

import math

import numpy as np

C2 = 1.4387769

SPECIES = {
    # id: (name, Q296, rotor exponent, [(mode cm^-1, degeneracy)])
    1: ("H2O", 174.58, 1.5, [(1595, 1), (3657, 1), (3756, 1)]),
    2: ("CO2", 286.09, 1.0, [(667, 2), (1388, 1), (2349, 1)]),
    3: ("O3", 3483.7, 1.5, [(1103, 1), (701, 1), (1042, 1)]),
    4: ("N2O", 4984.9, 1.0, [(589, 2), (1285, 1), (2224, 1)]),
    5: ("CO", 107.42, 1.0, [(2143, 1)]),
    6: ("CH4", 590.48, 1.5, [(2917, 1), (1534, 2), (3019, 3), (1306, 3)]),
    7: ("O2", 215.77, 1.0, [(1556, 1)]),
}


def q_model(q296, n, modes, t):
    def vib(tt):
        v = 1.0
        for nu, g in modes:
            v *= (1.0 / (1.0 - math.exp(-C2 * nu / tt))) ** g
        return v
    return q296 * (t / 296.0) ** n * vib(t) / vib(296.0)


def fit(q296, n, modes, lo, hi):
    ts = np.geomspace(lo, hi, 400)
    x = np.log(ts / 296.0)
    y = np.log([q_model(q296, n, modes, t) for t in ts])
    coef = np.polynomial.polynomial.polyfit(x, y, 5)
    fit = np.polynomial.polynomial.polyval(x, coef)
    return coef, np.max(np.abs(np.exp(fit - y) - 1.0))


def main():
    for mol, (name, q296, n, modes) in SPECIES.items():
        lo, err_lo = fit(q296, n, modes, 70.0, 500.0)
        hi, err_hi = fit(q296, n, modes, 500.0, 3000.0)
        fmt = lambda c: ", ".join(f"{v:.10e}" for v in c)
        print(f"    // {name}: max rel err {err_lo:.1e} / {err_hi:.1e}")
        print(f"    {{{mol}, \"{name}\",\n     {{{fmt(lo)}}},\n     {{{fmt(hi)}}}}},")


if __name__ == "__main__":
    main()
