#!/usr/bin/env python3
"""Regenerate data/mini_catalog.par.

The bundled catalog is a small water vapour + oxygen subset below 1 THz.
Line positions, strengths and widths come from the ITU-R P.676 line tables
(water: f0, b1..b6; oxygen: f0, a1..a4) converted to the 160-character
fixed-width par layout at the 296 K reference temperature.

Conversion:
  * ITU attenuation integrates to 0.1820*pi*f0*S_itu (dB/km GHz). Equating
    that with the line-by-line form (0.01*c*N*S) gives S in cm/molecule.
  * ITU lower-state parameter b2 (a2) maps to E'' = b2 * 300 K / c2.
  * ITU widths in GHz/hPa at 300 K map to cm^-1/atm, then to 296 K with
    the ITU temperature exponent.

Line mixing, the ITU pseudo-continuum line and the ITU Doppler correction
are not carried over.
"""

import math
import sys

K_B = 1.380649e-23
C_LIGHT = 299792458.0
C2 = 1.4387769  # cm K
GHZ_PER_CM = C_LIGHT * 100.0 / 1e9
HPA_PER_ATM = 1013.25
O2_VMR = 0.20946
T_ITU = 300.0
T_REF = 296.0
THETA = T_ITU / T_REF

# f0 [GHz], b1, b2, b3, b4, b5, b6
WATER = [
    (22.235080, 0.1079, 2.144, 26.38, 0.76, 5.087, 1.00),
    (67.803960, 0.0011, 8.732, 28.58, 0.69, 4.930, 0.82),
    (119.995940, 0.0007, 8.353, 29.48, 0.70, 4.780, 0.79),
    (183.310087, 2.273, 0.668, 29.06, 0.77, 5.022, 0.85),
    (321.225630, 0.0470, 6.179, 24.04, 0.67, 4.398, 0.54),
    (325.152888, 1.514, 1.541, 28.23, 0.64, 4.893, 0.74),
    (336.227764, 0.0010, 9.825, 26.93, 0.69, 4.740, 0.61),
    (380.197353, 11.67, 1.048, 28.11, 0.54, 5.063, 0.89),
    (390.134508, 0.0045, 7.347, 21.52, 0.63, 4.810, 0.55),
    (437.346667, 0.0632, 5.048, 18.45, 0.60, 4.230, 0.48),
    (439.150807, 0.9098, 3.595, 20.07, 0.63, 4.483, 0.52),
    (443.018343, 0.1920, 5.048, 15.55, 0.60, 5.083, 0.50),
    (448.001085, 10.41, 1.405, 25.64, 0.66, 5.028, 0.67),
    (470.888999, 0.3254, 3.597, 21.34, 0.66, 4.506, 0.65),
    (474.689092, 1.260, 2.379, 23.20, 0.65, 4.804, 0.64),
    (488.490108, 0.2529, 2.852, 25.86, 0.69, 5.201, 0.72),
    (503.568532, 0.0372, 6.731, 16.12, 0.61, 3.980, 0.43),
    (504.482692, 0.0124, 6.731, 16.12, 0.61, 4.010, 0.45),
    (547.676440, 0.9785, 0.158, 26.00, 0.70, 4.500, 1.00),
    (552.020960, 0.1840, 0.158, 26.00, 0.70, 4.500, 1.00),
    (556.935985, 497.0, 0.159, 30.86, 0.69, 4.552, 1.00),
    (620.700807, 5.015, 2.391, 24.38, 0.71, 4.856, 0.68),
    (645.766085, 0.0067, 8.633, 18.00, 0.60, 4.000, 0.50),
    (658.005280, 0.2732, 7.816, 32.10, 0.69, 4.140, 1.00),
    (752.033113, 243.4, 0.396, 30.86, 0.68, 4.352, 0.84),
    (841.051732, 0.0134, 8.177, 15.90, 0.33, 5.760, 0.45),
    (859.965698, 0.1325, 8.055, 30.60, 0.68, 4.090, 0.84),
    (899.303175, 0.0547, 7.914, 29.85, 0.68, 4.530, 0.90),
    (902.611085, 0.0386, 8.429, 28.65, 0.70, 5.100, 0.95),
    (906.205957, 0.1836, 5.110, 24.08, 0.70, 4.700, 0.53),
    (916.171582, 8.400, 1.441, 26.73, 0.70, 5.150, 0.78),
    (923.112692, 0.0079, 10.293, 29.00, 0.70, 5.000, 0.80),
    (970.315022, 9.009, 1.919, 25.50, 0.64, 4.940, 0.67),
    (987.926764, 134.6, 0.257, 29.85, 0.68, 4.550, 0.90),
]

# f0 [GHz], a1, a2, a3, a4
OXYGEN = [
    (50.474214, 0.975, 9.651, 6.690, 0.0),
    (50.987745, 2.529, 8.653, 7.170, 0.0),
    (51.503360, 6.193, 7.709, 7.640, 0.0),
    (52.021429, 14.320, 6.819, 8.110, 0.0),
    (52.542418, 31.240, 5.983, 8.580, 0.0),
    (53.066934, 64.290, 5.201, 9.060, 0.0),
    (53.595775, 124.600, 4.474, 9.550, 0.0),
    (54.130025, 227.300, 3.800, 9.960, 0.0),
    (54.671180, 389.700, 3.182, 10.370, 0.0),
    (55.221384, 627.100, 2.618, 10.890, 0.0),
    (55.783815, 945.300, 2.109, 11.340, 0.0),
    (56.264774, 543.400, 0.014, 17.030, 0.0),
    (56.363399, 1331.800, 1.654, 11.890, 0.0),
    (56.968211, 1746.600, 1.255, 12.230, 0.0),
    (57.612486, 2120.100, 0.910, 12.620, 0.0),
    (58.323877, 2363.700, 0.621, 12.950, 0.0),
    (58.446588, 1442.100, 0.083, 14.910, 0.0),
    (59.164204, 2379.900, 0.387, 13.530, 0.0),
    (59.590983, 2090.700, 0.207, 14.080, 0.0),
    (60.306056, 2103.400, 0.207, 14.150, 0.0),
    (60.434778, 2438.000, 0.386, 13.390, 0.0),
    (61.150562, 2479.500, 0.621, 12.920, 0.0),
    (61.800158, 2275.900, 0.910, 12.630, 0.0),
    (62.411220, 1915.400, 1.255, 12.170, 0.0),
    (62.486253, 1503.000, 0.083, 15.130, 0.0),
    (62.997984, 1490.200, 1.654, 11.740, 0.0),
    (63.568526, 1078.000, 2.108, 11.340, 0.0),
    (64.127775, 728.700, 2.617, 10.880, 0.0),
    (64.678910, 461.300, 3.181, 10.380, 0.0),
    (65.224078, 274.000, 3.800, 9.960, 0.0),
    (65.764779, 153.000, 4.473, 9.550, 0.0),
    (66.302096, 80.400, 5.200, 9.060, 0.0),
    (66.836834, 39.800, 5.982, 8.580, 0.0),
    (67.369601, 18.560, 6.818, 8.110, 0.0),
    (67.900868, 8.172, 7.708, 7.640, 0.0),
    (68.431006, 3.397, 8.652, 7.170, 0.0),
    (68.960312, 1.334, 9.650, 6.690, 0.0),
    (118.750334, 940.300, 0.010, 16.640, 0.0),
    (368.498246, 67.400, 0.048, 16.400, 0.0),
    (424.763020, 637.700, 0.044, 16.400, 0.0),
    (487.249273, 237.400, 0.049, 16.000, 0.0),
    (715.392902, 98.100, 0.145, 16.000, 0.0),
    (773.839490, 572.300, 0.141, 16.200, 0.0),
    (834.145546, 183.100, 0.145, 14.700, 0.0),
]

# S [cm/molecule] per unit ITU strength coefficient (kHz per hPa partial
# pressure) per GHz of line frequency, at 300 K.
S_PER_ITU = (0.1820 * math.pi * 1e6 / (10.0 * math.log10(math.e))
             * K_B * T_ITU / 100.0 / (1e-2 * C_LIGHT))


def fortran_fixed(value, width, decimals):
    """Fixed-point field that drops the leading zero when it would overflow."""
    s = f"{value:{width}.{decimals}f}"
    if len(s) > width:
        s = s.replace("0.", ".", 1)
    if len(s) != width:
        raise ValueError(f"{value} does not fit F{width}.{decimals}")
    return s


def record(mol, iso, nu, s, gamma_air, gamma_self, e_lower, n_air, delta):
    rec = (f"{mol:2d}{iso:1d}"
           + fortran_fixed(nu, 12, 6)
           + f"{s:10.3E}"
           + f"{0.0:10.3E}"
           + fortran_fixed(gamma_air, 5, 4)
           + fortran_fixed(gamma_self, 5, 3)
           + fortran_fixed(e_lower, 10, 4)
           + fortran_fixed(n_air, 4, 2)
           + fortran_fixed(delta, 8, 6)
           + " " * 60
           + "000000"
           + " " * 12
           + " "
           + f"{0.0:7.1f}" + f"{0.0:7.1f}")
    assert len(rec) == 160, len(rec)
    return rec


def main(out):
    lines = []
    for f0, b1, b2, b3, b4, b5, b6 in WATER:
        s300 = S_PER_ITU * f0 * 0.1 * b1
        s296 = s300 * THETA ** 2.5 * math.exp(b2 * (1.0 - THETA))
        g_air = b3 * 1e-4 * HPA_PER_ATM / GHZ_PER_CM * THETA ** b4
        g_self = b3 * b5 * 1e-4 * HPA_PER_ATM / GHZ_PER_CM * THETA ** b6
        e_lower = b2 * T_ITU / C2
        lines.append((f0 / GHZ_PER_CM,
                      record(1, 1, f0 / GHZ_PER_CM, s296, g_air, g_self,
                             e_lower, b4, 0.0)))
    for f0, a1, a2, a3, a4 in OXYGEN:
        s300 = S_PER_ITU * f0 * a1 * 1e-7 / O2_VMR
        s296 = s300 * THETA ** 2.0 * math.exp(a2 * (1.0 - THETA))
        n = 0.8 - a4
        g_air = a3 * 1e-4 * HPA_PER_ATM / GHZ_PER_CM * THETA ** n
        e_lower = a2 * T_ITU / C2
        lines.append((f0 / GHZ_PER_CM,
                      record(7, 1, f0 / GHZ_PER_CM, s296, g_air, g_air,
                             e_lower, n, 0.0)))
    lines.sort(key=lambda x: x[0])
    with open(out, "w") as fh:
        for _, rec in lines:
            fh.write(rec + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/mini_catalog.par")
