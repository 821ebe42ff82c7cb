# Copyright 2026 The polyfair Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Best majorization factor of the paired-group instance, by brute force.

2n agents form n groups {i, 2n+1-i}; agent i has value n^(2i) and its partner
N - n^(2i). The utility set is the hull of the n group vectors. OPT_j is the
largest sum of the j smallest utilities over the simplex; the factor is
min_p max_j OPT_j / Q_j(u(p)). Both steps are LPs over the simplex, with the
sum of the j smallest entries written as max sum U_i - (2n-j) M, U_i <= u_i,
U_i <= M.

Usage: python3 group_factor.py [n] [N]
"""

import sys
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def group_points(n, big):
    pts = []
    for i in range(1, n + 1):
        u = [0] * (2 * n)
        u[i - 1] = n ** (2 * i)
        u[2 * n - i] = big - n ** (2 * i)
        pts.append(u)
    return np.array(pts, dtype=float)


def prefix_lp(pts, j, opt=None):
    """Variables: p (n), U (m), M, [t]. Maximizes Q_j, or t with Q_j >= t opt_j."""
    n, m = pts.shape
    with_t = opt is not None
    nv = n + m + 1 + (1 if with_t else 0)
    rows, rhs, eq, eq_rhs = [], [], [], []
    for i in range(m):
        r = np.zeros(nv)
        r[n + i] = 1
        r[:n] = -pts[:, i]
        rows.append(r)
        rhs.append(0)
        r = np.zeros(nv)
        r[n + i] = 1
        r[n + m] = -1
        rows.append(r)
        rhs.append(0)
    r = np.zeros(nv)
    r[:n] = 1
    eq.append(r)
    eq_rhs.append(1)
    return n, m, nv, rows, rhs, eq, eq_rhs


def opt_j(pts, j):
    n, m, nv, rows, rhs, eq, eq_rhs = prefix_lp(pts, j)
    c = np.zeros(nv)
    c[n:n + m] = -1
    c[n + m] = m - j
    res = linprog(c, A_ub=rows, b_ub=rhs, A_eq=eq, b_eq=eq_rhs,
                  bounds=[(0, None)] * nv, method="highs")
    return -res.fun


def best_factor(pts):
    n, m = pts.shape
    opts = [opt_j(pts, j) for j in range(1, m + 1)]
    # One copy of (U, M) per j, one shared p, and t.
    nv = n + m * (m + 1) + 1
    t = nv - 1
    rows, rhs = [], []
    for jj in range(m):
        base = n + jj * (m + 1)
        for i in range(m):
            r = np.zeros(nv)
            r[base + i] = 1
            r[:n] = -pts[:, i]
            rows.append(r)
            rhs.append(0)
            r = np.zeros(nv)
            r[base + i] = 1
            r[base + m] = -1
            rows.append(r)
            rhs.append(0)
        r = np.zeros(nv)
        r[base:base + m] = -1
        r[base + m] = m - (jj + 1)
        r[t] = opts[jj]
        rows.append(r)
        rhs.append(0)
    eq = np.zeros((1, nv))
    eq[0, :n] = 1
    c = np.zeros(nv)
    c[t] = -1
    res = linprog(c, A_ub=rows, b_ub=rhs, A_eq=eq, b_eq=[1],
                  bounds=[(0, None)] * (nv - 1) + [(0, 1)], method="highs")
    return 1.0 / res.x[t], opts


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    big = int(sys.argv[2]) if len(sys.argv) > 2 else 3 ** 7
    alpha, opts = best_factor(group_points(n, big))
    print(f"n={n} N={big}")
    print("opt_j=" + ",".join(f"{o:.12g}" for o in opts))
    print(f"alpha={alpha:.12f}")
    # Threshold stored with the tests: 1e-6 below the oracle value.
    print(f"threshold={Fraction(alpha - 1e-6).limit_denominator(10**6)}")


if __name__ == "__main__":
    main()
