"""Coefficients of the basic function against the bound q^(m(n+2)/2), and the floor of F(1_0)."""

import argparse

import mpmath

from bks.schwartz_nonarch import basic_function, fourier, indicator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=101)
    ap.add_argument("--upto", type=int, default=40)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()

    mpmath.mp.dps = 60
    q = mpmath.mpf(args.q)
    for n in range(1, args.max_n + 1):
        worst = max(
            c.evaluate(q, v=mpmath.sqrt(q)) / q ** (m * mpmath.mpf(n + 2) / 2)
            for m, c in basic_function(n).coefficients(args.upto)
        )
        floor = fourier(indicator(n, 0)).floor
        print(f"n={n}  floor F(1_0) = {floor:3d}  max c_m / bound = {mpmath.nstr(worst, 6)}")


if __name__ == "__main__":
    main()
