"""Print the n = 1 summation-formula check over a grid of lambda values."""

import argparse

from bks.global_check import CheckFailed, verify_theorem_n1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambdas", default="0.3333333333333333,0.5,1,2,3,4")
    ap.add_argument("--radius", type=float, default=10)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()

    print(f"{'lambda':>10} {'sumPhi':>14} {'sumFPhi':>14} {'resPhi':>12} {'resFPhi':>12} {'discrepancy':>12}")
    for lam in (float(x) for x in args.lambdas.split(",")):
        try:
            r = verify_theorem_n1(lam, args.radius, args.tol)
        except CheckFailed as e:
            r = e.report
        print(f"{lam:10.4f} {r.sumPhi:14.10f} {r.sumFPhi:14.10f} {r.resPhi:12.8f} "
              f"{r.resFPhi:12.8f} {r.discrepancy:12.2e}{'' if r.ok else '  FAIL'}")


if __name__ == "__main__":
    main()
