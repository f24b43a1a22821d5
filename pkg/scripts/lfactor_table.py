"""List a_w and c_w for every coset of a given rank."""

import sys

from bks.weyl_lfactors import a_w, c_w, enumerate_cosets

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
for w in enumerate_cosets(n):
    print("I =", "{" + ",".join(map(str, w.I)) + "}")
    print("   a_w:", a_w(w))
    print("   c_w:", c_w(w))
