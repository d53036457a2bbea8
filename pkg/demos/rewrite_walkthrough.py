"""
Rewriting conjugates and commutators into restricted generators
===============================================================

"""

from transvec.generate import (
    PositionSet,
    RewriteEngine,
    UnreachablePositionError,
    check_certificate,
    theorem1_rewrite,
    theorem4_rewrite,
    theoremC_decompose,
)
from transvec.matgroup import atom_Y, atom_Z
from transvec.ring import letter

a, b, c = letter("a", 1), letter("b", 1), letter("c", 1)

# 1. A conjugated transvection z_31(a, c) at n=4 is rewritten into
#    conjugates sitting on the hook (column h=3 / row k=1).
ps = PositionSet(4, 2, mode="rows", h=3)
print("hook positions:", sorted(ps.positions()))
cert = theoremC_decompose(4, 2, ps, atom_Z(3, 1, a, c))
print("factors:", len(cert.factors),
      " conjugates at:", sorted({(f.i, f.j) for f in cert.factors if f.kind == "Z"}),
      " plus", sum(f.kind == "T" for f in cert.factors), "plain transvections")
cert, reports = check_certificate(cert)
print("checks:", {k: v for k, v in cert.checks.items() if k != "size"})

# 2. A mixed word of y's and z's becomes commutator-shaped factors only.
targets = [atom_Y(1, 2, a, b), atom_Z(2, 3, a * b, c)]
cert = theorem1_rewrite(targets, 3)
kinds = sorted({f.kind for f in cert.factors})
print("commutator form kinds:", kinds)
cert, _ = check_certificate(cert)
print("sizes:", cert.checks["size"])

# 3. The commutator hook needs one extra position; coverage is partial.
ps = PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z")
engine = RewriteEngine(ps)
print("reachable y-positions:", engine.reachable())
cert = theorem4_rewrite(3, 2, ps, atom_Y(2, 1, a, b))
cert, _ = check_certificate(cert)
print("y_21 certificate ok:", cert.checks["ok"], " factors:", len(cert.factors))

try:
    theorem4_rewrite(3, 2, ps, atom_Y(1, 2, a, b))
except UnreachablePositionError as e:
    print("y_12 is not derivable from this hook:", e.position,
          "reachable:", e.reachable)
