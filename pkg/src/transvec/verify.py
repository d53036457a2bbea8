"""Verification oracles: exact symbolic equality and randomized evaluation.

``verify_symbolic`` evaluates two transvection words over the free ring
with the letters kept indeterminate, so a pass is a proof of the identity
for every ring and every ideal instantiation; ``verify_numeric`` spot
checks the same equality over a concrete adapter with letters sampled
from declared ideals (batched through numpy when the adapter allows).
``audit_levels`` checks the ideal-membership claims carried by factor
lists and the congruence shape of the target.  Every check returns a
``VerificationReport``; reports append to a line-delimited JSON run log.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .ring import (
    FREE,
    FreeRing,
    FreeRingElement,
    IdealSpec,
    IntRing,
    ModRing,
    Product,
    TriangRing,
    free_tag_ideal,
    ideal_member,
    poly_to_text,
    sample_ideal,
    sym_product,
)
from .matgroup import (
    DegreeMismatch,
    GeneratorAtom,
    GroupWord,
    eval_word,
)


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    mode: str  # "symbolic" | "numeric" | "levels"
    n: Optional[int] = None
    ring: Optional[str] = None
    trials: Optional[int] = None
    failures: tuple = ()
    max_degree: Optional[int] = None
    elapsed: float = 0.0
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "mode": self.mode,
            "n": self.n,
            "ring": self.ring,
            "trials": self.trials,
            "failures": list(self.failures),
            "max_degree": self.max_degree,
            "elapsed": round(self.elapsed, 6),
            "seed": self.seed,
            "ok": self.ok,
        }


def append_report(report: VerificationReport, path) -> None:
    """Append one report to the line-delimited JSON run log."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(report.to_json()) + "\n")


def read_reports(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# symbolic oracle
# ---------------------------------------------------------------------------


def verify_symbolic(lhs: GroupWord, rhs: GroupWord, subject: str = "") -> VerificationReport:
    """Exact entry-wise equality of the two words' matrices over the free ring.

    The report's max_degree is the largest monomial degree seen either in
    the words' transvection arguments or in the evaluated entries.
    """
    if lhs.n != rhs.n:
        raise DegreeMismatch(f"degrees {lhs.n} and {rhs.n} differ")
    t0 = time.perf_counter()
    ml = eval_word(lhs)
    mr = eval_word(rhs)
    failures = []
    deg = 0
    for w in (lhs, rhs):
        for t in w.atoms:
            deg = max(deg, t.arg.max_degree())
    for i in range(1, lhs.n + 1):
        for j in range(1, lhs.n + 1):
            le, re_ = ml.entry(i, j), mr.entry(i, j)
            deg = max(deg, le.max_degree(), re_.max_degree())
            if le != re_:
                failures.append(
                    {"entry": [i, j], "difference": poly_to_text(le - re_)}
                )
    return VerificationReport(
        subject=subject,
        mode="symbolic",
        n=lhs.n,
        ring="free",
        failures=tuple(failures),
        max_degree=deg,
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------


class UnboundTag(ValueError):
    pass


def _letters_of(*words: GroupWord) -> set:
    out = set()
    for w in words:
        for t in w.atoms:
            out.update(t.arg.letters())
    return out


def _lookup_ideal(bindings: dict, lt) -> IdealSpec:
    # a binding may pin a specific letter or a whole tag
    if lt in bindings:
        return bindings[lt]
    if lt[0] in bindings:
        return bindings[lt[0]]
    raise UnboundTag(f"letter tag {lt[0]!r} has no ideal binding")


def _mismatch_lanes(ring, ml, mr, trials):
    """Lane indices (trial numbers) where any entry differs."""
    import numpy as np

    total = np.zeros(trials, dtype=bool)
    first_entry = {}
    for i in range(1, ml.n + 1):
        for j in range(1, ml.n + 1):
            a, b = ml.entry(i, j), mr.entry(i, j)
            if isinstance(ring, TriangRing):
                mask = np.zeros(trials, dtype=bool)
                for u, v in zip(a, b):
                    mask |= np.broadcast_to(np.asarray(u) != np.asarray(v), (trials,))
            else:
                mask = np.broadcast_to(np.asarray(a) != np.asarray(b), (trials,))
            for lane in np.nonzero(mask & ~total)[0]:
                first_entry[int(lane)] = [i, j]
            total |= mask
    return [(lane, first_entry[lane]) for lane in sorted(first_entry)]


def verify_numeric(
    lhs: GroupWord,
    rhs: GroupWord,
    adapter,
    bindings: dict,
    trials: int,
    seed: int = 0,
    subject: str = "",
) -> VerificationReport:
    """Sample every letter from its bound ideal and compare both sides.

    ``bindings`` maps letter tags (or individual letters) to IdealSpecs
    over the adapter.  Sampling is deterministic in the seed.  Over Z/m
    and the triangular rings all trials run as one batched evaluation.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if lhs.n != rhs.n:
        raise DegreeMismatch(f"degrees {lhs.n} and {rhs.n} differ")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    letters = sorted(_letters_of(lhs, rhs))
    specs = {lt: _lookup_ideal(bindings, lt) for lt in letters}
    failures = []
    if isinstance(adapter, (ModRing, TriangRing)):
        binding = {lt: sample_ideal(specs[lt], rng, size=trials) for lt in letters}
        ml = eval_word(lhs, adapter, binding)
        mr = eval_word(rhs, adapter, binding)
        for lane, entry in _mismatch_lanes(adapter, ml, mr, trials):
            failures.append({"trial": lane, "entry": entry})
    else:
        for k in range(trials):
            binding = {lt: sample_ideal(specs[lt], rng) for lt in letters}
            ml = eval_word(lhs, adapter, binding)
            mr = eval_word(rhs, adapter, binding)
            for i in range(1, lhs.n + 1):
                for j in range(1, lhs.n + 1):
                    if not adapter.eq(ml.entry(i, j), mr.entry(i, j)):
                        failures.append({"trial": k, "entry": [i, j]})
                        break
                else:
                    continue
                break
    return VerificationReport(
        subject=subject,
        mode="numeric",
        n=lhs.n,
        ring=adapter.name,
        trials=trials,
        failures=tuple(failures),
        elapsed=time.perf_counter() - t0,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# level auditing
# ---------------------------------------------------------------------------


def standard_levels() -> dict:
    """Free-ring meaning of the level codes carried by factor atoms."""
    A = free_tag_ideal("a")
    B = free_tag_ideal("b")
    return {
        "A": A,
        "B": B,
        "AoB": sym_product(A, B),
        "AB": IdealSpec(FREE, Product(A, B)),
        "BA": IdealSpec(FREE, Product(B, A)),
    }


def _resolve_level(code: str, level_map: dict) -> IdealSpec:
    if code in level_map:
        return level_map[code]
    if code.startswith("I") and code[1:].isdigit():
        return free_tag_ideal("i", int(code[1:]))
    raise KeyError(f"unknown level code {code!r}")


def audit_levels(f, level_map: Optional[dict] = None, subject: str = "") -> VerificationReport:
    """Check every level claim on the factors, and the congruence shape of
    the target: off-diagonal entries and diagonal-minus-one must lie in the
    declared residual class.  Works on anything exposing ``factors``,
    ``residual_class``, ``min_degree()`` and ``target_word(n)``.
    """
    t0 = time.perf_counter()
    level_map = dict(standard_levels(), **(level_map or {}))
    failures = []
    for idx, atom in enumerate(f.factors):
        for pos, (arg, code) in enumerate(zip(atom.args, atom.levels)):
            if code is None:
                continue
            spec = _resolve_level(code, level_map)
            if not ideal_member(arg, spec):
                failures.append(
                    {
                        "factor": idx,
                        "arg": pos,
                        "level": code,
                        "value": poly_to_text(arg),
                    }
                )
    n = f.min_degree()
    target = eval_word(f.target_word(n))
    residual = f.residual_class
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = target.entry(i, j)
            if i == j:
                e = e - FreeRingElement.one()
            if not ideal_member(e, residual):
                failures.append(
                    {"entry": [i, j], "congruence": str(residual), "value": poly_to_text(e)}
                )
    return VerificationReport(
        subject=subject,
        mode="levels",
        n=n,
        ring="free",
        failures=tuple(failures),
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# mutations (verifier non-vacuity)
# ---------------------------------------------------------------------------


def mutate_atoms(atoms: Sequence[GeneratorAtom], n: int, rng) -> tuple:
    """One random single-token mutation of a factor list.

    Negates one nonzero argument, or moves one atom's row or column to a
    different valid index.  Only atoms whose arguments are all nonzero are
    moved, and only nonzero arguments are negated, so the mutated list is
    guaranteed to evaluate differently from the original: exactly one
    invertible factor of the product changes to a different matrix.

    Returns (mutated tuple of atoms, human-readable description).
    """
    atoms = tuple(atoms)
    if not atoms:
        raise ValueError("nothing to mutate in an empty factor list")
    for _ in range(500):
        k = rng.randrange(len(atoms))
        at = atoms[k]
        op = rng.choice(("negate", "row", "col"))
        if op == "negate":
            t = rng.randrange(len(at.args))
            if at.args[t].is_zero():
                continue
            if at.kind in ("Y", "C") and any(a.is_zero() for a in at.args):
                continue
            new = replace(
                at, args=tuple(-a if s == t else a for s, a in enumerate(at.args))
            )
            desc = f"negated argument {t} of factor {k} ({at.kind})"
        else:
            if any(a.is_zero() for a in at.args):
                continue
            old_i, old_j = at.i, at.j
            if op == "row":
                cands = [p for p in range(1, n + 1) if p not in (old_i, old_j)]
                if not cands:
                    continue
                try:
                    new = replace(at, i=rng.choice(cands))
                except ValueError:
                    continue
                desc = f"moved row of factor {k} from {old_i} to {new.i}"
            else:
                cands = [q for q in range(1, n + 1) if q not in (old_i, old_j)]
                if not cands:
                    continue
                try:
                    new = replace(at, j=rng.choice(cands))
                except ValueError:
                    continue
                desc = f"moved column of factor {k} from {old_j} to {new.j}"
        return atoms[:k] + (new,) + atoms[k + 1 :], desc
    raise RuntimeError("no admissible mutation found")


__all__ = [
    "VerificationReport",
    "append_report",
    "read_reports",
    "verify_symbolic",
    "verify_numeric",
    "audit_levels",
    "standard_levels",
    "mutate_atoms",
    "UnboundTag",
]
