"""Matrices over ring adapters and words in elementary transvections.

A ``GroupWord`` is a finite product of transvections t_ij(x) = e + x*e_ij.
Inverses never appear explicitly: t_ij(x)^-1 = t_ij(-x), so a word with
negated arguments is the inverse word.  ``GeneratorAtom`` layers the
classified generator view on top (plain transvections T, conjugates Z,
commutators Y, and commutator pairs C), each expanding to a short word.

Evaluation multiplies the identity matrix through the word with column
operations, which keeps the cost linear in the word length.  Arguments are
free-ring polynomials; a letter binding maps them into a concrete adapter,
and bindings holding numpy arrays evaluate whole trial batches at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .ring import (
    FreeRingElement,
    FreeRing,
    FREE,
    ParseError,
    RingAdapter,
    parse_poly,
    poly_to_text,
)


class DegreeMismatch(ValueError):
    pass


class OppositePair(ValueError):
    """Raised where a commutator of transvections has no closed form."""


# ---------------------------------------------------------------------------
# Transvections and words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Transvection:
    i: int
    j: int
    arg: FreeRingElement

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise ValueError(f"invalid transvection position ({self.i},{self.j})")

    def inverse(self) -> "Transvection":
        return Transvection(self.i, self.j, -self.arg)


def tv(i: int, j: int, arg) -> Transvection:
    if isinstance(arg, int):
        arg = FreeRingElement.from_int(arg)
    return Transvection(i, j, arg)


@dataclass(frozen=True)
class GroupWord:
    n: int
    atoms: tuple = ()

    def __post_init__(self):
        for t in self.atoms:
            if t.i > self.n or t.j > self.n:
                raise DegreeMismatch(
                    f"transvection ({t.i},{t.j}) does not fit in degree {self.n}"
                )

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.n != other.n:
            raise DegreeMismatch(f"degrees {self.n} and {other.n} differ")
        return GroupWord(self.n, self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)


def word(n: int, *atoms: Transvection) -> GroupWord:
    return GroupWord(n, tuple(atoms))


def word_inverse(w: GroupWord) -> GroupWord:
    return GroupWord(w.n, tuple(t.inverse() for t in reversed(w.atoms)))


def conjugate_word(g: GroupWord, w: GroupWord) -> GroupWord:
    """g * w * g^-1."""
    return g * w * word_inverse(g)


def commutator_word(x: GroupWord, y: GroupWord) -> GroupWord:
    """x * y * x^-1 * y^-1 (left-normed convention: [x,y] = (x y x^-1) y^-1)."""
    return x * y * word_inverse(x) * word_inverse(y)


def free_reduce(w: GroupWord) -> GroupWord:
    """Merge adjacent same-position factors and drop zero arguments.

    Cancellation may cascade (a merge can expose a new adjacent pair), so
    the pass runs over a stack.
    """
    stack: list = []
    for t in w.atoms:
        if t.arg.is_zero():
            continue
        if stack and stack[-1].i == t.i and stack[-1].j == t.j:
            merged = stack[-1].arg + t.arg
            stack.pop()
            if not merged.is_zero():
                stack.append(Transvection(t.i, t.j, merged))
        else:
            stack.append(t)
    return GroupWord(w.n, tuple(stack))


# ---------------------------------------------------------------------------
# Matrices and evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    n: int
    rows: tuple  # tuple of n tuples of ring values
    ring: RingAdapter = FREE

    def entry(self, i: int, j: int):
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.n != other.n or self.ring != other.ring:
            raise DegreeMismatch("matrix product shape/ring mismatch")
        ring = self.ring
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                acc = ring.zero()
                for k in range(self.n):
                    acc = ring.add(acc, ring.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return Matrix(self.n, tuple(rows), ring)

    def equals(self, other: "Matrix") -> bool:
        if self.n != other.n:
            return False
        return all(
            self.ring.eq(self.rows[i][j], other.rows[i][j])
            for i in range(self.n)
            for j in range(self.n)
        )


def identity_matrix(n: int, ring: RingAdapter = FREE) -> Matrix:
    rows = tuple(
        tuple(ring.one() if i == j else ring.zero() for j in range(n)) for i in range(n)
    )
    return Matrix(n, rows, ring)


def poly_eval(p: FreeRingElement, ring: RingAdapter, binding: Optional[dict]):
    """Map a free-ring polynomial into an adapter under a letter binding."""
    if isinstance(ring, FreeRing) and binding is None:
        return p
    acc = ring.zero()
    for mono, coef in p.terms.items():
        val = ring.from_int(coef)
        for lt in mono:
            if binding is None or lt not in binding:
                raise KeyError(f"letter {lt[0]}{lt[1]} is not bound")
            val = ring.mul(val, binding[lt])
        acc = ring.add(acc, val)
    return acc


def eval_word(
    w: GroupWord,
    ring: RingAdapter = FREE,
    binding: Optional[dict] = None,
    mutable=False,
) -> Matrix:
    """Evaluate the word to a matrix, multiplying left to right.

    Right multiplication by t_ij(x) is the column operation
    col_j += col_i * x, so the whole evaluation costs O(n) ring
    multiplications per word atom.
    """
    n = w.n
    rows = [
        [ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)
    ]
    for t in w.atoms:
        x = poly_eval(t.arg, ring, binding)
        ci, cj = t.i - 1, t.j - 1
        for r in range(n):
            v = rows[r][ci]
            if isinstance(ring, FreeRing) and isinstance(v, FreeRingElement) and v.is_zero():
                continue
            rows[r][cj] = ring.add(rows[r][cj], ring.mul(v, x))
    return Matrix(n, tuple(tuple(r) for r in rows), ring)


# ---------------------------------------------------------------------------
# Steinberg commutator relations
# ---------------------------------------------------------------------------


def steinberg_commutator(t1: Transvection, t2: Transvection, n: int) -> GroupWord:
    """Closed form of [t_ij(x), t_hk(y)] where one exists.

    Same inner index (j = h): a single transvection t_ik(xy).  Same outer
    index (k = i): a single transvection t_hj(-yx).  Disjoint positions:
    the empty word.  The opposite pair (h,k) = (j,i) is exactly the
    commutator generator and has no closed form; it is rejected.
    """
    i, j, x = t1.i, t1.j, t1.arg
    h, k, y = t2.i, t2.j, t2.arg
    if (h, k) == (j, i):
        raise OppositePair(
            f"[t_{i}{j}, t_{h}{k}] has no closed form (opposite pair)"
        )
    if j == h and i != k:
        return word(n, tv(i, k, x * y))
    if k == i and j != h:
        return word(n, tv(h, j, -(y * x)))
    if j != h and k != i:
        return word(n)
    # remaining overlaps (same row or same column) commute as well
    return word(n)


# ---------------------------------------------------------------------------
# Classified generator atoms
# ---------------------------------------------------------------------------
#
# kind "T": a plain transvection, args (x,).
# kind "Z": the conjugate  z_ij(x,c) = t_ji(c) t_ij(x) t_ji(-c), args (x, c).
# kind "Y": the commutator y_ij(x,y) = [t_ij(x), t_ji(y)], args (x, y).
# kind "C": the commutator [t_ij(x), t_hk(y)] of two transvections in
#           non-opposite position, args (x, y); carries the second position.
#
# ``inv`` marks the inverse of the displayed atom.  ``levels`` holds one
# ideal-class code per argument ("A", "B", "AoB", "AB", "BA" or None).


LEVEL_CODES = (None, "A", "B", "AoB", "AB", "BA", "I1", "I2")


@dataclass(frozen=True)
class GeneratorAtom:
    kind: str
    i: int
    j: int
    args: tuple
    h: Optional[int] = None
    k: Optional[int] = None
    levels: tuple = ()
    inv: bool = False

    def __post_init__(self):
        if self.kind not in ("T", "Z", "Y", "C"):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        want = {"T": 1, "Z": 2, "Y": 2, "C": 2}[self.kind]
        if len(self.args) != want:
            raise ValueError(f"{self.kind} atom needs {want} argument(s)")
        if self.i == self.j:
            raise ValueError("atom position must have i != j")
        if self.kind == "C":
            if self.h is None or self.k is None or self.h == self.k:
                raise ValueError("C atom needs a second position (h,k), h != k")
            if (self.h, self.k) == (self.j, self.i):
                raise OppositePair(
                    "C atom in opposite position is a Y atom; use kind Y"
                )

    def position(self) -> tuple:
        return (self.i, self.j)

    def with_levels(self, *levels) -> "GeneratorAtom":
        return replace(self, levels=tuple(levels))


def atom_T(i, j, x, level=None, inv=False) -> GeneratorAtom:
    return GeneratorAtom("T", i, j, (_p(x),), levels=(level,), inv=inv)


def atom_Z(i, j, x, c, levels=(None, None), inv=False) -> GeneratorAtom:
    return GeneratorAtom("Z", i, j, (_p(x), _p(c)), levels=tuple(levels), inv=inv)


def atom_Y(i, j, x, y, levels=(None, None), inv=False) -> GeneratorAtom:
    return GeneratorAtom("Y", i, j, (_p(x), _p(y)), levels=tuple(levels), inv=inv)


def atom_C(i, j, h, k, x, y, levels=("A", "B"), inv=False) -> GeneratorAtom:
    return GeneratorAtom("C", i, j, (_p(x), _p(y)), h=h, k=k, levels=tuple(levels), inv=inv)


def _p(x) -> FreeRingElement:
    return FreeRingElement.from_int(x) if isinstance(x, int) else x


def expand_atom(atom: GeneratorAtom, n: int) -> GroupWord:
    """The defining transvection word of an atom (inverted when inv is set)."""
    i, j = atom.i, atom.j
    if atom.kind == "T":
        (x,) = atom.args
        w = word(n, tv(i, j, x))
    elif atom.kind == "Z":
        x, c = atom.args
        w = word(n, tv(j, i, c), tv(i, j, x), tv(j, i, -c))
    elif atom.kind == "Y":
        x, y = atom.args
        w = word(n, tv(i, j, x), tv(j, i, y), tv(i, j, -x), tv(j, i, -y))
    else:  # C
        x, y = atom.args
        w = word(n, tv(i, j, x), tv(atom.h, atom.k, y), tv(i, j, -x), tv(atom.h, atom.k, -y))
    return word_inverse(w) if atom.inv else w


def expand_atoms(atoms: Sequence[GeneratorAtom], n: int) -> GroupWord:
    out = word(n)
    for a in atoms:
        out = out * expand_atom(a, n)
    return out


def atom_inverse(atom: GeneratorAtom) -> GeneratorAtom:
    """Closed-form inverse: T negates, Z negates its first argument,
    Y and C swap their two transvections."""
    if atom.inv:
        return replace(atom, inv=False)
    if atom.kind == "T":
        return replace(atom, args=(-atom.args[0],))
    if atom.kind == "Z":
        return replace(atom, args=(-atom.args[0], atom.args[1]))
    if atom.kind == "Y":
        x, y = atom.args
        return GeneratorAtom(
            "Y", atom.j, atom.i, (y, x), levels=tuple(reversed(atom.levels)), inv=False
        )
    return replace(atom, inv=True)


# ---------------------------------------------------------------------------
# Word grammar
# ---------------------------------------------------------------------------
#
#   word := atom (("*")? atom)*
#   atom := "t(" i "," j ";" poly ")"
#         | "z(" i "," j ";" poly ";" poly ")"
#         | "y(" i "," j ";" poly ";" poly ")"
#
# Whitespace-insensitive.  Parsing yields the classified atom list; use
# ``expand_atoms`` for the transvection word.


def parse_word_atoms(text: str) -> list:
    atoms = []
    pos = 0
    ln = len(text)

    def skip():
        nonlocal pos
        while pos < ln and (text[pos].isspace() or text[pos] == "*"):
            pos += 1

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= ln or text[pos] != ch:
            raise ParseError(f"expected {ch!r}", text, pos)
        pos += 1

    def integer() -> int:
        nonlocal pos
        skip()
        j = pos
        while j < ln and text[j].isdigit():
            j += 1
        if j == pos:
            raise ParseError("expected an index", text, pos)
        val = int(text[pos:j])
        pos = j
        return val

    def poly_until(stops) -> FreeRingElement:
        nonlocal pos
        start = pos
        while pos < ln and text[pos] not in stops:
            pos += 1
        chunk = text[start:pos]
        try:
            return parse_poly(chunk)
        except ParseError as e:
            raise ParseError(e.message, text, start + e.pos) from None

    while True:
        skip()
        if pos >= ln:
            break
        kind = text[pos]
        if kind not in "tzy":
            raise ParseError(f"expected atom kind t/z/y, got {kind!r}", text, pos)
        pos += 1
        expect("(")
        i = integer()
        expect(",")
        j = integer()
        if i == j:
            raise ParseError("atom position needs i != j (got i=j)", text, pos)
        expect(";")
        first = poly_until(";)")
        if kind == "t":
            expect(")")
            atoms.append(atom_T(i, j, first))
        else:
            expect(";")
            second = poly_until(")")
            expect(")")
            if kind == "z":
                atoms.append(atom_Z(i, j, first, second))
            else:
                atoms.append(atom_Y(i, j, first, second))
    return atoms


def parse_word(text: str, n: int) -> GroupWord:
    """Parse the word grammar and expand to a transvection word of degree n."""
    return expand_atoms(parse_word_atoms(text), n)


def atom_to_text(atom: GeneratorAtom) -> str:
    i, j = atom.i, atom.j
    args = "; ".join(poly_to_text(a) for a in atom.args)
    if atom.kind == "T":
        core = f"t({i},{j}; {args})"
    elif atom.kind == "Z":
        core = f"z({i},{j}; {args})"
    elif atom.kind == "Y":
        core = f"y({i},{j}; {args})"
    else:
        raise ValueError("C atoms have no single-atom text form; expand them")
    return core


def atoms_to_text(atoms: Sequence[GeneratorAtom]) -> str:
    return " ".join(atom_to_text(a) for a in atoms)


__all__ = [
    "DegreeMismatch",
    "OppositePair",
    "Transvection",
    "tv",
    "GroupWord",
    "word",
    "word_inverse",
    "conjugate_word",
    "commutator_word",
    "free_reduce",
    "Matrix",
    "identity_matrix",
    "poly_eval",
    "eval_word",
    "steinberg_commutator",
    "GeneratorAtom",
    "atom_T",
    "atom_Z",
    "atom_Y",
    "atom_C",
    "expand_atom",
    "expand_atoms",
    "atom_inverse",
    "parse_word_atoms",
    "parse_word",
    "atom_to_text",
    "atoms_to_text",
    "LEVEL_CODES",
]
