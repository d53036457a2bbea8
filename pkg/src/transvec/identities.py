"""Catalogued commutator identities as verified factorizations.

Each operation here returns a :class:`FactorizationResult`: a target word
(a conjugate or commutator generator) together with a factor list drawn
from a restricted class — transvections with arguments in a declared
ideal, plus generator atoms at designated positions.  Nothing is trusted:
the test suite multiplies every list back symbolically over the free
ring, and transcription discrepancies found that way are recorded in the
shipped ``errata.json``.

Two formal transforms produce the column/mirrored variants from the row
forms: ``dagger_atoms`` (transpose composed with the monomial-reversal
anti-automorphism, then inversion — an order-preserving map on factor
lists) and ``invert_atoms``.  Derived variants are still verified
independently; the transforms are a derivation device, not a proof.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from typing import Optional

from .ring import (
    FREE,
    FreeRingElement,
    IdealSpec,
    free_tag_ideal,
    letter,
    sym_product,
)
from .matgroup import (
    GeneratorAtom,
    GroupWord,
    atom_T,
    atom_Y,
    atom_Z,
    atom_inverse,
    expand_atoms,
    free_reduce,
    Transvection,
)


class UncoveredPosition(ValueError):
    """Conjugating position coincides with the commutator's own pair."""


def _p(x) -> FreeRingElement:
    return FreeRingElement.from_int(x) if isinstance(x, int) else x


def _ideal_A() -> IdealSpec:
    return free_tag_ideal("a")


def _ideal_AoB() -> IdealSpec:
    return sym_product(free_tag_ideal("a"), free_tag_ideal("b"))


@dataclass(frozen=True)
class FactorizationResult:
    """A target generator word and its factor list, with level claims.

    ``target`` and ``factors`` are tuples of GeneratorAtoms; the contract
    is that both expand to words with equal matrices over every ring.
    ``residual_class`` is the ideal L such that the target is congruent
    to the identity mod L (and unclassified transvection factors have
    arguments in L).
    """

    target: tuple
    factors: tuple
    residual_class: IdealSpec
    identity_id: Optional[str] = None

    def min_degree(self) -> int:
        idx = {3}
        for at in self.target + self.factors:
            idx.add(at.i)
            idx.add(at.j)
            if at.kind == "C":
                idx.add(at.h)
                idx.add(at.k)
        return max(idx)

    def target_word(self, n: Optional[int] = None) -> GroupWord:
        return expand_atoms(self.target, n or self.min_degree())

    def factors_word(self, n: Optional[int] = None) -> GroupWord:
        return expand_atoms(self.factors, n or self.min_degree())


# ---------------------------------------------------------------------------
# formal transforms
# ---------------------------------------------------------------------------

_DAGGER_LEVEL = {None: None, "A": "A", "B": "B", "AoB": "AoB", "AB": "BA", "BA": "AB"}


def dagger_atom(at: GeneratorAtom) -> GeneratorAtom:
    """Transpose-with-reversal followed by inversion, one atom at a time.

    If a word evaluates to the matrix X, the transformed word evaluates to
    the inverse of the reversed transpose of X.  The map distributes over
    products without reversing their order, so it sends valid identities
    to valid identities; argument monomials are reversed and negated as
    the matrix algebra dictates.
    """
    levels = tuple(_DAGGER_LEVEL.get(c, c) for c in at.levels)
    if at.kind == "T":
        (x,) = at.args
        return GeneratorAtom("T", at.j, at.i, (-x.reverse(),), levels=levels, inv=at.inv)
    if at.kind == "Z":
        x, c = at.args
        return GeneratorAtom(
            "Z", at.j, at.i, (-x.reverse(), -c.reverse()), levels=levels, inv=at.inv
        )
    if at.kind == "Y":
        x, y = at.args
        return GeneratorAtom(
            "Y", at.j, at.i, (-x.reverse(), -y.reverse()), levels=levels, inv=at.inv
        )
    x, y = at.args
    return GeneratorAtom(
        "C",
        at.j,
        at.i,
        (-x.reverse(), -y.reverse()),
        h=at.k,
        k=at.h,
        levels=levels,
        inv=at.inv,
    )


def dagger_atoms(atoms) -> tuple:
    return tuple(dagger_atom(a) for a in atoms)


def invert_atoms(atoms) -> tuple:
    """Closed-form inverse of a product: reversed list of atom inverses."""
    return tuple(atom_inverse(a) for a in reversed(atoms))


def y_to_tz(at: GeneratorAtom) -> tuple:
    """Split a commutator atom as y(x,c) = t(x) * z(-x,c), exactly."""
    if at.kind != "Y" or at.inv:
        raise ValueError("y_to_tz applies to plain Y atoms")
    x, c = at.args
    lx = at.levels[0] if at.levels else None
    lc = at.levels[1] if len(at.levels) > 1 else None
    return (
        atom_T(at.i, at.j, x, level=lx),
        atom_Z(at.i, at.j, -x, c, levels=(lx, lc)),
    )


# ---------------------------------------------------------------------------
# four-position conjugation formulas
# ---------------------------------------------------------------------------


def lemma4_conjugation(pos, y: GeneratorAtom, c=None) -> FactorizationResult:
    """Closed form of [t_kl(c), y_ij(a,b)] for every position off the pair.

    The commutator is a product of at most two transvections whose
    arguments all lie in A o B; disjoint positions commute outright.  At
    the pair's own positions (i,j), (j,i) there is no closed form and the
    call is rejected.
    """
    k, l = pos
    if y.kind != "Y" or y.inv:
        raise ValueError("second operand must be a plain Y atom")
    i, j = y.i, y.j
    a, b = y.args
    c = letter("c", 1) if c is None else _p(c)
    if k == l or min(k, l) < 1:
        raise ValueError(f"invalid position ({k},{l})")
    if (k, l) in ((i, j), (j, i)):
        raise UncoveredPosition(
            f"no closed conjugation formula at the commutator's own position ({k},{l})"
        )
    target = (atom_T(k, l, c), y, atom_T(k, l, -c), atom_inverse(y))
    if not ({k, l} & {i, j}):
        factors = ()
    elif k == i:
        h = l
        factors = (
            atom_T(i, h, -(a * b * c) - a * b * a * b * c, level="AoB"),
            atom_T(j, h, -(b * a * b * c), level="AoB"),
        )
    elif k == j:
        h = l
        factors = (
            atom_T(i, h, a * b * a * c, level="AoB"),
            atom_T(j, h, b * a * c, level="AoB"),
        )
    elif l == i:
        h = k
        factors = (
            atom_T(h, i, c * a * b, level="AoB"),
            atom_T(h, j, -(c * a * b * a), level="AoB"),
        )
    else:  # l == j
        h = k
        factors = (
            atom_T(h, i, c * b * a * b, level="AoB"),
            atom_T(h, j, -(c * b * a) - c * b * a * b * a, level="AoB"),
        )
    return FactorizationResult(target, factors, _ideal_AoB())


def conjugate_y_mod_level(t: Transvection, y: GeneratorAtom, n: Optional[int] = None):
    """Conjugating a commutator atom by a transvection off its pair only
    costs a correction word with arguments in A o B, multiplied on the
    left: t * y * t^-1 = correction * y.
    """
    f = lemma4_conjugation((t.i, t.j), y, c=t.arg)
    n = n or max(3, t.i, t.j, y.i, y.j)
    correction = free_reduce(expand_atoms(f.factors, n))
    return y, correction


# ---------------------------------------------------------------------------
# rolling a commutator across a column / row
# ---------------------------------------------------------------------------


def lemma6_roll(i, j, h, a, b, variant: str = "row") -> FactorizationResult:
    """Express y_ij(a,b) through y at an auxiliary position plus one
    conjugate atom and level transvections.

    Row variant: consumes Y(i,h,a,b) and Z(j,h,-ba,-1); column variant
    (derived by the dagger transform): consumes Y(h,j,·,·) and a Z at
    (h,i) with first argument in AB.
    """
    if len({i, j, h}) != 3:
        raise ValueError("indices must be pairwise distinct")
    a, b = _p(a), _p(b)
    if variant == "col":
        row = lemma6_roll(j, i, h, -a.reverse(), -b.reverse(), "row")
        return FactorizationResult(
            dagger_atoms(row.target),
            dagger_atoms(row.factors),
            _ideal_AoB(),
            identity_id="lemma6.col",
        )
    if variant != "row":
        raise ValueError(f"unknown variant {variant!r}")
    ba = b * a
    factors = (
        atom_T(i, h, a * ba, level="AoB"),
        atom_T(j, h, ba, level="AoB"),
        atom_T(i, j, -(a * ba), level="AoB"),
        atom_T(h, j, -ba, level="AoB"),
        atom_Y(i, h, a, b, levels=("A", "B")),
        atom_T(j, h, -ba, level="AoB"),
        atom_T(j, h, ba, level="AoB"),
        atom_Z(j, h, -ba, FreeRingElement.from_int(-1), levels=("BA", None)),
        atom_T(j, i, ba * b, level="AoB"),
        atom_T(h, i, -(ba * b), level="AoB"),
    )
    return FactorizationResult(
        (atom_Y(i, j, a, b, levels=("A", "B")),),
        factors,
        _ideal_AoB(),
        identity_id="lemma6.row",
    )


# ---------------------------------------------------------------------------
# conjugate generators from commutator generators
# ---------------------------------------------------------------------------


def _lemma7_atoms(i, j, h, x, y, c, cx, cy) -> tuple:
    # x is the left-ideal element, y the right one; cx/cy their level codes
    xy = x * y
    return (
        atom_T(i, j, xy, level="AoB"),
        atom_T(i, h, -(xy * c * x), level="AoB"),
        atom_T(i, j, -(xy * c * xy), level="AoB"),
        atom_T(i, h, xy * c * xy * c * x, level="AoB"),
        atom_Y(j, h, c * x, -(y * c * xy), levels=(cx, cy)),
        atom_T(h, j, -(y * c * xy), level="AoB"),
        atom_T(j, i, c * xy * c * xy * c, level="AoB"),
        atom_T(j, h, c * xy * c * x - c * xy * c * xy * c * x, level="AoB"),
        atom_Y(i, h, x, -(y * c), levels=(cx, cy)),
        atom_Y(j, h, c * x, y, levels=(cx, cy)),
        atom_T(h, i, -(y * c * xy * c), level="AoB"),
        atom_T(j, i, -(c * xy * c), level="AoB"),
    )


def lemma7_z_from_y(i, j, h, a, b, c=None, order: str = "ab") -> FactorizationResult:
    """Express the conjugate z_ij(ab,c) (or z_ij(ba,c)) through commutator
    atoms at the auxiliary column h plus transvections with A o B
    arguments.  The 'ba' order is the literal mirror with the two ideals
    interchanged.
    """
    if len({i, j, h}) != 3:
        raise ValueError("indices must be pairwise distinct")
    a, b = _p(a), _p(b)
    c = letter("c", 1) if c is None else _p(c)
    if order == "ab":
        factors = _lemma7_atoms(i, j, h, a, b, c, "A", "B")
        first = a * b
        ident = "lemma7.ab"
    elif order == "ba":
        factors = _lemma7_atoms(i, j, h, b, a, c, "B", "A")
        first = b * a
        ident = "lemma7.ba"
    else:
        raise ValueError(f"unknown order {order!r}")
    return FactorizationResult(
        (atom_Z(i, j, first, c, levels=("AoB", None)),),
        factors,
        _ideal_AoB(),
        identity_id=ident,
    )


# ---------------------------------------------------------------------------
# moving a conjugate generator to an auxiliary position
# ---------------------------------------------------------------------------


def lemma5_z_move(i, j, h, a, c=None, variant: str = "row") -> FactorizationResult:
    """Express z_ij(a,c) through conjugate atoms at (i,h),(j,h) (row
    variant) or (h,i),(h,j) (column variant, dagger-derived), plus
    transvections with arguments in A.
    """
    if len({i, j, h}) != 3:
        raise ValueError("indices must be pairwise distinct")
    a = _p(a)
    c = letter("c", 1) if c is None else _p(c)
    if variant == "col":
        row = lemma5_z_move(j, i, h, -a.reverse(), -c.reverse(), "row")
        return FactorizationResult(
            dagger_atoms(row.target),
            dagger_atoms(row.factors),
            _ideal_A(),
            identity_id="lemma5.col",
        )
    if variant != "row":
        raise ValueError(f"unknown variant {variant!r}")
    ca = c * a
    one = FreeRingElement.one()
    factors = (
        atom_T(i, j, a, level="A"),
        atom_T(i, h, -(a * ca), level="A"),
        atom_T(i, j, -(a * ca), level="A"),
        atom_T(i, h, a * ca * ca, level="A"),
        atom_T(j, h, ca, level="A"),
        atom_Z(j, h, -ca, -ca, levels=("A", None)),
        atom_T(h, j, -ca, level="A"),
        atom_T(j, i, ca * ca * c, level="A"),
        atom_T(j, h, ca * ca - ca * ca * ca, level="A"),
        atom_T(i, h, a, level="A"),
        atom_Z(i, h, -a, -c, levels=("A", None)),
        atom_T(j, h, ca, level="A"),
        atom_Z(j, h, -ca, one, levels=("A", None)),
        atom_T(h, i, -(ca * c), level="A"),
        atom_T(j, i, -(ca * c), level="A"),
    )
    return FactorizationResult(
        (atom_Z(i, j, a, c, levels=("A", None)),),
        factors,
        _ideal_A(),
        identity_id="lemma5.row",
    )


# ---------------------------------------------------------------------------
# splitting a commutator generator into two conjugates
# ---------------------------------------------------------------------------


def theorem2_y_split(i, j, a, b) -> FactorizationResult:
    """y_ij(a,b) = z_ij(a,0) * z_ij(-a,b), exactly as words after
    dropping zero-argument transvections."""
    if i == j:
        raise ValueError("need i != j")
    a, b = _p(a), _p(b)
    factors = (
        atom_Z(i, j, a, FreeRingElement.zero(), levels=("A", "B")),
        atom_Z(i, j, -a, b, levels=("A", "B")),
    )
    return FactorizationResult(
        (atom_Y(i, j, a, b, levels=("A", "B")),),
        factors,
        _ideal_AoB(),
        identity_id="thm2.split",
    )


# ---------------------------------------------------------------------------
# the catalogue
# ---------------------------------------------------------------------------

CATALOGUE_IDS = (
    "lemma4.ih",
    "lemma4.jh",
    "lemma4.hi",
    "lemma4.hj",
    "lemma5.row",
    "lemma5.col",
    "lemma6.row",
    "lemma6.col",
    "lemma7.ab",
    "lemma7.ba",
    "thm2.split",
)


def catalogue_entry(ident: str, i: int = 1, j: int = 2, h: int = 3) -> FactorizationResult:
    """Instantiate a catalogued identity with fresh letters a1, b1, c1."""
    a, b, c = letter("a", 1), letter("b", 1), letter("c", 1)
    y = atom_Y(i, j, a, b, levels=("A", "B"))
    table = {
        "lemma4.ih": lambda: replace(
            lemma4_conjugation((i, h), y, c), identity_id="lemma4.ih"
        ),
        "lemma4.jh": lambda: replace(
            lemma4_conjugation((j, h), y, c), identity_id="lemma4.jh"
        ),
        "lemma4.hi": lambda: replace(
            lemma4_conjugation((h, i), y, c), identity_id="lemma4.hi"
        ),
        "lemma4.hj": lambda: replace(
            lemma4_conjugation((h, j), y, c), identity_id="lemma4.hj"
        ),
        "lemma5.row": lambda: lemma5_z_move(i, j, h, a, c, "row"),
        "lemma5.col": lambda: lemma5_z_move(i, j, h, a, c, "col"),
        "lemma6.row": lambda: lemma6_roll(i, j, h, a, b, "row"),
        "lemma6.col": lambda: lemma6_roll(i, j, h, a, b, "col"),
        "lemma7.ab": lambda: lemma7_z_from_y(i, j, h, a, b, c, "ab"),
        "lemma7.ba": lambda: lemma7_z_from_y(i, j, h, a, b, c, "ba"),
        "thm2.split": lambda: theorem2_y_split(i, j, a, b),
    }
    if ident not in table:
        raise KeyError(f"unknown identity {ident!r}")
    return table[ident]()


def catalogue() -> dict:
    return {ident: catalogue_entry(ident) for ident in CATALOGUE_IDS}


def load_errata() -> dict:
    """The shipped record of transcription discrepancies."""
    text = resources.files(__package__).joinpath("errata.json").read_text()
    return json.loads(text)


__all__ = [
    "FactorizationResult",
    "UncoveredPosition",
    "dagger_atom",
    "dagger_atoms",
    "invert_atoms",
    "y_to_tz",
    "lemma4_conjugation",
    "conjugate_y_mod_level",
    "lemma6_roll",
    "lemma7_z_from_y",
    "lemma5_z_move",
    "theorem2_y_split",
    "CATALOGUE_IDS",
    "catalogue_entry",
    "catalogue",
    "load_errata",
]
