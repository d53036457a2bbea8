"""Rings with distinguished two-sided ideals.

This module provides the coefficient side of the library:

* ``FreeRingElement`` -- exact noncommutative polynomials over tagged
  indeterminates, the universal ring in which all identities are checked;
* ring adapters (``FreeRing``, ``IntRing``, ``ModRing``, ``TriangRing``)
  giving a uniform protocol for arithmetic and randomized sampling;
* ``IdealSpec`` -- decidable descriptions of two-sided ideals, including
  symmetrised products ``A o B = AB + BA``;
* ``BracketTree`` -- parenthesizations of repeated symmetrised products,
  with their cut points.

Everything here is immutable and pure: values may be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

# ---------------------------------------------------------------------------
# Letters and monomials
# ---------------------------------------------------------------------------

#: Tags of indeterminates.  'a', 'b' mark elements of the distinguished
#: ideals A and B, 'c', 'd' and 'r' mark unconstrained ring elements, and
#: 'i' marks elements of a numbered ideal I_k (the letter index is then the
#: ideal number, not an independent-variable counter).
TAGS = ("a", "b", "c", "d", "r", "i")

Letter = tuple  # (tag, index), e.g. ("a", 1)
Monomial = tuple  # tuple of Letters; () is the unit monomial


def letter(tag: str, index: int) -> "FreeRingElement":
    """The indeterminate with the given tag and index, as a polynomial."""
    if tag not in TAGS:
        raise ValueError(f"unknown letter tag {tag!r}")
    if index < 1:
        raise ValueError("letter index must be >= 1")
    return FreeRingElement({((tag, index),): 1})


def _mono_key(m: Monomial):
    # canonical order: by length, then lexicographically
    return (len(m), m)


class FreeRingElement:
    """An exact element of the free associative ring Z<letters>.

    Stored as a map from monomials (tuples of letters) to nonzero integer
    coefficients.  Multiplication concatenates monomials and is extended
    bilinearly; coefficients are arbitrary-precision integers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "FreeRingElement":
        return FreeRingElement({})

    @staticmethod
    def one() -> "FreeRingElement":
        return FreeRingElement({(): 1})

    @staticmethod
    def from_int(k: int) -> "FreeRingElement":
        return FreeRingElement({(): int(k)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def letters(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m)
        return out

    def max_degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            c2 = terms.get(m, 0) + c
            if c2:
                terms[m] = c2
            else:
                terms.pop(m, None)
        return FreeRingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return FreeRingElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                c = terms.get(m, 0) + c1 * c2
                if c:
                    terms[m] = c
                else:
                    terms.pop(m, None)
        return FreeRingElement(terms)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def reverse(self) -> "FreeRingElement":
        """Reverse every monomial (the unique anti-automorphism fixing letters)."""
        terms: dict = {}
        for m, c in self.terms.items():
            rm = tuple(reversed(m))
            terms[rm] = terms.get(rm, 0) + c
        return FreeRingElement(terms)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))))

    # -- printing -----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def __str__(self):
        return poly_to_text(self)

    def __repr__(self):
        return f"<poly {poly_to_text(self)}>"


def _coerce(x) -> Union[FreeRingElement, type(NotImplemented)]:
    if isinstance(x, FreeRingElement):
        return x
    if isinstance(x, int):
        return FreeRingElement.from_int(x)
    return NotImplemented


ZERO = FreeRingElement.zero()
ONE = FreeRingElement.one()


def poly_mul(x: FreeRingElement, y: FreeRingElement) -> FreeRingElement:
    """Canonical-form product in the free ring."""
    return _coerce(x) * _coerce(y)


# ---------------------------------------------------------------------------
# Textual syntax for free-ring elements
# ---------------------------------------------------------------------------
#
# Signed integer coefficients followed by juxtaposed letters, e.g.
#     -1 a1 b1 c1 - 1 a1 b1 a1 b1 c1
# The printer always writes an explicit coefficient; the parser also accepts
# terms without one ("a1 b2" means "1 a1 b2").


class ParseError(ValueError):
    """Syntax error with the position of the first offending character."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.col})")


def poly_to_text(p: FreeRingElement) -> str:
    items = p.sorted_terms()
    if not items:
        return "0"
    chunks = []
    for idx, (mono, coef) in enumerate(items):
        sign = "-" if coef < 0 else "+"
        body = " ".join([str(abs(coef))] + [f"{t}{i}" for (t, i) in mono])
        if idx == 0:
            chunks.append(body if coef > 0 else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


def _tokenize_poly(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-":
            yield (ch, i)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield (("int", int(text[i:j])), i)
            i = j
            continue
        if ch in TAGS:
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"letter {ch!r} needs an index", text, i)
            yield (("letter", (ch, int(text[i + 1:j]))), i)
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)


def parse_poly(text: str) -> FreeRingElement:
    """Parse the textual free-ring syntax; inverse of :func:`poly_to_text`."""
    tokens = list(_tokenize_poly(text))
    if not tokens:
        raise ParseError("empty polynomial", text, 0)
    result = FreeRingElement.zero()
    pos = 0
    k = 0
    while k < len(tokens):
        sign = 1
        # leading signs
        while k < len(tokens) and tokens[k][0] in ("+", "-"):
            if tokens[k][0] == "-":
                sign = -sign
            pos = tokens[k][1]
            k += 1
        if k >= len(tokens):
            raise ParseError("dangling sign", text, pos)
        coef = 1
        tok, pos = tokens[k]
        if isinstance(tok, tuple) and tok[0] == "int":
            coef = tok[1]
            k += 1
        mono = []
        while k < len(tokens) and isinstance(tokens[k][0], tuple) and tokens[k][0][0] == "letter":
            mono.append(tokens[k][0][1])
            k += 1
        if coef == 1 and not mono and not (isinstance(tok, tuple) and tok[0] == "int"):
            raise ParseError("expected coefficient or letter", text, pos)
        result = result + FreeRingElement({tuple(mono): sign * coef})
    return result


# ---------------------------------------------------------------------------
# Ring adapters
# ---------------------------------------------------------------------------
#
# Adapters present a tiny uniform protocol: zero/one/from_int, add/neg/mul,
# eq, and a sampler.  Arithmetic methods are written so that plain values
# and numpy arrays may be used interchangeably where that makes sense
# (ModRing, TriangRing); the batched numeric verifier relies on this.


@dataclass(frozen=True)
class FreeRing:
    name: str = "free"

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def from_int(self, k):
        return FreeRingElement.from_int(k)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def eq(self, x, y):
        return _coerce(x) == _coerce(y)

    def is_zero(self, x):
        return _coerce(x).is_zero()

    def sample(self, rng):
        # small random polynomial; used by the arithmetic property tests
        pool = [("a", 1), ("b", 1), ("c", 1), ("a", 2), ("b", 2)]
        terms: dict = {}
        for _ in range(rng.randint(1, 3)):
            mono = tuple(rng.choice(pool) for _ in range(rng.randint(0, 3)))
            terms[mono] = terms.get(mono, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
        return FreeRingElement(terms)


@dataclass(frozen=True)
class IntRing:
    name: str = "z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return int(k)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def eq(self, x, y):
        return x == y

    def is_zero(self, x):
        return x == 0

    def sample(self, rng):
        return rng.randint(-9, 9)


@dataclass(frozen=True)
class ModRing:
    """The ring Z/m, m >= 2.  Values are ints in [0, m); arrays also work."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def name(self):
        return f"zmod:{self.m}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k % self.m

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def eq(self, x, y):
        return x == y

    def is_zero(self, x):
        return x == 0

    def sample(self, rng):
        return rng.randrange(self.m)


@dataclass(frozen=True)
class TriangRing:
    """Upper-triangular 2x2 matrices over Z/m, encoded as triples.

    A value (d1, u, d2) stands for the matrix [[d1, u], [0, d2]].  The ring
    is noncommutative, and its strict-upper-triangular part is a proper
    two-sided ideal of square zero.
    """

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def name(self):
        return f"triang:{self.m}"

    def zero(self):
        return (0, 0, 0)

    def one(self):
        return (1, 0, 1)

    def from_int(self, k):
        return (k % self.m, 0, k % self.m)

    def add(self, x, y):
        return ((x[0] + y[0]) % self.m, (x[1] + y[1]) % self.m, (x[2] + y[2]) % self.m)

    def neg(self, x):
        return ((-x[0]) % self.m, (-x[1]) % self.m, (-x[2]) % self.m)

    def mul(self, x, y):
        return (
            (x[0] * y[0]) % self.m,
            (x[0] * y[1] + x[1] * y[2]) % self.m,
            (x[2] * y[2]) % self.m,
        )

    def eq(self, x, y):
        return x == y

    def is_zero(self, x):
        return x == (0, 0, 0)

    def sample(self, rng):
        return (rng.randrange(self.m), rng.randrange(self.m), rng.randrange(self.m))


RingAdapter = Union[FreeRing, IntRing, ModRing, TriangRing]

FREE = FreeRing()
ZINT = IntRing()


def adapter_from_name(name: str) -> RingAdapter:
    """Parse ring names used on the command line: z, zmod:<m>, triang:<m>, free."""
    if name == "z":
        return ZINT
    if name == "free":
        return FREE
    if name.startswith("zmod:"):
        return ModRing(int(name.split(":", 1)[1]))
    if name.startswith("triang:"):
        return TriangRing(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown ring {name!r}")


# ---------------------------------------------------------------------------
# Ideal descriptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeTag:
    """In the free ring: the two-sided ideal generated by all letters of a tag.

    For the numbered tag 'i' an explicit ideal number must be given;
    FreeTag('i', 3) is the ideal generated by the letters i3.
    """

    tag: str
    number: Optional[int] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.tag == "i" and self.number is None:
            raise ValueError("numbered tag 'i' requires an ideal number")

    def matches(self, lt: Letter) -> bool:
        if lt[0] != self.tag:
            return False
        return self.number is None or lt[1] == self.number


@dataclass(frozen=True)
class PrincipalInt:
    """dZ inside Z or Z/m; d = 0 encodes the zero ideal, d = 1 the full ring."""

    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("principal generator must be >= 0")


@dataclass(frozen=True)
class NamedSet:
    """An ideal of TriangRing named by shape: zero, strict_upper or full."""

    which: str

    def __post_init__(self):
        if self.which not in ("zero", "strict_upper", "full"):
            raise ValueError(f"unknown named ideal {self.which!r}")


@dataclass(frozen=True)
class SymProd:
    """Formal symmetrised product node; meaningful in the free ring."""

    left: "IdealSpec"
    right: "IdealSpec"


@dataclass(frozen=True)
class Product:
    """Formal one-sided product LR (order fixed); used for level claims."""

    left: "IdealSpec"
    right: "IdealSpec"


Description = Union[FreeTag, PrincipalInt, NamedSet, SymProd, Product]


@dataclass(frozen=True)
class IdealSpec:
    ring: RingAdapter
    desc: Description

    def __str__(self):
        return describe_ideal(self)


class RingMismatch(ValueError):
    pass


def free_tag_ideal(tag: str, number: Optional[int] = None) -> IdealSpec:
    return IdealSpec(FREE, FreeTag(tag, number))


def principal(d: int, ring: RingAdapter = ZINT) -> IdealSpec:
    if isinstance(ring, ModRing):
        d = _canon_mod(d, ring.m)
    return IdealSpec(ring, PrincipalInt(d))


def named_ideal(which: str, ring: TriangRing) -> IdealSpec:
    return IdealSpec(ring, NamedSet(which))


def _canon_mod(d: int, m: int) -> int:
    g = math.gcd(d % m, m)
    return 0 if g == m else g


def describe_ideal(spec: IdealSpec) -> str:
    d = spec.desc
    if isinstance(d, FreeTag):
        return d.tag.upper() if d.number is None else f"I{d.number}"
    if isinstance(d, PrincipalInt):
        return f"({d.d})"
    if isinstance(d, NamedSet):
        return d.which
    if isinstance(d, SymProd):
        return f"({describe_ideal(d.left)} o {describe_ideal(d.right)})"
    if isinstance(d, Product):
        return f"({describe_ideal(d.left)}*{describe_ideal(d.right)})"
    raise TypeError(d)


# -- membership -------------------------------------------------------------


def ideal_member(x, spec: IdealSpec) -> bool:
    """Decide x in I.

    In the free ring, membership is decided monomial-wise: tag ideals ask
    for at least one matching letter per monomial, and (symmetrised)
    products enumerate every split of the monomial into two factors,
    recursively.  In Z and Z/m it is divisibility; in TriangRing a shape
    test.  Raises :class:`RingMismatch` when the value visibly does not
    belong to the adapter of the ideal.
    """
    ring = spec.ring
    if isinstance(ring, FreeRing):
        if not isinstance(x, FreeRingElement):
            raise RingMismatch(f"free-ring ideal got {type(x).__name__}")
        return all(_mono_member(m, spec) for m in x.terms)
    if isinstance(ring, (IntRing, ModRing)):
        if not isinstance(x, int):
            raise RingMismatch(f"integer ideal got {type(x).__name__}")
        desc = _reduce_concrete(spec).desc
        if isinstance(ring, ModRing):
            g = _canon_mod(desc.d, ring.m)
            return (x % ring.m) == 0 if g == 0 else (x % g) == 0
        return x == 0 if desc.d == 0 else x % desc.d == 0
    if isinstance(ring, TriangRing):
        if not (isinstance(x, tuple) and len(x) == 3):
            raise RingMismatch(f"triangular ideal got {type(x).__name__}")
        which = _reduce_concrete(spec).desc.which
        if which == "zero":
            return x == (0, 0, 0)
        if which == "strict_upper":
            return x[0] == 0 and x[2] == 0
        return True
    raise TypeError(ring)


def _mono_member(m: Monomial, spec: IdealSpec) -> bool:
    d = spec.desc
    if isinstance(d, FreeTag):
        return any(d.matches(lt) for lt in m)
    if isinstance(d, SymProd):
        for cut in range(1, len(m)):
            m1, m2 = m[:cut], m[cut:]
            if (_mono_member(m1, d.left) and _mono_member(m2, d.right)) or (
                _mono_member(m1, d.right) and _mono_member(m2, d.left)
            ):
                return True
        return False
    if isinstance(d, Product):
        for cut in range(1, len(m)):
            if _mono_member(m[:cut], d.left) and _mono_member(m[cut:], d.right):
                return True
        return False
    raise TypeError(f"not a free-ring ideal description: {d}")


def _reduce_concrete(spec: IdealSpec) -> IdealSpec:
    """Collapse SymProd nodes over concrete adapters to canonical form."""
    d = spec.desc
    if isinstance(d, (PrincipalInt, NamedSet)):
        return spec
    if isinstance(d, SymProd):
        return sym_product(_reduce_concrete(d.left), _reduce_concrete(d.right))
    raise TypeError(f"cannot reduce {d} over {spec.ring.name}")


# -- symmetrised product ----------------------------------------------------

_TRIANG_CIRC = {
    ("zero", "zero"): "zero",
    ("zero", "strict_upper"): "zero",
    ("zero", "full"): "zero",
    ("strict_upper", "strict_upper"): "zero",
    ("strict_upper", "full"): "strict_upper",
    ("full", "full"): "full",
}


def sym_product(i: IdealSpec, j: IdealSpec) -> IdealSpec:
    """The symmetrised product I o J = IJ + JI.

    Over Z and Z/m principal ideals this is the principal ideal on the
    product of the generators (canonically reduced mod m); over the free
    ring it is the formal SymProd node; over TriangRing it is computed from
    the shape table (in particular strict_upper o strict_upper = zero).
    """
    if i.ring != j.ring:
        raise RingMismatch(f"sym_product across rings {i.ring.name} / {j.ring.name}")
    ring = i.ring
    if isinstance(ring, FreeRing):
        return IdealSpec(ring, SymProd(i, j))
    if isinstance(ring, (IntRing, ModRing)):
        di = _reduce_concrete(i).desc.d
        dj = _reduce_concrete(j).desc.d
        return principal(di * dj, ring)
    if isinstance(ring, TriangRing):
        wi = _reduce_concrete(i).desc.which
        wj = _reduce_concrete(j).desc.which
        key = tuple(sorted((wi, wj), key=("zero", "strict_upper", "full").index))
        return named_ideal(_TRIANG_CIRC[key], ring)
    raise TypeError(ring)


# ---------------------------------------------------------------------------
# Bracket trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    k: int


@dataclass(frozen=True)
class Node:
    left: "BracketTree"
    right: "BracketTree"


BracketTree = Union[Leaf, Node]


def tree_leaves(t: BracketTree) -> list:
    if isinstance(t, Leaf):
        return [t.k]
    return tree_leaves(t.left) + tree_leaves(t.right)


def validate_tree(t: BracketTree, m: int) -> None:
    """Leaves of a tree over m ideals must read 1..m left to right."""
    lv = tree_leaves(t)
    if lv != list(range(1, m + 1)):
        raise ValueError(f"tree leaves {lv} are not 1..{m} in order")


def cut_point(t: BracketTree) -> int:
    """Number of leaves in the left child of the root."""
    if isinstance(t, Leaf):
        raise ValueError("a single leaf has no cut point")
    return len(tree_leaves(t.left))


def tree_level(t: BracketTree, ideals: list) -> IdealSpec:
    """Fold the ideal list through the tree with sym_product."""
    lv = tree_leaves(t)
    if len(ideals) != len(set(lv)) or any(k < 1 or k > len(ideals) for k in lv):
        raise ValueError(
            f"tree over leaves {lv} does not match {len(ideals)} supplied ideals"
        )

    def go(node):
        if isinstance(node, Leaf):
            return ideals[node.k - 1]
        return sym_product(go(node.left), go(node.right))

    return go(t)


def parse_tree(text: str) -> BracketTree:
    """Parse bracket-tree syntax like "((1 2) 3)"; a bare integer is a leaf."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def node() -> BracketTree:
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ParseError("unexpected end of tree", text, pos)
        if text[pos] == "(":
            pos += 1
            left = node()
            right = node()
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("expected ')'", text, pos)
            pos += 1
            return Node(left, right)
        if text[pos].isdigit():
            j = pos
            while j < len(text) and text[j].isdigit():
                j += 1
            k = int(text[pos:j])
            pos = j
            return Leaf(k)
        raise ParseError(f"unexpected character {text[pos]!r} in tree", text, pos)

    out = node()
    skip_ws()
    if pos != len(text):
        raise ParseError("trailing input after tree", text, pos)
    return out


def tree_to_text(t: BracketTree) -> str:
    if isinstance(t, Leaf):
        return str(t.k)
    return f"({tree_to_text(t.left)} {tree_to_text(t.right)})"


# ---------------------------------------------------------------------------
# Ideal-aware sampling
# ---------------------------------------------------------------------------


def sample_ideal(spec: IdealSpec, rng, size: Optional[int] = None):
    """Draw a uniform-ish element of the ideal; with ``size``, a numpy batch.

    Batched sampling is supported for ModRing and TriangRing, which is all
    the numeric verifier needs; Z and the free ring sample scalars only.
    """
    ring = spec.ring
    if isinstance(ring, ModRing):
        g = _canon_mod(_reduce_concrete(spec).desc.d, ring.m)
        if size is None:
            return 0 if g == 0 else (g * rng.randrange(ring.m // g)) % ring.m
        import numpy as np

        if g == 0:
            return np.zeros(size, dtype=np.int64)
        return (g * _np_rng(rng).integers(0, ring.m // g, size=size)) % ring.m
    if isinstance(ring, TriangRing):
        which = _reduce_concrete(spec).desc.which
        if size is None:
            if which == "zero":
                return (0, 0, 0)
            if which == "strict_upper":
                return (0, rng.randrange(ring.m), 0)
            return ring.sample(rng)
        import numpy as np

        z = np.zeros(size, dtype=np.int64)
        gen = _np_rng(rng)
        if which == "zero":
            return (z, z.copy(), z.copy())
        if which == "strict_upper":
            return (z, gen.integers(0, ring.m, size=size), z.copy())
        return (
            gen.integers(0, ring.m, size=size),
            gen.integers(0, ring.m, size=size),
            gen.integers(0, ring.m, size=size),
        )
    if isinstance(ring, IntRing):
        if size is not None:
            raise ValueError("batched sampling is only provided mod m")
        d = spec.desc.d
        return d * rng.randint(-9, 9)
    if isinstance(ring, FreeRing):
        if size is not None:
            raise ValueError("batched sampling is only provided mod m")
        return _sample_free_ideal(spec, rng)
    raise TypeError(ring)


def _np_rng(rng):
    import numpy as np

    # derive a numpy generator deterministically from the python Random state
    return np.random.default_rng(rng.getrandbits(64))


def _sample_free_ideal(spec: IdealSpec, rng) -> FreeRingElement:
    desc = spec.desc
    others = [("c", 1), ("r", 1), ("a", 2), ("b", 2)]

    def tag_mono(d) -> tuple:
        if isinstance(d, FreeTag):
            core = (d.tag, d.number if d.number is not None else rng.randint(1, 2))
            pre = tuple(rng.choice(others) for _ in range(rng.randint(0, 1)))
            post = tuple(rng.choice(others) for _ in range(rng.randint(0, 1)))
            return pre + (core,) + post
        if isinstance(d, SymProd):
            ms = [tag_mono(d.left.desc), tag_mono(d.right.desc)]
            rng.shuffle(ms)
            return ms[0] + ms[1]
        if isinstance(d, Product):
            return tag_mono(d.left.desc) + tag_mono(d.right.desc)
        raise TypeError(d)

    terms: dict = {}
    for _ in range(rng.randint(1, 2)):
        mono = tag_mono(desc)
        terms[mono] = terms.get(mono, 0) + rng.choice([-2, -1, 1, 2])
    return FreeRingElement(terms)


__all__ = [
    "TAGS",
    "FreeRingElement",
    "ZERO",
    "ONE",
    "letter",
    "poly_mul",
    "poly_to_text",
    "parse_poly",
    "ParseError",
    "FreeRing",
    "IntRing",
    "ModRing",
    "TriangRing",
    "RingAdapter",
    "FREE",
    "ZINT",
    "adapter_from_name",
    "FreeTag",
    "PrincipalInt",
    "NamedSet",
    "SymProd",
    "Product",
    "IdealSpec",
    "RingMismatch",
    "free_tag_ideal",
    "principal",
    "named_ideal",
    "describe_ideal",
    "ideal_member",
    "sym_product",
    "Leaf",
    "Node",
    "BracketTree",
    "tree_leaves",
    "validate_tree",
    "cut_point",
    "tree_level",
    "parse_tree",
    "tree_to_text",
    "sample_ideal",
]
