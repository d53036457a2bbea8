"""Tests for transvection words, evaluation and generator atoms.

The commutator-matrix example values were frozen from the plain
list-of-lists integer matmul oracle below, multiplying out explicit
elementary matrices with no help from the module under test.
"""

import random

import pytest

from transvec.ring import (
    FREE,
    ZINT,
    FreeRingElement,
    ModRing,
    ParseError,
    letter,
    poly_to_text,
)
from transvec.matgroup import (
    DegreeMismatch,
    GeneratorAtom,
    OppositePair,
    atom_C,
    atom_T,
    atom_Y,
    atom_Z,
    atom_inverse,
    atoms_to_text,
    commutator_word,
    conjugate_word,
    eval_word,
    expand_atom,
    expand_atoms,
    free_reduce,
    identity_matrix,
    parse_word,
    parse_word_atoms,
    poly_eval,
    steinberg_commutator,
    tv,
    word,
    word_inverse,
)

a1, b1, c1 = letter("a", 1), letter("b", 1), letter("c", 1)


# -- oracle -----------------------------------------------------------------


def elem(n, i, j, x):
    """Integer elementary matrix e + x * e_ij as a list of lists."""
    m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    m[i - 1][j - 1] += x
    return m


def matmul(p, q):
    n = len(p)
    return [
        [sum(p[r][k] * q[k][c] for k in range(n)) for c in range(n)]
        for r in range(n)
    ]


def chain(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m)
    return out


def as_lists(mat):
    return [list(r) for r in mat.rows]


# -- evaluation -------------------------------------------------------------


def test_commutator_matrix_frozen_from_oracle():
    # t12(1) t21(1) t12(-1) t21(-1) over the integers at n = 3
    expect = chain(
        elem(3, 1, 2, 1), elem(3, 2, 1, 1), elem(3, 1, 2, -1), elem(3, 2, 1, -1)
    )
    assert expect == [[3, -1, 0], [1, 0, 0], [0, 0, 1]]  # frozen
    w = word(3, tv(1, 2, 1), tv(2, 1, 1), tv(1, 2, -1), tv(2, 1, -1))
    assert as_lists(eval_word(w, ZINT)) == expect
    # prefix of the first three factors, same oracle
    pref = chain(elem(3, 1, 2, 1), elem(3, 2, 1, 1), elem(3, 1, 2, -1))
    assert pref == [[2, -1, 0], [1, 0, 0], [0, 0, 1]]
    assert as_lists(eval_word(word(3, *w.atoms[:3]), ZINT)) == pref


def test_commutator_block_symbolic():
    y = expand_atom(atom_Y(1, 2, a1, b1), 3)
    m = eval_word(y)
    ab = a1 * b1
    assert m.entry(1, 1) == 1 + ab + ab * ab
    assert m.entry(1, 2) == -(ab * a1)
    assert m.entry(2, 1) == b1 * ab
    assert m.entry(2, 2) == 1 - b1 * a1
    for k in (1, 2):
        assert m.entry(3, k).is_zero() and m.entry(k, 3).is_zero()
    assert m.entry(3, 3) == FreeRingElement.one()


def test_symbolic_eval_matches_naive_matmul():
    # independent free-ring matmul over explicit elementary matrices
    def felem(n, i, j, x):
        one, zero = FreeRingElement.one(), FreeRingElement.zero()
        m = [[one if r == c else zero for c in range(n)] for r in range(n)]
        m[i - 1][j - 1] = m[i - 1][j - 1] + x
        return m

    def fmul(p, q):
        n = len(p)
        return [
            [
                sum((p[r][k] * q[k][c] for k in range(n)), FreeRingElement.zero())
                for c in range(n)
            ]
            for r in range(n)
        ]

    w = word(4, tv(1, 2, a1), tv(2, 3, b1), tv(3, 1, c1), tv(1, 4, a1 * b1))
    naive = felem(4, 1, 2, a1)
    for t in w.atoms[1:]:
        naive = fmul(naive, felem(4, t.i, t.j, t.arg))
    assert as_lists(eval_word(w)) == naive


def test_eval_is_multiplicative():
    rng = random.Random(3)
    pool = [tv(1, 2, a1), tv(2, 3, b1), tv(3, 1, c1), tv(2, 1, a1 * b1)]
    for _ in range(20):
        w1 = word(3, *(rng.choice(pool) for _ in range(rng.randint(0, 4))))
        w2 = word(3, *(rng.choice(pool) for _ in range(rng.randint(0, 4))))
        lhs = eval_word(w1 * w2)
        rhs = eval_word(w1) * eval_word(w2)
        assert lhs.equals(rhs)


def test_eval_mod_matches_int_reduction():
    R = ModRing(12)
    binding = {("a", 1): 7, ("b", 1): 5}
    w = word(3, tv(1, 2, a1), tv(2, 3, b1), tv(1, 3, -(a1 * b1)), tv(2, 1, a1))
    mz = eval_word(w, ZINT, binding={("a", 1): 7, ("b", 1): 5})
    mm = eval_word(w, R, binding=binding)
    for i in range(1, 4):
        for j in range(1, 4):
            assert mm.entry(i, j) == mz.entry(i, j) % 12


def test_poly_eval_unbound_letter():
    with pytest.raises(KeyError):
        poly_eval(a1 * b1, ZINT, {("a", 1): 2})


def test_word_inverse():
    w = word(3, tv(1, 2, a1), tv(2, 3, b1 * a1), tv(1, 3, -c1))
    assert eval_word(w * word_inverse(w)).equals(identity_matrix(3))
    assert eval_word(word_inverse(w) * w).equals(identity_matrix(3))


def test_degree_bound():
    with pytest.raises(DegreeMismatch):
        word(3, tv(1, 4, a1))
    with pytest.raises(DegreeMismatch):
        word(3, tv(1, 2, a1)) * word(4, tv(1, 2, a1))


# -- reduction --------------------------------------------------------------


def test_free_reduce_cancels():
    w = word(3, tv(1, 2, a1), tv(1, 2, -a1), tv(1, 3, b1))
    assert free_reduce(w).atoms == (tv(1, 3, b1),)


def test_free_reduce_cascades():
    w = word(3, tv(1, 2, a1), tv(1, 3, b1), tv(1, 3, -b1), tv(1, 2, -a1))
    assert free_reduce(w).atoms == ()


def test_free_reduce_merges_and_drops_zero():
    w = word(3, tv(1, 2, a1), tv(1, 2, b1), tv(2, 3, FreeRingElement.zero()))
    assert free_reduce(w).atoms == (tv(1, 2, a1 + b1),)


def test_free_reduce_preserves_value():
    rng = random.Random(17)
    pool = [tv(1, 2, a1), tv(1, 2, -a1), tv(2, 3, b1), tv(2, 3, -b1), tv(1, 3, c1)]
    for _ in range(50):
        w = word(3, *(rng.choice(pool) for _ in range(rng.randint(0, 8))))
        assert eval_word(w).equals(eval_word(free_reduce(w)))


# -- closed-form commutators ------------------------------------------------


def test_steinberg_shared_inner_index():
    got = steinberg_commutator(tv(1, 3, a1), tv(3, 2, b1), 3)
    assert got.atoms == (tv(1, 2, a1 * b1),)
    # and it really is the commutator
    comm = commutator_word(word(3, tv(1, 3, a1)), word(3, tv(3, 2, b1)))
    assert eval_word(comm).equals(eval_word(got))


def test_steinberg_shared_outer_index():
    got = steinberg_commutator(tv(1, 2, a1), tv(3, 1, b1), 3)
    assert got.atoms == (tv(3, 2, -(b1 * a1)),)
    comm = commutator_word(word(3, tv(1, 2, a1)), word(3, tv(3, 1, b1)))
    assert eval_word(comm).equals(eval_word(got))


def test_steinberg_commuting_cases():
    for t1, t2, n in [
        (tv(1, 2, a1), tv(3, 4, b1), 4),  # disjoint
        (tv(1, 3, a1), tv(2, 3, b1), 3),  # same column
        (tv(1, 3, a1), tv(1, 2, b1), 3),  # same row
    ]:
        assert steinberg_commutator(t1, t2, n).atoms == ()
        comm = commutator_word(word(n, t1), word(n, t2))
        assert eval_word(comm).equals(identity_matrix(n))


def test_steinberg_opposite_pair_rejected():
    with pytest.raises(OppositePair):
        steinberg_commutator(tv(1, 2, a1), tv(2, 1, b1), 3)


def test_conjugation_word():
    g = word(3, tv(1, 3, c1))
    w = word(3, tv(1, 2, a1))
    got = eval_word(conjugate_word(g, w))
    want = eval_word(g) * eval_word(w) * eval_word(word_inverse(g))
    assert got.equals(want)


# -- generator atoms --------------------------------------------------------


def test_atom_expansions():
    assert len(expand_atom(atom_T(1, 2, a1), 3)) == 1
    assert len(expand_atom(atom_Z(1, 2, a1, c1), 3)) == 3
    assert len(expand_atom(atom_Y(1, 2, a1, b1), 3)) == 4
    assert len(expand_atom(atom_C(1, 3, 3, 2, a1, b1), 3)) == 4
    z = expand_atom(atom_Z(1, 2, a1, c1), 3)
    assert z.atoms == (tv(2, 1, c1), tv(1, 2, a1), tv(2, 1, -c1))


def test_atom_c_equals_steinberg_value():
    # [t13(a), t32(b)] expands to the four-letter commutator word whose
    # value is t12(ab)
    c = expand_atom(atom_C(1, 3, 3, 2, a1, b1), 3)
    assert eval_word(c).equals(eval_word(word(3, tv(1, 2, a1 * b1))))


def test_atom_inverses():
    atoms = [
        atom_T(1, 2, a1),
        atom_Z(1, 3, a1, c1),
        atom_Y(1, 2, a1, b1),
        atom_C(1, 3, 3, 2, a1, b1),
        atom_Y(2, 3, a1 * b1, b1, inv=True),
    ]
    for at in atoms:
        w = expand_atom(at, 3)
        winv = expand_atom(atom_inverse(at), 3)
        assert eval_word(w * winv).equals(identity_matrix(3))


def test_atom_y_inverse_swaps_position():
    inv = atom_inverse(atom_Y(1, 2, a1, b1))
    assert (inv.kind, inv.i, inv.j) == ("Y", 2, 1)
    assert inv.args == (b1, a1)
    assert not inv.inv


def test_atom_validation():
    with pytest.raises(ValueError):
        GeneratorAtom("Q", 1, 2, (a1,))
    with pytest.raises(ValueError):
        atom_T(1, 1, a1)
    with pytest.raises(ValueError):
        GeneratorAtom("Z", 1, 2, (a1,))
    with pytest.raises(OppositePair):
        atom_C(1, 2, 2, 1, a1, b1)
    with pytest.raises(ValueError):
        GeneratorAtom("C", 1, 2, (a1, b1))  # missing second position


def test_atom_levels():
    at = atom_Y(1, 2, a1, b1).with_levels("A", "B")
    assert at.levels == ("A", "B")


# -- word grammar -----------------------------------------------------------


def test_parse_word_round_trip():
    text = "t(1,2; 1 a1) z(1,3; 1 a1; 1 c1) y(2,3; 1 a1 b1; -1 c1)"
    atoms = parse_word_atoms(text)
    assert [a.kind for a in atoms] == ["T", "Z", "Y"]
    assert atoms_to_text(atoms) == text
    assert parse_word_atoms(atoms_to_text(atoms)) == atoms


def test_parse_word_whitespace_and_stars():
    atoms = parse_word_atoms(" t( 1 , 2 ; a1 ) * t(2,3; b1)\n* y(1,3; a1; b1) ")
    assert len(atoms) == 3
    assert atoms[0] == atom_T(1, 2, a1)


def test_parse_word_expands():
    w = parse_word("y(1,2; 1; 1)", 3)
    assert as_lists(eval_word(w, ZINT)) == [[3, -1, 0], [1, 0, 0], [0, 0, 1]]


def test_parse_word_errors():
    with pytest.raises(ParseError):
        parse_word_atoms("t(1,1; a1)")  # i = j
    with pytest.raises(ParseError):
        parse_word_atoms("q(1,2; a1)")
    with pytest.raises(ParseError):
        parse_word_atoms("t(1,2 a1)")
    with pytest.raises(ParseError) as e:
        parse_word_atoms("t(1,2; x9)")
    assert "x" in str(e.value)
    with pytest.raises(ParseError):
        parse_word_atoms("t(1,2; )")
    with pytest.raises(DegreeMismatch):
        parse_word("t(3,4; a1)", 3)


def test_word_text_uses_poly_syntax():
    at = atom_Y(2, 3, a1 * b1 - 1, c1)
    text = atoms_to_text([at])
    assert poly_to_text(a1 * b1 - 1) in text
    assert parse_word_atoms(text) == [at]
