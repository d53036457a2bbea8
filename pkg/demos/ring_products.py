"""
Free-ring arithmetic and symmetrised ideal products
===================================================

"""

from transvec.ring import (
    ZINT,
    free_tag_ideal,
    ideal_member,
    letter,
    parse_poly,
    parse_tree,
    poly_to_text,
    principal,
    sym_product,
    tree_level,
)

# noncommutative letters: a1*b1 and b1*a1 are different monomials
a1, b1 = letter("a", 1), letter("b", 1)
p = a1 * b1 - b1 * a1
print("a1 b1 - b1 a1       =", poly_to_text(p))
print("round trip          =", poly_to_text(parse_poly(poly_to_text(p))))

# the symmetrised product A o B collects ab- and ba-shaped monomials
A, B = free_tag_ideal("a"), free_tag_ideal("b")
AoB = sym_product(A, B)
print("a1*b1 in A o B      =", ideal_member(a1 * b1, AoB))
print("b1*a1 in A o B      =", ideal_member(b1 * a1, AoB))
print("a1*a1 in A o B      =", ideal_member(a1 * a1, AoB))

# over Z the symmetrised product of principal ideals is principal again
print("(4) o (6) over Z    =", sym_product(principal(4), principal(6)))

# iterated products follow a bracketing tree; over Z both bracketings of
# (2), (3), (5) land on (30) ...
ideals = [principal(d, ZINT) for d in (2, 3, 5)]
for text in ("((1 2) 3)", "(1 (2 3))"):
    print(f"{text:10s} level   =", tree_level(parse_tree(text), ideals))

# ... but in the free ring the bracketing matters: i1*i3*i2 needs the
# inner product on the right
tags = [free_tag_ideal("i", k) for k in (1, 2, 3)]
mono = letter("i", 1) * letter("i", 3) * letter("i", 2)
left = tree_level(parse_tree("((1 2) 3)"), tags)
right = tree_level(parse_tree("(1 (2 3))"), tags)
print("i1 i3 i2 in ((1 2) 3) =", ideal_member(mono, left))
print("i1 i3 i2 in (1 (2 3)) =", ideal_member(mono, right))
