import json
import random

import pytest

from transvec.generate import (
    Certificate,
    MissingPresentationError,
    PositionSet,
    PresentationMismatch,
    QuasiFiniteAssumptionRequired,
    RewriteEngine,
    SymmetrisedPresentation,
    UnreachablePositionError,
    UntaggedArgument,
    auto_presentation,
    check_certificate,
    load_certificate,
    partial_relative_generators,
    save_certificate,
    scan_commutator_form,
    scan_theorem4_factors,
    scan_theoremC_factors,
    split_poly,
    splittable,
    standard_numeric_profiles,
    theorem1_rewrite,
    theorem4_rewrite,
    theorem5_generators,
    theoremC_decompose,
)
from transvec.identities import lemma7_z_from_y
from transvec.matgroup import (
    atom_T,
    atom_Y,
    atom_Z,
    eval_word,
    expand_atoms,
    free_reduce,
)
from transvec.ring import (
    FreeRingElement,
    Leaf,
    ModRing,
    letter,
    parse_poly,
    parse_tree,
    principal,
)
from transvec.verify import audit_levels, verify_numeric, verify_symbolic

A1 = letter("a", 1)
A2 = letter("a", 2)
B1 = letter("b", 1)
B2 = letter("b", 2)
C1 = letter("c", 1)


# ---------------------------------------------------------------------------
# argument splitting
# ---------------------------------------------------------------------------


def test_splittable_orders():
    assert splittable(A1 * B1, "ab")
    assert not splittable(A1 * B1, "ba")
    assert splittable(B1 * A1, "ba")
    assert splittable(A1 * C1 * B1, "ab")  # the c sits inside the a-part
    assert not splittable(C1, "ab") and not splittable(C1, "ba")


def test_split_poly_recomposes():
    x = A1 * B1 + 2 * A2 * C1 * B2
    parts = split_poly(x, "ab")
    total = FreeRingElement.zero()
    for a_p, b_p in parts:
        total = total + a_p * b_p
    assert total == x


def test_split_poly_missing():
    with pytest.raises(MissingPresentationError):
        split_poly(A1 * B1 + C1, "ab")


def test_auto_presentation_mixed_orders():
    x = A1 * B1 + B2 * A2
    pres = auto_presentation(x)
    assert pres.value() == x
    assert sorted(order for _, _, order in pres.parts) == ["ab", "ba"]
    pres.validate(x)  # self-consistent


def test_presentation_mismatch():
    pres = SymmetrisedPresentation(((A1, B1, "ab"),))
    with pytest.raises(PresentationMismatch):
        pres.validate(A1 * B2)


# ---------------------------------------------------------------------------
# position sets
# ---------------------------------------------------------------------------


def test_position_set_hook():
    ps = PositionSet(4, 2)
    assert ps.h == 3 and ps.k == 1
    assert ps.positions() == [(1, 3), (1, 4), (2, 3)]
    assert (2, 3) in ps and (3, 1) not in ps
    # n-1 positions always
    for n in (3, 4, 5):
        for r in range(1, n):
            assert len(PositionSet(n, r).positions()) == n - 1


def test_position_set_validation():
    with pytest.raises(ValueError):
        PositionSet(2, 1)
    with pytest.raises(ValueError):
        PositionSet(4, 4)
    with pytest.raises(ValueError):
        PositionSet(4, 2, h=2)  # h must exceed r
    with pytest.raises(ValueError):
        PositionSet(4, 2, k=3)
    with pytest.raises(ValueError):
        PositionSet(4, 2, mode="diag")


def test_position_set_extra_constraints():
    PositionSet(3, 2, extra=(1, 3), extra_kind="z")  # straddles
    PositionSet(3, 2, extra=(1, 2), extra_kind="y")  # in-block
    with pytest.raises(ValueError):
        PositionSet(3, 2, extra=(1, 2), extra_kind="z")
    with pytest.raises(ValueError):
        PositionSet(3, 2, extra=(1, 3), extra_kind="y")
    with pytest.raises(ValueError):
        PositionSet(3, 2, extra=(1, 3))  # kind missing
    with pytest.raises(ValueError):
        PositionSet(3, 2, extra_kind="z")


def test_position_set_json_round_trip():
    ps = PositionSet(4, 2, mode="cols", k=2, extra=(1, 4), extra_kind="z")
    assert PositionSet.from_json(ps.to_json()) == ps


# ---------------------------------------------------------------------------
# conjugates onto the hook
# ---------------------------------------------------------------------------


def test_hook_decompose_one_move():
    # z_12 with r=2, h=3 resolves in a single z-move through column 3
    cert = theoremC_decompose(3, 2, None, atom_Z(1, 2, A1, C1))
    z_positions = [(f.i, f.j) for f in cert.factors if f.kind == "Z"]
    assert len(cert.factors) == 15 and len(z_positions) == 3
    assert set(z_positions) <= {(1, 3), (2, 3)}
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
    assert scan_theoremC_factors(cert) == []


def test_hook_decompose_trivial_cases():
    cert = theoremC_decompose(3, 2, None, atom_Z(1, 3, A1, C1))
    assert len(cert.factors) == 1 and cert.factors[0].kind == "Z"

    cert = theoremC_decompose(3, 2, None, atom_Z(2, 1, A1, FreeRingElement.zero()))
    assert [f.kind for f in cert.factors] == ["T"]

    cert = theoremC_decompose(3, 2, None, atom_Z(2, 1, FreeRingElement.zero(), C1))
    assert cert.factors == ()


@pytest.mark.parametrize("n,r", [(5, 2), (4, 3)])
def test_hook_decompose_all_positions(n, r):
    ps = PositionSet(n, r)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            cert = theoremC_decompose(n, r, ps, atom_Z(i, j, A1, C1))
            assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
            assert scan_theoremC_factors(cert) == []
            assert audit_levels(cert).ok


def test_hook_decompose_every_pinned_parameter_n3():
    for r in (1, 2):
        sets = [PositionSet(3, r, mode="rows", h=h) for h in range(r + 1, 4)]
        sets += [PositionSet(3, r, mode="cols", k=k) for k in range(1, r + 1)]
        for ps in sets:
            for i, j in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]:
                cert = theoremC_decompose(3, r, ps, atom_Z(i, j, A1, C1))
                assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
                assert scan_theoremC_factors(cert) == []


def test_hook_decompose_rejects_bad_inputs():
    with pytest.raises(UntaggedArgument):
        theoremC_decompose(3, 2, None, atom_Z(1, 2, B1, C1))
    with pytest.raises(ValueError):
        theoremC_decompose(3, 2, None, atom_Y(1, 2, A1, B1))
    with pytest.raises(ValueError):
        theoremC_decompose(4, 2, PositionSet(3, 2), atom_Z(1, 2, A1, C1))


def test_hook_scan_catches_off_hook_atom():
    cert = theoremC_decompose(3, 2, None, atom_Z(1, 3, A1, C1))
    from dataclasses import replace

    bad = replace(cert, factors=(atom_Z(2, 1, A1, C1),))
    assert any("off the hook" in v["why"] for v in scan_theoremC_factors(bad))


# ---------------------------------------------------------------------------
# certificates as artifacts
# ---------------------------------------------------------------------------


def test_certificate_json_round_trip(tmp_path):
    cert = theoremC_decompose(3, 2, None, atom_Z(2, 1, A1, C1))
    blob = json.dumps(cert.to_json())
    back = Certificate.from_json(json.loads(blob))
    assert back.n == cert.n and back.theorem == "C"
    assert back.factors == cert.factors
    assert verify_symbolic(back.target_word(), back.factors_word()).ok

    path = tmp_path / "cert.json"
    save_certificate(cert, path)
    assert load_certificate(path).factors == cert.factors


def test_certificate_round_trip_with_commutator_atoms(tmp_path):
    # C kind carries the second pair (h,k) and an inverse marker
    cert = theorem1_rewrite([atom_Z(1, 2, A1 * B1 + B2 * A2, C1)], 3)
    path = tmp_path / "cert1.json"
    save_certificate(cert, path)
    back = load_certificate(path)
    assert back.factors == cert.factors
    assert any(f.kind == "C" and f.inv for f in back.factors)
    assert verify_symbolic(back.target_word(), back.factors_word()).ok


def test_check_certificate_passes_and_records():
    cert = theoremC_decompose(3, 2, None, atom_Z(2, 1, A1, C1))
    checked, reports = check_certificate(cert, trials=200, seed=5)
    assert checked.checks["ok"]
    assert checked.checks["symbolic"]["pass"]
    assert all(row["failures"] == 0 for row in checked.checks["numeric"])
    assert checked.checks["size"]["transvections"] >= checked.checks["size"]["reduced"]
    assert {"zmod:12", "triang:5"} == {row["ring"] for row in checked.checks["numeric"]}
    assert len(reports) == 4  # symbolic + two numeric + levels


def test_check_certificate_flags_corruption():
    from dataclasses import replace

    cert = theoremC_decompose(3, 2, None, atom_Z(2, 1, A1, C1))
    factors = list(cert.factors)
    factors[0] = replace(factors[0], args=(-factors[0].args[0],) + factors[0].args[1:])
    checked, _ = check_certificate(replace(cert, factors=tuple(factors)), trials=50)
    assert not checked.checks["ok"]
    assert not checked.checks["symbolic"]["pass"]


def test_standard_numeric_profiles():
    profiles = standard_numeric_profiles()
    assert [adapter.name for adapter, _ in profiles] == ["zmod:12", "triang:5"]
    for _, bindings in profiles:
        assert set(bindings) == {"a", "b", "c", "d", "r"}


# ---------------------------------------------------------------------------
# commutator-form rewriting
# ---------------------------------------------------------------------------


def test_commutator_rewrite_single_conjugate():
    cert = theorem1_rewrite([atom_Z(1, 2, A1 * B1, C1)], 3)
    assert {f.kind for f in cert.factors} <= {"Y", "C"}
    assert scan_commutator_form(cert) == []
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
    assert audit_levels(cert).ok


def test_commutator_rewrite_sizes():
    # the elimination identity itself stays small; the fully split
    # certificate is bigger because every residual transvection becomes a
    # four-transvection commutator pair
    ident = lemma7_z_from_y(1, 2, 3, A1, B1, C1, "ab")
    assert len(expand_atoms(ident.factors, 3).atoms) <= 40

    cert = theorem1_rewrite([atom_Z(1, 2, A1 * B1, C1)], 3)
    raw = cert.factors_word().atoms
    assert len(raw) <= 60
    assert len(free_reduce(cert.factors_word()).atoms) <= len(raw)


def test_commutator_rewrite_passthrough_and_ba():
    cert = theorem1_rewrite([atom_Y(1, 2, A1, B1)], 3)
    assert len(cert.factors) == 1 and cert.factors[0].kind == "Y"

    cert = theorem1_rewrite([atom_Z(2, 3, B1 * A1, C1)], 3)
    assert scan_commutator_form(cert) == []
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok


def test_commutator_rewrite_explicit_presentation():
    x = A1 * B1 + B1 * A1
    pres = SymmetrisedPresentation(((A1, B1, "ab"), (A1, B1, "ba")))
    cert = theorem1_rewrite([atom_Z(1, 3, x, C1)], 3, presentations={0: pres})
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok

    wrong = SymmetrisedPresentation(((A1, B2, "ab"),))
    with pytest.raises(PresentationMismatch):
        theorem1_rewrite([atom_Z(1, 3, x, C1)], 3, presentations={0: wrong})


def test_commutator_rewrite_rejections():
    with pytest.raises(MissingPresentationError):
        theorem1_rewrite([atom_Z(1, 2, C1, C1)], 3)
    with pytest.raises(UntaggedArgument):
        theorem1_rewrite([atom_Y(1, 2, C1, B1)], 3)
    with pytest.raises(ValueError):
        theorem1_rewrite([atom_T(1, 2, A1)], 3)
    with pytest.raises(ValueError):
        theorem1_rewrite([atom_Z(1, 2, A1 * B1, C1)], 2)


def _random_product_poly(rng):
    # one or two monomials, each with a visible a-before-b or b-before-a order
    terms = FreeRingElement.zero()
    for _ in range(rng.randint(1, 2)):
        a_chunk = rng.choice([A1, A2, A1 * C1, C1 * A2])
        b_chunk = rng.choice([B1, B2, B1 * C1, C1 * B2])
        coef = rng.choice([1, -1, 2])
        mono = a_chunk * b_chunk if rng.random() < 0.5 else b_chunk * a_chunk
        terms = terms + coef * mono
    return terms


def _random_mixed_atoms(rng, n):
    atoms = []
    for _ in range(rng.randint(1, 5)):
        i, j = rng.sample(range(1, n + 1), 2)
        if rng.random() < 0.4:
            atoms.append(atom_Y(i, j, rng.choice([A1, A2, A1 * C1]), rng.choice([B1, B2 * C1])))
        else:
            atoms.append(atom_Z(i, j, _random_product_poly(rng), rng.choice([C1, C1 * C1, FreeRingElement.one()])))
    return atoms


def test_commutator_rewrite_random_words():
    rng = random.Random(20240817)
    R = ModRing(12)
    bindings = {"a": principal(4, R), "b": principal(6, R), "c": principal(1, R)}
    for _ in range(20):
        atoms = _random_mixed_atoms(rng, 4)
        cert = theorem1_rewrite(atoms, 4)
        assert scan_commutator_form(cert) == []
        assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
        rep = verify_numeric(
            cert.target_word(), cert.factors_word(), R, bindings, trials=200, seed=7
        )
        assert rep.ok


# ---------------------------------------------------------------------------
# commutators onto the hook plus an extra position
# ---------------------------------------------------------------------------


def test_engine_fixpoints_are_stable():
    # frozen closure sets; every y-position listed here must replay and
    # verify, and nothing outside is claimed
    ps = PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z")
    assert RewriteEngine(ps).reachable() == [(1, 3), (2, 1), (2, 3), (3, 1)]

    ps_y = PositionSet(3, 2, k=2, extra=(1, 2), extra_kind="y")
    assert RewriteEngine(ps_y).reachable() == [(1, 2), (1, 3), (2, 3)]

    ps4 = PositionSet(4, 2, k=2, extra=(1, 3), extra_kind="z")
    assert RewriteEngine(ps4).reachable() == [
        (1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1), (3, 4),
    ]


@pytest.mark.parametrize(
    "ps",
    [
        PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z"),
        PositionSet(3, 2, k=2, extra=(1, 2), extra_kind="y"),
        PositionSet(4, 2, k=2, extra=(1, 3), extra_kind="z"),
    ],
    ids=["n3-z", "n3-y", "n4-z"],
)
def test_commutator_hook_certificates_verify(ps):
    engine = RewriteEngine(ps)
    for i, j in engine.reachable():
        cert = theorem4_rewrite(ps.n, ps.r, ps, atom_Y(i, j, A1, B1))
        assert verify_symbolic(cert.target_word(), cert.factors_word()).ok, (i, j)
        assert audit_levels(cert).ok, (i, j)
        assert scan_theorem4_factors(cert) == [], (i, j)


def test_commutator_hook_single_atom_target():
    ps = PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z")
    cert = theorem4_rewrite(3, 2, ps, atom_Y(1, 3, A1, B1))
    assert len(cert.factors) == 1 and cert.factors[0].kind == "Y"


def test_commutator_hook_unreachable_evidence():
    # the closure from {y_13, y_23, y_12} adds no further y-position, so
    # y_21 cannot be produced from this basis by the available moves
    ps = PositionSet(3, 2, k=2, extra=(1, 2), extra_kind="y")
    with pytest.raises(UnreachablePositionError) as exc:
        theorem4_rewrite(3, 2, ps, atom_Y(2, 1, A1, B1))
    assert exc.value.position == (2, 1)
    assert exc.value.reachable == [(1, 2), (1, 3), (2, 3)]


def test_commutator_hook_polynomial_arguments():
    ps = PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z")
    # shallow derivation, both arguments polynomial
    cert = theorem4_rewrite(3, 2, ps, atom_Y(2, 1, A1 + 2 * A2 * C1, B1 * C1 + B2))
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
    assert scan_theorem4_factors(cert) == []
    # deepest derivation, sum argument on the A side
    cert = theorem4_rewrite(3, 2, ps, atom_Y(3, 1, A1 + A2 * C1, B1))
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
    assert scan_theorem4_factors(cert) == []


def test_commutator_hook_rejections():
    ps = PositionSet(3, 2, k=2, extra=(1, 3), extra_kind="z")
    with pytest.raises(ValueError):
        RewriteEngine(PositionSet(3, 2))  # no extra position
    with pytest.raises(UntaggedArgument):
        theorem4_rewrite(3, 2, ps, atom_Y(1, 3, C1, B1))
    with pytest.raises(ValueError):
        theorem4_rewrite(3, 2, ps, atom_Z(1, 3, A1, C1))


def test_commutator_hook_default_position_set():
    cert = theorem4_rewrite(3, 2, None, atom_Y(1, 3, A1, B1))
    assert cert.basis["position_set"]["extra"] == [1, 3]
    assert len(cert.factors) == 1


# ---------------------------------------------------------------------------
# double commutator descriptors
# ---------------------------------------------------------------------------


def test_double_commutator_descriptor_over_z():
    from transvec.ring import ZINT

    ideals = [principal(2, ZINT), principal(3, ZINT), principal(5, ZINT)]
    desc = theorem5_generators(4, parse_tree("((1 2) 3)"), ideals)
    assert desc["cut_point"] == 2
    assert desc["left_level"] == "(6)" and desc["right_level"] == "(5)"
    assert "commutators" in desc["schema"]


def test_double_commutator_two_ideal_base_case():
    from transvec.ring import free_tag_ideal

    ideals = [free_tag_ideal("i", 1), free_tag_ideal("i", 2)]
    desc = theorem5_generators(4, parse_tree("(1 2)"), ideals)
    assert desc["cut_point"] == 1
    assert desc["left_level"] == "I1" and desc["right_level"] == "I2"


def test_double_commutator_bracketings_differ():
    from transvec.ring import free_tag_ideal, ideal_member

    ideals = [free_tag_ideal("i", k) for k in (1, 2, 3)]
    left_first = theorem5_generators(4, parse_tree("((1 2) 3)"), ideals)
    right_first = theorem5_generators(4, parse_tree("(1 (2 3))"), ideals)
    assert left_first["cut_point"] == 2 and right_first["cut_point"] == 1
    assert left_first["left_level"] != right_first["left_level"]
    # i1 i3 i2 witnesses the non-associativity through the right levels
    mono = letter("i", 1) * letter("i", 3) * letter("i", 2)
    from transvec.ring import sym_product

    assert ideal_member(
        mono,
        sym_product(right_first["left_level_spec"], right_first["right_level_spec"]),
    )
    assert not ideal_member(
        mono,
        sym_product(left_first["left_level_spec"], left_first["right_level_spec"]),
    )


def test_double_commutator_gate():
    from transvec.ring import free_tag_ideal

    ideals = [free_tag_ideal("i", 1), free_tag_ideal("i", 2)]
    with pytest.raises(QuasiFiniteAssumptionRequired):
        theorem5_generators(3, parse_tree("(1 2)"), ideals)
    desc = theorem5_generators(3, parse_tree("(1 2)"), ideals, assume_quasi_finite=True)
    assert desc["n"] == 3

    with pytest.raises(ValueError):
        theorem5_generators(2, parse_tree("(1 2)"), ideals)
    with pytest.raises(ValueError):
        theorem5_generators(4, Leaf(1), ideals[:1])


# ---------------------------------------------------------------------------
# partially relativised generators
# ---------------------------------------------------------------------------


def test_partial_relative_conjugate_expansion():
    (cert,) = partial_relative_generators(3, [atom_Z(1, 2, A1, B1)])
    assert [f.kind for f in cert.factors] == ["T", "T", "T"]
    assert [(f.i, f.j) for f in cert.factors] == [(2, 1), (1, 2), (2, 1)]
    assert cert.factors[0].args[0] == B1 and cert.factors[2].args[0] == -B1
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok
    assert cert.theorem == "2"


def test_partial_relative_commutator_split():
    (cert,) = partial_relative_generators(3, [atom_Y(2, 3, A1, B1)])
    assert [f.kind for f in cert.factors] == ["Z", "Z"]
    assert cert.factors[0].args == (A1, FreeRingElement.zero())
    assert cert.factors[1].args == (-A1, B1)
    assert verify_symbolic(cert.target_word(), cert.factors_word()).ok


def test_partial_relative_random_targets():
    rng = random.Random(11)
    R = ModRing(12)
    bindings = {"a": principal(4, R), "b": principal(6, R)}
    targets = []
    for _ in range(100):
        i, j = rng.sample(range(1, 4), 2)
        a = rng.choice([A1, A2, 2 * A1])
        b = rng.choice([B1, B2, -B1])
        targets.append(atom_Z(i, j, a, b) if rng.random() < 0.5 else atom_Y(i, j, a, b))
    for cert in partial_relative_generators(3, targets):
        rep = verify_numeric(
            cert.target_word(), cert.factors_word(), R, bindings, trials=60, seed=3
        )
        assert rep.ok


def test_partial_relative_rejections():
    with pytest.raises(UntaggedArgument):
        partial_relative_generators(3, [atom_Z(1, 2, C1, B1)])
    with pytest.raises(UntaggedArgument):
        partial_relative_generators(3, [atom_Y(1, 2, A1, A2)])
    with pytest.raises(ValueError):
        partial_relative_generators(3, [atom_T(1, 2, A1)])
