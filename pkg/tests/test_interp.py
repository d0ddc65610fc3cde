import random

import pytest

from zwreath.equations import (Constant, Literal, check_system, equation,
                               parse_system, serialize_system, system_of)
from zwreath.errors import ParseError, PreconditionError, SpecMismatchError
from zwreath.interp import (AbelianElement, GroupElement, IteratedSpec,
                            compile_iterated, from_wreath, lift_system,
                            nested_str, parse_nested, project_assignment,
                            to_wreath)
from zwreath.laurent import parse_poly
from zwreath.reduction import compile as compile_flat
from zwreath.reduction import parse_intpoly, witness as witness_flat
from zwreath.selftest import rand_element, rand_nested
from zwreath.wreath import GroupSpec

I11 = IteratedSpec((1, 1))
I111 = IteratedSpec((1, 1, 1))
I212 = IteratedSpec((2, 1, 2))


# -- element arithmetic ---------------------------------------------------------


def test_identity_multiplication():
    e = I111.identity()
    assert (e * e).is_identity()


def test_inverse_cancels():
    rng = random.Random(3)
    for _ in range(100):
        g = rand_nested(rng, I111)
        assert (g * g.inverse()).is_identity()
        assert (g.inverse() * g).is_identity()


def test_every_element_type_satisfies_the_group_contract():
    flat = GroupSpec(1, 1).identity()
    nested = I111.identity()
    vector = IteratedSpec((2,)).identity()
    for element in (flat, nested, vector):
        assert isinstance(element, GroupElement)
        element.sort_key()


def test_depth_one_elements_are_vectors():
    spec = IteratedSpec((3,))
    g = AbelianElement(spec, (1, -2, 0))
    h = AbelianElement(spec, (0, 5, 1))
    assert (g * h).vector == (1, 3, 1)
    assert g.commutator(h).is_identity()
    assert g ** -2 == AbelianElement(spec, (-2, 4, 0))


def test_spec_mismatch_rejected():
    with pytest.raises(SpecMismatchError):
        I11.identity() * I111.identity()


def test_nested_powers():
    rng = random.Random(29)
    for _ in range(50):
        g = rand_nested(rng, I111)
        e = rng.randint(-5, 5)
        expected = I111.identity()
        step = g if e >= 0 else g.inverse()
        for _ in range(abs(e)):
            expected = expected * step
        assert g ** e == expected


def test_base_gen_commutator_with_active():
    # depth 2 over ranks (1,1): [b, a] has support at a^0 and a^1
    b = I11.base_gen(1)
    a = I11.embed(I11.inner().active_gen(1))
    c = b.commutator(a)
    flat = to_wreath(c)
    assert flat.base[0] == parse_poly("a1 - 1", 1)


# -- conversions -------------------------------------------------------------------


def test_conversion_round_trip_random():
    rng = random.Random(5)
    for _ in range(200):
        spec = GroupSpec(rng.randint(1, 2), rng.randint(1, 2))
        g = rand_element(rng, spec)
        assert to_wreath(from_wreath(g)) == g


def test_conversion_is_a_homomorphism():
    rng = random.Random(7)
    for _ in range(200):
        spec = GroupSpec(rng.randint(1, 2), rng.randint(1, 2))
        g, h = rand_element(rng, spec), rand_element(rng, spec)
        assert from_wreath(g * h) == from_wreath(g) * from_wreath(h)


def test_projection_examples():
    assert I111.identity().project() == I111.inner().identity()
    base_only = I111.base_gen(1)
    assert base_only.project().is_identity()
    rng = random.Random(11)
    for _ in range(100):
        g, h = rand_nested(rng, I111), rand_nested(rng, I111)
        assert (g * h).project() == g.project() * h.project()


# -- literals ------------------------------------------------------------------------


def test_nested_literal_round_trip():
    rng = random.Random(13)
    for shape in [(1, 1), (2, 1), (1, 2, 1), (2, 1, 2)]:
        spec = IteratedSpec(shape)
        for _ in range(50):
            g = rand_nested(rng, spec)
            assert parse_nested(nested_str(g), spec) == g


def test_nested_literal_shape():
    g = I11.base_gen(1)
    assert nested_str(g) == "{ active: (0); [ (0) -> (1) ] }"
    assert parse_nested("{ active: (0) ; [ (0) -> (1) ] }", I11) == g


def test_nested_literal_errors():
    with pytest.raises(ParseError):
        parse_nested("{ active: (0); [ (0) -> (1,2) ] }", I11)
    with pytest.raises(ParseError):
        parse_nested("{ active: (0) }", IteratedSpec((1,)))


# -- lifting --------------------------------------------------------------------------


def test_lift_empty_system():
    lifted = lift_system(system_of([]), I111.base_gen(1))
    assert lifted.equations == ()


def test_lift_shape_and_solution_transport():
    inner = I11
    outer = I111
    c = inner.base_gen(1)
    system = system_of([equation(Literal("x"), Constant(c))])
    lifted = lift_system(system, outer.base_gen(1))
    assert len(lifted.equations) == 2
    assert lifted.declared_vars == ("x", "t1")
    # inner solution x = c lifts with t1 = identity
    asg = {"x": outer.embed(c), "t1": outer.identity()}
    assert check_system(lifted, asg, outer).ok
    # and projecting a lifted solution solves the inner system
    projected = project_assignment({"x": asg["x"]})
    assert check_system(system, projected, inner).ok


def test_lift_rejects_foreign_constants():
    system = system_of([equation(Constant(I212.identity()))])
    with pytest.raises(SpecMismatchError):
        lift_system(system, I111.base_gen(1))


# -- the iterated pipeline ---------------------------------------------------------------


def test_compile_iterated_depth_two_matches_flat():
    f = parse_intpoly("z1 - 2")
    red = compile_iterated(f, I11)
    flat = compile_flat(f, GroupSpec(1, 1))
    assert red.system == flat.system
    asg = red.witness((2,))
    assert asg == witness_flat(f, (2,), GroupSpec(1, 1))
    assert red.extract_solution(asg) == (2,)


def test_compile_iterated_depth_three_end_to_end():
    f = parse_intpoly("z1 - 2")
    red = compile_iterated(f, I111)
    asg = red.witness((2,))
    assert check_system(red.system, asg, I111).ok
    assert red.extract_solution(asg) == (2,)


def test_compile_iterated_rejects_single_rank():
    with pytest.raises(PreconditionError):
        compile_iterated(parse_intpoly("z1"), IteratedSpec((1,)))


def test_compile_iterated_system_serializes_and_parses():
    f = parse_intpoly("z1 - 2")
    red = compile_iterated(f, I111)
    text = serialize_system(red.system)
    assert parse_system(text, I111) == red.system


def test_compile_iterated_witness_fails_for_non_roots():
    red = compile_iterated(parse_intpoly("z1 - 2"), I111)
    with pytest.raises(PreconditionError):
        red.witness((3,))


def test_iterated_wrong_witness_detected():
    f = parse_intpoly("z1 - 2")
    red = compile_iterated(f, I111)
    asg = red.witness((2,))
    # corrupt the solution variable; some equation must now fail
    asg["x1"] = I111.identity()
    assert not check_system(red.system, asg, I111).ok
