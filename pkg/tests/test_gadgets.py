import random

import pytest

from zwreath.equations import check_system
from zwreath.errors import PreconditionError
from zwreath.gadgets import (delta_blocks, gadget_cyclic, gadget_delta_power,
                             gadget_in_A, gadget_in_N, witness_cyclic,
                             witness_delta_power)
from zwreath.laurent import (LaurentPoly, delta_generator_product,
                             divisible_by_a1_minus_1, parse_poly)
from zwreath.selftest import rand_base_element
from zwreath.wreath import GroupSpec, in_delta_power, module_action

S11 = GroupSpec(1, 1)
S12 = GroupSpec(1, 2)
S21 = GroupSpec(2, 1)
S22 = GroupSpec(2, 2)


# -- base/active membership gadgets -------------------------------------------


def test_in_N_satisfied_by_base_elements():
    gadget = gadget_in_N("x", S12)
    assert check_system(gadget.system, {"x": S12.element(base={2: parse_poly("a1^2", 1)})}, S12).ok
    assert check_system(gadget.system, {"x": S12.identity()}, S12).ok


def test_in_N_violated_by_active_elements():
    gadget = gadget_in_N("x", S11)
    assert not check_system(gadget.system, {"x": S11.active_gen(1)}, S11).ok


def test_in_A_satisfied_by_active_elements():
    gadget = gadget_in_A("x", S22)
    assert check_system(gadget.system, {"x": S22.active_gen(2)}, S22).ok
    assert check_system(gadget.system, {"x": S22.identity()}, S22).ok


def test_in_A_violated_by_base_generator():
    gadget = gadget_in_A("x", S22)
    assert not check_system(gadget.system, {"x": S22.base_gen(1)}, S22).ok


# -- cyclic-subgroup gadget -------------------------------------------------------


def test_cyclic_gadget_structure():
    gadget = gadget_cyclic("x", S11)
    assert gadget.interface_vars == ("x",)
    assert gadget.aux_vars == ("cyc_z_1",)
    assert len(gadget.system.equations) == 3


def test_cyclic_witness_positive_power():
    gadget = gadget_cyclic("x", S11)
    asg = witness_cyclic(3, S11)
    assert asg["x"] == S11.element(active=(3,))
    assert asg["cyc_z_1"] == S11.element(base={1: parse_poly("1 + a1 + a1^2", 1)})
    assert check_system(gadget.system, asg, S11).ok


def test_cyclic_witness_identity():
    gadget = gadget_cyclic("x", S11)
    asg = witness_cyclic(0, S11)
    assert asg["x"].is_identity() and asg["cyc_z_1"].is_identity()
    assert check_system(gadget.system, asg, S11).ok


def test_cyclic_witness_gamma_one():
    asg = witness_cyclic(1, S11)
    assert asg["cyc_z_1"] == S11.base_gen(1)


def test_cyclic_witness_negative_power():
    gadget = gadget_cyclic("x", S11)
    asg = witness_cyclic(-2, S11)
    assert asg["cyc_z_1"] == S11.element(base={1: parse_poly("-a1^-1 - a1^-2", 1)})
    assert check_system(gadget.system, asg, S11).ok
    # direct evaluation of the defining equality [b1, x] = [z, a1]
    lhs = S11.base_gen(1).commutator(asg["x"])
    rhs = asg["cyc_z_1"].commutator(S11.active_gen(1))
    assert lhs == rhs


def test_cyclic_witnesses_over_a_range():
    gadget = gadget_cyclic("x", S21)
    for gamma in range(-20, 21):
        asg = witness_cyclic(gamma, S21)
        assert check_system(gadget.system, asg, S21).ok


def test_cyclic_refutation_for_independent_generator():
    # x = a2 forces a coordinate equation Q * (a1 - 1) = a2 - 1, impossible
    # because a2 - 1 is not divisible by a1 - 1.
    assert not divisible_by_a1_minus_1(parse_poly("a2 - 1", 2))
    # and satisfying values x produced by this artifact are powers of a1:
    for gamma in (-3, 0, 5):
        asg = witness_cyclic(gamma, S21)
        x = asg["x"]
        assert x.active[1] == 0 and all(p.is_zero() for p in x.base)


def test_cyclic_gadget_rejects_non_powers():
    gadget = gadget_cyclic("x", S21)
    # z would have to solve [b1, a2] = [z, a1]; no group element does, and in
    # particular the geometric-series witness shape fails.
    for z_val in [S21.identity(), S21.base_gen(1), rand_base_element(random.Random(1), S21)]:
        asg = {"x": S21.active_gen(2), "cyc_z_1": z_val}
        assert not check_system(gadget.system, asg, S21).ok


# -- ideal-power gadget --------------------------------------------------------------


def test_delta_gadget_structure_k1_m1():
    gadget = gadget_delta_power("x", 1, S11)
    assert gadget.interface_vars == ("x",)
    assert gadget.aux_vars == ("dp_x_1", "dp_y_1")
    # x = x_1, [y_1, b1] = 1, x_1 = [y_1, a1]
    assert len(gadget.system.equations) == 3


def test_delta_gadget_block_count():
    assert len(delta_blocks(S21, 3)) == 4  # (0,3), (1,2), (2,1), (3,0)


def test_delta_gadget_identity_witness():
    gadget = gadget_delta_power("x", 2, S21)
    asg = {"x": S21.identity()}
    asg.update(witness_delta_power(S21.identity(), 2))
    assert all(v.is_identity() for v in asg.values())
    assert check_system(gadget.system, asg, S21).ok


def test_delta_witness_square_univariate():
    g = S11.element(base={1: parse_poly("a1 - 1", 1) ** 2})
    fragment = witness_delta_power(g, 2)
    assert fragment["dp_y_1"] == S11.base_gen(1)
    assert fragment["dp_x_1"] == g
    gadget = gadget_delta_power("x", 2, S11)
    assert check_system(gadget.system, {"x": g, **fragment}, S11).ok


def test_delta_witness_mixed_bivariate():
    g = S21.element(base={1: parse_poly("a1 - 1", 2) * parse_poly("a2 - 1", 2)})
    fragment = witness_delta_power(g, 2)
    blocks = {bl.beta: bl for bl in delta_blocks(S21, 2)}
    assert fragment[blocks[(1, 1)].y_name] == S21.base_gen(1)
    for beta, bl in blocks.items():
        if beta != (1, 1):
            assert fragment[bl.y_name].is_identity()
    gadget = gadget_delta_power("x", 2, S21)
    assert check_system(gadget.system, {"x": g, **fragment}, S21).ok


def test_delta_witness_requires_membership():
    g = S11.base_gen(1)
    with pytest.raises(PreconditionError, match="valuation 0"):
        witness_delta_power(g, 1)


def test_delta_gadget_unreachable_outside_the_ideal_power():
    # Whatever the auxiliary values, each block image lands in the ideal
    # power, and products of members stay members, so g outside never matches.
    rng = random.Random(9)
    k = 2
    g = S11.base_gen(1)
    assert not in_delta_power(g, k)
    for _ in range(50):
        product = S11.identity()
        for bl in delta_blocks(S11, k):
            y = rand_base_element(rng, S11)
            image = module_action(y, delta_generator_product(bl.beta, 1))
            assert in_delta_power(image, k)
            product = product * image
        assert in_delta_power(product, k)
        assert product != g


def test_delta_witness_random_members():
    rng = random.Random(13)
    for _ in range(30):
        spec = GroupSpec(rng.randint(1, 2), rng.randint(1, 2))
        k = rng.randint(1, 4)
        coords = {}
        for j in range(1, spec.n + 1):
            beta = [0] * spec.m
            for _ in range(k):
                beta[rng.randrange(spec.m)] += 1
            coords[j] = delta_generator_product(tuple(beta), spec.m) * LaurentPoly(
                spec.m, {tuple(rng.randint(-1, 1) for _ in range(spec.m)): rng.randint(-3, 3)})
        g = spec.element(base=coords)
        gadget = gadget_delta_power("x", k, spec)
        asg = {"x": g, **witness_delta_power(g, k)}
        assert check_system(gadget.system, asg, spec).ok


def test_gadget_serialization_lists_interface():
    text = gadget_cyclic("x", S11).serialize()
    assert text.startswith("# interface: x\n")
    assert "# vars: x cyc_z_1" in text
