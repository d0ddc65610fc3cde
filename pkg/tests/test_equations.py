import random

import pytest

from zwreath.equations import (Commutator, Concat, Constant,
                               Equation, Literal, Power, System, check_system,
                               equation, evaluate, flatten, free_vars,
                               inverse_word, parse_assignment, parse_system,
                               power, serialize_assignment, serialize_system,
                               serialize_word, system_of)
from zwreath.errors import ParseError, PreconditionError, SpecMismatchError
from zwreath.laurent import LaurentPoly, parse_poly
from zwreath.selftest import _solve_definitions, rand_word
from zwreath.wreath import GroupSpec

S11 = GroupSpec(1, 1)
S12 = GroupSpec(1, 2)
S22 = GroupSpec(2, 2)

IDENTITY = Concat(())


# -- evaluation -----------------------------------------------------------------


def test_evaluate_commutator_matches_group_commutator():
    asg = {"x": S11.base_gen(1), "y": S11.active_gen(1)}
    value = evaluate(Commutator(Literal("x"), Literal("y")), asg, S11)
    assert value == S11.element(base={1: parse_poly("a1 - 1", 1)})


def test_evaluate_empty_concat_is_identity():
    assert evaluate(IDENTITY, {}, S22) == S22.identity()


def test_evaluate_negative_power():
    value = evaluate(Power(Literal("x"), -2), {"x": S11.active_gen(1)}, S11)
    assert value == S11.element(active=(-2,))


def test_evaluate_unbound_variable_names_it():
    with pytest.raises(PreconditionError, match="'lonely'"):
        evaluate(Literal("lonely"), {}, S11)


def test_evaluate_rejects_foreign_constants():
    word = Constant(S11.identity())
    with pytest.raises(SpecMismatchError):
        evaluate(word, {}, S22)


def test_inverse_word_inverts_evaluation():
    rng = random.Random(17)
    for _ in range(50):
        word = rand_word(rng, S22, ["x", "y"], depth=3)
        asg = {"x": S22.element(active=(1, 0), base={1: LaurentPoly.one(2)}),
               "y": S22.element(active=(0, -1), base={2: parse_poly("a2", 2)})}
        assert evaluate(inverse_word(word), asg, S22) == evaluate(word, asg, S22).inverse()


# -- systems ----------------------------------------------------------------------


def test_check_empty_system():
    assert check_system(System(), {}, S11).ok


def test_check_base_commutation():
    system = system_of([equation(Commutator(Literal("x"), Constant(S12.base_gen(1))))])
    good = {"x": S12.element(base={2: parse_poly("a1", 1)})}
    assert check_system(system, good, S12).ok
    bad = {"x": S12.active_gen(1)}
    report = check_system(system, bad, S12)
    assert not report.ok
    assert report.failures == (0,)


def test_check_requires_declared_assignments():
    system = system_of([equation(Literal("x"))])
    with pytest.raises(PreconditionError, match="x"):
        check_system(system, {}, S11)


def test_system_rejects_undeclared_variables():
    with pytest.raises(PreconditionError):
        System((equation(Literal("x")),), ())


def test_equation_normalizes_rhs():
    eq = equation(Literal("x"), Literal("y"))
    assert eq.lhs == Concat((Literal("x"), Literal("y", -1)))
    assert equation(Literal("x"), IDENTITY) == Equation(Literal("x"))


# -- flatten ----------------------------------------------------------------------


def test_flatten_literal_is_noop():
    word, aux = flatten(Literal("x"))
    assert word == Literal("x")
    assert aux == System()


def test_flatten_single_commutator():
    word, aux = flatten(Commutator(Literal("x"), Literal("y")))
    assert word == Literal("t1")
    assert len(aux.equations) == 1
    expected = equation(
        Literal("t1"),
        Concat((Literal("x", -1), Literal("y", -1), Literal("x"), Literal("y"))))
    assert aux.equations[0] == expected


def test_flatten_nested_commutator():
    word, aux = flatten(Commutator(Commutator(Literal("x"), Literal("y")), Literal("z")))
    assert word == Literal("t2")
    assert len(aux.equations) == 2
    inner = equation(
        Literal("t1"),
        Concat((Literal("x", -1), Literal("y", -1), Literal("x"), Literal("y"))))
    outer = equation(
        Literal("t2"),
        Concat((Literal("t1", -1), Literal("z", -1), Literal("t1"), Literal("z"))))
    assert aux.equations == (inner, outer)


def test_flatten_preserves_value_on_random_words():
    rng = random.Random(23)
    names = ["x", "y"]
    for _ in range(200):
        spec = GroupSpec(rng.randint(1, 2), rng.randint(1, 2))
        word = rand_word(rng, spec, names, depth=4)
        asg = {"x": spec.element(active=(1,) + (0,) * (spec.m - 1)),
               "y": spec.element(base={1: LaurentPoly.one(spec.m)})}
        flat, aux = flatten(word)
        extended = _solve_definitions(aux, asg, spec)
        assert evaluate(flat, extended, spec) == evaluate(word, asg, spec)
        assert check_system(aux, extended, spec).ok


def test_flatten_removes_powers():
    word, aux = flatten(Power(Literal("x"), 9))
    asg = {"x": S11.active_gen(1)}
    extended = _solve_definitions(aux, asg, S11)
    assert evaluate(word, extended, S11) == S11.element(active=(9,))
    for eq in aux.equations:
        assert "Power" not in repr(eq) and "Commutator" not in repr(eq)


# -- parsing and serialization -------------------------------------------------------


def test_parse_empty_system():
    assert parse_system("", S11) == System()


def test_parse_commutator_with_constant():
    system = parse_system("[x, {active:(1); }] = 1", S11)
    assert len(system.equations) == 1
    assert system.declared_vars == ("x",)
    eq = system.equations[0]
    assert eq.lhs == Commutator(Literal("x"), Constant(S11.active_gen(1)))


def test_parse_serialize_round_trip_simple():
    text = "# vars: x y\n[x, y] x^-2 = 1\n"
    system = parse_system(text, S22)
    assert serialize_system(system) == text
    assert parse_system(serialize_system(system), S22) == system


def test_round_trip_with_constants_and_powers():
    source = "\n".join([
        "# a comment line",
        "x { active: (1,0); b2: a1 - 1 } = 1",
        "[x, y]^3 (x y)^-2 = 1",
        "y = x",
    ]) + "\n"
    system = parse_system(source, S22)
    redone = parse_system(serialize_system(system), S22)
    assert redone == system


def test_extra_declared_variables_survive_round_trip():
    text = "# vars: x spare\nx = 1\n"
    system = parse_system(text, S11)
    assert system.declared_vars == ("x", "spare")
    assert serialize_system(system) == text
    # checking demands every declared variable, including unused ones
    with pytest.raises(PreconditionError, match="spare"):
        check_system(system, {"x": S11.identity()}, S11)


def test_parse_reports_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_system("x = 1\n[x, = 1\n", S11)
    assert exc.value.line == 2
    assert exc.value.col is not None


def test_parse_rejects_unbalanced_braces():
    with pytest.raises(ParseError):
        parse_system("{ active: (1) = 1", S11)


def test_assignment_round_trip():
    asg = {
        "x": S22.element(active=(1, 2), base={1: parse_poly("a1^-1", 2)}),
        "cyc_z_1": S22.identity(),
    }
    text = serialize_assignment(asg)
    assert parse_assignment(text, S22) == asg


def test_assignment_rejects_duplicates():
    text = "x := { active: (0); }\nx := { active: (1); }\n"
    with pytest.raises(ParseError, match="twice"):
        parse_assignment(text, S11)


def test_free_vars_first_occurrence_order():
    word = Concat((Literal("b"), Commutator(Literal("a"), Literal("b")), Literal("c")))
    assert free_vars(word) == ["b", "a", "c"]


def test_serialize_word_edge_cases():
    assert serialize_word(IDENTITY) == "1"
    assert serialize_word(Literal("x", -1)) == "x^-1"
    assert serialize_word(Power(Concat((Literal("x"), Literal("y"))), 3)) == "(x y)^3"
    assert serialize_word(power(Literal("x"), -1)) == "x^-1"


def test_word_round_trip_random():
    rng = random.Random(31)
    for _ in range(150):
        word = rand_word(rng, S22, ["x", "y", "z"], depth=3)
        text = serialize_word(word)
        system = parse_system(f"{text} = 1", S22)
        assert serialize_word(system.equations[0].lhs) == text
