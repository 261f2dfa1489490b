"""Formula handling, SAT reductions, random/bench instance builders."""

import random

import pytest

from swapreach.core import parse_instance, serialize_instance
from swapreach.generators import (
    GeneratedInstance,
    RestrictedFormula,
    chain_instance,
    gen_caterpillar,
    gen_clique,
    gen_clique_instance,
    gen_caterpillar_instance,
    gen_random,
    parse_dimacs,
    validate_restricted,
)
from swapreach.len3 import solve_len3
from swapreach.oracle import oracle_decide
from swapreach.pathsolver import solve_path_instance

from conftest import DATA, rand_caterpillar_formula, ref_sat, spine_and_hairs_ok

EXAMPLE_FORMULA = RestrictedFormula(
    n_vars=4, clauses=((2, 3), (1, -2, -3), (-1, 2, 4), (3, -4))
)


# -- formulas --------------------------------------------------------------------


def test_formula_rejects_malformed_clauses():
    with pytest.raises(ValueError):
        RestrictedFormula(n_vars=2, clauses=((1,), ()))
    with pytest.raises(ValueError):
        RestrictedFormula(n_vars=2, clauses=((0, 1),))
    with pytest.raises(ValueError):
        RestrictedFormula(n_vars=2, clauses=((3, 1),))


def test_formula_satisfiable_matches_truth_tables():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 4)
        clauses = tuple(
            tuple(
                rng.choice([1, -1]) * rng.randint(1, n)
                for _ in range(rng.randint(1, 3))
            )
            for _ in range(rng.randint(1, 4))
        )
        f = RestrictedFormula(n_vars=n, clauses=clauses)
        assert f.satisfiable() == ref_sat(n, clauses)


def test_occurrences_are_positional():
    pos, neg = EXAMPLE_FORMULA.occurrences(2)
    assert pos == [(1, 1), (3, 2)]
    assert neg == [(2, 2)]


def test_validate_restricted_clique():
    assert validate_restricted(EXAMPLE_FORMULA, "clique") is None
    bad_size = RestrictedFormula(2, ((1,), (2, -1), (-2, 1)))
    assert "1 literals" in validate_restricted(bad_size, "clique")
    repeated = RestrictedFormula(2, ((1, -1), (2, -2)))
    assert "more than once" in validate_restricted(repeated, "clique")
    dup = RestrictedFormula(2, ((1, 2), (1, 2), (-1, -2)))
    assert validate_restricted(dup, "clique") == "duplicate clauses"
    two_neg = RestrictedFormula(2, ((-1, 2), (-1, -2), (1, 2)))
    assert "negatively" in validate_restricted(two_neg, "clique")
    no_pos = RestrictedFormula(2, ((-1, 2),))
    assert "positively" in validate_restricted(no_pos, "clique")


def test_validate_restricted_caterpillar():
    sat = RestrictedFormula(2, ((1, 2), (1, 2), (-1, -2)))
    assert validate_restricted(sat, "caterpillar") is None
    # duplicate clauses are fine here, occurrence counts are not
    wrong = RestrictedFormula(1, ((1,), (-1,)))
    assert "positively" in validate_restricted(wrong, "caterpillar")
    with pytest.raises(ValueError):
        validate_restricted(sat, "starfish")


def test_parse_dimacs():
    f = parse_dimacs((DATA / "example1.cnf").read_text())
    assert f == EXAMPLE_FORMULA
    # clauses may span lines and comments may appear anywhere
    f2 = parse_dimacs("c hi\np cnf 2 2\n1\n-2 0\n% tail\n2 1 0\n")
    assert f2.clauses == ((1, -2), (2, 1))
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")  # missing problem line
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 3\n1 0\n")  # promised three clauses
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 1\nx y 0\n")


# -- clique reduction --------------------------------------------------------------


def test_clique_reduction_reproduces_the_recorded_instance():
    built = gen_clique(EXAMPLE_FORMULA)
    assert built.annotated_text() == (DATA / "example1.txt").read_text()


def test_clique_reduction_shape():
    built = gen_clique(EXAMPLE_FORMULA)
    inst = built.instance
    assert inst.n == 31 and len(built.agent_names) == 31
    assert len(inst.edges) == 31 * 30 // 2
    assert inst.max_list_len() <= 4
    assert inst.target_agent == 31 and inst.target_object == "x"
    assert built.agent_names[-1] == "I"
    # the annotation header is commentary: the text parses back to the instance
    assert parse_instance(built.annotated_text()) == inst


def test_clique_reduction_rejects_unrestricted_formulas():
    with pytest.raises(ValueError):
        gen_clique(RestrictedFormula(1, ((1,), (-1,))))


def test_clique_reduction_tracks_satisfiability():
    cases = [
        RestrictedFormula(2, ((1, 2), (-1, -2))),
        RestrictedFormula(2, ((1, -2), (-1, 2))),
        RestrictedFormula(3, ((1, 2, 3), (-1, -2, -3))),
    ]
    for f in cases:
        res = oracle_decide(gen_clique_instance(f))
        assert res.status == ("yes" if f.satisfiable() else "no"), f


# -- caterpillar reduction ----------------------------------------------------------


def test_caterpillar_tiny_formulas_agree_with_the_oracle():
    sat = RestrictedFormula(2, ((1, 2), (1, 2), (-1, -2)))
    unsat = RestrictedFormula(1, ((1,), (1,), (-1,)))
    built = gen_caterpillar(sat)
    assert built.instance.n == 9 * 2 + 3 + 1
    assert oracle_decide(built.instance).status == "yes"
    assert oracle_decide(gen_caterpillar_instance(unsat)).status == "no"


def test_caterpillar_shape_holds_over_random_formulas():
    rng = random.Random(77)
    for _ in range(12):
        f = rand_caterpillar_formula(rng, rng.randint(1, 4))
        assert validate_restricted(f, "caterpillar") is None
        built = gen_caterpillar(f)
        spine_and_hairs_ok(built.instance)
        assert parse_instance(built.annotated_text()) == built.instance


def test_caterpillar_rejects_wrong_occurrence_counts():
    with pytest.raises(ValueError):
        gen_caterpillar(RestrictedFormula(1, ((1,), (-1,))))


# -- random + bench builders ---------------------------------------------------------


def test_gen_random_is_deterministic_per_seed():
    a = serialize_instance(gen_random("random", 7, 123))
    b = serialize_instance(gen_random("random", 7, 123))
    c = serialize_instance(gen_random("random", 7, 124))
    assert a == b
    assert a != c


def test_gen_random_kinds_shape_the_graph():
    path = gen_random("path", 6, 1)
    assert path.path_order() is not None
    cycle = gen_random("cycle", 6, 1)
    assert cycle.is_cycle()
    clique = gen_random("clique", 6, 1)
    assert len(clique.edges) == 15
    anything = gen_random("random", 6, 1)
    assert 5 <= len(anything.edges) <= 15
    with pytest.raises(ValueError):
        gen_random("torus", 6, 1)


def test_gen_random_respects_list_bounds_and_target():
    for seed in range(30):
        inst = gen_random("random", 6, seed, list_len_bound=3)
        assert inst.max_list_len() <= 3
        assert inst.target_object in inst.pref(inst.target_agent)


def test_chain_instance_is_a_linear_yes_family():
    with pytest.raises(ValueError):
        chain_instance(1)
    inst = chain_instance(30)
    assert inst.path_order() is not None
    assert inst.max_list_len() <= 3
    walk = solve_len3(inst)
    assert walk.decision and len(walk.certificate) == 29
    path = solve_path_instance(inst)
    assert path.decision and len(path.certificate) == 29
