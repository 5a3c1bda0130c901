from __future__ import annotations

import numpy as np
import pytest

from attrtopo.model import FeatureTable, QueryProvenance, Selection, Session
from attrtopo.query import (
    And,
    Comparison,
    FilterSyntaxError,
    Not,
    Or,
    UnknownColumnError,
    eval_filter,
    parse_filter,
    run_query,
    to_text,
)


def make_session(columns, values, preds=None, labels=None) -> Session:
    values = np.asarray(values, dtype=float)
    n = len(values)
    preds = np.linspace(0.1, 0.9, n) if preds is None else np.asarray(preds, float)
    labels = np.zeros(n, dtype=np.int64) if labels is None else np.asarray(labels)
    return Session(
        table=FeatureTable(column_names=tuple(columns), values=values),
        preds=preds,
        labels=labels,
        methods=(),
        graphs={},
        diagrams={},
        distances=np.zeros((0, 0)),
        projections={},
    )


def test_golden_parse_trees():
    assert parse_filter("age > 50 AND glucose >= 120") == And(
        Comparison("age", ">", 50.0), Comparison("glucose", ">=", 120.0)
    )
    assert parse_filter("pred > 0.5 OR (label = 1 AND NOT f0 < 0)") == Or(
        Comparison("pred", ">", 0.5),
        And(Comparison("label", "=", 1.0), Not(Comparison("f0", "<", 0.0))),
    )
    # AND binds tighter than OR; chains are left-associative
    assert parse_filter("a < 1 OR b < 2 AND c < 3") == Or(
        Comparison("a", "<", 1.0),
        And(Comparison("b", "<", 2.0), Comparison("c", "<", 3.0)),
    )
    assert parse_filter("a < 1 AND b < 2 AND c < 3") == And(
        And(Comparison("a", "<", 1.0), Comparison("b", "<", 2.0)),
        Comparison("c", "<", 3.0),
    )
    assert parse_filter('"mean radius" != -2.5e-1') == Comparison("mean radius", "!=", -0.25)
    assert parse_filter("not (x = 1)") == Not(Comparison("x", "=", 1.0))
    assert parse_filter("((pred <= .5))") == Comparison("pred", "<=", 0.5)


def test_keywords_case_insensitive():
    lower = parse_filter("a > 1 and b < 2 or not c = 3")
    upper = parse_filter("a > 1 AND b < 2 OR NOT c = 3")
    assert lower == upper


def test_syntax_error_positions():
    with pytest.raises(FilterSyntaxError) as err:
        parse_filter("age >")
    assert err.value.position == 5
    assert "number" in err.value.expected

    with pytest.raises(FilterSyntaxError) as err:
        parse_filter("(a > 1")
    assert err.value.position == 6

    with pytest.raises(FilterSyntaxError) as err:
        parse_filter("a > 1 b > 2")
    assert err.value.position == 6

    with pytest.raises(FilterSyntaxError) as err:
        parse_filter("> 5")
    assert err.value.position == 0

    with pytest.raises(FilterSyntaxError) as err:
        parse_filter('"unterminated > 5')
    assert err.value.position == 0

    with pytest.raises(FilterSyntaxError):
        parse_filter("a # 5")


def test_eval_t1_examples(t1_session):
    sel = run_query("pred > 0.5", t1_session)
    assert sel.indices.tolist() == [2, 3]
    assert sel.provenance == QueryProvenance("pred > 0.5")

    assert run_query("label = 0 OR label = 1", t1_session).indices.tolist() == [0, 1, 2, 3]
    assert run_query("f0 > 100", t1_session).indices.tolist() == []
    assert run_query("NOT f0 > 100", t1_session).indices.tolist() == [0, 1, 2, 3]


def test_unknown_column(t1_session):
    with pytest.raises(UnknownColumnError) as err:
        run_query("nope < 1", t1_session)
    assert err.value.name == "nope"


def test_feature_shadows_pseudo_column():
    # a real feature named "pred" wins over the prediction pseudo-column
    session = make_session(
        ["pred", "x"],
        [[100.0, 0.0], [200.0, 1.0]],
        preds=[0.1, 0.9],
    )
    assert run_query("pred > 150", session).indices.tolist() == [1]
    # quoting doesn't change resolution; "pred" is the same column
    assert run_query('"pred" > 150', session).indices.tolist() == [1]


def test_exact_equality_semantics():
    session = make_session(["x"], [[0.1], [0.30000000000000004], [0.3]])
    assert run_query("x = 0.3", session).indices.tolist() == [2]
    assert run_query("x != 0.3", session).indices.tolist() == [0, 1]


def random_expr(rng, columns, depth=0):
    if depth > 3 or rng.random() < 0.4:
        column = str(rng.choice(columns))
        op = str(rng.choice(["<", "<=", ">", ">=", "=", "!="]))
        value = float(np.round(rng.uniform(-2, 2), 2))
        return Comparison(column, op, value)
    kind = rng.integers(0, 3)
    if kind == 0:
        return And(random_expr(rng, columns, depth + 1), random_expr(rng, columns, depth + 1))
    if kind == 1:
        return Or(random_expr(rng, columns, depth + 1), random_expr(rng, columns, depth + 1))
    return Not(random_expr(rng, columns, depth + 1))


def test_pretty_print_round_trip_random_trees():
    rng = np.random.default_rng(1000)
    columns = ["f0", "f1", "weird name", "pred", "label"]
    for _ in range(200):
        tree = random_expr(rng, columns)
        assert parse_filter(to_text(tree)) == tree


def test_algebraic_laws_on_random_tables():
    rng = np.random.default_rng(2000)
    for _ in range(60):
        n = int(rng.integers(1, 30))
        values = rng.uniform(-2, 2, size=(n, 3))
        session = make_session(
            ["f0", "f1", "f2"], values,
            preds=rng.uniform(0, 1, n), labels=rng.integers(0, 2, n),
        )
        a = random_expr(rng, ["f0", "f1", "f2", "pred", "label"])
        b = random_expr(rng, ["f0", "f1", "f2", "pred", "label"])
        ea = set(eval_filter(a, session).indices.tolist())
        eb = set(eval_filter(b, session).indices.tolist())
        assert set(eval_filter(And(a, b), session).indices.tolist()) == ea & eb
        assert set(eval_filter(Or(a, b), session).indices.tolist()) == ea | eb
        assert set(eval_filter(Not(a), session).indices.tolist()) == set(range(n)) - ea


def test_eval_filter_synthesizes_provenance_text(t1_session):
    expr = parse_filter("f0 >= 0.9")
    sel = eval_filter(expr, t1_session)
    assert isinstance(sel.provenance, QueryProvenance)
    assert parse_filter(sel.provenance.text) == expr
