import itertools

import pytest

from indalg import catalog as cat
from indalg.catalog import InvalidParams, TooLarge


def test_make_instance_rejects_bad_params():
    with pytest.raises(InvalidParams):
        cat.make_instance("nope")
    with pytest.raises(InvalidParams):
        cat.make_instance("linear", q=4, dim=1, a0=[])
    with pytest.raises(InvalidParams):
        cat.make_instance("rank0", size=17)
    with pytest.raises(InvalidParams):
        cat.make_instance("group_action", size=3, generators=[[0, 1]], constants=[])


def test_op_indexing_row_major():
    semi = cat.make_instance("semilattice")
    (join,) = semi.ops
    assert join.arity == 2
    # commutative, idempotent, associative over the whole carrier
    for a, b, c in itertools.product(semi.elements, repeat=3):
        assert join(a, b) == join(b, a)
        assert join(a, a) == a
        assert join(join(a, b), c) == join(a, join(b, c))
    assert join(0, 1) == 2  # two incomparable atoms join to the top


def test_closure_semilattice():
    semi = cat.make_instance("semilattice")
    assert cat.closure(semi, [0, 1]) == frozenset({0, 1, 2})
    assert cat.closure(semi, [0, 2]) == frozenset({0, 2})
    assert cat.closure(semi, []) == frozenset()


def test_closure_constants_always_included():
    rank0 = cat.make_instance("rank0", size=3)
    assert cat.closure(rank0, []) == frozenset({0, 1, 2})
    ga = cat.make_instance(
        "group_action", size=5, generators=[[0, 2, 1, 4, 3]], constants=[0]
    )
    assert cat.closure(ga, [1]) == frozenset({0, 1, 2})
    assert cat.closure(ga, [3]) == frozenset({0, 3, 4})


def test_closure_matches_brute_force_on_linear():
    # oracle: iterate all basic ops to a fixpoint instead of the generator subset
    alg = cat.make_instance("linear", q=3, dim=1, a0=[[1]])
    for start in ([], [0], [1], [2], [0, 1]):
        cur = set(start)
        cur.update(op.table[0] for op in alg.ops if op.is_constant())
        changed = True
        while changed:
            changed = False
            for op in alg.ops:
                for args in itertools.product(sorted(cur), repeat=op.arity):
                    v = op(*args)
                    if v not in cur:
                        cur.add(v)
                        changed = True
        assert cat.closure(alg, start) == frozenset(cur), start


def test_exchange_holds_on_all_default_instances():
    for kind, params in cat.DEFAULT_INSTANCES:
        alg = cat.make_instance(kind, **params)
        result = cat.check_exchange(alg)
        assert result.holds, (kind, params, result.witness)


def test_exchange_fails_on_semilattice_control():
    result = cat.check_exchange(cat.make_instance("semilattice"))
    assert not result.holds
    assert result.witness == ((0,), 2, 1)
    # replay the witness: y lands in <X+{z}> but z never lands in <X+{y}>
    semi = cat.make_instance("semilattice")
    (x_set, y, z) = result.witness
    assert y in cat.closure(semi, set(x_set) | {z})
    assert y not in cat.closure(semi, x_set)
    assert z not in cat.closure(semi, set(x_set) | {y})


def test_exchange_size_cap():
    alg = cat.make_instance("rank0", size=3)
    big = cat.FiniteAlgebra(
        kind=alg.kind,
        size=cat.EXCHANGE_CAP + 1,
        ops=(),
        element_names=tuple(str(i) for i in range(cat.EXCHANGE_CAP + 1)),
        gen_ops=(),
    )
    with pytest.raises(TooLarge):
        cat.check_exchange(big)


def test_endomorphisms_exceptional():
    exc = cat.make_instance("exceptional")
    endos = cat.endomorphisms(exc)
    assert len(endos) == 8
    assert tuple(range(4)) in endos  # identity
    i_op = next(op for op in exc.ops if op.name == "i")
    q_op = next(op for op in exc.ops if op.name == "q")
    for e in endos:
        for x in exc.elements:
            assert e[i_op(x)] == i_op(e[x])
        for xs in itertools.product(exc.elements, repeat=3):
            assert e[q_op(*xs)] == q_op(*(e[x] for x in xs))


def test_endomorphisms_linear_trivial_pair():
    lin = cat.make_instance("linear", q=2, dim=1, a0=[])
    assert sorted(cat.endomorphisms(lin)) == [(0, 0), (0, 1)]


def test_endomorphisms_size_cap():
    with pytest.raises(TooLarge):
        cat.endomorphisms(cat.make_instance("rank0", size=8))


def test_unary_clone_exceptional():
    exc = cat.make_instance("exceptional")
    clone = cat.unary_clone(exc)
    assert len(clone.constants) == 0
    tables = set(clone.t_ops)
    i_op = next(op for op in exc.ops if op.name == "i")
    assert bytes(i_op(x) for x in exc.elements) in tables
    assert bytes(range(4)) in tables  # i o i = identity
    assert len(tables) == 2


def test_witness_set_variants():
    names = {}
    for kind, params in cat.DEFAULT_INSTANCES:
        alg = cat.make_instance(kind, **params)
        names.setdefault(kind, cat.witness_set(alg).name)
    assert names["rank0"] == "unary-ops"
    assert names["group_action"] == "unary-ops"
    assert names["linear"] == "maltsev+unary"
    assert names["exceptional"] == "i,q"
    assert names["affine"] == "all-basic-ops"
    assert names["q_homog_field"] == "all-basic-ops"
    lin = cat.make_instance("linear", q=3, dim=1, a0=[[1]])
    assert cat.witness_set(lin, "plus").name == "plus+unary"


def test_witness_reports_pass_on_defaults():
    for kind, params in cat.DEFAULT_INSTANCES:
        alg = cat.make_instance(kind, **params)
        report = cat.check_witness(alg, cat.witness_set(alg))
        assert report.ok, (kind, params, report)
        assert report.generates
        assert report.missing == ()
        assert report.non_clone == ()
        assert report.violations == ()


def test_witness_plus_variant_fails_with_pinned_violation():
    lin = cat.make_instance("linear", q=3, dim=1, a0=[[1]])
    report = cat.check_witness(lin, cat.witness_set(lin, "plus"))
    assert not report.ok
    assert report.generates  # plus + unaries still generate every basic op
    assert len(report.violations) == 4
    assert {
        "a": [1, 2, 0],
        "op": "f(1,1)+0",
        "args": [0, 0],
        "lhs": 1,
        "rhs": 2,
    } in report.violations
    # each recorded tuple really violates compatibility
    ops = {op.name: op for op in lin.ops}
    for v in report.violations:
        op = ops[v["op"]]
        a = v["a"]
        assert a[op(*v["args"])] == v["lhs"]
        assert op(*(a[x] for x in v["args"])) == v["rhs"]
        assert v["lhs"] != v["rhs"]


def test_default_catalog_shape():
    algs = cat.default_catalog()
    assert len(algs) == len(cat.DEFAULT_INSTANCES)
    assert [a.kind for a in algs] == [k for k, _ in cat.DEFAULT_INSTANCES]
    for a in algs:
        assert a.gen_ops  # every instance carries a generating op subset
        assert set(a.gen_ops) <= set(a.ops)
