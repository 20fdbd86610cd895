"""Finite desk-scale algebras with closure, exchange, clone and witness checks.

Each instance kind packages a small carrier with explicit operation tables:

* ``rank0``        -- every element is a constant (constant unary ops only);
* ``linear``       -- F_q^d with all maps sum(l_i * x_i) + a, a in a subspace A0;
* ``affine``       -- same but with sum(l_i) = 1 (translations as unary ops);
* ``exceptional``  -- the 4-element algebra with i = (01)(23) and the ternary
                      "repeated argument, else the fourth element" operation;
* ``group_action`` -- a permutation group acting on a set, constants A0, with
                      every non-identity fixed point inside A0;
* ``q_homog_field``-- F_q with all maps sum(l_i * x_i), sum(l_i) = 1, no
                      constants;
* ``semilattice``  -- negative control: the 3-element join-semilattice with
                      two incomparable atoms (its closure violates exchange).

Operations with arity <= 3 suffice to generate each clone at these sizes; the
bound is an explicit soundness boundary of the generation check, not a claim
about clones in general.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

EXCHANGE_CAP = 16
BRUTE_ENDO_CAP = 7
GEN_TABLE_CAP = 8192
GEN_STEP_CAP = 20_000_000

FIELD_ORDERS = (2, 3, 5)


class InvalidParams(ValueError):
    """Instance parameters violate a construction precondition."""


class TooLarge(RuntimeError):
    """Exhaustive check requested beyond its feasibility bound."""


@dataclass(frozen=True)
class Op:
    """Total operation on {0..size-1}, table flat row-major (last arg fastest)."""

    name: str
    arity: int
    size: int
    table: bytes

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.table[idx]

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1


@dataclass(frozen=True)
class FiniteAlgebra:
    kind: str
    size: int
    ops: tuple[Op, ...]
    element_names: tuple[str, ...]
    # small op subset generating every basic op by composition; closure and
    # endomorphism checks run against this set (provably equivalent, much
    # smaller tuple spaces)
    gen_ops: tuple[Op, ...]

    @property
    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:  # params live in the op names
        return f"FiniteAlgebra({self.kind}, size={self.size}, ops={len(self.ops)})"


# ---------------------------------------------------------------------------
# instance construction


def _vec(idx: int, q: int, dim: int) -> tuple[int, ...]:
    out = []
    for p in range(dim - 1, -1, -1):
        out.append((idx // q**p) % q)
    return tuple(out)


def _vidx(v: Sequence[int], q: int) -> int:
    idx = 0
    for c in v:
        idx = idx * q + c
    return idx


def _span(vectors: Sequence[Sequence[int]], q: int, dim: int) -> list[int]:
    pts = {(0,) * dim}
    for coeffs in itertools.product(range(q), repeat=len(vectors)):
        v = tuple(
            sum(c * vec[i] for c, vec in zip(coeffs, vectors)) % q
            for i in range(dim)
        )
        pts.add(v)
    return sorted(_vidx(v, q) for v in pts)


def _field_ops(q: int, dim: int, a0: list[int], affine_only: bool,
               with_const: bool) -> list[Op]:
    size = q**dim
    vecs = [_vec(i, q, dim) for i in range(size)]
    add = [[_vidx([(x + y) % q for x, y in zip(vecs[i], vecs[j])], q)
            for j in range(size)] for i in range(size)]
    scal = [[_vidx([(lam * x) % q for x in vecs[i]], q) for i in range(size)]
            for lam in range(q)]
    ops = []
    for arity in (1, 2, 3):
        for lam in itertools.product(range(q), repeat=arity):
            if affine_only and sum(lam) % q != 1:
                continue
            shifts = a0 if with_const else [0]
            for a in shifts:
                table = bytearray()
                for args in itertools.product(range(size), repeat=arity):
                    acc = a if with_const else 0
                    for l, x in zip(lam, args):
                        acc = add[acc][scal[l][x]]
                    table.append(acc)
                tag = ",".join(map(str, lam))
                name = f"f({tag})" + (f"+{a}" if with_const else "")
                ops.append(Op(name, arity, size, bytes(table)))
    return ops


def _validate_field_params(q: int, dim: int, a0: Iterable[Sequence[int]]):
    if q not in FIELD_ORDERS:
        raise InvalidParams(f"field order must be one of {FIELD_ORDERS}, got {q}")
    if dim not in (1, 2):
        raise InvalidParams(f"dimension must be 1 or 2, got {dim}")
    vecs = [tuple(v) for v in a0]
    for v in vecs:
        if len(v) != dim or any(not (0 <= int(c) < q) for c in v):
            raise InvalidParams(f"spanning vector {v} not in F_{q}^{dim}")
    return vecs


def make_instance(kind: str, **params) -> FiniteAlgebra:
    if kind == "rank0":
        size = int(params.pop("size", 3))
        _no_extra(params)
        if not 1 <= size <= 8:
            raise InvalidParams("rank0 size must be in [1,8]")
        ops = tuple(
            Op(f"c{a}", 1, size, bytes([a] * size)) for a in range(size)
        )
        return FiniteAlgebra(kind, size, ops, _names(size), ops)

    if kind in ("linear", "affine"):
        q = int(params.pop("q", 3))
        dim = int(params.pop("dim", 1))
        a0_vecs = _validate_field_params(q, dim, params.pop("a0", [[1] * dim]))
        _no_extra(params)
        size = q**dim
        a0 = _span(a0_vecs, q, dim)
        ops = tuple(_field_ops(q, dim, a0, affine_only=(kind == "affine"),
                               with_const=True))
        by_name = {op.name: op for op in ops}
        if kind == "linear":
            gen = [by_name["f(1,1)+0"]]  # x+y
            gen += [by_name[f"f({lam})+0"] for lam in range(1, q)]
            gen += [by_name[f"f(0)+{a}"] for a in a0]
        else:
            minus = q - 1
            gen = [by_name[f"f(1,{minus},1)+0"]]  # x-y+z
            gen += [by_name[f"f(1)+{a}"] for a in a0]
        names = tuple(str(_vec(i, q, dim)) if dim > 1 else str(i)
                      for i in range(size))
        return FiniteAlgebra(kind, size, ops, names, tuple(gen))

    if kind == "exceptional":
        _no_extra(params)
        i_table = bytes((1, 0, 3, 2))
        q_table = bytearray()
        for x, y, z in itertools.product(range(4), repeat=3):
            if x == y or x == z:
                q_table.append(x)
            elif y == z:
                q_table.append(y)
            else:
                q_table.append(6 - x - y - z)
        ops = (Op("i", 1, 4, i_table), Op("q", 3, 4, bytes(q_table)))
        return FiniteAlgebra(kind, 4, ops, _names(4), ops)

    if kind == "group_action":
        size = int(params.pop("size", 5))
        perms = [tuple(p) for p in params.pop("generators", [(0, 2, 1, 4, 3)])]
        consts = sorted(set(params.pop("constants", [0])))
        _no_extra(params)
        if not 1 <= size <= 8:
            raise InvalidParams("group_action size must be in [1,8]")
        for p in perms:
            if sorted(p) != list(range(size)):
                raise InvalidParams(f"{p} is not a permutation of 0..{size-1}")
        if any(not 0 <= c < size for c in consts):
            raise InvalidParams("constants outside the carrier")
        group = _perm_group(perms, size)
        ident = tuple(range(size))
        for g in group:
            if g == ident:
                continue
            bad = [x for x in range(size) if g[x] == x and x not in consts]
            if bad:
                raise InvalidParams(
                    f"fixed point {bad[0]} of {g} lies outside the constants"
                )
        ops = tuple(
            [Op(f"g{k}", 1, size, bytes(p)) for k, p in enumerate(perms)]
            + [Op(f"c{a}", 1, size, bytes([a] * size)) for a in consts]
        )
        return FiniteAlgebra(kind, size, ops, _names(size), ops)

    if kind == "q_homog_field":
        q = int(params.pop("q", 3))
        _no_extra(params)
        if q not in FIELD_ORDERS:
            raise InvalidParams(f"field order must be one of {FIELD_ORDERS}")
        ops = tuple(_field_ops(q, 1, [0], affine_only=True, with_const=False))
        by_name = {op.name: op for op in ops}
        gen = (by_name[f"f(1,{q-1},1)"],)  # x-y+z
        return FiniteAlgebra(kind, q, ops, _names(q), gen)

    if kind == "semilattice":
        _no_extra(params)
        table = bytearray()
        for x, y in itertools.product(range(3), repeat=2):
            table.append(x if x == y else 2)
        ops = (Op("join", 2, 3, bytes(table)),)
        return FiniteAlgebra(kind, 3, ops, _names(3), ops)

    raise InvalidParams(f"unknown kind {kind!r}")


def _no_extra(params: dict) -> None:
    if params:
        raise InvalidParams(f"unexpected parameters: {sorted(params)}")


def _names(size: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(size))


def _perm_group(gens: list[tuple[int, ...]], size: int) -> set:
    group = {tuple(range(size))}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for p in gens:
                h = tuple(p[g[x]] for x in range(size))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


# ---------------------------------------------------------------------------
# closure and exchange


def closure(alg: FiniteAlgebra, xs: Iterable[int]) -> frozenset[int]:
    """Subalgebra generated by xs (with every constant-op value included)."""
    cur = set(xs)
    for op in alg.gen_ops:
        if op.is_constant():
            cur.add(op.table[0])
    frontier = set(cur)
    while frontier:
        new = set()
        for op in alg.gen_ops:
            k = op.arity
            for args in itertools.product(sorted(cur), repeat=k):
                if not any(a in frontier for a in args):
                    continue
                v = op(*args)
                if v not in cur and v not in new:
                    new.add(v)
        cur |= new
        frontier = new
    return frozenset(cur)


@dataclass(frozen=True)
class ExchangeResult:
    holds: bool
    witness: Optional[tuple[tuple[int, ...], int, int]]  # (X, y, z)


def check_exchange(alg: FiniteAlgebra) -> ExchangeResult:
    """Exhaustively test: y in <X+{z}> \\ <X> implies z in <X+{y}>."""
    n = alg.size
    if n > EXCHANGE_CAP:
        raise TooLarge(f"carrier size {n} exceeds the exhaustive bound {EXCHANGE_CAP}")
    cl: list[frozenset[int]] = [frozenset()] * (1 << n)
    cl[0] = closure(alg, ())
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        cl[mask] = closure(alg, cl[mask ^ (1 << low)] | {low})
    closed = sorted({cl[m] for m in range(1 << n)}, key=lambda s: (len(s), sorted(s)))
    mask_of = lambda s: sum(1 << e for e in s)
    for c in closed:
        base = mask_of(c)
        for z in range(n):
            if z in c:
                continue
            bigger = cl[base | (1 << z)]
            for y in sorted(bigger - c):
                if z not in cl[base | (1 << y)]:
                    return ExchangeResult(False, (tuple(sorted(c)), y, z))
    return ExchangeResult(True, None)


# ---------------------------------------------------------------------------
# unary clone and endomorphisms


@dataclass(frozen=True)
class UnaryClone:
    t_ops: tuple[bytes, ...]  # non-constant, sorted
    constants: tuple[bytes, ...]


def unary_clone(alg: FiniteAlgebra) -> UnaryClone:
    """All unary term operations, split into non-constant (T) and constant."""
    n = alg.size
    seen = {bytes(range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for op in alg.ops:
            k = op.arity
            for us in itertools.product(sorted(seen), repeat=k):
                if not any(u in frontier for u in us):
                    continue
                tbl = bytes(op(*(u[x] for u in us)) for x in range(n))
                if tbl not in seen:
                    seen.add(tbl)
                    nxt.append(tbl)
        frontier = nxt
    t_ops = sorted(t for t in seen if len(set(t)) > 1)
    consts = sorted(t for t in seen if len(set(t)) == 1)
    return UnaryClone(tuple(t_ops), tuple(consts))


def endomorphisms(alg: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All self-maps commuting with every basic operation, sorted."""
    n = alg.size
    if alg.kind in ("linear", "affine", "q_homog_field"):
        maps = _field_endo_candidates(alg)
    elif n <= BRUTE_ENDO_CAP:
        maps = itertools.product(range(n), repeat=n)
    else:
        raise TooLarge(f"carrier size {n} exceeds the brute-force bound")
    out = []
    for phi in maps:
        if all(
            phi[op(*args)] == op(*(phi[a] for a in args))
            for op in alg.gen_ops
            for args in itertools.product(range(n), repeat=op.arity)
        ):
            out.append(tuple(phi))
    return sorted(out)


def _field_endo_candidates(alg: FiniteAlgebra):
    # recover q, dim from the carrier and an op name; A0 from constant values
    q = next(p for p in FIELD_ORDERS if alg.size in (p, p * p))
    dim = 1 if alg.size == q else 2
    translate = alg.kind != "linear"  # affine & q-homogeneous allow +c
    shifts = range(alg.size) if translate else (0,)
    for mat in itertools.product(range(q), repeat=dim * dim):
        rows = [mat[i * dim:(i + 1) * dim] for i in range(dim)]
        for c in shifts:
            cv = _vec(c, q, dim)
            phi = []
            for e in range(alg.size):
                v = _vec(e, q, dim)
                img = tuple(
                    (sum(r * x for r, x in zip(rows[i], v)) + cv[i]) % q
                    for i in range(dim)
                )
                phi.append(_vidx(img, q))
            yield tuple(phi)


# ---------------------------------------------------------------------------
# clone generation and witness checking


def _projections(n: int, m: int) -> list[bytes]:
    out = []
    for i in range(m):
        out.append(bytes(args[i] for args in itertools.product(range(n), repeat=m)))
    return out


def _compose(f: Op, gs: Sequence[bytes], total: int) -> bytes:
    ft, n = f.table, f.size
    out = bytearray(total)
    for t in range(total):
        idx = 0
        for g in gs:
            idx = idx * n + g[t]
        out[t] = ft[idx]
    return bytes(out)


def generated_covers(alg: FiniteAlgebra, seed: Sequence[Op],
                     targets: set[tuple[int, bytes]]) -> set[tuple[int, bytes]]:
    """Which (arity, table) targets lie in the clone generated by seed?

    Fixpoint per arity (outer op always from seed; complete since every term
    unfolds to seed-rooted compositions of same-arity pieces).  Early exit
    once all targets are found; hard caps guard runaway inputs.
    """
    n = alg.size
    found = set()
    steps = 0
    for m in (1, 2, 3):
        want = {tbl for a, tbl in targets if a == m}
        if not want:
            continue
        total = n**m
        tables = _projections(n, m)
        have = set(tables)
        for op in seed:
            if op.arity == m and op.table not in have:
                have.add(op.table)
                tables.append(op.table)
        found |= {(m, t) for t in want & have}
        frontier = list(tables)
        while frontier and want - {t for a, t in found if a == m}:
            remaining = want - {t for a, t in found if a == m}
            fset = set(frontier)
            nxt = []
            for f in seed:
                k = f.arity
                for pos in range(k):
                    for gnew in frontier:
                        pools = [tables if p != pos else [gnew] for p in range(k)]
                        for gs in itertools.product(*pools):
                            if pos and any(g in fset for g in gs[:pos]):
                                continue  # counted at an earlier pos
                            steps += 1
                            if steps > GEN_STEP_CAP:
                                raise TooLarge("generation search budget exhausted")
                            tbl = _compose(f, gs, total)
                            if tbl in have:
                                continue
                            have.add(tbl)
                            nxt.append(tbl)
                            if len(have) > GEN_TABLE_CAP:
                                raise TooLarge("generated table cap exceeded")
                            if tbl in remaining:
                                found.add((m, tbl))
                                remaining.discard(tbl)
                                if not remaining:
                                    break
                        if not remaining:
                            break
                    if not remaining:
                        break
                if not remaining:
                    break
            tables.extend(nxt)
            frontier = nxt
    return found


@dataclass(frozen=True)
class WitnessSet:
    name: str
    ops: tuple[Op, ...]


@dataclass(frozen=True)
class WitnessReport:
    generates: bool
    missing: tuple[str, ...]       # basic ops not generated by W
    non_clone: tuple[str, ...]     # W members not in the clone
    violations: tuple[dict, ...]   # first failing tuple per (a, t) pair

    @property
    def ok(self) -> bool:
        return self.generates and not self.non_clone and not self.violations


def witness_set(alg: FiniteAlgebra, variant: str = "standard") -> WitnessSet:
    """The canonical generating set proposed for each instance kind."""
    if alg.kind == "linear":
        by_name = {op.name: op for op in alg.ops}
        unary = [op for op in alg.ops if op.arity == 1]
        if variant == "plus":
            return WitnessSet("plus+unary", tuple([by_name["f(1,1)+0"]] + unary))
        q = next(p for p in FIELD_ORDERS if alg.size in (p, p * p))
        g = by_name[f"f(1,{q-1},1)+0"]  # x-y+z
        return WitnessSet("maltsev+unary", tuple([g] + unary))
    if variant != "standard":
        raise InvalidParams(f"no witness variant {variant!r} for kind {alg.kind}")
    if alg.kind == "exceptional":
        return WitnessSet("i,q", alg.ops)
    if alg.kind in ("rank0", "group_action"):
        return WitnessSet("unary-ops", tuple(op for op in alg.ops if op.arity == 1))
    # affine, q_homog_field, semilattice: every basic op (arity <= 3)
    return WitnessSet("all-basic-ops", alg.ops)


def check_witness(alg: FiniteAlgebra, witness: WitnessSet) -> WitnessReport:
    """Generation check plus the distributivity scan of T over W (arity >= 2)."""
    n = alg.size
    proj = {(m, t) for m in (1, 2, 3) for t in _projections(n, m)}
    wtabs = {(op.arity, op.table) for op in witness.ops}
    btabs = {(op.arity, op.table) for op in alg.ops}

    goal = btabs - wtabs - proj
    got = generated_covers(alg, witness.ops, goal) if goal else set()
    missing = tuple(
        sorted(op.name for op in alg.ops if (op.arity, op.table) in goal - got)
    )

    alien = wtabs - btabs - proj
    ok_alien = generated_covers(alg, alg.ops, alien) if alien else set()
    non_clone = tuple(
        sorted(op.name for op in witness.ops
               if (op.arity, op.table) in alien - ok_alien)
    )

    t_ops = unary_clone(alg).t_ops
    violations = []
    for a in t_ops:
        for op in witness.ops:
            if op.arity < 2:
                continue
            for args in itertools.product(range(n), repeat=op.arity):
                lhs = a[op(*args)]
                rhs = op(*(a[x] for x in args))
                if lhs != rhs:
                    violations.append({
                        "a": list(a),
                        "op": op.name,
                        "args": list(args),
                        "lhs": lhs,
                        "rhs": rhs,
                    })
                    break
    return WitnessReport(not missing, missing, non_clone, tuple(violations))


DEFAULT_INSTANCES: tuple[tuple[str, dict], ...] = (
    ("rank0", {"size": 3}),
    ("linear", {"q": 3, "dim": 1, "a0": [[1]]}),
    ("linear", {"q": 2, "dim": 2, "a0": []}),
    ("affine", {"q": 2, "dim": 2, "a0": [[1, 0]]}),
    ("affine", {"q": 3, "dim": 1, "a0": [[1]]}),
    ("exceptional", {}),
    ("group_action", {"size": 5, "generators": [[0, 2, 1, 4, 3]], "constants": [0]}),
    ("q_homog_field", {"q": 3}),
    ("q_homog_field", {"q": 5}),
)


def default_catalog() -> list[FiniteAlgebra]:
    return [make_instance(kind, **dict(p)) for kind, p in DEFAULT_INSTANCES]
