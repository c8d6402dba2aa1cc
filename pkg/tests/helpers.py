"""Shared test utilities: instance generators and independent oracles.

Everything here stays deliberately separate from the library's own code
paths: the truth-table machinery below re-derives semantics from scratch so
it can serve as the oracle side of every dual-route check.
"""

from __future__ import annotations

import itertools
import random

from lazysat import Formula, normalize_clause
from lazysat.rbc import RbcStore

# ---------------------------------------------------------------------------
# instance generators


def random_3cnf(rng: random.Random, n: int, m: int) -> Formula:
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), min(3, n))
        clauses.append(normalize_clause(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(tuple(clauses), n)


def random_formula(rng: random.Random, n: int, m: int, max_width: int = 3) -> Formula:
    clauses = []
    for _ in range(m):
        w = rng.randint(1, min(max_width, n))
        vs = rng.sample(range(1, n + 1), w)
        clauses.append(normalize_clause(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(tuple(clauses), n)


def pigeonhole(pigeons: int, holes: int) -> Formula:
    """p pigeons into h holes: satisfiable iff p <= h.  Var (i,j) is
    (i-1)*holes + j, read as 'pigeon i sits in hole j'."""
    clauses = []
    for p in range(1, pigeons + 1):
        clauses.append(tuple((p - 1) * holes + h for h in range(1, holes + 1)))
    for h in range(1, holes + 1):
        for p1 in range(1, pigeons + 1):
            for p2 in range(p1 + 1, pigeons + 1):
                clauses.append(
                    normalize_clause(
                        (-((p1 - 1) * holes + h), -((p2 - 1) * holes + h))
                    )
                )
    return Formula(tuple(clauses), pigeons * holes)


# ---------------------------------------------------------------------------
# naive enumeration oracle (small n only)


def naive_brute_force(f: Formula) -> dict[int, bool] | None:
    """First satisfying assignment in lexicographic order, or None."""
    for bits in itertools.product([False, True], repeat=f.num_vars):
        a = dict(zip(range(1, f.num_vars + 1), bits))
        ok = True
        for clause in f.clauses:
            if not any(a[abs(l)] == (l > 0) for l in clause):
                ok = False
                break
        if ok:
            return a
    return None


# ---------------------------------------------------------------------------
# bit-parallel truth tables over an explicit variable ordering
#
# Assignments to (v_1, ..., v_n) map to bit indices with v_1 as the most
# significant bit, so bit index order is lexicographic with false < true.


def make_tables(var_order: list[int]) -> tuple[int, dict[int, int]]:
    n = len(var_order)
    size = 1 << n
    full = (1 << size) - 1
    tables = {}
    for pos, v in enumerate(var_order, start=1):
        block = 1 << (n - pos)
        pattern = ((1 << block) - 1) << block
        span = block << 1
        while span < size:
            pattern |= pattern << span
            span <<= 1
        tables[v] = pattern
    return full, tables


def clause_table(clause, full: int, tables: dict[int, int]) -> int:
    t = 0
    for l in clause:
        vt = tables[abs(l)]
        t |= vt if l > 0 else full ^ vt
    return t


def cnf_table(clauses, full: int, tables: dict[int, int]) -> int:
    acc = full
    for c in clauses:
        acc &= clause_table(c, full, tables)
        if not acc:
            break
    return acc


def rbc_table(store: RbcStore, ref: int, full: int, tables: dict[int, int]) -> int:
    """Truth table of a circuit, walking the store's DAG directly."""
    memo: dict[int, int] = {}

    def table_of(node: int) -> int:
        got = memo.get(node)
        if got is None:
            desc = store.node(node)
            if desc[0] == "T":
                got = full
            elif desc[0] == "V":
                got = tables[desc[1]]
            else:
                got = ref_table(desc[1]) & ref_table(desc[2])
            memo[node] = got
        return got

    def ref_table(r: int) -> int:
        t = table_of(r >> 1)
        return full ^ t if r & 1 else t

    return ref_table(ref)


def check_interpolant(rec) -> list[str]:
    """Verify one InterpolantRecord against the interpolation contract:
    the A side implies it, it contradicts the B side, and it only mentions
    variables common to both sides.  Returns human-readable violations."""
    va = {abs(l) for c in rec.a_leaves for l in c}
    vb = {abs(l) for c in rec.b_leaves for l in c}
    problems = []
    ivars = rec.rbc.vars(rec.ref)
    if not ivars <= (va & vb):
        problems.append(f"vars {set(ivars) - (va & vb)} outside shared set")
    all_vars = sorted(va | vb)
    full, tables = make_tables(all_vars)
    itab = rbc_table(rec.rbc, rec.ref, full, tables)
    atab = cnf_table(rec.a_leaves, full, tables)
    if atab & (full ^ itab):
        problems.append("A does not imply interpolant")
    btab = cnf_table(rec.b_leaves, full, tables)
    if itab & btab:
        problems.append("interpolant consistent with B")
    return problems


# ---------------------------------------------------------------------------
# miniature DPLL, used to project a growing clause set onto selected vars


def _assign(clauses: list[frozenset[int]], lit: int) -> list[frozenset[int]] | None:
    """Simplify under lit; None signals an emptied clause (conflict)."""
    out = []
    for c in clauses:
        if lit in c:
            continue
        c2 = c - {-lit}
        if not c2:
            return None
        out.append(c2)
    return out


def _dpll(clauses: list[frozenset[int]]) -> bool:
    if any(not c for c in clauses):
        return False
    while True:
        unit = next((next(iter(c)) for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        clauses = _assign(clauses, unit)
        if clauses is None:
            return False
    if not clauses:
        return True
    lit = min(clauses[0], key=abs)
    for choice in (lit, -lit):
        reduced = _assign(clauses, choice)
        if reduced is not None and _dpll(reduced):
            return True
    return False


def count_projected_models(clauses, on_vars: list[int]) -> int:
    """Count assignments to on_vars extendable to a model of the clauses."""
    base = [frozenset(c) for c in clauses]
    count = 0
    for bits in itertools.product([False, True], repeat=len(on_vars)):
        units = [v if b else -v for v, b in zip(on_vars, bits)]
        if _dpll(base + [frozenset((u,)) for u in units]):
            count += 1
    return count


def holds_under(clauses, assignment: dict[int, bool]) -> bool:
    base = [frozenset(c) for c in clauses]
    units = [frozenset((v if b else -v,)) for v, b in assignment.items()]
    return _dpll(base + units)


# ---------------------------------------------------------------------------
# random circuits with a shadow AST (the independent evaluator for rbc tests)


def random_circuit(store: RbcStore, rng: random.Random, n_vars: int, depth: int):
    """Build a random circuit in the store plus a parallel shadow AST."""
    from lazysat.rbc import FALSE, TRUE, mk_not

    if depth == 0 or rng.random() < 0.3:
        v = rng.randint(1, n_vars)
        return store.mk_var(v), ("var", v)
    op = rng.choice(["and", "or", "not", "const"])
    if op == "const":
        return (TRUE, ("true",)) if rng.random() < 0.5 else (FALSE, ("false",))
    if op == "not":
        r, sh = random_circuit(store, rng, n_vars, depth - 1)
        return mk_not(r), ("not", sh)
    a, sa = random_circuit(store, rng, n_vars, depth - 1)
    b, sb = random_circuit(store, rng, n_vars, depth - 1)
    if op == "and":
        return store.mk_and(a, b), ("and", sa, sb)
    return store.mk_or(a, b), ("or", sa, sb)


def shadow_eval(sh, a) -> bool:
    kind = sh[0]
    if kind == "var":
        return a[sh[1]]
    if kind == "true":
        return True
    if kind == "false":
        return False
    if kind == "not":
        return not shadow_eval(sh[1], a)
    if kind == "and":
        return shadow_eval(sh[1], a) and shadow_eval(sh[2], a)
    return shadow_eval(sh[1], a) or shadow_eval(sh[2], a)
