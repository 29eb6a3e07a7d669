"""Group algebras of finite groups: ideal towers and fixed-vector towers.

Elements of the group are the integers 0..n-1 with 0 the identity; the
group algebra has the group elements as its basis.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError, ResourceError
from .linalg import QQ, PrimeField, Subspace, intersect, matmul, nullspace, span_reduce, span_sparse

MAX_ORDER_Q = 200
MAX_ORDER_FP = 60
MAX_PRIME = 97


def group_violations(cayley, generators, sigma) -> list[str]:
    """Every reason why (cayley, generators, sigma) is not a group with a normal subgroup."""
    n = len(cayley)
    if n == 0:
        return ["empty Cayley table"]
    if any(len(row) != n for row in cayley):
        return ["Cayley table is not square"]
    if any(not isinstance(x, int) or not 0 <= x < n for row in cayley for x in row):
        return [f"Cayley table entries must be integers in [0, {n})"]
    problems = []
    for i, row in enumerate(cayley):
        if sorted(row) != list(range(n)):
            problems.append(f"row {i} of the Cayley table is not a permutation")
            break
    if any(cayley[0][a] != a or cayley[a][0] != a for a in range(n)):
        problems.append("element 0 is not a two-sided identity")
    inv = []
    for a in range(n):
        b = [x for x in range(n) if cayley[a][x] == 0]
        if len(b) != 1 or cayley[b[0]][a] != 0:
            problems.append(f"element {a} has no two-sided inverse")
            b = [0]
        inv.append(b[0])
    rng = random.Random(0)
    for _ in range(min(1000, n**3)):
        a, b, c = (rng.randrange(n) for _ in range(3))
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            problems.append(f"associativity fails on ({a}, {b}, {c})")
            break
    bad_gens = [x for x in generators if not 0 <= x < n]
    if bad_gens:
        problems.append(f"generator indices out of range: {bad_gens}")
    bad_sigma = [x for x in sigma if not 0 <= x < n]
    if bad_sigma:
        problems.append(f"sigma indices out of range: {bad_sigma}")
    if 0 not in sigma:
        problems.append("sigma must contain the identity 0")
    if problems:
        return problems
    for a in sorted(sigma):
        for b in sorted(sigma):
            if cayley[a][b] not in sigma:
                problems.append(f"sigma not closed under multiplication: {a}*{b} = {cayley[a][b]}")
                break
        if inv[a] not in sigma:
            problems.append(f"sigma not closed under inversion: {a}^-1 = {inv[a]}")
        for g in generators:
            c = cayley[cayley[g][a]][inv[g]]
            if c not in sigma:
                problems.append(f"sigma not normal: {g}*{a}*{g}^-1 = {c} lies outside sigma")
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = cayley[a][g]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    if len(seen) != n:
        problems.append(f"generators span only {len(seen)} of {n} elements")
    return problems


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    cayley: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    sigma: frozenset[int] = frozenset({0})
    inverses: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        problems = group_violations(self.cayley, self.generators, self.sigma)
        if problems:
            raise InputError("; ".join(problems))
        inv = [next(x for x in range(self.order) if self.cayley[a][x] == 0) for a in range(self.order)]
        object.__setattr__(self, "inverses", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.cayley)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def closure(self, gens) -> set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.cayley[a][g]
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return seen

    def sigma_generators(self) -> list[int]:
        """A small generating set of sigma (greedy)."""
        out: list[int] = []
        span = {0}
        for a in sorted(self.sigma):
            if a not in span:
                out.append(a)
                span = self.closure(out)
        return out


def from_permutations(name: str, gens: Sequence[Sequence[int]], sigma_gens: Sequence[Sequence[int]] = ()) -> FiniteGroup:
    """Permutation group generated by ``gens``; composition is (a*b)(x) = a(b(x))."""
    ident = tuple(range(len(gens[0])))
    gens = [tuple(g) for g in gens]
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            c = tuple(elems[i][x] for x in g)
            if c not in index:
                index[c] = len(elems)
                elems.append(c)
        i += 1
    table = tuple(tuple(index[tuple(a[x] for x in b)] for b in elems) for a in elems)
    sigma = {0}
    if sigma_gens:
        sg = [index[tuple(s)] for s in sigma_gens]
        frontier = list(sg)
        sigma.update(sg)
        # normal closure
        while frontier:
            a = frontier.pop()
            candidates = [table[a][b] for b in list(sigma)]
            candidates += [_conj(table, a, index[g]) for g in gens]
            for c in candidates:
                if c not in sigma:
                    sigma.add(c)
                    frontier.append(c)
    return FiniteGroup(name, table, tuple(index[g] for g in gens), frozenset(sigma))


def _conj(table, a, g):
    """g a g^-1 (identity is element 0)."""
    ginv = next(x for x in range(len(table)) if table[g][x] == 0)
    return table[table[g][a]][ginv]


def cyclic(n: int) -> FiniteGroup:
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(f"Z/{n}", table, (1 % n,) if n > 1 else (0,))


def symmetric3() -> FiniteGroup:
    return from_permutations("S3", [(1, 0, 2), (1, 2, 0)])


def alternating5() -> FiniteGroup:
    return from_permutations("A5", [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)])


def _field_guard(gp: FiniteGroup, fld):
    if fld.characteristic == 0:
        if gp.order > MAX_ORDER_Q:
            raise ResourceError(f"|G| = {gp.order} exceeds {MAX_ORDER_Q} over Q")
    else:
        if fld.characteristic > MAX_PRIME:
            raise ResourceError(f"p = {fld.characteristic} exceeds {MAX_PRIME}")
        if gp.order > MAX_ORDER_FP:
            raise ResourceError(f"|G| = {gp.order} exceeds {MAX_ORDER_FP} over F_p")


def _diff(gp: FiniteGroup, a: int, fld) -> dict[int, object]:
    """Sparse vector of a - 1 in the group algebra."""
    if a == 0:
        return {}
    return {a: fld.coerce(1), 0: fld.coerce(-1)}


def augmentation_ideal(gp: FiniteGroup, fld=QQ) -> Subspace:
    return span_sparse((_diff(gp, a, fld) for a in range(1, gp.order)), gp.order, fld)


def _left_mul(gp: FiniteGroup, g: int, vec: Sequence) -> list:
    out = [0] * gp.order
    for h, c in enumerate(vec):
        if c:
            out[gp.mul(g, h)] = c
    return out


def _right_mul(gp: FiniteGroup, vec: Sequence, g: int) -> list:
    out = [0] * gp.order
    for h, c in enumerate(vec):
        if c:
            out[gp.mul(h, g)] = c
    return out


def two_sided_closure(gp: FiniteGroup, seeds: Sequence[Sequence], fld) -> Subspace:
    """Smallest two-sided ideal containing ``seeds``."""
    space = span_reduce(seeds, gp.order, fld)
    while True:
        new = []
        for v in space.basis:
            for g in gp.generators:
                new.append(_left_mul(gp, g, v))
                new.append(_right_mul(gp, v, g))
        bigger = space.extend(new)
        if bigger.dim == space.dim:
            return space
        space = bigger


def algebra_product(gp: FiniteGroup, u: Subspace, w: Subspace) -> Subspace:
    """Span of x*y, x in u, y in w."""
    fld = u.field
    modp = fld.characteristic
    vecs = []
    for x in u.basis:
        for y in w.basis:
            out = [0] * gp.order
            for a, ca in enumerate(x):
                if ca:
                    row = gp.cayley[a]
                    for b, cb in enumerate(y):
                        if cb:
                            out[row[b]] += ca * cb
            vecs.append([c % modp for c in out] if modp else out)
    return span_reduce(vecs, gp.order, fld)


def ideal_tower(gp: FiniteGroup, fld=QQ, q_max: int = 3) -> list[Subspace]:
    """[J_1, ..., J_q_max] with J_q = I^q + A*I_sigma."""
    _field_guard(gp, fld)
    if q_max < 1:
        raise InputError("q_max must be at least 1")
    aug = augmentation_ideal(gp, fld)
    seeds = [_dense(_diff(gp, a, fld), gp.order) for a in sorted(gp.sigma) if a]
    par = two_sided_closure(gp, seeds, fld)
    out = []
    power = aug
    for q in range(1, q_max + 1):
        if q > 1:
            power = algebra_product(gp, power, aug)
        out.append(power + par)
    return out


def power_tower(gp: FiniteGroup, fld=QQ, q_max: int = 2) -> list[Subspace]:
    """[I, I^2, ..., I^q_max]."""
    _field_guard(gp, fld)
    aug = augmentation_ideal(gp, fld)
    out = [aug]
    for _ in range(q_max - 1):
        out.append(algebra_product(gp, out[-1], aug))
    return out


def _dense(v: dict, n: int) -> list:
    out = [0] * n
    for k, x in v.items():
        out[k] = x
    return out


class ModuleRep:
    """Finite-dimensional representation given by one matrix per group generator."""

    def __init__(self, gp: FiniteGroup, fld, matrices: dict[int, Sequence[Sequence]]):
        self.gp = gp
        self.field = fld
        self.generator_matrices = {
            g: [[fld.coerce(x) for x in row] for row in m] for g, m in matrices.items()
        }
        if set(self.generator_matrices) != set(gp.generators):
            raise InputError("need exactly one matrix per group generator")
        dims = {len(m) for m in self.generator_matrices.values()}
        if len(dims) != 1:
            raise InputError("generator matrices have different sizes")
        self.dim = dims.pop()
        for g, m in self.generator_matrices.items():
            if any(len(row) != self.dim for row in m):
                raise InputError(f"matrix for generator {g} is not square")
        self.matrices = self._all_elements()

    def _all_elements(self) -> dict[int, list[list]]:
        """rho(h) for every h, checking rho(g) rho(h) = rho(gh) along the way."""
        n, fld = self.dim, self.field
        mats = {0: [[fld.coerce(int(i == j)) for j in range(n)] for i in range(n)]}
        frontier = [0]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.gp.generators:
                    gh = self.gp.mul(g, h)
                    m = matmul(self.generator_matrices[g], mats[h], fld)
                    if gh not in mats:
                        mats[gh] = m
                        nxt.append(gh)
            frontier = nxt
        # a second sweep over all (g, h) catches any relation the matrices violate
        for h, mh in mats.items():
            for g in self.gp.generators:
                gh = self.gp.mul(g, h)
                if matmul(self.generator_matrices[g], mh, fld) != mats[gh]:
                    raise InputError(f"matrices violate the group law: rho({g}) rho({h}) != rho({gh})")
        return mats

    @classmethod
    def regular(cls, gp: FiniteGroup, fld=QQ) -> "ModuleRep":
        n = gp.order
        mats = {}
        for g in gp.generators:
            m = [[0] * n for _ in range(n)]
            for h in range(n):
                m[gp.mul(g, h)][h] = 1
            mats[g] = m
        return cls(gp, fld, mats)

    @classmethod
    def trivial(cls, gp: FiniteGroup, fld=QQ, dim: int = 1) -> "ModuleRep":
        ident = [[int(i == j) for j in range(dim)] for i in range(dim)]
        return cls(gp, fld, {g: ident for g in gp.generators})

    def minus_one(self, h: int) -> list[list]:
        """Matrix of rho(h) - 1."""
        m = self.matrices[h]
        modp = self.field.characteristic
        out = []
        for i, row in enumerate(m):
            r = list(row)
            r[i] = r[i] - 1
            out.append([x % modp for x in r] if modp else r)
        return out

    def act(self, element: Sequence) -> list[list]:
        """Matrix of a group-algebra element sum c_h h."""
        n, modp = self.dim, self.field.characteristic
        out = [[0] * n for _ in range(n)]
        for h, c in enumerate(element):
            if c:
                for i, row in enumerate(self.matrices[h]):
                    for j, x in enumerate(row):
                        if x:
                            out[i][j] += c * x
        return [[x % modp for x in r] for r in out] if modp else out


def _preimage(m: list[list], target: Subspace) -> Subspace:
    """{v : m v in target}."""
    fld = target.field
    ann = nullspace(target.basis, target.ambient_dim, fld).basis
    n = len(m[0]) if m else target.ambient_dim
    # rows a.m for a in the annihilator of target
    rows = matmul([list(a) for a in ann], m, fld) if ann else []
    return nullspace(rows, n, fld)


def hq0(rep: ModuleRep, q: int) -> Subspace:
    """V^{I^q} intersected with V^{I_sigma}, by the generator tower."""
    if q < 1:
        raise InputError("q must be at least 1")
    gp, fld, n = rep.gp, rep.field, rep.dim
    sig_rows = [row for s in gp.sigma_generators() for row in rep.minus_one(s)]
    sigma_fixed = nullspace(sig_rows, n, fld) if sig_rows else span_reduce(
        [[int(i == j) for j in range(n)] for i in range(n)], n, fld
    )
    w = span_reduce([], n, fld)
    for _ in range(q):
        nxt = sigma_fixed
        for g in gp.generators:
            nxt = intersect(nxt, _preimage(rep.minus_one(g), w))
        w = nxt
    return w


def hq0_direct(rep: ModuleRep, q: int) -> Subspace:
    """Same space, as the common kernel of the action of a basis of J_q."""
    gp, fld, n = rep.gp, rep.field, rep.dim
    jq = ideal_tower(gp, fld, q)[-1]
    rows = [row for b in jq.basis for row in rep.act(b)]
    return nullspace(rows, n, fld)


@dataclass(frozen=True)
class StabilizationReport:
    group: str
    field: str
    dims: tuple[int, ...]
    char_divides_order: bool
    verdict: str
    growth_at: int | None


def stabilization_report(rep: ModuleRep, q_max: int) -> StabilizationReport:
    dims = tuple(hq0(rep, q).dim for q in range(1, q_max + 1))
    p = rep.field.characteristic
    divides = p != 0 and rep.gp.order % p == 0
    growth = next((q + 2 for q in range(len(dims) - 1) if dims[q + 1] > dims[q]), None)
    return StabilizationReport(
        rep.gp.name, rep.field.name, dims, divides, "STABLE" if growth is None else "GROWTH", growth
    )


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PerfectCheck:
    group: str
    perfect: bool
    dims_q: tuple[int, int]
    dims_mod_p: dict[int, tuple[int, int]]


def perfect_check(gp: FiniteGroup) -> PerfectCheck:
    """I^2 = I tested over F_p for every prime p dividing |G|.

    Over Q this identity holds for every finite group (the algebra is
    semisimple), so the rational dimensions are reported but do not decide.
    """
    if gp.order > MAX_ORDER_Q:
        raise ResourceError(f"|G| = {gp.order} exceeds {MAX_ORDER_Q}")
    i1, i2 = power_tower(gp, QQ, 2)
    mod = {}
    for p in _prime_divisors(gp.order):
        if p > MAX_PRIME:
            raise ResourceError(f"p = {p} exceeds {MAX_PRIME}")
        fld = PrimeField(p)
        aug = augmentation_ideal(gp, fld)
        mod[p] = (aug.dim, algebra_product(gp, aug, aug).dim)
    perfect = all(a == b for a, b in mod.values())
    return PerfectCheck(gp.name, perfect, (i1.dim, i2.dim), mod)


def commutator_in_square(gp: FiniteGroup, g: int, h: int, fld=QQ, square: Subspace | None = None) -> bool:
    """ghg^-1h^-1 - 1 lies in I^2."""
    if square is None:
        square = power_tower(gp, fld, 2)[1]
    c = gp.mul(gp.mul(g, h), gp.mul(gp.inverses[g], gp.inverses[h]))
    return square.contains(_dense(_diff(gp, c, fld), gp.order))


def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", ((0,),), (0,))


def all_pairs(gp: FiniteGroup):
    return itertools.product(range(gp.order), repeat=2)
