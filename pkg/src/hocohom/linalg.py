"""Exact linear algebra over Q and prime fields.

Vectors are handled sparsely (``{column: value}``) during reduction; the
public :class:`Subspace` keeps its basis in reduced row echelon form so two
subspaces with the same span compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContainmentError, InputError


class Rationals:
    """The field Q, backed by :class:`fractions.Fraction`."""

    name = "Q"
    characteristic = 0

    def coerce(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x: Fraction) -> Fraction:
        return 1 / x

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """Integers modulo a prime ``p``; elements are stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F_{p}"

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        return pow(x, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


def _sparse(vec: Sequence, field) -> dict[int, object]:
    out = {}
    for i, x in enumerate(vec):
        if x:
            x = field.coerce(x)
            if x:
                out[i] = x
    return out


class _Echelon:
    """Incremental RREF builder on sparse rows.

    The pivot of a new row is its leading column; together with back
    elimination this keeps the rows in canonical reduced echelon form.
    """

    def __init__(self, ambient_dim: int, field):
        self.n = ambient_dim
        self.field = field
        self.rows: dict[int, dict[int, object]] = {}
        # column -> set of pivot columns whose row has a nonzero there
        self._occupancy: dict[int, set[int]] = {}

    def reduce(self, v: dict[int, object]) -> dict[int, object]:
        v = dict(v)
        modp = self.field.characteristic
        for c in sorted(k for k in v if k in self.rows):
            a = v.get(c)
            if not a:
                continue
            for j, b in self.rows[c].items():
                x = v.get(j, 0) - a * b
                if modp:
                    x %= modp
                if x:
                    v[j] = x
                else:
                    v.pop(j, None)
        return v

    def add(self, v: dict[int, object]) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        field = self.field
        modp = field.characteristic
        piv = min(v)
        s = field.inv(v[piv])
        if modp:
            v = {j: (x * s) % modp for j, x in v.items()}
        else:
            v = {j: x * s for j, x in v.items()}
        for pc in list(self._occupancy.get(piv, ())):
            row = self.rows[pc]
            a = row[piv]
            for j, b in v.items():
                x = row.get(j, 0) - a * b
                if modp:
                    x %= modp
                if x:
                    if j not in row:
                        self._occupancy.setdefault(j, set()).add(pc)
                    row[j] = x
                else:
                    row.pop(j, None)
                    self._occupancy[j].discard(pc)
        self.rows[piv] = v
        for j in v:
            self._occupancy.setdefault(j, set()).add(piv)
        return True

    def freeze(self, labels=None) -> "Subspace":
        basis = []
        for c in sorted(self.rows):
            row = self.rows[c]
            basis.append(tuple(row.get(j, 0) for j in range(self.n)))
        return Subspace(self.n, tuple(basis), labels, self.field, tuple(sorted(self.rows)))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row-reduced exact basis of a subspace of ``field^ambient_dim``."""

    ambient_dim: int
    basis: tuple[tuple, ...]
    ambient_labels: tuple | None = None
    field: object = QQ
    pivots: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _builder(self) -> _Echelon:
        e = _Echelon(self.ambient_dim, self.field)
        for c, row in zip(self.pivots, self.basis):
            e.rows[c] = {j: x for j, x in enumerate(row) if x}
            for j in e.rows[c]:
                e._occupancy.setdefault(j, set()).add(c)
        return e

    def contains(self, vec: Sequence) -> bool:
        if len(vec) != self.ambient_dim:
            raise InputError(f"vector of length {len(vec)} in ambient dimension {self.ambient_dim}")
        return not self._builder().reduce(_sparse(vec, self.field))

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        """Span of this subspace together with ``vectors``."""
        e = self._builder()
        for v in vectors:
            if len(v) != self.ambient_dim:
                raise InputError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
            e.add(_sparse(v, self.field))
        return e.freeze(self.ambient_labels)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        return self.extend(other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"


def _check_compatible(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim:
        raise InputError(f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}")
    if u.field != w.field:
        raise InputError(f"fields differ: {u.field!r} vs {w.field!r}")


def zero_subspace(ambient_dim: int, field=QQ, labels=None) -> Subspace:
    return Subspace(ambient_dim, (), labels, field, ())


def span_reduce(vectors: Iterable[Sequence], ambient_dim: int, field=QQ, labels=None) -> Subspace:
    """Reduced row echelon basis of the span of ``vectors``."""
    e = _Echelon(ambient_dim, field)
    for k, v in enumerate(vectors):
        if len(v) != ambient_dim:
            raise InputError(f"vector {k} has length {len(v)}, expected {ambient_dim}")
        e.add(_sparse(v, field))
    return e.freeze(labels)


def span_sparse(vectors: Iterable[dict[int, object]], ambient_dim: int, field=QQ, labels=None) -> Subspace:
    """Like :func:`span_reduce` for vectors given as ``{column: value}``."""
    e = _Echelon(ambient_dim, field)
    for v in vectors:
        if v and (min(v) < 0 or max(v) >= ambient_dim):
            raise InputError(f"sparse vector has a column outside [0, {ambient_dim})")
        e.add({k: field.coerce(x) for k, x in v.items() if x})
    return e.freeze(labels)


def quotient_dim(u: Subspace, w: Subspace) -> int:
    """dim U/W, after checking W is contained in U."""
    _check_compatible(u, w)
    e = u._builder()
    for v in w.basis:
        if e.reduce(_sparse(v, u.field)):
            raise ContainmentError(f"W is not contained in U: offending vector {list(map(str, v))}")
    return u.dim - w.dim


def rank(rows: Sequence[Sequence], field=QQ) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return span_reduce(rows, len(rows[0]), field).dim


def nullspace(rows: Sequence[Sequence], ncols: int, field=QQ) -> Subspace:
    """Right kernel {v : M v = 0} of the matrix with the given rows."""
    red = span_reduce(rows, ncols, field)
    pivots = set(red.pivots)
    free = [j for j in range(ncols) if j not in pivots]
    modp = field.characteristic
    out = []
    for f in free:
        v = [field.coerce(0)] * ncols
        v[f] = field.coerce(1)
        for c, row in zip(red.pivots, red.basis):
            x = -row[f]
            v[c] = x % modp if modp else x
        out.append(v)
    return span_reduce(out, ncols, field)


def annihilator(space: Subspace) -> list[tuple]:
    """Rows spanning {u : u . w = 0 for all w in space}."""
    return list(nullspace(space.basis, space.ambient_dim, space.field).basis)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    rows = annihilator(u) + annihilator(w)
    return nullspace(rows, u.ambient_dim, u.field)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field=QQ) -> list[list]:
    modp = field.characteristic
    ncols = len(b[0]) if b else 0
    b_rows = [[(j, y) for j, y in enumerate(row) if y] for row in b]
    out = []
    for row in a:
        r = [0] * ncols
        for k, x in enumerate(row):
            if x:
                for j, y in b_rows[k]:
                    r[j] += x * y
        out.append([x % modp for x in r] if modp else r)
    return out
