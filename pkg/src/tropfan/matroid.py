"""Matroids given by an explicit basis family.

Subsets of the ground set ``{0, ..., n}`` are ``frozenset``s at the API
boundary and int bitmasks internally. Every enumeration is emitted in
lexicographic order of sorted tuples so outputs are byte-stable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapExceededError, MatroidError
from .linalg import is_prime, parse_rational, rank as matrix_rank

__all__ = [
    "DEFAULT_CAP",
    "ExactMatrix",
    "Matroid",
    "from_matrix",
    "from_bases",
    "from_circuits",
    "uniform_matroid",
    "pg_matroid",
    "braid_matroid",
    "lex_key",
]

DEFAULT_CAP = 20

Subset = frozenset


def lex_key(s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


def to_mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << i
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def _check_cap(size: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if size > cap:
        raise CapExceededError(f"ground set of size {size} exceeds cap {cap}")


@dataclass(frozen=True)
class ExactMatrix:
    """Matrix over Q (``p is None``) or GF(p), entries in canonical form."""

    rows: tuple[tuple, ...]
    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise MatroidError(f"modulus {self.p} is not prime")
        if not self.rows or not self.rows[0]:
            raise MatroidError("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise MatroidError("ragged matrix")
        if self.p is None:
            rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        else:
            rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], field_name: str = "Q") -> "ExactMatrix":
        p = parse_field(field_name)
        if p is None:
            try:
                return cls(tuple(tuple(parse_rational(x) for x in r) for r in rows))
            except MatroidError:
                raise
            except ValueError as exc:
                raise MatroidError(str(exc)) from None
        parsed = []
        for r in rows:
            row = []
            for x in r:
                if not isinstance(x, str) or not x.isdigit() or str(int(x)) != x or int(x) >= p:
                    raise MatroidError(f"non-canonical residue {x!r} for GF({p})")
                row.append(int(x))
            parsed.append(tuple(row))
        return cls(tuple(parsed), p)

    @property
    def field_name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def columns(self, idx: Iterable[int]) -> list[list]:
        idx = list(idx)
        return [[r[j] for j in idx] for r in self.rows]


def parse_field(name: str) -> int | None:
    if name == "Q":
        return None
    if name.startswith("GF(") and name.endswith(")"):
        body = name[3:-1]
        if body.isdigit() and str(int(body)) == body:
            p = int(body)
            if not is_prime(p):
                raise MatroidError(f"modulus {p} is not prime")
            return p
    raise MatroidError(f"unknown field {name!r}; expected 'Q' or 'GF(p)'")


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``{0, ..., size-1}`` given by its bases.

    ``labels[i]`` is the element of the originating matroid that ``i`` stands
    for (identity unless this is a minor). ``essential`` is ``None`` for
    matroids not built from a matrix, else whether the matrix had full row rank.
    Equality ignores both.
    """

    size: int
    bases: tuple[frozenset[int], ...]
    labels: tuple[int, ...] = field(default=(), compare=False)
    essential: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise MatroidError("negative ground set size")
        bases = {frozenset(b) for b in self.bases}
        if not bases:
            raise MatroidError("basis family is empty")
        sizes = {len(b) for b in bases}
        if len(sizes) != 1:
            raise MatroidError(f"bases have unequal sizes {sorted(sizes)}")
        for b in bases:
            if any(not 0 <= e < self.size for e in b):
                raise MatroidError(f"basis {lex_key(b)} leaves ground set of size {self.size}")
        object.__setattr__(self, "bases", tuple(sorted(bases, key=lex_key)))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.size)))
        elif len(self.labels) != self.size:
            raise MatroidError("label map has wrong length")

    def __repr__(self) -> str:
        return f"Matroid(size={self.size}, rank={self.rank()}, bases={len(self.bases)})"

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(range(self.size))

    @cached_property
    def _masks(self) -> tuple[int, ...]:
        return tuple(to_mask(b) for b in self.bases)

    @cached_property
    def _mask_set(self) -> frozenset[int]:
        return frozenset(self._masks)

    def _check_subset(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        bad = [e for e in s if not (isinstance(e, int) and 0 <= e < self.size)]
        if bad:
            raise MatroidError(f"elements {sorted(bad)} out of range 0..{self.size - 1}")
        return s

    # rank / closure

    def _rank_mask(self, m: int) -> int:
        return max((b & m).bit_count() for b in self._masks)

    def rank(self, s: Iterable[int] | None = None) -> int:
        """Rank of ``s``; the rank of the matroid when ``s`` is omitted."""
        if s is None:
            return len(self.bases[0])
        return self._rank_mask(to_mask(self._check_subset(s)))

    @cached_property
    def _closure_memo(self) -> dict[int, int]:
        return {}

    def _closure_mask(self, m: int) -> int:
        hit = self._closure_memo.get(m)
        if hit is not None:
            return hit
        r = self._rank_mask(m)
        out = m
        for e in range(self.size):
            bit = 1 << e
            if not m & bit and self._rank_mask(m | bit) == r:
                out |= bit
        self._closure_memo[m] = out
        return out

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        return from_mask(self._closure_mask(to_mask(self._check_subset(s))))

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check_subset(s)
        return self.rank(s) == len(s)

    def is_flat(self, s: Iterable[int]) -> bool:
        m = to_mask(self._check_subset(s))
        return self._closure_mask(m) == m

    # circuits and connectivity

    @cached_property
    def _circuit_masks(self) -> tuple[int, ...]:
        # every circuit is the fundamental circuit of some basis
        found = set()
        for b in self._masks:
            for e in range(self.size):
                bit = 1 << e
                if b & bit:
                    continue
                c = bit
                rest = b
                while rest:
                    low = rest & -rest
                    if (b ^ low) | bit in self._mask_set:
                        c |= low
                    rest ^= low
                found.add(c)
        return tuple(sorted(found, key=lambda m: lex_key(from_mask(m))))

    def circuits(self) -> list[frozenset[int]]:
        return [from_mask(c) for c in self._circuit_masks]

    def loops(self) -> frozenset[int]:
        covered = 0
        for b in self._masks:
            covered |= b
        return frozenset(e for e in range(self.size) if not covered >> e & 1)

    def is_loopfree(self) -> bool:
        return not self.loops()

    def connected_components(self) -> list[frozenset[int]]:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            c = sorted(c)
            for e in c[1:]:
                ra, rb = find(c[0]), find(e)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, set[int]] = {}
        for e in range(self.size):
            groups.setdefault(find(e), set()).add(e)
        return sorted((frozenset(g) for g in groups.values()), key=lex_key)

    def num_components(self) -> int:
        return len(self.connected_components())

    def is_connected(self) -> bool:
        return self.num_components() <= 1

    # minors

    def restriction(self, x: Iterable[int]) -> "Matroid":
        x = self._check_subset(x)
        order = sorted(x)
        relabel = {old: new for new, old in enumerate(order)}
        r = self.rank(x)
        bases = {frozenset(relabel[e] for e in b & x) for b in self.bases if len(b & x) == r}
        return Matroid(len(order), tuple(bases), tuple(self.labels[e] for e in order))

    def contraction(self, x: Iterable[int]) -> "Matroid":
        x = self._check_subset(x)
        order = [e for e in range(self.size) if e not in x]
        relabel = {old: new for new, old in enumerate(order)}
        r = self.rank(x)
        bases = {frozenset(relabel[e] for e in b - x) for b in self.bases if len(b & x) == r}
        return Matroid(len(order), tuple(bases), tuple(self.labels[e] for e in order))

    def minor_interval(self, f: Iterable[int], g: Iterable[int]) -> "Matroid":
        """``M[F, G]``: contract the flat ``F``, then restrict to ``G - F``."""
        f, g = self._check_subset(f), self._check_subset(g)
        if not f <= g:
            raise MatroidError(f"{lex_key(f)} is not contained in {lex_key(g)}")
        for s in (f, g):
            if not self.is_flat(s):
                raise MatroidError(f"{lex_key(s)} is not a flat")
        con = self.contraction(f)
        keep = [i for i, lab in enumerate(con.labels) if self.labels.index(lab) in g]
        out = con.restriction(keep)
        assert out.rank() == self.rank(g) - self.rank(f)
        return out

    # checks

    def exchange_violation(self) -> tuple[frozenset[int], frozenset[int], int] | None:
        """First ``(B1, B2, x)`` violating basis exchange, or ``None``."""
        masks = self._mask_set
        for b1, b2 in itertools.product(self._masks, repeat=2):
            for x in range(self.size):
                if not (b1 >> x & 1) or (b2 >> x & 1):
                    continue
                base = b1 & ~(1 << x)
                ys = b2 & ~b1
                ok = False
                while ys:
                    low = ys & -ys
                    if base | low in masks:
                        ok = True
                        break
                    ys ^= low
                if not ok:
                    return from_mask(b1), from_mask(b2), x
        return None

    def circuit_elimination_violation(self):
        return _elimination_violation(self._circuit_masks)


def _elimination_violation(circuit_masks: Sequence[int]):
    for c1, c2 in itertools.combinations(circuit_masks, 2):
        common = c1 & c2
        while common:
            low = common & -common
            union = (c1 | c2) & ~low
            if not any(c & union == c for c in circuit_masks):
                return from_mask(c1), from_mask(c2), low.bit_length() - 1
            common ^= low
    return None


# constructors


def from_matrix(mat: ExactMatrix, cap: int | None = None) -> Matroid:
    """Column matroid of ``mat``; column ``j`` becomes element ``j``."""
    nrows, ncols = mat.shape
    _check_cap(ncols, cap)
    r = matrix_rank(mat.rows, mat.p)
    bases = [
        frozenset(c)
        for c in itertools.combinations(range(ncols), r)
        if matrix_rank(mat.columns(c), mat.p) == r
    ]
    return Matroid(ncols, tuple(bases), essential=(r == nrows))


def from_bases(size: int, bases: Iterable[Iterable[int]], cap: int | None = None) -> Matroid:
    _check_cap(size, cap)
    if size < 1:
        raise MatroidError("ground set must have at least one element")
    m = Matroid(size, tuple(frozenset(b) for b in bases))
    bad = m.exchange_violation()
    if bad is not None:
        b1, b2, x = bad
        raise MatroidError(
            f"basis exchange fails for B1={lex_key(b1)}, B2={lex_key(b2)}, x={x}"
        )
    return m


def from_circuits(size: int, circuits: Iterable[Iterable[int]], cap: int | None = None) -> Matroid:
    _check_cap(size, cap)
    if size < 1:
        raise MatroidError("ground set must have at least one element")
    cs = sorted({frozenset(c) for c in circuits}, key=lex_key)
    for c in cs:
        if not c:
            raise MatroidError("the empty set cannot be a circuit")
        if any(not 0 <= e < size for e in c):
            raise MatroidError(f"circuit {lex_key(c)} leaves the ground set")
    for c1, c2 in itertools.permutations(cs, 2):
        if c1 < c2:
            raise MatroidError(f"circuits not an antichain: {lex_key(c1)} < {lex_key(c2)}")
    masks = [to_mask(c) for c in cs]
    bad = _elimination_violation(masks)
    if bad is not None:
        c1, c2, e = bad
        raise MatroidError(
            f"circuit elimination fails for {lex_key(c1)}, {lex_key(c2)} at {e}"
        )

    def independent(m: int) -> bool:
        return not any(c & m == c for c in masks)

    level = [0]
    while True:
        nxt = []
        for m in level:
            top = m.bit_length()
            for e in range(top, size):
                cand = m | 1 << e
                if independent(cand):
                    nxt.append(cand)
        if not nxt:
            break
        level = nxt
    m = Matroid(size, tuple(from_mask(b) for b in level))
    bad = m.exchange_violation()
    if bad is not None or set(m._circuit_masks) != set(masks):
        raise MatroidError("circuit family does not define a matroid")
    return m


def uniform_matroid(r: int, n: int, cap: int | None = None) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidError(f"need 0 <= r <= n, got r={r}, n={n}")
    _check_cap(n, cap)
    return Matroid(n, tuple(frozenset(c) for c in itertools.combinations(range(n), r)))


def pg_points(d: int, p: int) -> list[tuple[int, ...]]:
    """Points of PG(d, p) as normalized vectors (first nonzero entry 1), lex order."""
    pts = []
    for v in itertools.product(range(p), repeat=d + 1):
        nz = next((x for x in v if x), None)
        if nz == 1:
            pts.append(v)
    return pts


def pg_matroid(d: int, p: int, cap: int | None = None) -> Matroid:
    """Matroid of all GF(p)-rational points of projective d-space."""
    if d < 1:
        raise MatroidError("need d >= 1")
    if not is_prime(p):
        raise MatroidError(f"{p} is not prime (prime powers are not supported)")
    _check_cap((p ** (d + 1) - 1) // (p - 1), cap)
    pts = pg_points(d, p)
    rows = tuple(tuple(pt[i] for pt in pts) for i in range(d + 1))
    return from_matrix(ExactMatrix(rows, p), cap)


def braid_matrix(n: int) -> ExactMatrix:
    cols = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        cols.append(tuple(int(k == i) - int(k == j) for k in range(n)))
    return ExactMatrix(tuple(tuple(c[k] for c in cols) for k in range(n)))


def braid_matroid(n: int, cap: int | None = None) -> Matroid:
    """Essential braid arrangement: x_i and x_i - x_j for i < j, in that column order."""
    if n < 2:
        raise MatroidError("braid arrangement needs n >= 2")
    _check_cap(n + n * (n - 1) // 2, cap)
    return from_matrix(braid_matrix(n), cap)
