"""Finite abelian groups in primary-decomposition form, plus Smith normal form.

An :class:`AbelianGroup` stores one partition per prime: the group
``Z/4 x Z/6`` is ``{2: [2,1], 3: [1]}``. Two groups are isomorphic exactly
when these mappings agree, so ``==`` is isomorphism.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import cached_property
from math import prod

from .partitions import Partition, contains, normalize, partitions_of

__all__ = [
    "AbelianGroup",
    "IntegerMatrix",
    "factorize",
    "is_prime",
    "from_cyclic_factors",
    "cyclic",
    "elementary",
    "trivial_group",
    "rank",
    "p_part",
    "coprime_part",
    "direct_product",
    "invariant_factors",
    "subgroup_types",
    "quotient_types",
    "smith_normal_form",
    "group_from_relations",
    "groups_of_order",
    "all_groups",
    "InfiniteGroupError",
]

# Row-major list of integer rows.
IntegerMatrix = Sequence[Sequence[int]]


class InfiniteGroupError(ValueError):
    """Raised when a relation matrix presents an infinite group."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


class AbelianGroup:
    """A finite abelian group, stored as prime -> type of its Sylow subgroup."""

    __slots__ = ("_items", "__dict__")

    def __init__(self, primary: Mapping[int, Sequence[int]] | None = None):
        items = []
        for p, lam in (primary or {}).items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            lam = Partition(lam)
            if lam:
                items.append((p, lam))
        self._items: tuple[tuple[int, Partition], ...] = tuple(sorted(items))

    @property
    def primary(self) -> dict[int, Partition]:
        return dict(self._items)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._items)

    def type_at(self, p: int) -> Partition:
        """The partition type of the p-part (empty if p does not divide the order)."""
        for q, lam in self._items:
            if q == p:
                return lam
        return Partition()

    @cached_property
    def order(self) -> int:
        return prod(p ** lam.size for p, lam in self._items)

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def sort_key(self) -> tuple:
        return (self.order, len(invariant_factors(self)), tuple(reversed(invariant_factors(self))))

    def __lt__(self, other: AbelianGroup) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        factors = invariant_factors(self)
        if not factors:
            return "Z1"
        return " x ".join(f"Z{d}" for d in factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({str(self)!r})"


def trivial_group() -> AbelianGroup:
    return AbelianGroup()


def from_cyclic_factors(orders: Iterable[int]) -> AbelianGroup:
    """The group Z/d_1 x ... x Z/d_k, in canonical form."""
    parts: dict[int, list[int]] = {}
    for d in orders:
        d = int(d)
        if d < 1:
            raise ValueError(f"cyclic factor order must be >= 1, got {d}")
        for p, e in factorize(d).items():
            parts.setdefault(p, []).append(e)
    return AbelianGroup({p: normalize(es) for p, es in parts.items()})


def cyclic(n: int) -> AbelianGroup:
    return from_cyclic_factors([n])


def elementary(p: int, r: int) -> AbelianGroup:
    """(Z/p)^r."""
    return from_cyclic_factors([p] * r)


def rank(G: AbelianGroup) -> int:
    """Minimal number of generators."""
    return max((len(lam) for lam in G.primary.values()), default=0)


def p_part(G: AbelianGroup, p: int) -> AbelianGroup:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return AbelianGroup({p: G.type_at(p)})


def coprime_part(G: AbelianGroup, p: int) -> AbelianGroup:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return AbelianGroup({q: lam for q, lam in G.primary.items() if q != p})


def direct_product(*groups: AbelianGroup) -> AbelianGroup:
    merged: dict[int, list[int]] = {}
    for G in groups:
        for p, lam in G.primary.items():
            merged.setdefault(p, []).extend(lam)
    return AbelianGroup({p: normalize(parts) for p, parts in merged.items()})


def invariant_factors(G: AbelianGroup) -> list[int]:
    """The chain d_1 | d_2 | ... | d_r with G = Z/d_1 x ... x Z/d_r."""
    r = rank(G)
    primary = G.primary
    # The i-th largest factor collects the i-th largest part at every prime.
    return [prod(p ** lam.part(i) for p, lam in primary.items()) for i in reversed(range(r))]


def _per_prime_product(choices: dict[int, list[Partition]]) -> Iterator[AbelianGroup]:
    primes = sorted(choices)
    for combo in itertools.product(*(choices[p] for p in primes)):
        yield AbelianGroup(dict(zip(primes, combo)))


def _sub_partitions(lam: Partition) -> list[Partition]:
    out = [Partition()]
    for n in range(1, lam.size + 1):
        out.extend(mu for mu in partitions_of(n, lam.part(0)) if contains(lam, mu))
    return out


def subgroup_types(G: AbelianGroup, max_count: int | None = None) -> set[AbelianGroup]:
    """Isomorphism types of subgroups of G.

    A p-group of type mu embeds in one of type lam iff mu_i <= lam_i for
    all i. For finite abelian groups the same set describes the quotients.
    Raises ``ValueError`` if the result would exceed ``max_count``.
    """
    choices = {p: _sub_partitions(lam) for p, lam in G.primary.items()}
    total = prod(len(c) for c in choices.values())
    if max_count is not None and total > max_count:
        raise ValueError(f"{G} has {total} subgroup types, more than max_count={max_count}")
    return set(_per_prime_product(choices))


quotient_types = subgroup_types


def groups_of_order(n: int) -> list[AbelianGroup]:
    """Every abelian group of order n, one per isomorphism class."""
    choices = {p: list(partitions_of(e)) for p, e in factorize(n).items()}
    return sorted(_per_prime_product(choices))


def all_groups(max_order: int, min_order: int = 1) -> list[AbelianGroup]:
    """Every abelian group with ``min_order <= order <= max_order``, sorted."""
    out: list[AbelianGroup] = []
    for n in range(min_order, max_order + 1):
        out.extend(groups_of_order(n))
    return out


def _smith(M: IntegerMatrix, with_transforms: bool):
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if with_transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if with_transforms else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(src, dst, c):  # row[dst] += c * row[src]
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        if V is not None:
            for row in V:
                row[dst] += c * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        if U is not None:
            U[i] = [-a for a in U[i]]

    for t in range(min(m, n)):
        # Pivot: smallest nonzero entry in the remaining block.
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # Divisibility: the pivot must divide every remaining entry.
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            negate_row(t)

    diag = [A[i][i] for i in range(min(m, n))]
    if with_transforms:
        return diag, U, V
    return diag


def smith_normal_form(M: IntegerMatrix, transforms: bool = False):
    """Smith normal form diagonal ``d_1 | d_2 | ...`` of an integer matrix.

    The diagonal has ``min(rows, cols)`` nonnegative entries, zeros last.
    With ``transforms=True`` returns ``(diag, U, V)`` where U and V are
    unimodular and ``U @ M @ V`` is the diagonal matrix.

    >>> smith_normal_form([[2, 1], [0, 2]])
    [1, 4]
    """
    return _smith(M, transforms)


def group_from_relations(M: IntegerMatrix, ngens: int | None = None) -> AbelianGroup:
    """The group Z^ngens / rowspace(M).

    ``ngens`` defaults to the column count of M and must be given when M
    has no rows.
    """
    if ngens is None:
        if not M:
            raise ValueError("ngens is required for an empty relation matrix")
        ngens = len(M[0])
    if any(len(row) != ngens for row in M):
        raise ValueError("relation rows must all have length ngens")
    diag = smith_normal_form(M) if M else []
    diag = diag + [0] * (ngens - len(diag))
    if any(d == 0 for d in diag):
        raise InfiniteGroupError("relations present an infinite group")
    return from_cyclic_factors(diag)
