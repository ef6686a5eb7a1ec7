"""Integer partitions and the Littlewood-Richardson rule.

A partition doubles as the *type* of a finite abelian p-group: the
partition ``[3, 1, 1]`` stands for ``Z/p^3 x Z/p x Z/p``.

>>> lr_product(Partition([2, 1]), Partition([1]))
{[3,1]: 1, [2,2]: 1, [2,1,1]: 1}
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from functools import lru_cache, reduce

__all__ = [
    "Partition",
    "PartitionMultiset",
    "normalize",
    "contains",
    "conjugate",
    "lr_coefficient",
    "lr_product",
    "lr_product_multi",
    "partitions_of",
    "parse_partition",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Equality and hashing are inherited from ``tuple``; the empty tuple
    is the zero partition.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        for i, x in enumerate(parts):
            if x < 1:
                raise ValueError(f"partition parts must be positive, got {list(parts)}")
            if i and parts[i - 1] < x:
                raise ValueError(f"partition parts must be weakly decreasing, got {list(parts)}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), reading missing parts as 0."""
        return self[i] if i < len(self) else 0

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    __repr__ = __str__


# Maps Partition -> positive multiplicity.
PartitionMultiset = dict


def normalize(raw: Iterable[int]) -> Partition:
    """Drop zeros and sort into a partition; negative entries are rejected."""
    raw = [int(x) for x in raw]
    if any(x < 0 for x in raw):
        raise ValueError(f"negative entry in {raw}")
    return Partition(sorted((x for x in raw if x), reverse=True))


def parse_partition(text: str) -> Partition:
    """Parse ``"[a,b,c]"`` (brackets optional, spaces ignored)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = body.replace(" ", "")
    if not body:
        return Partition()
    try:
        parts = [int(x) for x in body.split(",")]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}") from None
    return Partition(parts)


def contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff mu_i <= lam_i for every i, missing parts read as 0."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x > j) for j in range(lam[0]))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest)


@lru_cache(maxsize=None)
def _lr_count(lam: Partition, mu: Partition, nu: Partition) -> int:
    # Cells of lam/mu in reading order: rows top to bottom, each right to left.
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i] - 1, mu.part(i) - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)  # counts[k] for label k (1-based)

    def place(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        hi = len(nu)
        right = filling.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)  # rows weakly increase left to right
        lo = 1
        above = filling.get((i - 1, j))
        if above is not None:
            lo = above + 1  # columns strictly increase downwards
        total = 0
        for k in range(lo, hi + 1):
            if counts[k] == nu[k - 1]:
                continue
            if k > 1 and counts[k] + 1 > counts[k - 1]:
                continue  # lattice word condition
            counts[k] += 1
            filling[(i, j)] = k
            total += place(pos + 1)
            del filling[(i, j)]
            counts[k] -= 1
        return total

    return place(0)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """The Littlewood-Richardson coefficient c^lam_{mu,nu}.

    Counts semistandard fillings of the skew shape lam/mu with content nu
    whose reverse row reading word is a lattice word.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size or not contains(lam, mu) or not contains(lam, nu):
        return 0
    return _lr_count(lam, mu, nu)


def _candidates(mu: Partition, nu: Partition) -> Iterator[Partition]:
    n = mu.size + nu.size
    first = mu.part(0) + nu.part(0)
    length = len(mu) + len(nu)
    for lam in partitions_of(n, first):
        if len(lam) <= length and contains(lam, mu) and contains(lam, nu):
            yield lam


@lru_cache(maxsize=4096)
def _lr_product(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    out = []
    for lam in _candidates(mu, nu):
        c = _lr_count(lam, mu, nu)
        if c:
            out.append((lam, c))
    return tuple(out)


def lr_product(mu: Sequence[int], nu: Sequence[int]) -> PartitionMultiset:
    """Expand s_mu * s_nu as {lam: c^lam_{mu,nu}} over nonzero coefficients.

    Keys come out in reverse lexicographic order. The arguments are put in
    a canonical order first so the result does not depend on it.
    """
    mu, nu = Partition(mu), Partition(nu)
    if (nu.size, nu) > (mu.size, mu):
        mu, nu = nu, mu
    return dict(_lr_product(mu, nu))


def _multiply(acc: PartitionMultiset, factor: Partition) -> PartitionMultiset:
    out: dict[Partition, int] = {}
    for lam, c in acc.items():
        for kappa, d in lr_product(lam, factor).items():
            out[kappa] = out.get(kappa, 0) + c * d
    return dict(sorted(out.items(), key=lambda kv: (-kv[0].size, tuple(-x for x in kv[0]))))


def lr_product_multi(factors: Sequence[Sequence[int]]) -> PartitionMultiset:
    """Left fold of :func:`lr_product` over ``factors`` with multiplicities."""
    factors = [Partition(f) for f in factors]
    if not factors:
        raise ValueError("lr_product_multi needs at least one factor")
    return reduce(_multiply, factors[1:], {factors[0]: 1})
