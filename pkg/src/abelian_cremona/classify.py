"""Membership predicates for the abelian Cremona lists and related group actions.

Shapes are matched up to isomorphism. A parametric family such as
``Z/2n x (Z/2)^2`` is matched by solving for the parameters: the order of
G pins down their product, so only finitely many candidates exist.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import prod
from pathlib import Path

from .extensions import extension_exists
from .groups import (
    AbelianGroup,
    cyclic,
    direct_product,
    from_cyclic_factors,
    invariant_factors,
    rank,
)
from .partitions import Partition

__all__ = [
    "FamilyMatch",
    "ProductTypeWitness",
    "TerminalVerdict",
    "EllipticActionRow",
    "K3Witness",
    "ClassificationVerdict",
    "ClassificationInconsistency",
    "is_cr1",
    "cr2_family",
    "cr2_families",
    "table1_rows",
    "decompositions",
    "product_type_witness",
    "is_product_type",
    "terminal_admissible",
    "elliptic_action_rows",
    "can_act_on_circle",
    "can_act_on_sphere2",
    "k3_type_check",
    "load_k3_groups",
    "default_k3_groups",
    "rank_bound",
    "rank_bound_check",
    "classify",
]


class ClassificationInconsistency(RuntimeError):
    """The table lookup and the decomposition search disagree."""


@dataclass(frozen=True)
class FamilyMatch:
    index: int
    params: dict = field(default_factory=dict, hash=False, compare=False)

    def to_dict(self) -> dict:
        return {"index": self.index, "params": dict(self.params)}


@dataclass(frozen=True)
class _Template:
    """``Z/(m_1 k_1) x ... x Z/(m_s k_s) x (fixed)`` with free k_i >= 1."""

    index: int
    names: tuple[str, ...] = ()
    multipliers: tuple[int, ...] = ()
    fixed: tuple[int, ...] = ()
    max_rank: int | None = None  # "any group of rank <= max_rank"

    def match(self, G: AbelianGroup) -> dict | None:
        if self.max_rank is not None:
            if rank(G) > self.max_rank:
                return None
            factors = invariant_factors(G)
            padded = [1] * (self.max_rank - len(factors)) + factors
            return dict(zip(self.names, padded))
        base = prod(self.multipliers) * prod(self.fixed)
        if G.order % base:
            return None
        best = None
        for ks in _ordered_factorizations(G.order // base, len(self.multipliers)):
            if from_cyclic_factors([m * k for m, k in zip(self.multipliers, ks)] + list(self.fixed)) == G:
                # Prefer non-decreasing, most balanced parameters.
                key = (list(ks) != sorted(ks), max(ks, default=1), ks)
                if best is None or key < best[0]:
                    best = (key, ks)
        if best is None:
            return None
        return dict(zip(self.names, best[1]))


def _ordered_factorizations(n: int, s: int) -> list[tuple[int, ...]]:
    if s == 0:
        return [()] if n == 1 else []
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    return [(d,) + rest for d in divisors for rest in _ordered_factorizations(n // d, s - 1)]


CR2_FAMILIES = (
    _Template(1, ("n", "m"), max_rank=2),
    _Template(2, ("n",), (2,), (2, 2)),
    _Template(3, fixed=(4, 4, 2)),
    _Template(4, fixed=(3, 3, 3)),
    _Template(5, fixed=(2, 2, 2, 2)),
)

TABLE1_ROWS = (
    _Template(1, ("k", "l", "m"), max_rank=3),
    _Template(2, ("k",), (2,), (4, 4, 2)),
    _Template(3, ("k",), (3,), (3, 3, 3)),
    _Template(4, ("k", "l"), (2, 2), (2, 2)),
    _Template(5, ("n",), (2,), (2, 2, 2, 2)),
    _Template(6, fixed=(4, 4, 2, 2, 2)),
    _Template(7, fixed=(2,) * 6),
)

_TERMINAL_SHAPE = _Template(0, ("n", "m"), (2, 2), (2, 2))


def is_cr1(G: AbelianGroup) -> bool:
    """Cyclic, or the Klein four-group."""
    factors = invariant_factors(G)
    return len(factors) <= 1 or factors == [2, 2]


def _matches(templates: Sequence[_Template], G: AbelianGroup) -> list[FamilyMatch]:
    out = []
    for t in templates:
        params = t.match(G)
        if params is not None:
            out.append(FamilyMatch(t.index, params))
    return out


@lru_cache(maxsize=None)
def cr2_families(G: AbelianGroup) -> tuple[FamilyMatch, ...]:
    """Every planar family (1-5) that G belongs to."""
    return tuple(_matches(CR2_FAMILIES, G))


def cr2_family(G: AbelianGroup) -> FamilyMatch | None:
    """The smallest-index planar family containing G, or None."""
    found = cr2_families(G)
    return found[0] if found else None


@lru_cache(maxsize=None)
def table1_rows(G: AbelianGroup) -> tuple[FamilyMatch, ...]:
    """Every product-type row (1-7) that G belongs to."""
    return tuple(_matches(TABLE1_ROWS, G))


@dataclass(frozen=True)
class ProductTypeWitness:
    table1_row: int
    params: dict
    decomposition: tuple[AbelianGroup, AbelianGroup]
    all_rows: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "table1_row": self.table1_row,
            "params": dict(self.params),
            "decomposition": [str(g) for g in self.decomposition],
            "all_rows": list(self.all_rows),
        }


def _sub_multisets(lam: Partition) -> Iterable[tuple[list[int], list[int]]]:
    values = sorted(set(lam), reverse=True)
    counts = [lam.count(v) for v in values]
    for picks in itertools.product(*(range(c + 1) for c in counts)):
        left = [v for v, k in zip(values, picks) for _ in range(k)]
        right = [v for v, k, c in zip(values, picks, counts) for _ in range(c - k)]
        yield left, right


def decompositions(G: AbelianGroup) -> list[tuple[AbelianGroup, AbelianGroup]]:
    """Every way to write G = G1 x G2 with G1 in the line list and G2 in the planar list."""
    primes = G.primes
    found = []
    for combo in itertools.product(*(_sub_multisets(G.type_at(p)) for p in primes)):
        g1 = AbelianGroup({p: sorted(l, reverse=True) for p, (l, _) in zip(primes, combo)})
        g2 = AbelianGroup({p: sorted(r, reverse=True) for p, (_, r) in zip(primes, combo)})
        if is_cr1(g1) and cr2_family(g2) is not None:
            found.append((g1, g2))
    return sorted(set(found))


@lru_cache(maxsize=None)
def product_type_witness(G: AbelianGroup) -> ProductTypeWitness | None:
    """Decide product type twice, by the seven-row table and by splitting G.

    Raises :class:`ClassificationInconsistency` if the two disagree.
    """
    rows = table1_rows(G)
    splits = decompositions(G)
    if bool(rows) != bool(splits):
        raise ClassificationInconsistency(
            f"{G}: table rows {[r.index for r in rows]} but {len(splits)} decompositions"
        )
    if not rows:
        return None
    g1, g2 = splits[0]
    assert direct_product(g1, g2) == G
    return ProductTypeWitness(rows[0].index, rows[0].params, (g1, g2), tuple(r.index for r in rows))


def is_product_type(G: AbelianGroup) -> bool:
    return product_type_witness(G) is not None


@dataclass(frozen=True)
class TerminalVerdict:
    admissible: bool
    clause: str | None = None
    params: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"admissible": self.admissible, "clause": self.clause, "params": dict(self.params)}


def terminal_admissible(G: AbelianGroup) -> TerminalVerdict:
    """Rank at most 3, or (Z/2)^2 x Z/2n x Z/2m."""
    if rank(G) <= 3:
        return TerminalVerdict(True, "rank≤3")
    params = _TERMINAL_SHAPE.match(G)
    if params is not None:
        return TerminalVerdict(True, "klein×2n×2m", params)
    return TerminalVerdict(False)


@dataclass(frozen=True, order=True)
class EllipticActionRow:
    row: int
    min_orbit: int
    contains_antipodal: bool

    def to_dict(self) -> dict:
        return {"row": self.row, "min_orbit": self.min_orbit, "contains_antipodal": self.contains_antipodal}


# Non-translation actions on a genus one curve: invariant factors -> row.
_ELLIPTIC_ROWS = {
    (2,): EllipticActionRow(2, 1, True),
    (2, 2): EllipticActionRow(3, 2, True),
    (2, 2, 2): EllipticActionRow(4, 4, True),
    (4,): EllipticActionRow(5, 1, True),
    (2, 4): EllipticActionRow(6, 2, True),
    (3,): EllipticActionRow(7, 1, False),
    (3, 3): EllipticActionRow(8, 3, False),
    (6,): EllipticActionRow(9, 1, True),
}


def elliptic_action_rows(G: AbelianGroup) -> tuple[EllipticActionRow, ...]:
    """Rows of the genus-one action table whose group is isomorphic to G.

    Row 1 is the translation action, available to every group of rank <= 2,
    and its orbits all have length |G|.
    """
    rows = []
    if rank(G) <= 2:
        rows.append(EllipticActionRow(1, G.order, False))
    special = _ELLIPTIC_ROWS.get(tuple(invariant_factors(G)))
    if special is not None:
        rows.append(special)
    return tuple(sorted(rows))


def can_act_on_circle(G: AbelianGroup) -> bool:
    return is_cr1(G)


def can_act_on_sphere2(G: AbelianGroup) -> bool:
    """Subgroups of Z/n x Z/2, or (Z/2)^3."""
    factors = invariant_factors(G)
    return len(factors) <= 1 or (len(factors) == 2 and factors[0] == 2) or factors == [2, 2, 2]


@dataclass(frozen=True)
class K3Witness:
    m: int
    base: AbelianGroup

    def to_dict(self) -> dict:
        return {"m": self.m, "base": str(self.base)}


def k3_type_check(G: AbelianGroup, k3_groups: Iterable[AbelianGroup]) -> K3Witness | None:
    """Smallest m with an extension 0 -> Z/m -> G -> H -> 0 for some listed H.

    "None" only means none relative to the supplied list.
    """
    k3_groups = sorted(set(k3_groups))
    if not k3_groups:
        raise ValueError("k3_groups must not be empty")
    best = None
    for H in k3_groups:
        if G.order % H.order:
            continue
        m = G.order // H.order
        if (best is None or m < best.m) and extension_exists(cyclic(m), H, G):
            best = K3Witness(m, H)
    return best


def load_k3_groups(path: str | Path) -> list[AbelianGroup]:
    """Read one group expression per line; ``#`` starts a comment."""
    from .notation import parse_group

    text = Path(path).read_text(encoding="utf-8")
    return _parse_group_lines(text, parse_group)


def _parse_group_lines(text, parse_group) -> list[AbelianGroup]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_group(line))
    return out


def default_k3_groups() -> list[AbelianGroup]:
    """The shipped, deliberately partial list of abelian groups acting on K3 surfaces."""
    from .notation import parse_group

    text = resources.files("abelian_cremona").joinpath("data/k3_groups.txt").read_text(encoding="utf-8")
    return _parse_group_lines(text, parse_group)


_RANK_BOUNDS = {
    "surface": {2: 4, 3: 3},
    "threefold": {2: 6, 3: 4},
}
_RANK_BOUNDS_LARGE_P = {"surface": 2, "threefold": 3}


def rank_bound(p: int, setting: str, n: int | None = None) -> int:
    """Maximal rank of an abelian p-group of birational symmetries in the given setting.

    ``setting`` is ``"surface"``, ``"threefold"`` or ``"general"`` (with the
    dimension ``n``), the last giving floor(p n / (p - 1)).
    """
    if setting == "general":
        if n is None or n < 1:
            raise ValueError("setting 'general' needs a dimension n >= 1")
        return p * n // (p - 1)
    if setting not in _RANK_BOUNDS:
        raise ValueError(f"unknown setting {setting!r}")
    return _RANK_BOUNDS[setting].get(p, _RANK_BOUNDS_LARGE_P[setting])


def rank_bound_check(G: AbelianGroup, setting: str, n: int | None = None) -> bool:
    return all(len(lam) <= rank_bound(p, setting, n) for p, lam in G.primary.items())


@dataclass(frozen=True)
class ClassificationVerdict:
    group: AbelianGroup
    cr1: bool
    cr2_family: FamilyMatch | None
    cr2_all: tuple[int, ...]
    product_type: ProductTypeWitness | None
    terminal: TerminalVerdict
    elliptic_rows: tuple[EllipticActionRow, ...]
    circle_action: bool
    sphere2_action: bool
    k3_type: K3Witness | None
    k3_checked: bool
    surface_rank_bound: bool
    threefold_rank_bound: bool

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "order": self.group.order,
            "rank": rank(self.group),
            "cr1": self.cr1,
            "cr2_family": self.cr2_family.to_dict() if self.cr2_family else None,
            "cr2_all": list(self.cr2_all),
            "product_type": self.product_type.to_dict() if self.product_type else None,
            "terminal_admissible": self.terminal.to_dict(),
            "elliptic_rows": [r.to_dict() for r in self.elliptic_rows],
            "circle_action": self.circle_action,
            "sphere2_action": self.sphere2_action,
            "k3_checked": self.k3_checked,
            "k3_type": self.k3_type.to_dict() if self.k3_type else None,
            "surface_rank_bound": self.surface_rank_bound,
            "threefold_rank_bound": self.threefold_rank_bound,
        }


def classify(G: AbelianGroup, k3_groups: Iterable[AbelianGroup] | None = None) -> ClassificationVerdict:
    fams = cr2_families(G)
    k3 = k3_type_check(G, k3_groups) if k3_groups is not None else None
    return ClassificationVerdict(
        group=G,
        cr1=is_cr1(G),
        cr2_family=fams[0] if fams else None,
        cr2_all=tuple(f.index for f in fams),
        product_type=product_type_witness(G),
        terminal=terminal_admissible(G),
        elliptic_rows=elliptic_action_rows(G),
        circle_action=can_act_on_circle(G),
        sphere2_action=can_act_on_sphere2(G),
        k3_type=k3,
        k3_checked=k3_groups is not None,
        surface_rank_bound=rank_bound_check(G, "surface"),
        threefold_rank_bound=rank_bound_check(G, "threefold"),
    )
