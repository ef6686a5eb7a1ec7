"""Abelian extensions 0 -> H -> G -> K -> 0 via Littlewood-Richardson positivity.

For finite abelian p-groups of types mu (sub), nu (quotient) and lam
(middle), an extension exists iff c^lam_{mu,nu} > 0. An exact sequence
of finite abelian groups is exact iff each p-part is, so the general case
is a product over primes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import AbelianGroup, cyclic, direct_product, from_cyclic_factors, invariant_factors, rank
from .partitions import lr_coefficient, lr_product

__all__ = [
    "Middle",
    "ExtensionResult",
    "extension_exists",
    "enumerate_extensions",
    "max_cyclic_split",
]


@dataclass(frozen=True, order=True)
class Middle:
    group: AbelianGroup
    split: bool


@dataclass(frozen=True)
class ExtensionResult:
    sub: AbelianGroup
    quot: AbelianGroup
    middles: tuple[Middle, ...]
    truncated: bool = False

    @property
    def groups(self) -> set[AbelianGroup]:
        return {m.group for m in self.middles}

    def to_dict(self) -> dict:
        return {
            "sub": str(self.sub),
            "quot": str(self.quot),
            "truncated": self.truncated,
            "middles": [{"group": str(m.group), "split": m.split} for m in self.middles],
        }


def extension_exists(H: AbelianGroup, K: AbelianGroup, G: AbelianGroup) -> bool:
    """Is there an exact sequence 0 -> H -> G -> K -> 0?"""
    if G.order != H.order * K.order:
        return False
    primes = set(G.primes) | set(H.primes) | set(K.primes)
    return all(lr_coefficient(G.type_at(p), H.type_at(p), K.type_at(p)) > 0 for p in primes)


def enumerate_extensions(H: AbelianGroup, K: AbelianGroup, cap: int | None = None) -> ExtensionResult:
    """All isomorphism classes of abelian G with 0 -> H -> G -> K -> 0.

    With ``cap`` set, at most ``cap`` middles are returned (the split one
    always among them) and ``truncated`` records whether any were dropped.
    """
    primes = sorted(set(H.primes) | set(K.primes))
    options = [list(lr_product(H.type_at(p), K.type_at(p))) for p in primes]
    split_group = direct_product(H, K)
    groups = sorted(AbelianGroup(dict(zip(primes, combo))) for combo in itertools.product(*options))
    truncated = False
    if cap is not None and len(groups) > cap:
        truncated = True
        rest = [g for g in groups if g != split_group]
        groups = sorted([split_group] + rest[: max(cap - 1, 0)])
    middles = tuple(Middle(g, g == split_group) for g in groups)
    return ExtensionResult(H, K, middles, truncated)


def max_cyclic_split(G: AbelianGroup) -> tuple[int, AbelianGroup]:
    """Split off a maximal cyclic factor: G = Z/e x C with e the exponent of G."""
    factors = invariant_factors(G)
    if not factors:
        raise ValueError("the trivial group has no cyclic factor to split off")
    complement = from_cyclic_factors(factors[:-1])
    assert direct_product(cyclic(factors[-1]), complement) == G
    assert rank(complement) == rank(G) - 1
    return factors[-1], complement
