"""Finite abelian groups, Littlewood-Richardson products and the abelian Cremona lists."""

from .classify import classify, cr2_family, is_cr1, product_type_witness, terminal_admissible
from .extensions import enumerate_extensions, extension_exists, max_cyclic_split
from .groups import AbelianGroup, direct_product, from_cyclic_factors, invariant_factors, rank
from .notation import parse_group
from .partitions import Partition, lr_coefficient, lr_product, lr_product_multi

__all__ = [
    "AbelianGroup",
    "Partition",
    "classify",
    "cr2_family",
    "direct_product",
    "enumerate_extensions",
    "extension_exists",
    "from_cyclic_factors",
    "invariant_factors",
    "is_cr1",
    "lr_coefficient",
    "lr_product",
    "lr_product_multi",
    "max_cyclic_split",
    "parse_group",
    "product_type_witness",
    "rank",
    "terminal_admissible",
]
