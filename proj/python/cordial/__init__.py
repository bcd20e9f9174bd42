"""Cordial labelings of paths and cycles over finite abelian groups."""

from ._cordial import (
    Group,
    complete_mapping,
    cut_cycle,
    harmonious,
    label,
    rstar_sequence,
    search_cordial,
    verify,
)

__all__ = [
    "Group",
    "complete_mapping",
    "cut_cycle",
    "harmonious",
    "label",
    "rstar_sequence",
    "search_cordial",
    "verify",
]
