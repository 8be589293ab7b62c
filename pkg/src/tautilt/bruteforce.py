"""Definition-level enumeration of tilting-type modules.

Everything here works on whole direct sums instead of the pairwise tables
used by the clique search, and tests projective dimension and Ext through
different constructions: pd T <= 1 iff Hom(DA, tau T) = 0, and Ext^1 from an
injective copresentation.
"""

from __future__ import annotations

from itertools import combinations

from .algebra import BasedAlgebra, quotient_by_idempotent
from .classify import IndecTable
from .modules import (
    ModuleRep,
    dim_hom,
    direct_sum,
    ext1_dim_via_injective,
    injective_at,
    restrict_module,
    tau,
)


def dual_regular(A: BasedAlgebra) -> ModuleRep:
    return direct_sum([injective_at(A, v) for v in A.vertices], algebra=A)


def pd_le_one_via_tau(M: ModuleRep) -> bool:
    return dim_hom(dual_regular(M.algebra), tau(M)) == 0


def is_tau_rigid_module(M: ModuleRep) -> bool:
    return dim_hom(M, tau(M)) == 0


def is_tilting_module(M: ModuleRep) -> bool:
    """Conditions pd <= 1 and Ext^1(T, T) = 0; the summand count is the caller's."""
    return pd_le_one_via_tau(M) and ext1_dim_via_injective(M, M) == 0


def tau_tilting_sets(table: IndecTable) -> list[tuple[int, ...]]:
    return [S for S in combinations(range(len(table)), table.n)
            if is_tau_rigid_module(table.direct_sum(S))]


def tilting_sets(table: IndecTable) -> list[tuple[int, ...]]:
    return [S for S in combinations(range(len(table)), table.n)
            if is_tilting_module(table.direct_sum(S))]


def support_tau_tilting_sets(table: IndecTable) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(support, summands) pairs, tau computed over each quotient A/<e_E>."""
    A = table.algebra
    verts = list(A.vertices)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for r in range(len(verts) + 1):
        for E in combinations(verts, r):
            support = tuple(v for v in verts if v not in E)
            if not support:
                found.setdefault((), ())
                continue
            Q, data = quotient_by_idempotent(A, E)
            cands = [k for k, M in enumerate(table.modules)
                     if all(M.block(v) == 0 for v in E)]
            for S in combinations(cands, len(support)):
                T = restrict_module(table.direct_sum(S), Q, data)
                if is_tau_rigid_module(T):
                    if S not in found or len(found[S]) < len(support):
                        found[S] = support
    return sorted(((sup, S) for S, sup in found.items()),
                  key=lambda e: (-len(e[0]), [A.vertex_index(v) for v in e[0]], e[1]))
