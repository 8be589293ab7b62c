"""Enumeration of modules and classification of (support) tau-tilting modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from . import ffla
from .algebra import BasedAlgebra, has_loop, quotient_by_idempotent
from .modules import (
    CapExceeded,
    ModuleRep,
    default_cap,
    dim_hom,
    direct_sum,
    endomorphism_profile,
    ext1_dim,
    injective_at,
    is_faithful,
    is_isomorphic,
    is_pd_le_one,
    is_projective,
    is_sincere,
    lift_module,
    pd_up_to,
    projective_at,
    simple_at,
    tau,
)

def normalize_bound(A: BasedAlgebra, dim_bound) -> tuple[int, ...]:
    if isinstance(dim_bound, int):
        return (dim_bound,) * A.n
    if isinstance(dim_bound, dict):
        return tuple(int(dim_bound.get(v, 0)) for v in A.vertices)
    bound = tuple(int(b) for b in dim_bound)
    if len(bound) != A.n:
        raise ValueError(f"dimension bound has {len(bound)} entries for {A.n} vertices")
    if any(b < 0 for b in bound):
        raise ValueError("dimension bound must be non-negative")
    return bound


# --- module enumeration --------------------------------------------------------

def _matching(A: BasedAlgebra) -> set[int]:
    """Arrows with pairwise disjoint endpoints; their matrices can be put in
    rank normal form simultaneously."""
    used, chosen = set(), set()
    for g in A.arrows:
        b = A.basis[g]
        if b.source == b.target or b.source in used or b.target in used:
            continue
        used |= {b.source, b.target}
        chosen.add(g)
    return chosen


def _all_matrices(rows: int, cols: int, p: int):
    k = rows * cols
    if k == 0:
        return [np.zeros((rows, cols), dtype=np.int64)]
    powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    ids = np.arange(p**k, dtype=np.int64)
    flat = (ids[:, None] // powers[None, :]) % p
    return list(flat.reshape(-1, rows, cols))


def _normal_forms(rows: int, cols: int):
    out = []
    for r in range(min(rows, cols) + 1):
        m = np.zeros((rows, cols), dtype=np.int64)
        m[range(r), range(r)] = 1
        out.append(m)
    return out


def _signature(M: ModuleRep) -> tuple:
    p = M.p
    ranks = tuple(ffla.rank(a, p) if a.size else 0 for a in M.actions)
    return ranks, dim_hom(M, M)


def modules_of_dim(A: BasedAlgebra, dims, cap: int | None = None) -> list[ModuleRep]:
    """One representative per isomorphism class with the given dimension vector."""
    cap = default_cap() if cap is None else cap
    dims = tuple(dims)
    vi = {v: k for k, v in enumerate(A.vertices)}
    matched = _matching(A)
    choices = []
    size = 1
    for g in A.arrows:
        b = A.basis[g]
        r, c = dims[vi[b.source]], dims[vi[b.target]]
        if g in matched:
            count = min(r, c) + 1
        else:
            count = A.p ** (r * c)
        size *= count
        choices.append((g, r, c))
    if size > cap:
        raise CapExceeded(
            f"search space {size} for dimension vector {dims} exceeds the cap {cap}",
            dict(zip(A.vertices, dims)))
    pools = [_normal_forms(r, c) if g in matched else _all_matrices(r, c, A.p)
             for g, r, c in choices]
    reps: list[ModuleRep] = []
    sigs: list[tuple] = []
    for mats in product(*pools):
        M = ModuleRep.from_arrows(A, dims, list(mats), check=False)
        if not M.is_valid():
            continue
        sig = _signature(M)
        if any(s == sig and is_isomorphic(M, R, cap) for s, R in zip(sigs, reps)):
            continue
        reps.append(M)
        sigs.append(sig)
    return reps


def dimension_vectors(bound):
    return list(product(*(range(b + 1) for b in bound)))


def enumerate_modules(A: BasedAlgebra, dim_bound, cap: int | None = None) -> list[ModuleRep]:
    """All isomorphism classes with dimension vector <= dim_bound, zero included."""
    bound = normalize_bound(A, dim_bound)
    out = []
    for dims in dimension_vectors(bound):
        out.extend(modules_of_dim(A, dims, cap))
    return out


# --- indecomposables -------------------------------------------------------------

@dataclass
class IndecTable:
    algebra: BasedAlgebra
    bound: tuple[int, ...]
    modules: list[ModuleRep]
    labels: list[str]
    taus: list[ModuleRep]
    tau_rigid: list[bool]
    pd_le_one: list[bool]
    projective: list[bool]
    sincere: list[bool]
    faithful: list[bool]
    self_ext_free: list[bool]
    residue_degree: list[int | None]
    hom: np.ndarray
    ext1: np.ndarray
    hom_tau: np.ndarray
    all_modules: list[ModuleRep] = field(default_factory=list)

    def __len__(self):
        return len(self.modules)

    @property
    def n(self) -> int:
        return self.algebra.n

    def index_of(self, M: ModuleRep, cap: int | None = None) -> int:
        for k, X in enumerate(self.modules):
            if X.dims == M.dims and is_isomorphic(X, M, cap):
                return k
        raise KeyError("module not in table")

    def label(self, summands) -> str:
        if not summands:
            return "0"
        return "+".join(sorted((self.labels[k] for k in summands), key=_label_key))

    def direct_sum(self, summands) -> ModuleRep:
        return direct_sum([self.modules[k] for k in summands], algebra=self.algebra)


def _label_key(label: str):
    kind = {"P": 0, "S": 1, "I": 2}.get(label[0], 3)
    return (kind, label)


def _name_modules(A: BasedAlgebra, modules: list[ModuleRep], cap) -> list[str]:
    named = []
    for kind, maker in (("P", projective_at), ("S", simple_at), ("I", injective_at)):
        for v in A.vertices:
            named.append((f"{kind}{v}", maker(A, v)))
    labels = []
    seen: dict[str, int] = {}
    for M in modules:
        label = None
        for name, X in named:
            if X.dims == M.dims and is_isomorphic(X, M, cap):
                label = name
                break
        if label is None:
            base = "M" + "".join(str(d) for d in M.dims) if max(M.dims) < 10 else \
                "M" + "_".join(str(d) for d in M.dims)
            seen[base] = seen.get(base, 0) + 1
            label = base if seen[base] == 1 else f"{base}.{seen[base]}"
            if seen[base] == 2:
                # the first one with this dimension vector gets a suffix too
                first = labels.index(base)
                labels[first] = f"{base}.1"
        labels.append(label)
    return labels


def is_indecomposable(M: ModuleRep, cap: int | None = None) -> bool:
    if M.is_zero:
        return False
    return not endomorphism_profile(M, cap).nontrivial_idempotent


def enumerate_indecomposables(A: BasedAlgebra, dim_bound, cap: int | None = None) -> IndecTable:
    bound = normalize_bound(A, dim_bound)
    everything = enumerate_modules(A, bound, cap)
    mods, degrees = [], []
    for M in everything:
        if M.is_zero:
            continue
        prof = endomorphism_profile(M, cap)
        if not prof.nontrivial_idempotent:
            mods.append(M)
            degrees.append(prof.residue_degree)
    return build_table(A, bound, mods, degrees, cap, everything)


def build_table(A, bound, mods, degrees, cap=None, everything=None) -> IndecTable:
    taus = [tau(M) for M in mods]
    k = len(mods)
    hom = np.zeros((k, k), dtype=np.int64)
    ext = np.zeros((k, k), dtype=np.int64)
    hom_tau = np.zeros((k, k), dtype=np.int64)
    for i, j in product(range(k), range(k)):
        hom[i, j] = dim_hom(mods[i], mods[j])
        ext[i, j] = ext1_dim(mods[i], mods[j])
        hom_tau[i, j] = dim_hom(mods[i], taus[j])
    return IndecTable(
        algebra=A,
        bound=bound,
        modules=mods,
        labels=_name_modules(A, mods, cap),
        taus=taus,
        tau_rigid=[bool(hom_tau[i, i] == 0) for i in range(k)],
        pd_le_one=[is_pd_le_one(M) for M in mods],
        projective=[is_projective(M) for M in mods],
        sincere=[is_sincere(M) for M in mods],
        faithful=[is_faithful(M) for M in mods],
        self_ext_free=[bool(ext[i, i] == 0) for i in range(k)],
        residue_degree=list(degrees),
        hom=hom,
        ext1=ext,
        hom_tau=hom_tau,
        all_modules=list(everything or []),
    )


# --- families ---------------------------------------------------------------------

def cliques_of_size(usable, compatible, size: int) -> list[tuple[int, ...]]:
    """All sets of ``size`` pairwise compatible usable indices, by backtracking."""
    nodes = [i for i, ok in enumerate(usable) if ok]
    out: list[tuple[int, ...]] = []

    def extend(chosen: list[int], start: int):
        if len(chosen) == size:
            out.append(tuple(chosen))
            return
        for pos in range(start, len(nodes)):
            if len(chosen) + len(nodes) - pos < size:
                return
            v = nodes[pos]
            if all(compatible(v, w) for w in chosen):
                chosen.append(v)
                extend(chosen, pos + 1)
                chosen.pop()

    if size == 0:
        return [()]
    extend([], 0)
    return out


def enumerate_tau_tilting(table: IndecTable) -> list[tuple[int, ...]]:
    H = table.hom_tau
    return cliques_of_size(table.tau_rigid,
                           lambda i, j: H[i, j] == 0 and H[j, i] == 0, table.n)


def enumerate_tilting(table: IndecTable) -> list[tuple[int, ...]]:
    E = table.ext1
    usable = [a and b for a, b in zip(table.pd_le_one, table.self_ext_free)]
    return cliques_of_size(usable, lambda i, j: E[i, j] == 0 and E[j, i] == 0, table.n)


@dataclass(frozen=True)
class SupportEntry:
    support: tuple[int, ...]
    summands: tuple[int, ...]


def enumerate_support_tau_tilting(A: BasedAlgebra, dim_bound, cap: int | None = None,
                                  table: IndecTable | None = None) -> list[SupportEntry]:
    """tau-tilting modules over every A/<e_E>, lifted back to indices of ``table``."""
    bound = normalize_bound(A, dim_bound)
    if table is None:
        table = enumerate_indecomposables(A, bound, cap)
    entries: dict[tuple[int, ...], SupportEntry] = {}
    verts = list(A.vertices)
    for r in range(len(verts) + 1):
        for E in combinations(verts, r):
            support = tuple(v for v in verts if v not in E)
            if not support:
                found = [()]
                lifted = [()]
            else:
                Q, data = quotient_by_idempotent(A, E)
                if not E:
                    qtable = table
                else:
                    qbound = tuple(bound[A.vertex_index(v)] for v in Q.vertices)
                    qtable = enumerate_indecomposables(Q, qbound, cap)
                found = enumerate_tau_tilting(qtable)
                lifted = []
                for summands in found:
                    idx = [table.index_of(lift_module(qtable.modules[k], A, data), cap)
                           if E else k for k in summands]
                    lifted.append(tuple(sorted(idx)))
            for summands in lifted:
                prev = entries.get(summands)
                if prev is None or len(prev.support) < len(support):
                    entries[summands] = SupportEntry(support, summands)
    return sorted(entries.values(),
                  key=lambda e: (-len(e.support), [A.vertex_index(v) for v in e.support],
                                 e.summands))


# --- homological checks -------------------------------------------------------------

def simple_projective_dimensions(A: BasedAlgebra, cutoff: int | None = None) -> dict:
    cutoff = A.n + 1 if cutoff is None else cutoff
    return {v: pd_up_to(simple_at(A, v), cutoff) for v in A.vertices}


def is_hereditary(A: BasedAlgebra) -> bool:
    """gl.dim <= 1, tested on the simples."""
    return all(is_pd_le_one(simple_at(A, v)) for v in A.vertices)


def check_completion_property(table: IndecTable, tau_tilting=None) -> tuple[bool, list[int]]:
    """Every tau-rigid indecomposable is a summand of some tau-tilting module."""
    tau_tilting = enumerate_tau_tilting(table) if tau_tilting is None else tau_tilting
    covered = {k for T in tau_tilting for k in T}
    missing = [k for k, ok in enumerate(table.tau_rigid) if ok and k not in covered]
    return not missing, missing


def check_sincere_faithful_props(table: IndecTable, tilting, tau_tilting,
                                 hereditary: bool) -> dict:
    tau_not_sincere = [T for T in tau_tilting if not is_sincere(table.direct_sum(T))]
    tilt_not_faithful = [T for T in tilting if not is_faithful(table.direct_sum(T))]
    tilting_set = set(tilting)
    # among tau-tilting modules, faithful exactly when tilting
    mismatched = [T for T in tau_tilting
                  if is_faithful(table.direct_sum(T)) != (T in tilting_set)]
    ringel_violations = []
    if hereditary:
        for M in table.all_modules:
            if M.is_zero or not is_sincere(M):
                continue
            if ext1_dim(M, M) == 0 and not is_faithful(M):
                ringel_violations.append(M)
    witnesses = [k for k in range(len(table)) if table.sincere[k] and not table.faithful[k]]
    return {
        "tau_tilting_sincere": not tau_not_sincere,
        "tilting_faithful": not tilt_not_faithful,
        "faithful_iff_tilting": not mismatched,
        "tau_tilting_not_faithful": [table.label(T) for T in tau_tilting
                                     if not is_faithful(table.direct_sum(T))],
        "hereditary_sincere_rigid_faithful": (not ringel_violations) if hereditary else None,
        "sincere_not_faithful": [table.labels[k] for k in witnesses],
    }


def saturation_check(A: BasedAlgebra, bound, cap: int | None = None) -> list[dict]:
    """Indecomposables with one coordinate raised to bound + 1."""
    bound = normalize_bound(A, bound)
    new = []
    seen = set()
    for i in range(A.n):
        raised = list(bound)
        raised[i] += 1
        for dims in dimension_vectors(raised):
            if dims[i] != raised[i] or dims in seen:
                continue
            seen.add(dims)
            for M in modules_of_dim(A, dims, cap):
                if is_indecomposable(M, cap):
                    new.append(dict(zip(A.vertices, dims)))
                    break
    return new


# --- the hereditary characterisation ------------------------------------------------

@dataclass
class ClassificationReport:
    name: str
    algebra: BasedAlgebra
    bound: tuple[int, ...]
    max_length: int | None
    cap: int
    table: IndecTable
    families_computed: bool
    tilting: list[tuple[int, ...]] | None
    tau_tilting: list[tuple[int, ...]] | None
    support_tau_tilting: list[SupportEntry] | None
    hereditary: bool
    has_loop: bool
    simple_pd: dict
    families_equal: bool | None
    rigid_modules_partial_tilting: bool
    verdict: str
    witness: tuple[int, ...] | None
    completion: tuple[bool, list[int]] | None
    sincere_faithful: dict | None
    saturation: list[dict] | None
    warnings: list[str]

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def family_labels(self, family) -> list[str]:
        return [self.table.label(T) for T in family]

    def to_json(self) -> dict:
        A, T = self.algebra, self.table
        vkey = [str(v) for v in A.vertices]

        def family(fam):
            return [{"summands": list(S), "label": T.label(S)} for S in fam]

        indecs = []
        for k, M in enumerate(T.modules):
            indecs.append({
                "index": k,
                "label": T.labels[k],
                "dim_vector": dict(zip(vkey, M.dims)),
                "module": M.to_json(),
                "tau_rigid": T.tau_rigid[k],
                "pd_le_one": T.pd_le_one[k],
                "projective": T.projective[k],
                "sincere": T.sincere[k],
                "faithful": T.faithful[k],
                "self_ext_free": T.self_ext_free[k],
                "residue_degree": T.residue_degree[k],
            })
        if self.families_computed:
            families = {
                "status": "COMPUTED",
                "tilting": family(self.tilting),
                "tau_tilting": family(self.tau_tilting),
                "support_tau_tilting": [
                    {"support": list(e.support), "summands": list(e.summands),
                     "label": T.label(e.summands)} for e in self.support_tau_tilting],
                "counts": {"tilting": len(self.tilting),
                           "tau_tilting": len(self.tau_tilting),
                           "support_tau_tilting": len(self.support_tau_tilting)},
            }
        else:
            families = {"status": "NOT COMPUTED", "tilting": None, "tau_tilting": None,
                        "support_tau_tilting": None, "counts": None}
        return {
            "algebra": {
                "name": self.name,
                "field": A.p,
                "vertices": list(A.vertices),
                "arrows": [[a.name, a.source, a.target] for a in A.quiver.arrows],
                "dimension": A.dim,
                "basis": [{"name": b.name, "source": b.source, "target": b.target}
                          for b in A.basis],
            },
            "bounds": {"dim_bound": dict(zip(vkey, self.bound)),
                       "max_length": self.max_length, "cap": self.cap},
            "indecomposables": indecs,
            "pairwise": {"dim_hom": T.hom.tolist(), "ext1_dim": T.ext1.tolist(),
                         "dim_hom_tau": T.hom_tau.tolist()},
            "families": families,
            "hereditary": self.hereditary,
            "has_loop": self.has_loop,
            "simple_pd": {str(v): (d if isinstance(d, int) else str(d))
                          for v, d in self.simple_pd.items()},
            "theorem": {
                "families_equal": self.families_equal,
                "rigid_modules_partial_tilting": self.rigid_modules_partial_tilting,
                "verdict": self.verdict,
                "witness": None if self.witness is None else T.label(self.witness),
                "witness_summands": None if self.witness is None else list(self.witness),
            },
            "completion": None if self.completion is None else {
                "holds": self.completion[0],
                "counterexamples": [T.labels[k] for k in self.completion[1]]},
            "sincere_faithful": self.sincere_faithful,
            "saturation": None if self.saturation is None else {
                "new_indecomposables": [{str(v): d for v, d in dv.items()}
                                        for dv in self.saturation]},
            "warnings": list(self.warnings),
        }


def check_theorem(A: BasedAlgebra, dim_bound, name: str = "", cap: int | None = None,
                  families: bool = True, saturation: bool = True,
                  max_length: int | None = None) -> ClassificationReport:
    """Classify A within the bound and test: hereditary iff (no loop and every
    tau-tilting module is tilting)."""
    cap = default_cap() if cap is None else cap
    bound = normalize_bound(A, dim_bound)
    table = enumerate_indecomposables(A, bound, cap)
    hereditary = is_hereditary(A)
    loop = has_loop(A.quiver)
    warnings = []

    for k, deg in enumerate(table.residue_degree):
        if deg is not None and deg > 1:
            warnings.append(
                f"End({table.labels[k]}) has residue field of degree {deg} over F_{A.p}; "
                "this indecomposable splits over the algebraic closure")

    rigid_partial = all(pl and se for r, pl, se in
                        zip(table.tau_rigid, table.pd_le_one, table.self_ext_free) if r)
    tilting = tau_tilting = support = completion = sf = None
    witness = None
    equal = None
    if families:
        tau_tilting = enumerate_tau_tilting(table)
        tilting = enumerate_tilting(table)
        support = enumerate_support_tau_tilting(A, bound, cap, table)
        equal = set(tau_tilting) == set(tilting)
        extra = sorted(set(tau_tilting) - set(tilting))
        witness = extra[0] if extra else None
        completion = check_completion_property(table, tau_tilting)
        sf = check_sincere_faithful_props(table, tilting, tau_tilting, hereditary)
        rhs = (not loop) and equal
    else:
        rhs = (not loop) and rigid_partial
    verdict = "PASS" if hereditary == rhs else "FAIL"

    sat = None
    if saturation:
        sat = saturation_check(A, bound, cap)
        if sat:
            warnings.append("indecomposables exist just beyond the dimension bound; "
                            "the families are lower bounds, not complete lists")
    return ClassificationReport(
        name=name, algebra=A, bound=bound, max_length=max_length, cap=cap, table=table,
        families_computed=families, tilting=tilting, tau_tilting=tau_tilting,
        support_tau_tilting=support, hereditary=hereditary, has_loop=loop,
        simple_pd=simple_projective_dimensions(A), families_equal=equal,
        rigid_modules_partial_tilting=rigid_partial, verdict=verdict, witness=witness,
        completion=completion, sincere_faithful=sf, saturation=sat, warnings=warnings)
