"""Bound quiver algebras kQ/I over a prime field, in based form.

Paths compose left to right: the word ``a*b`` means first ``a`` then ``b``,
so it is nonzero in kQ only when ``target(a) == source(b)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import ffla

DEFAULT_MAX_LENGTH = 16


class AlgebraError(Exception):
    """Base class for invalid algebra input."""


class SpecSyntaxError(AlgebraError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _at_line(exc: AlgebraError, line: int | None) -> AlgebraError:
    """Same error class, message prefixed with the offending line."""
    if line is None or isinstance(exc, SpecSyntaxError):
        return exc
    new = type(exc)(f"line {line}: {exc}")
    new.line = line
    return new


class UnknownSymbol(AlgebraError):
    pass


class NonComposablePath(AlgebraError):
    pass


class NonParallelRelation(AlgebraError):
    pass


class NonAdmissibleRelation(AlgebraError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex ids must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise UnknownSymbol(f"arrow {a.name!r} uses an undeclared vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownSymbol(f"unknown arrow {name!r}")

    def paths(self, length: int) -> list["PathWord"]:
        """All paths of the given length, sorted by arrow-name sequence."""
        if length == 0:
            return [PathWord(v, v, ()) for v in self.vertices]
        out = [PathWord(prev.source, a.target, prev.arrows + (a.name,))
               for prev in self.paths(length - 1)
               for a in self.arrows if prev.target == a.source]
        out.sort(key=lambda w: w.arrows)
        return out


def has_loop(quiver: Quiver) -> bool:
    return any(a.is_loop for a in quiver.arrows)


@dataclass(frozen=True)
class PathWord:
    source: int
    target: int
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def name(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"

    @classmethod
    def from_names(cls, quiver: Quiver, names) -> "PathWord":
        names = tuple(names)
        if not names:
            raise NonComposablePath("empty arrow sequence")
        arrows = [quiver.arrow(n) for n in names]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise NonComposablePath(
                    f"path {'*'.join(names)!r} is not composable at {x.name}*{y.name}"
                )
        return cls(arrows[0].source, arrows[-1].target, names)


@dataclass(frozen=True)
class RelationExpr:
    terms: tuple[tuple[int, PathWord], ...]

    def __post_init__(self):
        for _, w in self.terms:
            if len(w) < 2:
                raise NonAdmissibleRelation(
                    f"relation term {w.name!r} has length {len(w)} < 2"
                )
        ends = {(w.source, w.target) for _, w in self.terms}
        if len(ends) > 1:
            raise NonParallelRelation("relation paths do not share source and target")

    @property
    def min_length(self) -> int:
        return min(len(w) for _, w in self.terms)


@dataclass(frozen=True)
class AlgebraSpec:
    quiver: Quiver
    relations: tuple[RelationExpr, ...] = ()
    characteristic: int = 2

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise AlgebraError(f"field characteristic {self.characteristic} is not prime")

    def with_field(self, p: int) -> "AlgebraSpec":
        rels = []
        for r in self.relations:
            terms = _collect_terms([(c, w) for c, w in r.terms], p)
            if terms:
                rels.append(RelationExpr(terms))
        return AlgebraSpec(self.quiver, tuple(rels), p)


_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_TOKEN_RE = re.compile(r"^(?:\d+|[A-Za-z_][A-Za-z0-9_']*)$")


def _collect_terms(raw, p: int) -> tuple[tuple[int, PathWord], ...]:
    acc: dict[PathWord, int] = {}
    for c, w in raw:
        acc[w] = (acc.get(w, 0) + c) % p
    return tuple((c, w) for w, c in sorted(acc.items(), key=lambda kv: kv[0].arrows) if c)


def parse_relation(text: str, quiver: Quiver, p: int) -> RelationExpr | None:
    """Parse ``"a*b - 2*c*d"``.  Returns None if all terms cancel mod p."""
    s = text.strip()
    if not s:
        raise SpecSyntaxError("empty relation")
    raw = []
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos and s[pos:m.start()].strip():
            raise SpecSyntaxError(f"cannot parse relation {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        tokens = [t.strip() for t in m.group(2).split("*")]
        if any(not _TOKEN_RE.match(t) for t in tokens):
            raise SpecSyntaxError(f"bad term {m.group(2).strip()!r} in relation {text!r}")
        coeff = sign
        if tokens[0].isdigit():
            coeff *= int(tokens[0])
            tokens = tokens[1:]
        if not tokens:
            raise SpecSyntaxError(f"relation {text!r} has a constant term")
        w = PathWord.from_names(quiver, tokens)
        if len(w) < 2:
            raise NonAdmissibleRelation(f"relation {text!r} contains a path of length {len(w)}")
        raw.append((coeff, w))
    if pos != len(s):
        raise SpecSyntaxError(f"cannot parse relation {text!r}")
    terms = _collect_terms(raw, p)
    return RelationExpr(terms) if terms else None


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _read_entries(text: str) -> dict[str, tuple[object, int]]:
    entries: dict[str, tuple[object, int]] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        start = i + 1
        line = _strip_comment(lines[i])
        i += 1
        if not line.strip():
            continue
        if "=" not in line:
            raise SpecSyntaxError("expected 'key = value'", start, 1)
        key, value = line.split("=", 1)
        key = key.strip()
        if not re.fullmatch(r"[A-Za-z_]+", key):
            raise SpecSyntaxError(f"bad key {key!r}", start, 1)
        # values may continue over lines until brackets balance
        while value.count("[") > value.count("]") and i < len(lines):
            value += "\n" + _strip_comment(lines[i])
            i += 1
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError as exc:
            col = exc.colno + (len(line.split("=", 1)[0]) + 1 if exc.lineno == 1 else 0)
            raise SpecSyntaxError(f"invalid value for {key!r}: {exc.msg}",
                                  start + exc.lineno - 1, col) from None
        if key in entries:
            raise SpecSyntaxError(f"duplicate key {key!r}", start, 1)
        entries[key] = (parsed, start)
    return entries


def parse_algebra_spec(text: str, field: int | None = None) -> AlgebraSpec:
    """Parse the line-oriented algebra file format.

    ``field`` overrides the characteristic declared in the file.
    """
    entries = _read_entries(text)
    for required in ("vertices", "arrows"):
        if required not in entries:
            raise SpecSyntaxError(f"missing key {required!r}")
    unknown = set(entries) - {"field", "vertices", "arrows", "relations", "name"}
    if unknown:
        key = sorted(unknown)[0]
        raise SpecSyntaxError(f"unknown key {key!r}", entries[key][1], 1)

    p_raw, p_line = entries.get("field", (2, None))
    p = field if field is not None else p_raw
    if not isinstance(p, int) or not is_prime(p):
        raise SpecSyntaxError(f"field must be a prime, got {p!r}", p_line)

    verts, vline = entries["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, int) for v in verts):
        raise SpecSyntaxError("vertices must be a list of integers", vline)
    arrows_raw, aline = entries["arrows"]
    if not isinstance(arrows_raw, list):
        raise SpecSyntaxError("arrows must be a list", aline)
    arrows = []
    for a in arrows_raw:
        if not (isinstance(a, list) and len(a) == 3 and isinstance(a[0], str)
                and isinstance(a[1], int) and isinstance(a[2], int)):
            raise SpecSyntaxError(f"arrow entry {a!r} must be [name, source, target]", aline)
        if not _TOKEN_RE.match(a[0]) or a[0].isdigit():
            raise SpecSyntaxError(f"bad arrow name {a[0]!r}", aline)
        arrows.append(Arrow(a[0], a[1], a[2]))
    try:
        quiver = Quiver(tuple(verts), tuple(arrows))
    except AlgebraError as exc:
        raise _at_line(exc, aline) from None

    rels_raw, rline = entries.get("relations", ([], None))
    if not isinstance(rels_raw, list) or not all(isinstance(r, str) for r in rels_raw):
        raise SpecSyntaxError("relations must be a list of strings", rline)
    relations = []
    for r in rels_raw:
        try:
            rel = parse_relation(r, quiver, p)
        except SpecSyntaxError as exc:
            raise SpecSyntaxError(str(exc), rline) from None
        except AlgebraError as exc:
            raise _at_line(exc, rline) from None
        if rel is not None:
            relations.append(rel)
    return AlgebraSpec(quiver, tuple(relations), p)


def format_algebra_spec(spec: AlgebraSpec) -> str:
    arrows = ", ".join(json.dumps([a.name, a.source, a.target]) for a in spec.quiver.arrows)
    rels = []
    for r in spec.relations:
        parts = []
        for c, w in r.terms:
            parts.append(("" if not parts else " + ") + f"{c}*{'*'.join(w.arrows)}")
        rels.append(json.dumps("".join(parts)))
    return (
        f"field = {spec.characteristic}\n"
        f"vertices = {json.dumps(list(spec.quiver.vertices))}\n"
        f"arrows = [{arrows}]\n"
        f"relations = [{', '.join(rels)}]\n"
    )


@dataclass(frozen=True)
class BasisElement:
    name: str
    source: int
    target: int
    length: int
    # product of generator (arrow) basis indices equal to this element
    word: tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class BasedAlgebra:
    """A finite-dimensional algebra with a basis adapted to the vertex idempotents.

    ``table[a, b]`` holds the coordinates of ``basis[a] * basis[b]``.
    """

    p: int
    vertices: tuple[int, ...]
    basis: tuple[BasisElement, ...]
    table: np.ndarray = field(repr=False)
    idempotents: tuple[int, ...]
    radical: tuple[int, ...]
    arrows: tuple[int, ...]
    provenance: str = "quiver-presented"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.table.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def key(self) -> tuple:
        return (self.p, self.vertices, self.basis, self.table.tobytes(), self.provenance)

    def __eq__(self, other):
        if not isinstance(other, BasedAlgebra):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @cached_property
    def quiver(self) -> Quiver:
        """The ordinary quiver, read off the generating arrows."""
        return Quiver(self.vertices, tuple(
            Arrow(self.basis[i].name, self.basis[i].source, self.basis[i].target)
            for i in self.arrows))

    def vertex_index(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UnknownSymbol(f"unknown vertex {v!r}") from None

    def index(self, name: str) -> int:
        for i, b in enumerate(self.basis):
            if b.name == name:
                return i
        raise UnknownSymbol(f"no basis element named {name!r}")

    def element(self, name: str) -> np.ndarray:
        x = np.zeros(self.dim, dtype=np.int64)
        x[self.index(name)] = 1
        return x

    def unit(self) -> np.ndarray:
        x = np.zeros(self.dim, dtype=np.int64)
        x[list(self.idempotents)] = 1
        return x

    def multiply(self, x, y) -> np.ndarray:
        return multiply(self, x, y)

    def between(self, i: int, j: int) -> list[int]:
        """Basis indices tagged ``(i, j)``, i.e. spanning e_i A e_j."""
        return [k for k, b in enumerate(self.basis) if b.source == i and b.target == j]

    def starting_at(self, i: int) -> list[int]:
        return [k for k, b in enumerate(self.basis) if b.source == i]


def multiply(A: BasedAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return np.einsum("i,j,ijk->k", x, y, A.table) % A.p


def _path_order(w: PathWord):
    return (len(w), w.arrows)


def _ideal_rows(quiver: Quiver, relations, index: dict[PathWord, int], cutoff: int):
    """Truncations (terms of length <= cutoff) of u*r*v for all paths u, v."""
    by_length = [quiver.paths(k) for k in range(cutoff + 1)]
    rows = []
    for rel in relations:
        src, tgt = rel.terms[0][1].source, rel.terms[0][1].target
        budget = cutoff - rel.min_length
        for lu in range(budget + 1):
            left = [u for u in by_length[lu] if u.target == src]
            for lv in range(budget - lu + 1):
                right = [v for v in by_length[lv] if v.source == tgt]
                for u, v in product(left, right):
                    row = np.zeros(len(index), dtype=np.int64)
                    for c, w in rel.terms:
                        arrows = u.arrows + w.arrows + v.arrows
                        if len(arrows) <= cutoff:
                            row[index[PathWord(u.source, v.target, arrows)]] += c
                    rows.append(row)
    return rows


def build_basis(spec: AlgebraSpec, max_length: int = DEFAULT_MAX_LENGTH) -> BasedAlgebra:
    """Compute a basis and structure constants of kQ/I.

    Finds the least L such that every path of length L lies in I + R^(L+1)
    and returns kQ/(I + R^L), which is kQ/I for an admissible ideal I.
    Representatives are the shortest, then lexicographically least, paths.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    Q, p = spec.quiver, spec.characteristic
    stop = None
    for L in range(1, max_length + 1):
        paths = [w for k in range(L + 1) for w in Q.paths(k)]
        top = [w for w in paths if len(w) == L]
        if not top:
            stop = L
            break
        index = {w: i for i, w in enumerate(paths)}
        rows = _ideal_rows(Q, spec.relations, index, L)
        J = np.array(rows, dtype=np.int64).reshape(-1, len(paths)) % p
        r = ffla.rank(J, p)
        E = np.zeros((len(top), len(paths)), dtype=np.int64)
        for k, w in enumerate(top):
            E[k, index[w]] = 1
        if ffla.rank(np.vstack([J, E]), p) == r:
            stop = L
            break
    if stop is None:
        raise InfiniteDimensional(
            f"paths of length {max_length} survive outside the ideal; "
            "the algebra is infinite-dimensional or max_length is too small")

    L = stop
    paths = [w for k in range(L) for w in Q.paths(k)]
    index = {w: i for i, w in enumerate(paths)}
    J = np.array(_ideal_rows(Q, spec.relations, index, L - 1), dtype=np.int64)
    J = J.reshape(-1, len(paths)) % p
    # pivot on longest, lexicographically largest paths first
    order = sorted(range(len(paths)), key=lambda i: _path_order(paths[i]), reverse=True)
    if J.shape[0]:
        R, piv = ffla.rref(J[:, order], p)
        R = R[: len(piv)]
        pivot_cols = [order[c] for c in piv]
        Rfull = np.zeros((len(piv), len(paths)), dtype=np.int64)
        Rfull[:, order] = R
    else:
        pivot_cols, Rfull = [], np.zeros((0, len(paths)), dtype=np.int64)
    pivset = set(pivot_cols)
    trivial = [index[PathWord(v, v)] for v in Q.vertices]
    reps = trivial + sorted((i for i in range(len(paths))
                             if i not in pivset and len(paths[i]) > 0),
                            key=lambda i: _path_order(paths[i]))
    pos = {i: k for k, i in enumerate(reps)}

    def reduce(vec: np.ndarray) -> np.ndarray:
        for r, c in enumerate(pivot_cols):
            if vec[c]:
                vec = (vec - vec[c] * Rfull[r]) % p
        out = np.zeros(len(reps), dtype=np.int64)
        for i, k in pos.items():
            out[k] = vec[i]
        return out

    basis_paths = [paths[i] for i in reps]
    arrow_pos = {w.arrows[0]: k for k, w in enumerate(basis_paths) if len(w) == 1}
    basis = tuple(
        BasisElement(w.name, w.source, w.target, len(w),
                     tuple(arrow_pos[a] for a in w.arrows))
        for w in basis_paths)
    d = len(basis)
    table = np.zeros((d, d, d), dtype=np.int64)
    for a, wa in enumerate(basis_paths):
        for b, wb in enumerate(basis_paths):
            if wa.target != wb.source:
                continue
            arrows = wa.arrows + wb.arrows
            if len(arrows) >= L:
                continue
            vec = np.zeros(len(paths), dtype=np.int64)
            vec[index[PathWord(wa.source, wb.target, arrows)]] = 1
            table[a, b] = reduce(vec)
    idem = tuple(range(len(trivial)))
    radical = tuple(range(len(trivial), d))
    arrows = tuple(k for k, w in enumerate(basis_paths) if len(w) == 1)
    return BasedAlgebra(p, Q.vertices, basis, table, idem, radical, arrows,
                        "quiver-presented")


def opposite(A: BasedAlgebra) -> BasedAlgebra:
    """The opposite algebra on the same basis; ``opposite(opposite(A)) is A``."""
    cached = A._cache.get("opposite")
    if cached is not None:
        return cached
    basis = tuple(BasisElement(b.name, b.target, b.source, b.length, tuple(reversed(b.word)))
                  for b in A.basis)
    table = np.ascontiguousarray(np.transpose(A.table, (1, 0, 2)))
    prov = "quiver-presented" if A.provenance == "opposite-of" else "opposite-of"
    op = BasedAlgebra(A.p, A.vertices, basis, table, A.idempotents, A.radical, A.arrows, prov)
    op._cache["opposite"] = A
    A._cache["opposite"] = op
    return op


@dataclass(frozen=True)
class QuotientData:
    """Projection A -> A/<e_E>: ``x @ matrix`` gives quotient coordinates."""

    removed: tuple[int, ...]
    matrix: np.ndarray
    representatives: tuple[int, ...]

    def project(self, x, p: int) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self.matrix) % p


def ideal_of_idempotent(A: BasedAlgebra, E) -> np.ndarray:
    """Row basis of the two-sided ideal A e_E A."""
    rows = []
    for v in E:
        for b1 in range(A.dim):
            if A.basis[b1].target != v:
                continue
            for b2 in range(A.dim):
                if A.basis[b2].source == v:
                    rows.append(A.table[b1, b2])
    if not rows:
        return np.zeros((0, A.dim), dtype=np.int64)
    return ffla.row_basis(np.array(rows), A.p)


def quotient_by_idempotent(A: BasedAlgebra, E) -> tuple[BasedAlgebra, QuotientData]:
    """The algebra A/<e_E> with basis given by coset representatives."""
    E = tuple(sorted(set(E), key=A.vertex_index))
    for v in E:
        A.vertex_index(v)
    if len(E) == A.n:
        raise AlgebraError("cannot quotient by all vertices (zero algebra)")
    if not E:
        return A, QuotientData((), np.eye(A.dim, dtype=np.int64), tuple(range(A.dim)))
    key = ("quotient", E)
    if key in A._cache:
        return A._cache[key]
    I = ideal_of_idempotent(A, E)
    reps, Pi = ffla.quotient_projection(I, A.dim, A.p)
    pos = {r: k for k, r in enumerate(reps)}
    for r in reps:
        missing = [g for g in A.basis[r].word if g not in pos]
        if missing:
            raise AlgebraError("quotient representative uses an arrow inside the ideal")
    basis = tuple(BasisElement(A.basis[r].name, A.basis[r].source, A.basis[r].target,
                               A.basis[r].length, tuple(pos[g] for g in A.basis[r].word))
                  for r in reps)
    d = len(reps)
    table = np.zeros((d, d, d), dtype=np.int64)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            table[a, b] = (A.table[ra, rb] @ Pi) % A.p
    vertices = tuple(v for v in A.vertices if v not in E)
    idem = tuple(pos[A.idempotents[A.vertex_index(v)]] for v in vertices)
    radical = tuple(k for k in range(d) if k not in idem)
    arrows = tuple(pos[g] for g in A.arrows if g in pos)
    Q = BasedAlgebra(A.p, vertices, basis, table, idem, radical, arrows,
                     "quotient-by-idempotent")
    result = (Q, QuotientData(E, Pi, tuple(reps)))
    A._cache[key] = result
    return result


def radical_power_basis(A: BasedAlgebra, k: int) -> np.ndarray:
    """Row basis of rad(A)^k."""
    cur = np.eye(A.dim, dtype=np.int64)[list(A.radical)]
    for _ in range(k - 1):
        rows = [multiply(A, x, A.element(A.basis[r].name))
                for x in cur for r in A.radical]
        cur = ffla.row_basis(np.array(rows).reshape(-1, A.dim), A.p)
        if cur.shape[0] == 0:
            break
    return cur
