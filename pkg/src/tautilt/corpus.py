"""Built-in algebras with recommended bounds and golden facts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraSpec, BasedAlgebra, build_basis, parse_algebra_spec


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    dim_bound: tuple[int, ...]
    description: str = ""
    # False for representation-infinite algebras: per-module facts only
    families: bool = True
    expected: dict = field(default_factory=dict)

    def spec(self, field: int | None = None) -> AlgebraSpec:
        return parse_algebra_spec(self.text, field)

    def algebra(self, field: int | None = None, max_length: int | None = None) -> BasedAlgebra:
        spec = self.spec(field)
        return build_basis(spec) if max_length is None else build_basis(spec, max_length)


def _linear(n: int) -> str:
    names = "abcdefgh"
    arrows = ", ".join(f'["{names[i]}", {i + 1}, {i + 2}]' for i in range(n - 1))
    return f"field = 2\nvertices = {list(range(1, n + 1))}\narrows = [{arrows}]\nrelations = []\n"


_ENTRIES = [
    CorpusEntry(
        "a3rad2",
        'field = 2\nvertices = [1, 2, 3]\narrows = [["a", 1, 2], ["b", 2, 3]]\n'
        'relations = ["a*b"]\n',
        (1, 1, 1),
        "1 -> 2 -> 3 with a*b = 0",
        expected={"dimension": 5, "indecomposables": 5, "tilting": 2, "tau_tilting": 3,
                  "support_tau_tilting": 12, "hereditary": False, "has_loop": False,
                  "simple_pd": {"1": 2, "2": 1, "3": 0}},
    ),
    CorpusEntry(
        "local2",
        'field = 2\nvertices = [1]\narrows = [["x", 1, 1]]\nrelations = ["x*x"]\n',
        (2,),
        "k[x]/(x^2)",
        expected={"dimension": 2, "indecomposables": 2, "tilting": 1, "tau_tilting": 1,
                  "support_tau_tilting": 2, "hereditary": False, "has_loop": True,
                  "simple_pd": {"1": ">=2"}},
    ),
    CorpusEntry(
        "kronecker",
        'field = 2\nvertices = [1, 2]\narrows = [["a", 1, 2], ["b", 1, 2]]\nrelations = []\n',
        (1, 1),
        "two parallel arrows 1 -> 2",
        families=False,
        expected={"dimension": 4, "indecomposables": 5, "hereditary": True,
                  "has_loop": False, "simple_pd": {"1": 1, "2": 0}},
    ),
    CorpusEntry("linear-a1", _linear(1), (1,), "a single vertex",
                expected={"dimension": 1, "indecomposables": 1, "tilting": 1,
                          "tau_tilting": 1, "support_tau_tilting": 2, "hereditary": True,
                          "has_loop": False, "simple_pd": {"1": 0}}),
    CorpusEntry("linear-a2", _linear(2), (1, 1), "1 -> 2",
                expected={"dimension": 3, "indecomposables": 3, "tilting": 2,
                          "tau_tilting": 2, "support_tau_tilting": 5, "hereditary": True,
                          "has_loop": False, "simple_pd": {"1": 1, "2": 0}}),
    CorpusEntry("linear-a3", _linear(3), (1, 1, 1), "1 -> 2 -> 3",
                expected={"dimension": 6, "indecomposables": 6, "tilting": 5,
                          "tau_tilting": 5, "support_tau_tilting": 14, "hereditary": True,
                          "has_loop": False, "simple_pd": {"1": 1, "2": 1, "3": 0}}),
    CorpusEntry("linear-a4", _linear(4), (1, 1, 1, 1), "1 -> 2 -> 3 -> 4",
                expected={"dimension": 10, "indecomposables": 10, "tilting": 14,
                          "tau_tilting": 14, "support_tau_tilting": 42, "hereditary": True,
                          "has_loop": False,
                          "simple_pd": {"1": 1, "2": 1, "3": 1, "4": 0}}),
    CorpusEntry(
        "nakayama-rad2-a4",
        'field = 2\nvertices = [1, 2, 3, 4]\n'
        'arrows = [["a", 1, 2], ["b", 2, 3], ["c", 3, 4]]\nrelations = ["a*b", "b*c"]\n',
        (1, 1, 1, 1),
        "1 -> 2 -> 3 -> 4 with radical square zero",
        expected={"dimension": 7, "indecomposables": 7, "tilting": 2, "tau_tilting": 5,
                  "support_tau_tilting": 29, "hereditary": False,
                  "has_loop": False, "simple_pd": {"1": 3, "2": 2, "3": 1, "4": 0}},
    ),
    CorpusEntry(
        "commutative-square",
        'field = 2\nvertices = [1, 2, 3, 4]\n'
        'arrows = [["a", 1, 2], ["c", 2, 4], ["b", 1, 3], ["d", 3, 4]]\n'
        'relations = ["a*c - b*d"]\n',
        (1, 1, 1, 1),
        "1 -> 2 -> 4, 1 -> 3 -> 4 with commutativity",
        expected={"dimension": 9, "indecomposables": 11, "tilting": 14, "tau_tilting": 15,
                  "support_tau_tilting": 46, "hereditary": False,
                  "has_loop": False, "simple_pd": {"1": 2, "2": 1, "3": 1, "4": 0}},
    ),
    CorpusEntry(
        "cyclic-a3-rad2",
        'field = 2\nvertices = [1, 2, 3]\n'
        'arrows = [["a", 1, 2], ["b", 2, 3], ["c", 3, 1]]\nrelations = ["a*b", "b*c", "c*a"]\n',
        (1, 1, 1),
        "oriented 3-cycle with radical square zero (self-injective)",
        expected={"dimension": 6, "indecomposables": 6, "tilting": 1, "tau_tilting": 4,
                  "support_tau_tilting": 14, "hereditary": False,
                  "has_loop": False, "simple_pd": {"1": ">=4", "2": ">=4", "3": ">=4"}},
    ),
]

CORPUS: dict[str, CorpusEntry] = {e.name: e for e in _ENTRIES}


def get(name: str) -> CorpusEntry:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(CORPUS)}") from None
