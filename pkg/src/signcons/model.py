"""Core domain types for influence graphs and observation profiles.

An influence graph is a directed graph whose edges may carry a sign. An
observation profile assigns signs to some of its vertices. Input vertices are
exempt from the sign consistency constraint.

`Instance` is the loose, builder-style description (it may contain mistakes);
`validate` turns it into an immutable `ValidatedInstance` that every other
module consumes. Vertices are interned to dense indices in canonical
(lexicographic) name order, so index order and name order coincide.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, Sign):
            return Sign(int(self) * int(other))
        return NotImplemented

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, token: str) -> "Sign":
        if token == "+":
            return cls.PLUS
        if token == "-":
            return cls.MINUS
        raise ValueError(f"not a sign: {token!r}")

    def __str__(self) -> str:
        return self.symbol


def influence(source: Sign, edge: Sign) -> Sign:
    """Sign of the influence a regulator labeled `source` exerts over an edge labeled `edge`."""
    return source * edge


class InstanceError(ValueError):
    """Base class for malformed instances."""

    def __init__(self, message: str, element=None):
        super().__init__(message)
        self.element = element


class DuplicateEdge(InstanceError):
    pass


class UnknownVertexReference(InstanceError):
    pass


class ConflictingObservation(InstanceError):
    pass


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    sign: Sign | None = None


@dataclass
class Instance:
    """Unchecked instance description.

    The ``add_*``/``observe`` helpers declare vertices on the fly; appending to
    the lists directly does not. ``observations`` is a list of pairs rather
    than a dict so contradictory measurements survive until `validate`.
    """

    vertices: list[str] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    observations: list[tuple[str, Sign]] = field(default_factory=list)
    inputs: list[str] = field(default_factory=list)
    _declared: set[str] = field(default_factory=set, init=False, repr=False, compare=False)

    def __post_init__(self):
        self._declared.update(self.vertices)

    def declare(self, *names: str) -> None:
        for name in names:
            if name not in self._declared:
                self._declared.add(name)
                self.vertices.append(name)

    def add_edge(self, src: str, dst: str, sign: Sign | None = None) -> None:
        self.declare(src, dst)
        self.edges.append(Edge(src, dst, sign))

    def observe(self, vertex: str, sign: Sign) -> None:
        self.declare(vertex)
        self.observations.append((vertex, sign))

    def add_input(self, vertex: str) -> None:
        self.declare(vertex)
        self.inputs.append(vertex)


@dataclass(frozen=True, eq=False)
class ValidatedInstance:
    """Immutable, indexed influence graph with profile and inputs.

    Edges are stored as ``(src, dst, sign)`` index triples sorted by
    ``(src, dst)``; ``sign`` is 1, -1 or 0 (unlabeled). ``obs[v]`` is 1, -1 or 0
    (unobserved). ``in_edges[v]`` lists edge ids targeting ``v`` ordered by
    source; ``out_edges[v]`` lists edge ids leaving ``v`` ordered by target.
    """

    names: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    obs: tuple[int, ...]
    is_input: tuple[bool, ...]
    index: Mapping[str, int] = field(repr=False)
    in_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    edge_index: Mapping[tuple[int, int], int] = field(repr=False)

    @classmethod
    def build(
        cls,
        names: Iterable[str],
        edges: Iterable[tuple[int, int, int]],
        obs: Iterable[int],
        is_input: Iterable[bool],
    ) -> "ValidatedInstance":
        names = tuple(names)
        edges = tuple(sorted(edges))
        n = len(names)
        ins: list[list[int]] = [[] for _ in range(n)]
        outs: list[list[int]] = [[] for _ in range(n)]
        for e, (s, d, _) in enumerate(edges):
            outs[s].append(e)
            ins[d].append(e)
        for lst in ins:
            lst.sort(key=lambda e: edges[e][0])
        return cls(
            names=names,
            edges=edges,
            obs=tuple(obs),
            is_input=tuple(bool(b) for b in is_input),
            index={name: i for i, name in enumerate(names)},
            in_edges=tuple(tuple(lst) for lst in ins),
            out_edges=tuple(tuple(lst) for lst in outs),
            edge_index={(s, d): e for e, (s, d, _) in enumerate(edges)},
        )

    def __eq__(self, other):
        if not isinstance(other, ValidatedInstance):
            return NotImplemented
        return (
            self.names == other.names
            and self.edges == other.edges
            and self.obs == other.obs
            and self.is_input == other.is_input
        )

    def __hash__(self):
        return hash((self.names, self.edges, self.obs, self.is_input))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def inputs(self) -> frozenset[str]:
        return frozenset(self.names[v] for v in range(self.n) if self.is_input[v])

    @property
    def profile(self) -> dict[str, Sign]:
        return {self.names[v]: Sign(s) for v, s in enumerate(self.obs) if s}

    def edge_list(self) -> list[Edge]:
        return [
            Edge(self.names[s], self.names[d], Sign(sg) if sg else None)
            for s, d, sg in self.edges
        ]

    def non_inputs(self) -> list[int]:
        return [v for v in range(self.n) if not self.is_input[v]]

    def vertex_ids(self, names: Iterable[str]) -> list[int]:
        try:
            return sorted(self.index[name] for name in names)
        except KeyError as exc:
            raise UnknownVertexReference(f"unknown vertex {exc.args[0]!r}", exc.args[0]) from None

    def vertex_names(self, ids: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.names[v] for v in sorted(ids))

    def predecessors(self, v: int) -> list[int]:
        return [self.edges[e][0] for e in self.in_edges[v]]

    def successors(self, v: int) -> list[int]:
        return [self.edges[e][1] for e in self.out_edges[v]]

    def with_inputs(self, extra: Iterable[int]) -> "ValidatedInstance":
        flags = list(self.is_input)
        for v in extra:
            flags[v] = True
        if tuple(flags) == self.is_input:
            return self
        return ValidatedInstance.build(self.names, self.edges, self.obs, flags)

    def with_observations(self, updates: Mapping[str, Sign]) -> "ValidatedInstance":
        obs = list(self.obs)
        for name, sign in updates.items():
            obs[self.index[name]] = int(sign)
        return ValidatedInstance.build(self.names, self.edges, obs, self.is_input)

    def to_instance(self) -> Instance:
        return Instance(
            vertices=list(self.names),
            edges=self.edge_list(),
            observations=sorted(self.profile.items()),
            inputs=sorted(self.inputs),
        )


def validate(raw: Instance | ValidatedInstance) -> ValidatedInstance:
    """Check the instance invariants and build the indexed form.

    Every vertex referenced by an edge, observation or input must be listed in
    ``raw.vertices``. Raises `UnknownVertexReference`, `DuplicateEdge` or
    `ConflictingObservation`, each naming the offending element.
    """
    if isinstance(raw, ValidatedInstance):
        return raw

    names = set(raw.vertices)
    for name in names:
        # a leading '#' would read back as a comment
        if not name or any(ch.isspace() for ch in name) or '"' in name or name[0] == "#":
            raise InstanceError(f"invalid vertex name {name!r}", name)
    refs = [n for e in raw.edges for n in (e.src, e.dst)]
    refs += [v for v, _ in raw.observations]
    refs += list(raw.inputs)
    for name in refs:
        if name not in names:
            raise UnknownVertexReference(f"reference to undeclared vertex {name!r}", name)
    ordered = sorted(names)
    index = {name: i for i, name in enumerate(ordered)}

    seen: set[tuple[int, int]] = set()
    edges = []
    for e in raw.edges:
        key = (index[e.src], index[e.dst])
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {e.src} -> {e.dst}", (e.src, e.dst))
        seen.add(key)
        edges.append((key[0], key[1], int(e.sign) if e.sign is not None else 0))

    obs = [0] * len(ordered)
    for name, sign in raw.observations:
        v = index[name]
        if obs[v] and obs[v] != int(sign):
            raise ConflictingObservation(f"conflicting observations for {name}", name)
        obs[v] = int(sign)

    flags = [False] * len(ordered)
    for name in raw.inputs:
        flags[index[name]] = True
    return ValidatedInstance.build(ordered, edges, obs, flags)


def guess_inputs(inst: ValidatedInstance) -> ValidatedInstance:
    """Declare every vertex without predecessors an input."""
    inst = validate(inst)
    return inst.with_inputs(v for v in range(inst.n) if not inst.in_edges[v])


@dataclass(frozen=True)
class Witness:
    """Total vertex and edge labelings extending the given ones."""

    vertex_labels: Mapping[str, Sign]
    edge_labels: Mapping[tuple[str, str], Sign]


@dataclass(frozen=True)
class Mic:
    members: tuple[str, ...]
    removal_witnesses: Mapping[str, Witness] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.members:
            raise ValueError("a MIC has at least one member")
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return " ".join(self.members)
