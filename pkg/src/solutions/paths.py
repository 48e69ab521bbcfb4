"""
AS graphs and their valid s-t paths.

A graph has vertices labelled with autonomous-system numbers 1..k. A path
from s to t is valid when it is simple and the AS labels along it are
non-decreasing and hit every label 1..k. Solutions are incidence vectors
over the edge list, so edge order fixes variable order.
"""

import json
import logging
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import ModelError
from ..model.solution import IndexTuple, Solution
from ..densities.base_density import DensitySpec
from ..densities.perturbation import density_from_dict
from .solution_set import ExplicitSolutionSet

logger = logging.getLogger(__name__)


class ASGraph:
    """
    Undirected graph whose vertices are partitioned into ASes V_1..V_k.

    Edges keep their input order; edge j is variable j of every solution.
    Each edge may carry a fixed length in [0, 1] or a length density.
    """

    def __init__(self, vertices: Sequence[Tuple[Hashable, int]], edges: Sequence[Dict[str, Any]],
                 s: Hashable, t: Hashable):
        self.graph = nx.Graph()
        self._rank: Dict[Hashable, int] = {}
        for rank, (vid, label) in enumerate(vertices):
            if vid in self._rank:
                raise ModelError(f"vertex {vid!r} declared twice")
            if int(label) < 1:
                raise ModelError(f"AS labels start at 1, vertex {vid!r} has {label}")
            self._rank[vid] = rank
            self.graph.add_node(vid, asn=int(label))

        self.edges: List[Tuple[Hashable, Hashable]] = []
        self.lengths: List[Optional[float]] = []
        self.densities: List[Optional[DensitySpec]] = []
        for j, edge in enumerate(edges):
            u, v = edge['u'], edge['v']
            if u not in self._rank or v not in self._rank:
                raise ModelError(f"edge {j} joins an undeclared vertex: {u!r}-{v!r}")
            if u == v or self.graph.has_edge(u, v):
                raise ModelError(f"edge {j} ({u!r}-{v!r}) is a loop or a parallel edge")
            length = edge.get('length')
            if length is not None and not 0.0 <= float(length) <= 1.0:
                raise ModelError(f"edge {j} length {length} outside [0, 1]")
            density = edge.get('density')
            if isinstance(density, dict):
                density = density_from_dict(density)
            self.graph.add_edge(u, v, index=j)
            self.edges.append((u, v))
            self.lengths.append(None if length is None else float(length))
            self.densities.append(density)

        labels = {self.label(v) for v in self.graph.nodes}
        self.k = max(labels) if labels else 0
        if s not in self._rank or t not in self._rank:
            raise ModelError("source and target must be declared vertices")
        if self.label(s) != 1:
            raise ModelError(f"source {s!r} must lie in AS 1")
        if self.label(t) != self.k:
            raise ModelError(f"target {t!r} must lie in the last AS {self.k}")
        self.s = s
        self.t = t

    def label(self, vertex: Hashable) -> int:
        return self.graph.nodes[vertex]['asn']

    @property
    def m(self) -> int:
        """Number of edges, the length of every solution vector."""
        return len(self.edges)

    def edge_index(self, u: Hashable, v: Hashable) -> int:
        return self.graph.edges[u, v]['index']

    def edge_as(self, j: int) -> Optional[int]:
        """AS of an intra-AS edge, None for an edge crossing a border."""
        u, v = self.edges[j]
        lu, lv = self.label(u), self.label(v)
        return lu if lu == lv else None

    def intra_edges(self, i: int) -> IndexTuple:
        """Indices of the edges of E_i."""
        return tuple(j for j in range(self.m) if self.edge_as(j) == i)

    def path_costs(self, x: Solution, lengths: Sequence[float]) -> Tuple[float, ...]:
        """C_i(P) for i = 1..k given one length per edge."""
        return tuple(sum(lengths[j] for j in self.intra_edges(i) if x.bits[j])
                     for i in range(1, self.k + 1))

    def _neighbours(self, v: Hashable) -> List[Hashable]:
        return sorted(self.graph.neighbors(v), key=self._rank.__getitem__)

    def iter_valid_paths(self) -> Iterator[List[Hashable]]:
        """Vertex sequences of valid paths in DFS-lex order."""
        path = [self.s]
        on_path = {self.s}

        def extend(v: Hashable) -> Iterator[List[Hashable]]:
            if v == self.t:
                if self.label(v) == self.k:
                    yield list(path)
                return
            here = self.label(v)
            for w in self._neighbours(v):
                if w in on_path:
                    continue
                lw = self.label(w)
                if lw < here or lw > here + 1:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend(w)
                path.pop()
                on_path.discard(w)

        yield from extend(self.s)

    def incidence(self, vertices: Sequence[Hashable]) -> Solution:
        bits = [0] * self.m
        for u, v in zip(vertices, vertices[1:]):
            bits[self.edge_index(u, v)] = 1
        return Solution(tuple(bits))

    def to_dict(self) -> Dict[str, Any]:
        vertices = sorted(self._rank, key=self._rank.__getitem__)
        edges = []
        for (u, v), length, density in zip(self.edges, self.lengths, self.densities):
            edge: Dict[str, Any] = {'u': u, 'v': v}
            if length is not None:
                edge['length'] = length
            if density is not None:
                edge['density'] = density.to_dict()
            edges.append(edge)
        return {
            'vertices': [{'id': v, 'as': self.label(v)} for v in vertices],
            'edges': edges,
            's': self.s,
            't': self.t,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ASGraph':
        try:
            vertices = [(v['id'], v['as']) for v in data['vertices']]
            return cls(vertices, data['edges'], data['s'], data['t'])
        except KeyError as exc:
            raise ModelError(f"graph description is missing field {exc.args[0]!r}") from None

    @classmethod
    def from_json(cls, text: str) -> 'ASGraph':
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"ASGraph(|V|={self.graph.number_of_nodes()}, |E|={self.m}, k={self.k})"


class PathSolutionSet(ExplicitSolutionSet):
    """Incidence vectors of the valid paths of an AS graph, DFS-lex order."""

    kind = "valid-paths"

    def __init__(self, graph: ASGraph, solutions: Sequence[Solution]):
        super().__init__(solutions, n=graph.m)
        self.graph = graph

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'n': self.n, 'graph': self.graph.to_dict()}


def valid_paths(graph: ASGraph) -> PathSolutionSet:
    """All valid s-t paths of the graph as incidence vectors; possibly empty."""
    solutions = [graph.incidence(p) for p in graph.iter_valid_paths()]
    logger.debug("%r has %d valid paths", graph, len(solutions))
    return PathSolutionSet(graph, solutions)
