"""Fundamental groups of orbit complexes by a combinatorial van Kampen.

The complex is a bipartite graph of spaces: cell nodes are contractible,
wall nodes are circles. The loop of a wall climbs one full turn of the
ambient helix, so the disk filling it has to pass through both neighbouring
cells; a wall keeps its infinite cyclic group until at least two cell edges
are glued to it. Graph loops (edges beyond a spanning tree) contribute free
generators on top.

The resulting presentations only ever carry relations that kill a single
generator, so Tietze simplification reduces them to free groups and the
classification is by rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Disconnected, DomainError
from .walls import OrbitComplex


@dataclass(frozen=True)
class PresentedGroup:
    """A finitely presented group together with its simplified form.

    ``generators`` and ``relations`` are the raw van Kampen data (one
    relation is a tuple of generator names whose product bounds).
    ``free_generators`` survive simplification; ``name`` classifies the
    simplified group and ``free_rank`` is its rank.
    """

    generators: tuple
    relations: tuple
    free_generators: tuple
    name: str
    free_rank: int

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0


def tietze_simplify(generators, relations):
    """Kill generators that appear alone in a relation, repeatedly.

    Returns (surviving generators, remaining relations). The van Kampen
    construction below only emits single-generator relations, for which this
    is a complete normal form (a free group on the survivors).
    """
    gens = list(generators)
    rels = [tuple(r) for r in relations]
    for r in rels:
        for x in r:
            if x not in gens:
                raise DomainError(f"relation mentions unknown generator {x!r}")
    changed = True
    while changed:
        changed = False
        for r in rels:
            if len(r) == 1:
                dead = r[0]
                gens.remove(dead)
                rels = [tuple(x for x in rr if x != dead) for rr in rels]
                rels = [rr for rr in rels if rr]
                changed = True
                break
    return tuple(gens), tuple(rels)


def _classify_free(rank: int) -> str:
    if rank == 0:
        return "trivial"
    if rank == 1:
        return "infinite-cyclic"
    return f"free-of-rank-{rank}"


def _components(cx: OrbitComplex):
    names = [nd.name for nd in cx.nodes]
    adjacency = {n: set() for n in names}
    for w, c in cx.edges:
        if w not in adjacency or c not in adjacency:
            raise DomainError(f"edge ({w!r}, {c!r}) mentions a missing node")
        adjacency[w].add(c)
        adjacency[c].add(w)
    seen = set()
    comps = []
    for start in sorted(names):
        if start in seen:
            continue
        comp = []
        queue = [start]
        seen.add(start)
        while queue:
            n = queue.pop(0)
            comp.append(n)
            for m in sorted(adjacency[n]):
                if m not in seen:
                    seen.add(m)
                    queue.append(m)
        comps.append(sorted(comp))
    return comps


def _pi1_connected(cx: OrbitComplex, node_names) -> PresentedGroup:
    in_comp = set(node_names)
    walls = [nd for nd in cx.nodes if nd.name in in_comp and nd.homotopy == "circle"]
    edges = [e for e in cx.edges if e[0] in in_comp]
    # spanning tree by breadth-first search; leftover edges are graph loops
    tree = set()
    reached = {min(in_comp)} if in_comp else set()
    grew = True
    while grew:
        grew = False
        for k, (w, c) in enumerate(edges):
            if k in tree:
                continue
            if (w in reached) != (c in reached):
                tree.add(k)
                reached.update((w, c))
                grew = True
    chords = [k for k in range(len(edges)) if k not in tree]

    generators = tuple(f"loop-{nd.name}" for nd in walls) + tuple(
        f"chord-{edges[k][0]}-{edges[k][1]}" for k in chords
    )
    degree = {nd.name: 0 for nd in walls}
    for w, _ in edges:
        if w in degree:
            degree[w] += 1
    relations = tuple(
        (f"loop-{nd.name}",) for nd in walls if degree[nd.name] >= 2
    )
    free_gens, leftover = tietze_simplify(generators, relations)
    if leftover:
        # cannot happen with single-generator relations; guard anyway
        raise DomainError("simplification left relations behind")
    rank = len(free_gens)
    return PresentedGroup(generators, relations, free_gens, _classify_free(rank), rank)


def pi1(cx: OrbitComplex) -> PresentedGroup:
    """Fundamental group of a connected orbit complex.

    Generators: one loop per wall node plus one letter per edge outside a
    spanning tree. Relations: a wall loop bounds once the wall has at least
    two cell edges attached (its filling disk crosses both neighbouring
    cells). Raises Disconnected on a disconnected complex; see
    pi1_components for the componentwise answer.
    """
    if not cx.nodes:
        raise Disconnected("the empty complex has no base point")
    comps = _components(cx)
    if len(comps) > 1:
        raise Disconnected(
            f"complex has {len(comps)} components; compute them separately"
        )
    return _pi1_connected(cx, comps[0])


def pi1_components(cx: OrbitComplex):
    """Fundamental groups of the components, ordered by smallest node name."""
    return tuple(_pi1_connected(cx, comp) for comp in _components(cx))
