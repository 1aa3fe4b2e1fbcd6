"""Exhaustive catalogues of closed trivalent diagrams.

A closed diagram is a cubic multigraph: three slots per vertex, every slot
on exactly one edge.  Vertex self-loops make a diagram isomorphic to its own
negative, so those vanish identically as linear combinations; free loops
split off as scalar factors.  The catalogue that carries content is therefore
the set of connected LOOPLESS cubic multigraphs (multi-edges allowed) up to
isomorphism.

Enumeration is breadth-first growth with canonical-form deduplication, and
completeness is certified independently by double counting: over each vertex
count n, the orbit sizes n!/|Aut G| summed across the catalogue must equal
the number of labelled loopless 3-regular multigraphs on n vertices that are
connected, computed by a residual-degree dynamic program plus the usual
connected-from-all convolution.  The certificate does not trust the search:
any omitted or duplicated isomorphism class makes the two counts disagree.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources
from itertools import combinations

from .diagrams import Diagram, canonicalize

__all__ = [
    "labelled_cubic_count",
    "connected_labelled_cubic_count",
    "connected_cubic_catalogue",
    "closed_catalogue",
    "automorphism_count",
    "certify_catalogue",
    "multiplicity_matrix",
]


# -- labelled counts ----------------------------------------------------------


def _distributions(total, caps):
    """All ways to write total as an ordered sum bounded by caps."""
    if not caps:
        if total == 0:
            yield ()
        return
    head = caps[0]
    for a in range(min(total, head) + 1):
        for rest in _distributions(total - a, caps[1:]):
            yield (a,) + rest


@lru_cache(maxsize=None)
def _complete(residuals):
    """Number of labelled edge (multi)sets realizing the residual degrees.

    ``residuals`` is a sorted tuple; positions stand for distinct labelled
    vertices.  Multiplicities are capped at 3 and self-loops are forbidden.
    """
    if not residuals:
        return 1
    r, rest = residuals[0], residuals[1:]
    if r == 0:
        return _complete(rest)
    total = 0
    caps = tuple(min(3, x) for x in rest)
    for assign in _distributions(r, caps):
        new = tuple(sorted((x - a for x, a in zip(rest, assign)), reverse=True))
        total += _complete(new)
    return total


def labelled_cubic_count(n):
    """Labelled loopless 3-regular multigraphs on n vertices (multiplicity <= 3)."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n == 0:
        return 1
    return _complete(tuple([3] * n))


@lru_cache(maxsize=None)
def connected_labelled_cubic_count(n):
    """Labelled CONNECTED loopless 3-regular multigraphs on n vertices."""
    if n <= 0:
        return 0
    total = labelled_cubic_count(n)
    for k in range(1, n):
        total -= (
            connected_labelled_cubic_count(k)
            * math.comb(n - 1, k - 1)
            * labelled_cubic_count(n - k)
        )
    return total


# -- diagram construction from multiplicity data --------------------------------


def _diagram_from_mults(n, mults):
    """Closed diagram for a multiplicity map, capping any open slots.

    ``mults`` maps unordered vertex pairs (u, v), u < v, to edge counts.
    Every vertex ends up with exactly three used slots; slots not covered by
    real edges are closed off with marker gadgets (a fresh vertex carrying a
    self-loop), which keeps the whole thing a closed diagram so canonical
    bytes can serve as an isomorphism key for partial states.
    """
    next_slot = [0] * n
    edges = []

    def take(v):
        s = next_slot[v]
        next_slot[v] = s + 1
        return ("v", v, s)

    for (u, v), m in sorted(mults.items()):
        for _ in range(m):
            edges.append((take(u), take(v)))
    cap = n
    for v in range(n):
        while next_slot[v] < 3:
            edges.append((take(v), ("v", cap, 0)))
            edges.append((("v", cap, 1), ("v", cap, 2)))
            cap += 1
    return Diagram(0, range(cap), edges)


def multiplicity_matrix(d):
    """Edge multiplicities of a closed diagram, indexed by vertex id pairs."""
    verts = sorted(d.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    m = [[0] * n for _ in range(n)]
    for e in d.edges:
        a, b = tuple(e)
        if a[0] != "v" or b[0] != "v":
            raise ValueError("diagram is not closed")
        i, j = index[a[1]], index[b[1]]
        m[i][j] += 1
        if i != j:
            m[j][i] += 1
    return m


# -- exhaustive connected catalogue ---------------------------------------------


def _state_key(n, mults):
    return canonicalize(_diagram_from_mults(n, mults)).key


def connected_cubic_catalogue(n):
    """All connected loopless cubic multigraphs on n vertices, up to isomorphism.

    Returns a list of closed Diagrams, one per isomorphism class, in a stable
    order (sorted by canonical bytes).  Growth moves: attach a fresh vertex to
    an open slot by a single edge, or join two open slots on distinct existing
    vertices.  States are deduplicated by the canonical bytes of the partial
    graph with its open slots capped by marker gadgets.
    """
    if n <= 0 or n % 2:
        return []
    # state: (mults dict frozen as sorted tuple, residual tuple)
    start = ((), (3,))
    seen = {_state_key(1, {})}
    frontier = [start]
    out = {}
    while frontier:
        new_frontier = []
        for mult_items, residuals in frontier:
            k = len(residuals)
            mults = dict(mult_items)
            total_res = sum(residuals)
            if total_res == 0:
                if k == n:
                    d = _diagram_from_mults(k, mults)
                    out[canonicalize(d).key] = d
                continue
            if (total_res + (n - k)) % 2:
                continue
            # move (a): fresh vertex hooked to one open slot
            if k < n:
                for u in range(k):
                    if residuals[u] == 0:
                        continue
                    new_m = dict(mults)
                    new_m[(u, k)] = 1
                    new_r = list(residuals) + [2]
                    new_r[u] -= 1
                    _push(n, new_m, tuple(new_r), seen, new_frontier)
            # move (b): join two open slots on distinct existing vertices
            for u, v in combinations(range(k), 2):
                if residuals[u] == 0 or residuals[v] == 0:
                    continue
                if mults.get((u, v), 0) >= 3:
                    continue
                new_m = dict(mults)
                new_m[(u, v)] = new_m.get((u, v), 0) + 1
                new_r = list(residuals)
                new_r[u] -= 1
                new_r[v] -= 1
                _push(n, new_m, tuple(new_r), seen, new_frontier)
        frontier = new_frontier
    return [out[k] for k in sorted(out)]


def _push(n, mults, residuals, seen, frontier):
    key = _state_key(len(residuals), mults)
    if key in seen:
        return
    seen.add(key)
    frontier.append((tuple(sorted(mults.items())), residuals))


_FROZEN = None


def closed_catalogue(n):
    """The connected catalogue for n vertices, preferring the frozen data file.

    The file ships with the package (regenerate with
    tools/build_cubic_catalogue.py); enumeration from scratch is used as a
    fallback for sizes the file does not cover.  Callers that need certainty
    should pass the result through certify_catalogue, which proves
    completeness regardless of where the list came from.
    """
    global _FROZEN
    if _FROZEN is None:
        path = resources.files(__package__).joinpath("data/cubic_catalogue.json")
        _FROZEN = json.loads(path.read_text()) if path.is_file() else {}
    if str(n) in _FROZEN:
        return [Diagram.from_json(j) for j in _FROZEN[str(n)]]
    return connected_cubic_catalogue(n)


# -- automorphisms and the double-counting certificate ---------------------------


def automorphism_count(d):
    """Order of the vertex-permutation automorphism group of a closed diagram.

    Counts permutations of vertex ids preserving edge multiplicities (slot
    data is irrelevant for multigraph isomorphism).
    """
    m = multiplicity_matrix(d)
    n = len(m)
    profile = [tuple(sorted(row)) for row in m]
    count = 0

    def extend(mapping, used):
        nonlocal count
        i = len(mapping)
        if i == n:
            count += 1
            return
        for j in range(n):
            if j in used or profile[j] != profile[i]:
                continue
            if all(m[i][k] == m[j][mapping[k]] for k in range(i)):
                if m[i][i] == m[j][j]:
                    mapping.append(j)
                    used.add(j)
                    extend(mapping, used)
                    mapping.pop()
                    used.discard(j)

    extend([], set())
    return count


def certify_catalogue(diagrams, n):
    """Check a purported catalogue for vertex count n by double counting.

    The members must be pairwise non-isomorphic closed loopless cubic
    multigraphs on n vertices (that much is checked directly); completeness
    is then equivalent to sum(n!/|Aut G|) matching the labelled connected
    count, since isomorphism classes partition the labelled graphs into
    orbits of exactly those sizes.  Returns the common count.
    """
    keys = set()
    orbit_total = 0
    for d in diagrams:
        if d.n_boundary or d.free_loops or d.n_vertices != n:
            raise ValueError("catalogue member is not a closed n-vertex diagram")
        m = multiplicity_matrix(d)
        for i in range(n):
            if m[i][i]:
                raise ValueError("catalogue member has a vertex self-loop")
            if sum(m[i]) != 3:
                raise ValueError("catalogue member is not cubic")
        if not _connected(m):
            raise ValueError("catalogue member is disconnected")
        keys.add(canonicalize(d).key)
        aut = automorphism_count(d)
        orbit, rem = divmod(math.factorial(n), aut)
        if rem:
            raise ValueError("automorphism order does not divide n!")
        orbit_total += orbit
    if len(keys) != len(diagrams):
        raise ValueError("catalogue contains isomorphic duplicates")
    expected = connected_labelled_cubic_count(n)
    if orbit_total != expected:
        raise ValueError(
            f"catalogue incomplete for n={n}: orbits cover {orbit_total} "
            f"labelled graphs, expected {expected}"
        )
    return expected


def _connected(m):
    n = len(m)
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if m[u][v] and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n
