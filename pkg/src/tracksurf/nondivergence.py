r"""
Nondivergence quantities for flat surfaces.

The central object is the graph of short saddle connections: vertices are
the singularities, edges the connections of length at most ``epsilon``.
``in_K_epsilon`` decides whether that graph is circuit-free; when it is,
every closed flat geodesic has length at least ``epsilon`` (a closed
geodesic either misses the singularities, in which case it is the core of
a cylinder whose boundary contains a circuit of saddle connections, or it
is itself a concatenation of them).  A failed test carries a certificate:
an explicit circuit, re-checkable edge by edge.

``systole_lower_bound`` turns the test into a certified bound by scanning
a probe grid; it never overestimates the systole.  ``horocycle_average``
measures the fraction of a horocycle orbit spending its time with a
certified bound above a threshold — the quantity whose limsup the
nondivergence argument bounds from below.  The orbit sampling pulls every
candidate connection back to the base surface once and then filters
holonomies per sample time, which is what makes thousands of samples
cheap.

``disjoint_system_alpha`` computes the short-system quantities
``alpha_k``: the smallest possible maximum length of ``k`` pairwise
disjoint saddle connections, where disjoint means the open segments do not
meet on the surface (shared singular endpoints are fine).
"""

import itertools
import math

import numpy as np

from .flatsurface import FlatSurface, FlowState, horocycle_matrix, apply_matrix
from .saddle import saddle_connections, connections_disjoint

DISJOINTNESS_CAP = 9
DEFAULT_PROBES = tuple(2 * (2 ** (-i / 2)) for i in range(18))


class KEpsilonReport:
    r"""
    Outcome of the short-connection graph test at a given ``epsilon``.

    Truthy exactly when the graph is circuit-free.  ``circuit`` is ``None``
    in that case; otherwise it is a list of connections forming a closed
    walk (a single self-loop is the smallest case), which
    :func:`verify_circuit` re-checks independently.
    """

    __slots__ = ("epsilon", "in_k", "connected", "circuit", "connections")

    def __init__(self, epsilon, in_k, connected, circuit, connections):
        self.epsilon = epsilon
        self.in_k = in_k
        self.connected = connected
        self.circuit = circuit
        self.connections = connections

    def __bool__(self):
        return self.in_k

    def __repr__(self):
        return "KEpsilonReport(epsilon=%r, in_k=%r, connected=%r, %d connections)" % (
            self.epsilon,
            self.in_k,
            self.connected,
            len(self.connections),
        )


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def in_K_epsilon(state, epsilon):
    r"""
    Test whether the graph of saddle connections of length at most
    ``epsilon`` is circuit-free, returning a :class:`KEpsilonReport`.

    The report also notes whether that graph, with every singularity as a
    vertex, is connected (circuit-free and connected = spanning tree).
    """
    surface = state.surface() if isinstance(state, FlowState) else state
    conns = saddle_connections(state, epsilon)
    n = len(surface.vertex_classes())
    parent = list(range(n))
    adj = {i: [] for i in range(n)}
    circuit = None
    for c in conns:
        u, v = c.endpoints
        if u == v:
            circuit = [c]
            break
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            circuit = _close_cycle(adj, u, v) + [c]
            break
        parent[ru] = rv
        adj[u].append((v, c))
        adj[v].append((u, c))
    in_k = circuit is None
    roots = {_find(parent, i) for i in range(n)}
    connected = len(roots) <= 1 if in_k else None
    return KEpsilonReport(epsilon, in_k, connected, circuit, conns)


def _close_cycle(adj, u, v):
    """Path from u to v in the current forest, as a list of connections."""
    prev = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == v:
            break
        for y, c in adj[x]:
            if y not in prev:
                prev[y] = (x, c)
                queue.append(y)
    path = []
    x = v
    while prev[x] is not None:
        x, c = prev[x]
        path.append(c)
    path.reverse()
    return path


def verify_circuit(report):
    r"""
    Independently re-check a failed report's certificate: the edges must
    chain into a closed walk through their endpoints, each be no longer
    than ``epsilon``, and bound a closed curve of length at most
    ``len(circuit) * epsilon``.
    """
    circuit = report.circuit
    if not circuit:
        return False
    eps2 = report.epsilon * report.epsilon
    if any(c.norm2() > eps2 for c in circuit):
        return False
    total = sum(c.length() for c in circuit)
    if total > len(circuit) * float(report.epsilon) + 1e-9:
        return False
    # walk the closed path through endpoint classes, trying both starts
    for start in circuit[0].endpoints:
        cur = start
        ok = True
        for c in circuit:
            p, q = c.endpoints
            if cur == p:
                cur = q
            elif cur == q:
                cur = p
            else:
                ok = False
                break
        if ok and cur == start:
            return True
    return False


def systole_lower_bound(state, probes=DEFAULT_PROBES):
    r"""
    The largest probe ``epsilon`` with ``in_K_epsilon`` true, or 0 when
    every probe fails.  Always a true lower bound for the flat systole.
    """
    try:
        probes = sorted(probes, reverse=True)
    except TypeError:
        probes = [probes]
    for eps in probes:
        if in_K_epsilon(state, eps):
            return eps
    return 0


class HorocycleSeries:
    r"""
    Time series of the certified-thickness test along a horocycle orbit:
    for each sample time, whether ``h_t * state`` lies in ``K(delta)``.
    """

    __slots__ = ("delta", "times", "in_k", "fraction")

    def __init__(self, delta, times, in_k):
        self.delta = delta
        self.times = tuple(times)
        self.in_k = tuple(in_k)
        self.fraction = (
            sum(1 for f in self.in_k if f) / len(self.in_k) if self.in_k else 0.0
        )

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return "HorocycleSeries(delta=%r, %d samples, fraction=%.4f)" % (
            self.delta,
            len(self.times),
            self.fraction,
        )


def horocycle_average(state, delta, t_max, dt):
    r"""
    Sample the horocycle orbit ``h_t * state`` for ``t = 0, dt, 2*dt, ...``
    up to ``t_max`` and report the fraction of samples where the surface is
    certifiably ``delta``-thick, i.e. ``in_K_epsilon(h_t * state, delta)``
    holds, together with the full series.

    The caller asserts that the state's horizontal foliation is minimal
    and filling; for such states the fraction approaches 1 as ``delta``
    shrinks.  The state must be normalized to area 1 (within 1e-12).

    Equivariance does the heavy lifting: the connections of ``h_t * state``
    are the ``h_t``-images of the connections of ``state``, so one
    enumeration with radius ``delta * (t_max + 2)`` on the base state
    covers every sample, and each sample is a vectorized filter.
    """
    if isinstance(state, FlatSurface):
        state = FlowState(state)
    if not delta > 0 or not t_max > 0 or not dt > 0:
        raise ValueError("delta, t_max and dt must all be positive")
    area = float(state.surface().area())
    if abs(area - 1) > 1e-12:
        raise ValueError(
            "flow experiments need an area-one surface, got area %r" % (area,)
        )
    # A connection can only be delta-short at some t in [0, t_max] if
    # |x| <= delta and |y + t*x| <= delta there, so |v| <= delta*(t_max+2).
    reach = delta * (t_max + 2)
    conns = saddle_connections(state, reach, itineraries=False)
    xs = np.array([float(c.holonomy[0]) for c in conns])
    ys = np.array([float(c.holonomy[1]) for c in conns])
    ends = [c.endpoints for c in conns]
    n_classes = len(state.surface().vertex_classes())
    d2 = float(delta) * float(delta)
    times = []
    flags = []
    steps = int(math.floor(float(t_max) / float(dt) + 1e-9))
    for i in range(steps + 1):
        t = i * dt
        short = np.nonzero(xs * xs + (ys + t * xs) ** 2 <= d2)[0]
        times.append(t)
        flags.append(_acyclic(short, ends, n_classes))
    return HorocycleSeries(delta, times, flags)


def _acyclic(edge_idx, ends, n_classes):
    parent = list(range(n_classes))
    for i in edge_idx:
        u, v = ends[i]
        if u == v:
            return False
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def disjoint_system_alpha(state, k, l_cap, m_cap=DISJOINTNESS_CAP):
    r"""
    The quantity ``alpha_k``: the minimum over all systems of ``k``
    pairwise-disjoint saddle connections of the longest length in the
    system, searching connections up to length ``l_cap``.  Returns
    ``math.inf`` when no such system exists within the cap.

    Systems larger than ``m_cap`` are out of scope (the count of pairwise
    disjoint connections is uniformly bounded), and ``k`` must not exceed
    it.  Minimizing the maximum means the optimal system appears at the
    shortest prefix of the length-sorted enumeration that contains ``k``
    pairwise-disjoint members, so prefixes are scanned in order.
    """
    if not 1 <= k <= m_cap:
        raise ValueError("k must be between 1 and %d, got %r" % (m_cap, k))
    conns = saddle_connections(state, l_cap)
    if k == 1:
        return conns[0].length() if conns else math.inf
    disjoint = {}

    def dis(i, j):
        key = (min(i, j), max(i, j))
        if key not in disjoint:
            disjoint[key] = connections_disjoint(conns[key[0]], conns[key[1]])
        return disjoint[key]

    for m in range(k, len(conns) + 1):
        newest = m - 1
        pool = [i for i in range(newest) if dis(i, newest)]
        if _extend([newest], pool, k, dis):
            return conns[newest].length()
    return math.inf


def _extend(chosen, pool, k, dis):
    if len(chosen) == k:
        return True
    if len(chosen) + len(pool) < k:
        return False
    for idx, i in enumerate(pool):
        rest = [j for j in pool[idx + 1 :] if dis(i, j)]
        if _extend(chosen + [i], rest, k, dis):
            return True
    return False
