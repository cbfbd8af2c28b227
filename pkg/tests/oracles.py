"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive pure Python: explicit loops, no
numpy, and "no path" spelled as None so that min/max never touches a
float infinity.  Slow on purpose; correctness is the only goal.
"""

import math
from itertools import product

MINPLUS = "minplus"
MAXPLUS = "maxplus"


def o_add(kind, a, b):
    """Reference ⊕ on float-or-None values (None is the identity)."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b) if kind == MINPLUS else max(a, b)


def o_mul(a, b):
    """Reference ⊗: addition with None absorbing."""
    if a is None or b is None:
        return None
    return a + b


def from_symbolic(rows):
    """Library to_lists() output (math.inf for Infinity) -> None-form grid."""
    return [[None if math.isinf(v) else v for v in row] for row in rows]


def to_symbolic(rows):
    return [[math.inf if v is None else v for v in row] for row in rows]


def naive_matmul(kind, x, y):
    """Triple-loop product on None-form grids, ascending k."""
    n, inner, m = len(x), len(y), len(y[0])
    assert len(x[0]) == inner
    out = [[None] * m for _ in range(n)]
    for i, j in product(range(n), range(m)):
        acc = None
        for k in range(inner):
            acc = o_add(kind, acc, o_mul(x[i][k], y[k][j]))
        out[i][j] = acc
    return out


def naive_power(kind, x, p):
    """p-1 successive naive multiplications."""
    out = x
    for _ in range(p - 1):
        out = naive_matmul(kind, out, x)
    return out


def _adjacency(n, edges):
    """dst/weight lists per source, duplicates collapsed to the minimum."""
    best = {}
    for src, dst, w in edges:
        key = (src, dst)
        if key not in best or w < best[key]:
            best[key] = w
    adj = [[] for _ in range(n)]
    for (src, dst), w in best.items():
        adj[src].append((dst, w))
    return adj


def enumerate_distances(n, edges):
    """Shortest distances by exhaustive simple-path search (None-form).

    Valid whenever no negative cycle exists (then some shortest walk is a
    simple path).  Exponential; keep n small.
    """
    adj = _adjacency(n, edges)
    best = [[None] * n for _ in range(n)]
    for i in range(n):
        best[i][i] = 0.0

    def walk(source, current, total, visited):
        for nxt, w in adj[current]:
            if nxt in visited:
                continue
            t = total + w
            if best[source][nxt] is None or t < best[source][nxt]:
                best[source][nxt] = t
            walk(source, nxt, t, visited | {nxt})

    for source in range(n):
        walk(source, source, 0.0, {source})
    return best


def has_negative_cycle(n, edges):
    """Exhaustive simple-cycle enumeration (self-loops included).

    Each cycle is visited from its minimum vertex only; existence of one
    with negative total weight is the answer.
    """
    adj = _adjacency(n, edges)

    def walk(start, current, total, visited):
        for nxt, w in adj[current]:
            if nxt == start:
                if total + w < 0.0:
                    return True
                continue
            if nxt in visited or nxt < start:
                continue
            if walk(start, nxt, total + w, visited | {nxt}):
                return True
        return False

    return any(walk(s, s, 0.0, {s}) for s in range(n))
