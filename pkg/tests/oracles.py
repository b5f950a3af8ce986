"""Brute-force references, written independently of the library code paths."""

import math

import networkx as nx


def majorized_by(x, y, tol=1e-9):
    """True iff every prefix sum of x is at most that of y (both sorted nonincreasing)."""
    sx = sy = 0.0
    for a, b in zip(x, y):
        sx += a
        sy += b
        if sx > sy + tol:
            return False
    return True


def brute_compare(rank1, weights1, rank2, weights2, tol=1e-9):
    if rank1 != rank2:
        return "Precedes" if rank1 > rank2 else "Succeeds"
    if majorized_by(weights1, weights2, tol):
        return "Precedes"
    if majorized_by(weights2, weights1, tol):
        return "Succeeds"
    return "NonComparable"


def exhaustive_table(items, compare):
    """table[a][b] = True iff compare(a, b) says a precedes b."""
    return {a: {b: compare(a, b) == "Precedes" for b in items} for a in items}


def width(items, table):
    """Minimum number of chains (Dilworth): n minus a maximum matching of the strict order.

    Mutually preceding (tied) items are ordered by their position in ``items``.
    """
    rank = {x: i for i, x in enumerate(items)}
    g = nx.Graph()
    left = [("L", a) for a in items]
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from((("R", b) for b in items), bipartite=1)
    for a in items:
        for b in items:
            if a != b and table[a][b] and (not table[b][a] or rank[a] < rank[b]):
                g.add_edge(("L", a), ("R", b))
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    return len(items) - len(matching) // 2


def query_bound(w, n, c=4):
    return c * w * n * math.log2(n)
