"""Brute-force reference implementations used only by the tests.

Everything here works on plain frozensets, enumerating subsets of the
attribute universe outright, so it shares no code path with the library
it checks.
"""

from itertools import combinations


def brute_concepts(objects, attributes, rows):
    """All (extent, intent) pairs by checking every attribute subset.

    ``rows`` maps object -> attribute set. Exponential in the number of
    attributes; keep it at 12 or fewer.
    """
    attributes = list(attributes)
    concepts = set()
    for r in range(len(attributes) + 1):
        for combo in combinations(attributes, r):
            b = frozenset(combo)
            extent = frozenset(g for g in objects if b <= rows[g])
            if extent:
                intent = frozenset(attributes)
                for g in extent:
                    intent &= rows[g]
            else:
                intent = frozenset(attributes)
            if intent == b:
                concepts.add((extent, intent))
    return concepts


def brute_covers(concepts):
    """Cover pairs (child, parent) by pairwise subset testing.

    ``concepts`` is any iterable of (extent, intent); returns pairs of
    those same tuples.
    """
    concepts = list(concepts)
    edges = set()
    for child in concepts:
        for parent in concepts:
            if child[0] == parent[0] or not child[0] <= parent[0]:
                continue
            between = any(
                mid[0] != child[0]
                and mid[0] != parent[0]
                and child[0] <= mid[0] <= parent[0]
                for mid in concepts
            )
            if not between:
                edges.add((child, parent))
    return edges
