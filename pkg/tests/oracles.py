"""Brute-force reference implementations used to check the library.

These only read ``rotation``, ``edges`` and ``decor`` and never call the
search or tracing code under test.
"""

from itertools import product


def twin_map(g):
    t = {}
    for a, b in g.edges:
        t[a], t[b] = b, a
    return t


def face_count(g):
    succ = {}
    for rot in g.rotation:
        for i, h in enumerate(rot):
            succ[h] = rot[(i + 1) % len(rot)]
    t = twin_map(g)
    seen, count = set(), 0
    for h in succ:
        if h in seen:
            continue
        count += 1
        while h not in seen:
            seen.add(h)
            h = succ[t[h]]
    return count


def euler_genus(g):
    chi = len(g.rotation) - len(g.edges) + face_count(g)
    return (2 - chi) // 2


def adjacent_matchings(rot):
    """The (at most two) perfect matchings of rotation-adjacent half-edges."""
    d = len(rot)
    first = [(rot[k], rot[k + 1]) for k in range(0, d, 2)]
    if d == 2:
        return [first]
    second = [(rot[k], rot[(k + 1) % d]) for k in range(1, d, 2)]
    return [first, second]


def circuit_count(g, choice):
    """Number of closed trails when vertex ``v`` uses ``adjacent_matchings[v][choice[v]]``."""
    partner = {}
    for rot, c in zip(g.rotation, choice):
        for a, b in adjacent_matchings(rot)[c]:
            partner[a], partner[b] = b, a
    t = twin_map(g)
    seen, orbits = set(), 0
    for d in partner:
        if d in seen:
            continue
        orbits += 1
        while d not in seen:
            seen.add(d)
            d = partner[t[d]]
    # every trail is met once in each direction
    return orbits // 2


def all_choices(g):
    return product(*[range(len(adjacent_matchings(r))) for r in g.rotation])


def brute_atrails(g):
    return {c for c in all_choices(g) if circuit_count(g, c) == 1}


def circuit_classes(g, choice):
    """Homology class of every closed trail (one orientation each, unordered)."""
    partner = {}
    for rot, c in zip(g.rotation, choice):
        for a, b in adjacent_matchings(rot)[c]:
            partner[a], partner[b] = b, a
    t = twin_map(g)
    dec = {}
    for (a, b), d in zip(g.edges, g.decor):
        dec[a] = tuple(d)
        dec[b] = tuple(-x for x in d)
    seen, out = set(), []
    for start in partner:
        if start in seen:
            continue
        d, total = start, [0] * len(g.decor[0])
        while d not in seen:
            seen.add(d)
            seen.add(t[d])
            total = [x + y for x, y in zip(total, dec[d])]
            d = partner[t[d]]
        out.append(tuple(total))
    return out


def face_labels(g):
    """Face id of every dart, faces traced by ``h -> succ(twin(h))``."""
    succ = {}
    for rot in g.rotation:
        for i, h in enumerate(rot):
            succ[h] = rot[(i + 1) % len(rot)]
    t = twin_map(g)
    label = {}
    for h in sorted(succ):
        if h in label:
            continue
        k = len(set(label.values()))
        while h not in label:
            label[h] = k
            h = succ[t[h]]
    return label


def is_proper_coloring(g, colors):
    label = face_labels(g)
    t = twin_map(g)
    return all(colors[label[h]] != colors[label[t[h]]] for h in label)


def hugging_choice(g, colors, v, x):
    """Index of the adjacent matching at ``v`` whose pairs bound corners of color ``x``."""
    label = face_labels(g)
    rot = g.rotation[v]
    for k, m in enumerate(adjacent_matchings(rot)):
        # the corner between a and its rotation successor b lies in the face of b
        if all(colors[label[b]] == x for a, b in m):
            return k
    raise AssertionError("no hugging matching")


def is_covering_tree(g, colors, x, U):
    label = face_labels(g)
    xfaces = {f for f, c in enumerate(colors) if c == x}
    edges = [(v, label[h]) for v in U for h in g.rotation[v] if colors[label[h]] == x]
    nodes = {("v", v) for v in U} | {("f", f) for _, f in edges}
    if {f for _, f in edges} != xfaces or not U:
        return False
    if len(edges) != len(nodes) - 1:
        return False
    adj = {n: [] for n in nodes}
    for v, f in edges:
        adj[("v", v)].append(("f", f))
        adj[("f", f)].append(("v", v))
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(nodes)


def covering_tree_systems(g, colors):
    """Systems ``S_{x'}[U]`` over every covering tree ``G_x[U]``, both colors."""
    from itertools import combinations

    out = set()
    vs = range(len(g.rotation))
    for x, y in (("red", "blue"), ("blue", "red")):
        for k in range(1, len(g.rotation) + 1):
            for U in combinations(vs, k):
                if is_covering_tree(g, colors, x, U):
                    out.add(tuple(hugging_choice(g, colors, v, y if v in U else x) for v in vs))
    return out
