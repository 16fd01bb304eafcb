#!/usr/bin/env python3
"""Brute-force horn-filler statistics for nerves of small categories.

A category is given by a dict with objects, morphism ids, src/dst arrays and a
composition table. Nerve n-cells are composable chains (g1, ..., gn) read left
to right; d0 drops g1, dn drops gn, inner di composes gi+1 after gi.
"""

from itertools import product


def make_group_z2():
    # one object, morphisms e, s with s*s = e
    comp = {}
    for a in range(2):
        for b in range(2):
            comp[(b, a)] = a ^ b  # b after a
    return {"objects": 1, "n": 2, "src": [0, 0], "dst": [0, 0], "comp": comp, "ids": [0]}


def make_poset_chain(k):
    # objects 0..k, a unique morphism i -> j whenever i <= j
    morphs = [(i, j) for i in range(k + 1) for j in range(i, k + 1)]
    index = {m: x for x, m in enumerate(morphs)}
    comp = {}
    for x, (i, j) in enumerate(morphs):
        for y, (j2, l) in enumerate(morphs):
            if j2 == j:
                comp[(y, x)] = index[(i, l)]
    ids = [index[(i, i)] for i in range(k + 1)]
    return {
        "objects": k + 1,
        "n": len(morphs),
        "src": [m[0] for m in morphs],
        "dst": [m[1] for m in morphs],
        "comp": comp,
        "ids": ids,
    }


def make_fork():
    # objects u, v, w; g: u -> v; p, q: v -> w with pg = qg = r.
    # morphisms: 0 id_u, 1 id_v, 2 id_w, 3 g, 4 p, 5 q, 6 r
    src = [0, 1, 2, 0, 1, 1, 0]
    dst = [0, 1, 2, 1, 2, 2, 2]
    comp = {}
    for x in range(7):
        comp[(x, [0, 1, 2][src[x]])] = x  # x after id
        comp[([0, 1, 2][dst[x]], x)] = x  # id after x
    comp[(4, 3)] = 6  # p after g = r
    comp[(5, 3)] = 6  # q after g = r
    return {"objects": 3, "n": 7, "src": src, "dst": dst, "comp": comp, "ids": [0, 1, 2]}


def chains(cat, n):
    if n == 0:
        return [tuple()] if cat["objects"] == 0 else [(o,) for o in range(cat["objects"])]
    out = []
    for c in product(range(cat["n"]), repeat=n):
        if all(cat["dst"][c[i]] == cat["src"][c[i + 1]] for i in range(n - 1)):
            out.append(c)
    return out


def face(cat, chain, i):
    n = len(chain)
    if i == 0:
        return chain[1:]
    if i == n:
        return chain[:-1]
    return chain[: i - 1] + (cat["comp"][(chain[i], chain[i - 1])],) + chain[i + 1 :]


def horn_stats(cat, n, k):
    """Over all boundary-compatible horn tuples (F_j) j != k, bucket filler counts."""
    cells = chains(cat, n - 1)
    js = [j for j in range(n + 1) if j != k]
    # index fillers by their face tuple
    filler_count = {}
    for z in chains(cat, n):
        key = tuple(face(cat, z, j) for j in js)
        filler_count[key] = filler_count.get(key, 0) + 1
    buckets = {0: 0, 1: 0, "many": 0}
    total = 0
    for fs in product(cells, repeat=len(js)):
        assign = dict(zip(js, fs))
        ok = True
        for bi in range(len(js)):
            for bj in range(bi + 1, len(js)):
                i, j = js[bi], js[bj]
                # d_i d_j = d_{j-1} d_i for i < j
                if face(cat, assign[j], i) != face(cat, assign[i], j - 1):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        total += 1
        c = filler_count.get(fs, 0)
        buckets[c if c in (0, 1) else "many"] += 1
    return total, buckets


def main():
    z2 = make_group_z2()
    poset = make_poset_chain(3)
    fork = make_fork()

    print("z2 cell counts dim 0..4:", [len(chains(z2, d)) for d in range(5)])
    print("poset cell counts dim 0..4:", [len(chains(poset, d)) for d in range(5)])
    print("fork cell counts dim 0..3:", [len(chains(fork, d)) for d in range(4)])

    for name, cat in [("z2", z2), ("poset", poset), ("fork", fork)]:
        for k in (0, 3):
            total, buckets = horn_stats(cat, 3, k)
            print(f"{name} Lambda^3_{k}: compatible={total} fillers={buckets}")
        for k in (1, 2):
            total, buckets = horn_stats(cat, 3, k)
            print(f"{name} Lambda^3_{k}: compatible={total} fillers={buckets}")

    for name, cat in [("z2", z2), ("poset", poset)]:
        for k in (0, 4):
            total, buckets = horn_stats(cat, 4, k)
            print(f"{name} Lambda^4_{k}: compatible={total} fillers={buckets}")


if __name__ == "__main__":
    main()
