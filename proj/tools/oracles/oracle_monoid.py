#!/usr/bin/env python3
"""Brute-force reference values for monoid evaluation and pointed maps."""

from itertools import product


def compose_spans(s, t):
    sl, sa, sr, slm, srm = s
    tl, ta, tr, tlm, trm = t
    pairs = sorted((a, b) for a in range(sa) for b in range(ta) if srm[a] == tlm[b])
    return (sl, len(pairs), tr, [slm[a] for a, b in pairs], [trm[b] for a, b in pairs])


def eval_span(span, vec):
    """result[y] = fold over apex elements u of vec[lmap[u]], grouped by rmap."""
    nl, na, nr, lm, rm = span
    out = [0] * nr
    for u in range(na):
        out[rm[u]] += vec[lm[u]]
    return out


def main():
    copy = (3, 8, 8, [1, 0, 2, 0, 0, 0, 1, 2], list(range(8)))
    add = (8, 8, 4, list(range(8)), [0, 0, 1, 3, 3, 3, 3, 3])
    comp = compose_spans(copy, add)
    vec = [1, 2, 3]
    print("walkthrough eval:", eval_span(comp, vec))
    print("two-step eval:", eval_span(add, eval_span(copy, vec)))

    # pointed maps: elements 1..n, basepoint encoded as -1 in the value table
    # f: {1,2}+ -> {1}+ with f(1)=1, f(2)=*
    f = [0, -1]
    # span: left foot {1,2}, apex = non-base preimage, right foot {1}
    apex = [i for i, v in enumerate(f) if v >= 0]
    print("pointed f span:", (2, len(apex), 1, apex, [f[i] for i in apex]))
    print("  collapsing:", all(sum(1 for v in f if v == y) == 1 for y in range(1)))
    # fold: {1,2}+ -> {1}+ with both mapped to 1
    fold = [0, 0]
    apex = [i for i, v in enumerate(fold) if v >= 0]
    print("fold span:", (2, len(apex), 1, apex, [fold[i] for i in apex]))
    print("  collapsing:", all(sum(1 for v in fold if v == y) == 1 for y in range(1)))

    # collapsing equivalence, all pointed maps with <= 3 non-base elements per side
    bad = 0
    checked = 0
    for nx in range(4):
        for ny in range(4):
            for vals in product(list(range(-1, ny)), repeat=nx):
                checked += 1
                pointed_coll = all(
                    sum(1 for v in vals if v == y) == 1 for y in range(ny)
                )
                apex = [i for i, v in enumerate(vals) if v >= 0]
                lm = apex
                rm = [vals[i] for i in apex]
                mono = len(set(lm)) == len(lm)
                riso = sorted(rm) == list(range(ny))
                if pointed_coll != (mono and riso):
                    bad += 1
    print("collapsing equivalence: checked", checked, "mismatches", bad)

    # free model sizes: Free_X(Y) = functions Y -> N^X, entries <= cap
    for nx, ny, cap in [(1, 1, 3), (2, 1, 2), (1, 2, 2)]:
        size = (cap + 1) ** (nx * ny)
        print(f"free model |X|={nx} |Y|={ny} cap={cap}: {size}")


if __name__ == "__main__":
    main()
