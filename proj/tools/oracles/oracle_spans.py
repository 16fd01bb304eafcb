#!/usr/bin/env python3
"""Brute-force reference values for the span layer.

Spans are stored as (left_size, apex_size, right_size, lmap, rmap).
The matrix of a span counts apex elements per (left, right) fiber pair.
"""

from itertools import product
from math import factorial


def span_matrix(span):
    nl, na, nr, lm, rm = span
    m = [[0] * nr for _ in range(nl)]
    for u in range(na):
        m[lm[u]][rm[u]] += 1
    return m


def compose_spans(s, t):
    """Apex of the composite = pullback of s.rmap against t.lmap."""
    sl, sa, sr, slm, srm = s
    tl, ta, tr, tlm, trm = t
    assert sr == tl
    pairs = sorted((a, b) for a in range(sa) for b in range(ta) if srm[a] == tlm[b])
    lm = [slm[a] for (a, b) in pairs]
    rm = [trm[b] for (a, b) in pairs]
    return (sl, len(pairs), tr, lm, rm)


def mat_mul(m, n):
    rows, mid = len(m), len(m[0]) if m else 0
    cols = len(n[0]) if n else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            for j in range(cols):
                out[i][j] += m[i][k] * n[k][j]
    return out


def enumerate_span_classes(nl, nr, max_apex):
    """Distinct span matrices with entry sum <= max_apex, in deterministic order."""
    cells = nl * nr
    found = []
    if cells == 0:
        return [tuple()] if True else []
    for entries in product(range(max_apex + 1), repeat=cells):
        if sum(entries) <= max_apex:
            found.append(entries)
    return found


def intro_example():
    copy = (3, 8, 8, [1, 0, 2, 0, 0, 0, 1, 2], list(range(8)))
    add = (8, 8, 4, list(range(8)), [0, 0, 1, 3, 3, 3, 3, 3])
    comp = compose_spans(copy, add)
    print("intro copy matrix:", span_matrix(copy))
    print("intro add matrix:", span_matrix(add))
    print("intro composite sizes:", comp[0], comp[1], comp[2])
    print("intro composite matrix:", span_matrix(comp))
    print(
        "matrix product check:",
        mat_mul(span_matrix(copy), span_matrix(add)) == span_matrix(comp),
    )


def main():
    intro_example()
    print("enumerate (1,1,3):", len(enumerate_span_classes(1, 1, 3)))
    print("enumerate (1,0,anything):", len(enumerate_span_classes(1, 0, 3)))
    print("enumerate (2,2,1):", len(enumerate_span_classes(2, 2, 1)))
    print("enumerate (2,2,2):", len(enumerate_span_classes(2, 2, 2)))
    print("aut count of 1<-3->1:", factorial(3))
    # aut count = product of entry factorials
    m = span_matrix((2, 4, 2, [0, 0, 1, 1], [0, 1, 0, 1]))
    aut = 1
    for row in m:
        for e in row:
            aut *= factorial(e)
    print("aut of 2<-4->2 (graph of bijections):", aut, "matrix:", m)

    # operad composition block example: |X|=2, Y_0={0}, Y_1={1,2}, sigma = swap on X
    # family maps: f_0: Y_0 -> Y_0 identity; f_1: Y_1 -> Y_1 identity.
    # result permutation on 3 = blocks placed by sigma.
    sizes = [1, 2]
    sigma = [1, 0]  # position of block x in the output ordering by sigma images
    offset_in = [0, 1]
    # offset_out(x) = sum of sizes of x' with sigma(x') < sigma(x)
    out = [0] * 3
    for x in range(2):
        off = sum(sizes[x2] for x2 in range(2) if sigma[x2] < sigma[x])
        for i in range(sizes[x]):
            out[offset_in[x] + i] = off + i
    print("operad block example:", tuple(out))


if __name__ == "__main__":
    main()
