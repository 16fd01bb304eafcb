#!/usr/bin/env python3
"""Brute-force reference values for the finite-set layer.

Everything here is computed from first principles with the dumbest possible
method, so the C++ implementation can freeze these numbers in its tests.
"""

from itertools import product


def compose(g, f):
    return [g[x] for x in f]


def pullback_apex(f, g):
    """Pairs (a, b) with f(a) = g(b), lexicographically sorted."""
    return sorted((a, b) for a in range(len(f)) for b in range(len(g)) if f[a] == g[b])


def fiber_count_formula(f, g, cod):
    return sum(
        sum(1 for a in f if a == c) * sum(1 for b in g if b == c) for c in range(cod)
    )


def classify(values, cod):
    dom = len(values)
    image = set(values)
    mono = len(image) == dom
    epi = len(image) == cod
    iso = mono and epi
    # split epi: explicit section search
    split_epi = False
    if dom == 0:
        split_epi = cod == 0
    else:
        for section in product(range(dom), repeat=cod):
            if all(values[section[c]] == c for c in range(cod)):
                split_epi = True
                break
    return mono, epi, iso, split_epi


def main():
    print("compose [0,0,1] then [1,1]:", compose([1, 1], [0, 0, 1]))

    f = [0, 0, 1]
    g = [0, 1, 1]
    apex = pullback_apex(f, g)
    print("pullback f=[0,0,1] g=[0,1,1]: apex size", len(apex))
    print("  pairs:", apex)
    print("  fiber-count formula:", fiber_count_formula(f, g, 2))

    # identity leg of pullback along iso stays iso: spot examples
    for gv, cod in [([0, 1], 2), ([1, 0], 2), ([0, 1, 2], 3)]:
        idm = list(range(cod))
        apx = pullback_apex(idm, gv)
        left = [a for (a, b) in apx]
        print(f"pullback(id,{gv}): left leg {left} iso:", sorted(left) == idm)

    print("classify [0,1,1] cod 2:", classify([0, 1, 1], 2))
    print("classify [0,2] cod 3:", classify([0, 2], 3))
    print("classify [] cod 0:", classify([], 0))
    print("classify [] cod 1:", classify([], 1))

    # coproduct injections for |A|=2, |B|=3
    A, B = 2, 3
    print("coproduct sizes:", A + B, "inl:", list(range(A)), "inr:", [A + j for j in range(B)])


if __name__ == "__main__":
    main()
