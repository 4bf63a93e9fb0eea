#!/usr/bin/env python3
"""Regenerates the bundled algebra files in crates/core/corpus/.

Operations are computed by brute force from each lattice order, with no
shared code with the Rust builders, so the two can be compared.
"""
import itertools
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "corpus")


def lattice_ops(n, leq):
    def glb(xs):
        lower = [c for c in range(n) if all(leq(c, x) for x in xs)]
        return next(c for c in lower if all(leq(d, c) for d in lower))

    def lub(xs):
        upper = [c for c in range(n) if all(leq(x, c) for x in xs)]
        return next(c for c in upper if all(leq(c, d) for d in upper))

    meet = [[glb([a, b]) for b in range(n)] for a in range(n)]
    join = [[lub([a, b]) for b in range(n)] for a in range(n)]
    bottom = glb(list(range(n)))
    imp = [[lub([c for c in range(n) if leq(meet[c][a], b)]) for b in range(n)] for a in range(n)]
    neg = [imp[a][bottom] for a in range(n)]
    iff = [[meet[imp[a][b]][imp[b][a]] for b in range(n)] for a in range(n)]
    return {"neg": neg, "imp": imp, "and": meet, "or": join, "iff": iff}


def chain(n):
    return n, lambda a, b: a <= b


def boolean(k):
    return 1 << k, lambda a, b: a & b == a


def b4_plus_top(extra):
    # B4 as bitmasks 0..3, then `extra` new elements stacked above 3
    n = 4 + extra

    def leq(a, b):
        if a < 4 and b < 4:
            return a & b == a
        if a < 4:
            return True
        if b < 4:
            return False
        return a <= b

    return n, leq


def b4_plus_bottom(extra):
    # `extra` new elements stacked below, then B4 shifted by `extra`
    n = 4 + extra

    def leq(a, b):
        if a < extra or b < extra:
            return a <= b
        return (a - extra) & (b - extra) == (a - extra)

    return n, leq


def b4_both():
    # 0 < B4 (shifted by 1) < 5
    def leq(a, b):
        if a == 0 or b == 5:
            return True
        if b == 0 or a == 5:
            return False
        return (a - 1) & (b - 1) == (a - 1)

    return 6, leq


def product_2x3():
    # element a*3+b with a in 0..2, b in 0..3, componentwise order
    return 6, lambda x, y: x // 3 <= y // 3 and x % 3 <= y % 3


def lukasiewicz3():
    n = 3
    return {
        "neg": [2 - a for a in range(n)],
        "imp": [[min(2, 2 - a + b) for b in range(n)] for a in range(n)],
        "and": [[min(a, b) for b in range(n)] for a in range(n)],
        "or": [[max(a, b) for b in range(n)] for a in range(n)],
        "iff": [[min(2, 2 - a + b, 2 - b + a) for b in range(n)] for a in range(n)],
    }


def write(name, size, tables, note):
    doc = {"signature": "propositional.json", "size": size, "note": note, "tables": tables}
    with open(os.path.join(OUT, name + ".json"), "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    sig = {"connectives": [{"name": c, "arity": a} for c, a in
                           [("neg", 1), ("imp", 2), ("and", 2), ("or", 2), ("iff", 2)]]}
    with open(os.path.join(OUT, "propositional.json"), "w") as f:
        json.dump(sig, f, indent=1)
        f.write("\n")
    heyting = {
        "B1": (boolean(0), "trivial algebra"),
        "B2": (boolean(1), "two-element Boolean algebra"),
        "B4": (boolean(2), "four-element Boolean algebra, elements as bitmasks"),
        "B8": (boolean(3), "eight-element Boolean algebra, elements as bitmasks"),
        "H3": (chain(3), "three-element chain 0 < a < 1"),
        "H4": (chain(4), "four-element chain"),
        "H5": (chain(5), "five-element chain"),
        "H6": (chain(6), "six-element chain"),
        "B4T": (b4_plus_top(1), "B4 with a new top"),
        "B4B": (b4_plus_bottom(1), "B4 with a new bottom"),
        "B4TT": (b4_plus_top(2), "B4 with two new elements on top"),
        "B4BB": (b4_plus_bottom(2), "B4 with two new elements below"),
        "B4BT": (b4_both(), "B4 with a new bottom and a new top"),
        "C2xC3": (product_2x3(), "product of the two- and three-element chains"),
    }
    for name, ((n, leq), note) in heyting.items():
        write(name, n, lattice_ops(n, leq), note)
    write("L3", 3, lukasiewicz3(), "three-valued Lukasiewicz algebra (not Heyting)")


if __name__ == "__main__":
    main()
