#!/usr/bin/env python3
"""Regenerate crates/core/data/census/*.json from KnotInfo / LinkInfo PD codes.

Requires `pip install database_knotinfo`. The output is committed, so this
only needs to be rerun when the embedded corpus changes.

PD convention: X[i, j, k, l] lists edges counterclockwise starting at the
incoming under edge i; k is the outgoing under edge. Edge labels increase
along each component and wrap from its largest to its smallest label.
"""

import ast
import json
import os
import sys

from database_knotinfo import link_list

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data", "census")

KNOTS = (
    ["3_1", "4_1", "5_1", "5_2"]
    + [f"6_{i}" for i in range(1, 4)]
    + [f"7_{i}" for i in range(1, 8)]
    + [f"8_{i}" for i in range(1, 22)]
    + ["9_2", "9_24"]
)
LINKS = (
    ["L2a1", "L4a1", "L5a1"]
    + [f"L6a{i}" for i in range(1, 6)]
    + ["L6n1"]
    + [f"L7a{i}" for i in range(1, 8)]
    + ["L7n1", "L7n2"]
)


def pd_to_diagram(pd):
    edges = sorted({e for x in pd for e in x})
    parent = {e: e for e in edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for i, j, k, l in pd:
        parent[find(i)] = find(k)
        parent[find(j)] = find(l)
    groups = {}
    for e in edges:
        groups.setdefault(find(e), []).append(e)
    comps = sorted((sorted(c) for c in groups.values()), key=min)
    nxt = {}
    for c in comps:
        assert c == list(range(c[0], c[-1] + 1)), f"non-contiguous component {c}"
        for a, b in zip(c, c[1:] + c[:1]):
            nxt[a] = b

    arc_of = {e: e for e in edges}

    def arc(e):
        while arc_of[e] != e:
            e = arc_of[e]
        return e

    for i, j, k, l in pd:
        assert nxt[i] == k, f"under strand of {(i, j, k, l)} is not oriented i -> k"
        arc_of[arc(j)] = arc(l)

    starts = {x[2] for x in pd}
    names = {}
    components = []
    for c in comps:
        first = min(e for e in c if e in starts)
        seq, e = [], first
        for _ in range(len(c)):
            a = arc(e)
            if not seq or seq[-1] != a:
                seq.append(a)
            e = nxt[e]
        if len(seq) > 1 and seq[0] == seq[-1]:
            seq.pop()
        for a in seq:
            names[a] = f"a{len(names) + 1}"
        components.append([names[a] for a in seq])

    crossings = []
    for i, j, k, l in pd:
        if nxt[l] == j:
            sign = 1
        elif nxt[j] == l:
            sign = -1
        else:
            raise ValueError(f"cannot orient over strand of {(i, j, k, l)}")
        crossings.append(
            {"sign": sign, "over": names[arc(j)], "under_in": names[arc(i)], "under_out": names[arc(k)]}
        )
    return components, crossings


def connected_sum(d1, d2):
    """Join the first arcs of two knot diagrams by swapping the under_out of the crossings that start them."""

    def tag(d, p):
        comps, crs = d
        return [[p + a for a in c] for c in comps], [
            {**x, **{k: p + x[k] for k in ("over", "under_in", "under_out")}} for x in crs
        ]

    (c1, x1), (c2, x2) = tag(d1, "L"), tag(d2, "R")
    a, b = c1[0][0], c2[0][0]
    crs = x1 + x2
    ia = next(q for q, x in enumerate(crs) if x["under_out"] == a)
    ib = next(q for q, x in enumerate(crs) if x["under_out"] == b)
    crs[ia]["under_out"], crs[ib]["under_out"] = b, a
    comp = [b] + c2[0][1:] + [a] + c1[0][1:]
    rename = {old: f"a{n + 1}" for n, old in enumerate(comp)}
    for x in crs:
        for k in ("over", "under_in", "under_out"):
            x[k] = rename[x[k]]
    return [[rename[a] for a in comp]], crs


def mirror(d):
    comps, crs = d
    return comps, [{**x, "sign": -x["sign"]} for x in crs]


def write(name, components, crossings, virtual=False):
    doc = {"name": name, "virtual": virtual, "components": components, "crossings": crossings}
    with open(os.path.join(OUT, f"{name}.json"), "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    knots = {r["name"]: r for r in link_list()}
    links = {r["name"]: r for r in link_list(proper_links=True)}

    write("U", [["a1"]], [])
    write("U_2", [["a1"], ["a2"]], [])
    write("U_3", [["a1"], ["a2"], ["a3"]], [])

    diagrams = {}
    for k in KNOTS:
        diagrams[k] = pd_to_diagram(ast.literal_eval(knots[k]["pd_notation"]))
        write(k, *diagrams[k])

    trefoil = diagrams["3_1"]
    write("SK", *connected_sum(trefoil, mirror(trefoil)))
    write("GK", *connected_sum(trefoil, trefoil))

    for name in LINKS:
        key = min(k for k in links if k.startswith(name + "{"))
        raw = links[key]["pd_notation_vector"].replace("{", "[").replace("}", "]")
        write(name, *pd_to_diagram(ast.literal_eval(raw)))

    # Virtual knots: classical crossings only, read off the printed colored
    # presentation matrices with the extra kink removed.
    write(
        "v3_1",
        [["a1", "a2", "a3"]],
        [
            {"sign": -1, "over": "a1", "under_in": "a1", "under_out": "a2"},
            {"sign": -1, "over": "a1", "under_in": "a2", "under_out": "a3"},
            {"sign": 1, "over": "a2", "under_in": "a3", "under_out": "a1"},
        ],
        virtual=True,
    )
    write(
        "v3_7",
        [["a1", "a2", "a3"]],
        [
            {"sign": -1, "over": "a3", "under_in": "a1", "under_out": "a2"},
            {"sign": 1, "over": "a1", "under_in": "a2", "under_out": "a3"},
            {"sign": -1, "over": "a2", "under_in": "a3", "under_out": "a1"},
        ],
        virtual=True,
    )


if __name__ == "__main__":
    sys.exit(main())
