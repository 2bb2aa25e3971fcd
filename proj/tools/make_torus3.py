#!/usr/bin/env python3
"""Regenerates data/torus3.json.

Triangulates the 3-torus as a 3x3x3 periodic cube grid, each unit cube
split into six tetrahedra along axis permutations (the classic Kuhn /
Freudenthal subdivision). Side length 3 keeps every tetrahedron's
vertices distinct after wrapping, and distinct tetrahedra keep distinct
vertex sets, so the result is a genuine simplicial complex.
"""

import itertools
import json

L = 3
E = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1)}


def vid(p):
    return (p[0] % L) + L * (p[1] % L) + L * L * (p[2] % L)


def add(p, d):
    return (p[0] + d[0], p[1] + d[1], p[2] + d[2])


tets = set()
for x, y, z in itertools.product(range(L), repeat=3):
    base = (x, y, z)
    for perm in itertools.permutations(range(3)):
        p = base
        verts = [vid(p)]
        for axis in perm:
            p = add(p, E[axis])
            verts.append(vid(p))
        tets.add(tuple(sorted(verts)))

assert len(tets) == 6 * L ** 3

# close downward: index cells of each dimension by sorted vertex tuple
cells = [dict() for _ in range(4)]
for t in sorted(tets):
    cells[3][t] = None
for k in (3, 2, 1):
    for verts in list(cells[k]):
        for j in range(len(verts)):
            face = verts[:j] + verts[j + 1:]
            cells[k - 1][face] = None
for v in range(L ** 3):
    cells[0][(v,)] = None

for k in range(4):
    for i, verts in enumerate(sorted(cells[k])):
        cells[k][verts] = i

counts = [len(cells[k]) for k in range(4)]
assert counts == [27, 189, 324, 162], counts

incidence = {}
for k in (1, 2, 3):
    rows = []
    for verts in sorted(cells[k]):
        row = []
        sign = 1
        for j in range(len(verts)):
            face = verts[:j] + verts[j + 1:]
            row.append([cells[k - 1][face], sign])
            sign = -sign
        rows.append(row)
    incidence[str(k)] = rows

doc = {"name": "torus3", "dim": 3, "cells": counts, "incidence": incidence}
with open("data/torus3.json", "w") as fh:
    json.dump(doc, fh, separators=(",", ":"))
    fh.write("\n")
print("wrote data/torus3.json:", counts)
