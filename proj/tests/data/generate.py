"""Writes the hand-built graph fixtures used by the tests.

Run from this directory: python3 generate.py
"""
import json
import math

import numpy as np
from scipy.spatial import ConvexHull

GAP = -1


def polyhedron(points, sides):
    """Faces of a convex polyhedron, merging coplanar hull triangles."""
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    edges = set()
    for simplex in hull.simplices:
        for i in range(3):
            a, b = simplex[i], simplex[(i + 1) % 3]
            edges.add((min(a, b), max(a, b)))
    length = min(np.linalg.norm(pts[a] - pts[b]) for a, b in edges)
    edges = {(a, b) for a, b in edges if np.linalg.norm(pts[a] - pts[b]) < length * 1.01}
    return pts, edges


def rotations(pts, edges):
    """Counter-clockwise neighbour order seen from outside."""
    nbrs = {v: [] for v in range(len(pts))}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rot = []
    for v in range(len(pts)):
        n = pts[v] / np.linalg.norm(pts[v])
        e1 = pts[nbrs[v][0]] - pts[v]
        e1 -= n * np.dot(e1, n)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        ang = lambda u: math.atan2(np.dot(pts[u] - pts[v], e2), np.dot(pts[u] - pts[v], e1)) % (2 * math.pi)
        rot.append(sorted(nbrs[v], key=ang))
    return rot


def trace_faces(rot):
    """Faces as vertex cycles: next(u -> v) = v -> predecessor of u in rot[v]."""
    seen = set()
    faces = []
    for u in range(len(rot)):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                r = rot[b]
                a, b = b, r[(r.index(a) - 1) % len(r)]
            faces.append(face)
    return faces


def truncate(rot, faces, keep):
    """Restriction to the faces in `keep`, relabelled, with gap markers."""
    kept = [faces[i] for i in keep]
    verts = sorted({v for f in kept for v in f})
    corner = set()
    for f in kept:
        for i in range(len(f)):
            corner.add((f[i - 1], f[i], f[(i + 1) % len(f)]))
    index = {v: i for i, v in enumerate(verts)}
    out_rot, boundary = [], []
    for v in verts:
        r = rot[v]
        entries = []
        complete = True
        for k in range(len(r)):
            w, u = r[k], r[(k + 1) % len(r)]
            # Corner between w and the next neighbour u belongs to the face u -> v -> w.
            inside = (u, v, w) in corner
            if w in index and any(w in f and v in f for f in kept):
                entries.append(index[w])
            if not inside:
                complete = False
                entries.append(GAP)
        # Collapse repeated gaps and a leading/trailing pair.
        cleaned = []
        for e in entries:
            if e == GAP and cleaned and cleaned[-1] == GAP:
                continue
            cleaned.append(e)
        if len(cleaned) > 1 and cleaned[0] == GAP and cleaned[-1] == GAP:
            cleaned.pop()
        out_rot.append(cleaned)
        if not complete:
            boundary.append(index[v])
    return out_rot, boundary, index


def write(name, rot, boundary, center, note):
    doc = {"config": {"fixture": note}, "vertices": len(rot), "center": center, "boundary": boundary, "rotation": rot}
    with open(name, "w") as fh:
        fh.write("{\n")
        fh.write('  "config": %s,\n' % json.dumps(doc["config"]))
        fh.write('  "vertices": %d,\n  "center": %d,\n' % (len(rot), center))
        fh.write('  "boundary": %s,\n  "rotation": [\n' % json.dumps(boundary))
        fh.write(",\n".join("    " + json.dumps(r) for r in rot))
        fh.write("\n  ]\n}\n")


def cap(rot, faces, center, name, note):
    keep = [i for i, f in enumerate(faces) if center in f]
    r, b, index = truncate(rot, faces, keep)
    write(name, r, b, index[center], note)


phi = (1 + 5 ** 0.5) / 2
ico = [(0, s1, s2 * phi) for s1 in (-1, 1) for s2 in (-1, 1)]
ico = [p for q in ico for p in (q, (q[1], q[2], q[0]), (q[2], q[0], q[1]))]
pts, edges = polyhedron(ico, 3)
ico_rot = rotations(pts, edges)
write("icosahedron.json", [list(map(int, r)) for r in ico_rot], [], 0, "icosahedron")
cap([list(map(int, r)) for r in ico_rot], trace_faces(ico_rot), 0, "icosahedral_cap.json", "icosahedral cap (3,3,3,3,3)")

dod = [(sx, sy, sz) for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)]
for s1 in (-1, 1):
    for s2 in (-1, 1):
        dod += [(0, s1 / phi, s2 * phi), (s1 / phi, s2 * phi, 0), (s2 * phi, 0, s1 / phi)]
pts, edges = polyhedron(dod, 5)
dod_rot = [list(map(int, r)) for r in rotations(pts, edges)]
write("dodecahedron.json", dod_rot, [], 0, "dodecahedron")
cap(dod_rot, trace_faces(dod_rot), 0, "dodecahedral_cap.json", "dodecahedral cap (5,5,5)")

# Seven triangles around one vertex: curvature 1 - 7/2 + 7/3 = -1/6.
n = 7
wheel = [list(range(1, n + 1))]
for i in range(1, n + 1):
    prev = (i - 2) % n + 1
    nxt = i % n + 1
    wheel.append([0, prev, GAP, nxt])
write("heptagonal_wheel.json", wheel, list(range(1, n + 1)), 0, "seven triangles at one vertex")
