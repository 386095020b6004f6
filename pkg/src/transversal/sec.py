"""Smallest enclosing circle of planar points.

Single point sets use the move-to-front randomized incremental algorithm;
`sec_radius_batch` evaluates many small point sets at once by checking
every circle spanned by two or three of the points.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

_REL_EPS = 1e-12


class Circle(NamedTuple):
    center: tuple[float, float]
    r: float


def _contains(c: Circle | None, p) -> bool:
    if c is None:
        return False
    return math.hypot(p[0] - c.center[0], p[1] - c.center[1]) <= c.r * (1 + _REL_EPS) + 1e-14


def _diameter(a, b) -> Circle:
    cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
    return Circle((cx, cy), max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1])))


def _circumcircle(a, b, c) -> Circle | None:
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(x - a[0], y - a[1]), math.hypot(x - b[0], y - b[1]), math.hypot(x - c[0], y - c[1]))
    return Circle((x, y), r)


def _cross(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _circle_two_points(points, p, q) -> Circle:
    circ = _diameter(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in points:
        if _contains(circ, r):
            continue
        cross = _cross(px, py, qx, qy, r[0], r[1])
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        side = _cross(px, py, qx, qy, c.center[0], c.center[1])
        if cross > 0.0 and (left is None or side > _cross(px, py, qx, qy, *left.center)):
            left = c
        elif cross < 0.0 and (right is None or side < _cross(px, py, qx, qy, *right.center)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left.r <= right.r else right


def _circle_one_point(points, p) -> Circle:
    c = Circle((p[0], p[1]), 0.0)
    for i, q in enumerate(points):
        if not _contains(c, q):
            if c.r == 0.0:
                c = _diameter(p, q)
            else:
                c = _circle_two_points(points[: i + 1], p, q)
    return c


def smallest_enclosing_circle(points, seed: int = 0) -> Circle:
    pts = [(float(x), float(y)) for x, y in np.asarray(points, dtype=float).reshape(-1, 2)]
    if not pts:
        raise ValueError("smallest_enclosing_circle needs at least one point")
    # fixed shuffle keeps the result reproducible; the circle itself is unique
    order = np.random.default_rng(seed).permutation(len(pts))
    shuffled = [pts[i] for i in order]
    c = None
    for i, p in enumerate(shuffled):
        if c is None or not _contains(c, p):
            c = _circle_one_point(shuffled[:i], p)
    return c


def _candidate_index(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int, int]]]:
    return list(itertools.combinations(range(n), 2)), list(itertools.combinations(range(n), 3))


def sec_batch(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Centers (M, 2) and radii (M,) of the enclosing circles of M point sets of shape (M, n, 2)."""
    points = np.asarray(points, dtype=float)
    m, n, _ = points.shape
    if n == 1:
        return points[:, 0, :].copy(), np.zeros(m)
    pairs, triples = _candidate_index(n)

    pi = np.array([p[0] for p in pairs])
    pj = np.array([p[1] for p in pairs])
    centers = [(points[:, pi] + points[:, pj]) / 2.0]
    radii = [np.linalg.norm(points[:, pi] - points[:, pj], axis=-1) / 2.0]

    if triples:
        t = np.array(triples)
        a, b, c = points[:, t[:, 0]], points[:, t[:, 1]], points[:, t[:, 2]]
        bx, by = b[..., 0] - a[..., 0], b[..., 1] - a[..., 1]
        cx, cy = c[..., 0] - a[..., 0], c[..., 1] - a[..., 1]
        d = 2.0 * (bx * cy - by * cx)
        scale = np.maximum(bx * bx + by * by, cx * cx + cy * cy)
        ok = np.abs(d) > 1e-14 * np.maximum(scale, 1e-300)
        safe_d = np.where(ok, d, 1.0)
        b2, c2 = bx * bx + by * by, cx * cx + cy * cy
        ux = (cy * b2 - by * c2) / safe_d
        uy = (bx * c2 - cx * b2) / safe_d
        centers.append(np.stack([a[..., 0] + ux, a[..., 1] + uy], axis=-1))
        radii.append(np.where(ok, np.hypot(ux, uy), np.inf))

    cand_c = np.concatenate(centers, axis=1)
    cand_r = np.concatenate(radii, axis=1)
    # (M, K, n) distances from every candidate center to every point
    dist = np.linalg.norm(points[:, None, :, :] - cand_c[:, :, None, :], axis=-1)
    enclosing = np.all(dist <= cand_r[..., None] * (1 + 1e-10) + 1e-12, axis=-1)
    masked = np.where(enclosing & np.isfinite(cand_r), cand_r, np.inf)
    best = np.argmin(masked, axis=1)
    rows = np.arange(m)
    return cand_c[rows, best], np.max(dist[rows, best], axis=-1)
