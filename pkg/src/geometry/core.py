"""Value types for the scene: points, balls, lines, configurations and orders."""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from geometry.errors import (
    InvalidInput,
    MixedRadii,
    NotATransversal,
    OverlapError,
    TieError,
)
from geometry.tolerances import GEOM_TOL


class Point3(NamedTuple):
    x: float
    y: float
    z: float

    @classmethod
    def of(cls, values) -> Point3:
        arr = np.asarray(values, dtype=float).reshape(3)
        if not np.all(np.isfinite(arr)):
            raise InvalidInput(f"Non-finite coordinates: {values}")
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


@dataclass(frozen=True)
class Ball:
    center: Point3
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", Point3.of(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidInput(f"Ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def c(self) -> np.ndarray:
        return self.center.as_array()


def _lex_negative(v: np.ndarray) -> bool:
    for comp in v:
        if abs(comp) > 1e-15:
            return comp < 0
    return False


@dataclass(frozen=True)
class Line:
    """Line stored as (perpendicular foot from the origin, unit direction)."""

    anchor: Point3
    direction: Point3

    @classmethod
    def through(cls, point, direction, oriented: bool = True) -> Line:
        d = np.asarray(direction, dtype=float).reshape(3)
        norm = float(np.linalg.norm(d))
        if not math.isfinite(norm) or norm < 1e-15:
            raise InvalidInput(f"Degenerate line direction: {direction}")
        d = d / norm
        if not oriented and _lex_negative(d):
            d = -d
        p = np.asarray(point, dtype=float).reshape(3)
        anchor = p - np.dot(p, d) * d
        return cls(Point3.of(anchor), Point3.of(d))

    @classmethod
    def through_points(cls, p, q, oriented: bool = True) -> Line:
        p = np.asarray(p, dtype=float)
        return cls.through(p, np.asarray(q, dtype=float) - p, oriented=oriented)

    @property
    def p(self) -> np.ndarray:
        return self.anchor.as_array()

    @property
    def d(self) -> np.ndarray:
        return self.direction.as_array()

    def reversed(self) -> Line:
        return Line.through(self.p, -self.d)

    def unoriented(self) -> Line:
        return Line.through(self.p, self.d, oriented=False)

    def point_at(self, s: float) -> np.ndarray:
        return self.p + s * self.d

    def parameter_of(self, point) -> float:
        return float(np.dot(np.asarray(point, dtype=float) - self.p, self.d))

    def foot_of(self, point) -> np.ndarray:
        return self.point_at(self.parameter_of(point))

    def separation(self, other: Line) -> float:
        """Distance between canonical forms, ignoring orientation."""
        a, b = self.unoriented(), other.unoriented()
        return float(np.linalg.norm(a.p - b.p) + np.linalg.norm(a.d - b.d))

    def to_dict(self) -> dict:
        return {"anchor": list(self.anchor), "direction": list(self.direction)}


X_AXIS = Line.through((0.0, 0.0, 0.0), (1.0, 0.0, 0.0))


@dataclass(frozen=True)
class OrderedOrder:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if len(set(labels)) != len(labels):
            raise InvalidInput(f"Order repeats a label: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def parse(cls, text: str) -> OrderedOrder:
        """'ABCD' for single-character labels, 'a1,a2,a3' otherwise."""
        text = text.strip()
        if "," in text:
            return cls(tuple(part.strip() for part in text.split(",")))
        return cls(tuple(text))

    def reversed(self) -> OrderedOrder:
        return OrderedOrder(self.labels[::-1])

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __str__(self):
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(self.labels)
        return ",".join(self.labels)


@dataclass(frozen=True)
class GeometricPermutation:
    canonical: OrderedOrder

    def __post_init__(self):
        if self.canonical.labels > self.canonical.reversed().labels:
            raise InvalidInput(f"{self.canonical} is not in canonical form")

    def orders(self) -> tuple[OrderedOrder, OrderedOrder]:
        return self.canonical, self.canonical.reversed()

    def __str__(self):
        return str(self.canonical)


def canonicalize(order: OrderedOrder) -> GeometricPermutation:
    rev = order.reversed()
    return GeometricPermutation(order if order.labels <= rev.labels else rev)


@dataclass(frozen=True)
class Configuration:
    labels: tuple[str, ...]
    balls: tuple[Ball, ...]
    allow_overlap: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        balls = tuple(self.balls)
        if len(labels) != len(balls):
            raise InvalidInput("Labels and balls differ in length")
        if not labels:
            raise InvalidInput("Configuration is empty")
        if any(not lab for lab in labels) or len(set(labels)) != len(labels):
            raise InvalidInput(f"Labels must be unique and non-empty: {labels}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "balls", balls)
        if not self.allow_overlap:
            pairs = self.overlapping_pairs()
            if pairs:
                raise OverlapError(f"Overlapping balls: {pairs}")

    @classmethod
    def from_centers(cls, centers, labels: Sequence[str] | None = None,
                     radius: float = 1.0, allow_overlap: bool = False) -> Configuration:
        centers = np.asarray(centers, dtype=float).reshape(-1, 3)
        if labels is None:
            labels = default_labels(len(centers))
        balls = tuple(Ball(Point3.of(c), radius) for c in centers)
        return cls(tuple(labels), balls, allow_overlap=allow_overlap)

    @classmethod
    def from_items(cls, items: Iterable[tuple[str, Ball]], allow_overlap: bool = False) -> Configuration:
        items = list(items)
        return cls(tuple(lab for lab, _ in items), tuple(b for _, b in items),
                   allow_overlap=allow_overlap)

    def __len__(self):
        return len(self.balls)

    @property
    def centers(self) -> np.ndarray:
        return np.array([b.center for b in self.balls], dtype=float)

    @property
    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls], dtype=float)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInput(f"Unknown label {label!r}") from None

    def ball(self, label: str) -> Ball:
        return self.balls[self.index(label)]

    def common_radius(self) -> float:
        radii = self.radii
        if radii.max() - radii.min() > GEOM_TOL:
            raise MixedRadii(f"Radii differ: {sorted(set(radii.tolist()))}")
        return float(radii[0])

    def overlapping_pairs(self) -> list[tuple[str, str]]:
        centers, radii = self.centers, self.radii
        bad = []
        for i, j in itertools.combinations(range(len(self.balls)), 2):
            if np.linalg.norm(centers[i] - centers[j]) < radii[i] + radii[j] - GEOM_TOL:
                bad.append((self.labels[i], self.labels[j]))
        return bad

    def is_non_overlapping(self) -> bool:
        return not self.overlapping_pairs()

    def scaled(self, t: float) -> Configuration:
        """Shrink (or grow) every ball about its own center by the factor t."""
        balls = tuple(Ball(b.center, b.radius * t) for b in self.balls)
        return Configuration(self.labels, balls, allow_overlap=self.allow_overlap or t > 1)

    def subset(self, labels: Sequence[str]) -> Configuration:
        return Configuration(tuple(labels), tuple(self.ball(lab) for lab in labels),
                             allow_overlap=self.allow_overlap)

    def moved(self, rotation: np.ndarray, translation) -> Configuration:
        centers = self.centers @ np.asarray(rotation, dtype=float).T + np.asarray(translation, dtype=float)
        balls = tuple(Ball(Point3.of(c), b.radius) for c, b in zip(centers, self.balls))
        return Configuration(self.labels, balls, allow_overlap=self.allow_overlap)

    def to_dict(self) -> dict:
        return {"balls": [{"label": lab, "center": list(b.center), "radius": b.radius}
                          for lab, b in zip(self.labels, self.balls)]}

    @classmethod
    def from_dict(cls, data: dict) -> Configuration:
        try:
            entries = data["balls"]
            items = [(str(e["label"]), Ball(Point3.of(e["center"]), float(e.get("radius", 1.0))))
                     for e in entries]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(f"Malformed configuration: {e}") from e
        return cls.from_items(items)

    @classmethod
    def load(cls, path: str) -> tuple[Configuration, str]:
        """Read a configuration file; also returns the SHA-256 of its bytes."""
        try:
            with open(path, "rb") as f:
                raw = f.read()
        except OSError as e:
            raise InvalidInput(f"Cannot read configuration {path}: {e}") from e
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as e:
            raise InvalidInput(f"Configuration {path} is not valid JSON: {e}") from e
        return cls.from_dict(data), hashlib.sha256(raw).hexdigest()

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("A") + i) for i in range(n))
    return tuple(f"B{i}" for i in range(n))


def dist_point_line(p, line: Line) -> float:
    offset = np.asarray(p, dtype=float) - line.p
    return float(np.linalg.norm(offset - np.dot(offset, line.d) * line.d))


def _sorted_labels(labels: Sequence[str], keys: np.ndarray) -> OrderedOrder:
    order = np.argsort(keys, kind="stable")
    gaps = np.diff(keys[order])
    if gaps.size and gaps.min() < GEOM_TOL:
        k = int(np.argmin(gaps))
        raise TieError(f"{labels[order[k]]} and {labels[order[k + 1]]} project to the same position")
    return OrderedOrder(tuple(labels[i] for i in order))


def order_along(cfg: Configuration, v) -> OrderedOrder:
    v = np.asarray(v, dtype=float)
    return _sorted_labels(cfg.labels, cfg.centers @ v)


def stabbing_order(cfg: Configuration, line: Line) -> OrderedOrder:
    offsets = cfg.centers - line.p
    s = offsets @ line.d
    dist = np.linalg.norm(offsets - np.outer(s, line.d), axis=1)
    radii = cfg.radii
    missed = [lab for lab, dd, r in zip(cfg.labels, dist, radii) if dd > r + GEOM_TOL]
    if missed:
        raise NotATransversal(f"Line misses {', '.join(missed)}")
    order = _sorted_labels(cfg.labels, s)

    # consecutive chords may touch but not overlap
    half = np.sqrt(np.clip(radii ** 2 - dist ** 2, 0.0, None))
    idx = [cfg.index(lab) for lab in order]
    for i, j in zip(idx, idx[1:]):
        gap = (s[j] - half[j]) - (s[i] + half[i])
        if gap < -GEOM_TOL:
            raise NotATransversal(f"Chords of {cfg.labels[i]} and {cfg.labels[j]} overlap")
    return order


def rotation_matrix(axis, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def move_line(line: Line, rotation: np.ndarray, translation) -> Line:
    rotation = np.asarray(rotation, dtype=float)
    return Line.through(rotation @ line.p + np.asarray(translation, dtype=float), rotation @ line.d)
