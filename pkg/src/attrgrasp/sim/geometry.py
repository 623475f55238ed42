"""Analytic 2-D footprint geometry: membership, line chords, and collisions.

All shapes live in the world plane. A footprint part is either a rotated
rectangle ("rect"), a disk ("disk", flat-topped), or a dome ("dome", a resting
ball: disk footprint, spherical top, caliper width fixed at its diameter).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RECT = "rect"
DISK = "disk"
DOME = "dome"


@dataclass(frozen=True)
class WorldPart:
    """One footprint primitive placed in the world."""

    kind: str
    cx: float
    cy: float
    yaw: float          # rect only; ignored for disk/dome
    lx: float           # rect: full extent along local x; disk/dome: diameter
    ly: float           # rect: full extent along local y; disk/dome: diameter
    height: float       # top height above the table (dome: 2R at apex)
    color: tuple = (0.5, 0.5, 0.5)

    @property
    def radius(self) -> float:
        return 0.5 * self.lx

    def bounding_radius(self) -> float:
        if self.kind == RECT:
            return 0.5 * math.hypot(self.lx, self.ly)
        return self.radius


def place_part(kind, offset, yaw_local, lx, ly, height, color, pose) -> WorldPart:
    """Place a local-frame part given an object pose (x, y, yaw)."""
    x, y, yaw = pose
    c, s = math.cos(yaw), math.sin(yaw)
    ox, oy = offset
    return WorldPart(
        kind=kind,
        cx=x + c * ox - s * oy,
        cy=y + s * ox + c * oy,
        yaw=yaw + yaw_local,
        lx=lx,
        ly=ly,
        height=height,
        color=tuple(color),
    )


def point_in_part(part: WorldPart, px, py):
    """Membership test; accepts scalars or numpy arrays (boundary inclusive)."""
    dx = px - part.cx
    dy = py - part.cy
    if part.kind == RECT:
        c, s = math.cos(part.yaw), math.sin(part.yaw)
        lx = c * dx + s * dy
        ly = -s * dx + c * dy
        return (np.abs(lx) <= 0.5 * part.lx) & (np.abs(ly) <= 0.5 * part.ly)
    return dx * dx + dy * dy <= part.radius ** 2


def part_top_height(part: WorldPart, px, py):
    """Top surface height at covered points (call only where membership holds)."""
    if part.kind == DOME:
        r = part.radius
        d2 = (px - part.cx) ** 2 + (py - part.cy) ** 2
        return r + np.sqrt(np.maximum(r * r - d2, 0.0))
    if np.isscalar(px):
        return part.height
    return np.full(np.shape(px), part.height)


def line_part_interval(part: WorldPart, px, py, dx, dy):
    """Intersection interval [t0, t1] of the line p + t*d with the footprint.

    Returns None when the line misses. Dome parts return the ball-caliper
    interval (projection of the center +- radius) regardless of the chord.
    """
    rx = part.cx - px
    ry = part.cy - py
    if part.kind == DOME:
        tc = rx * dx + ry * dy
        perp = math.hypot(rx - tc * dx, ry - tc * dy)
        if perp > part.radius:
            return None
        return (tc - part.radius, tc + part.radius)
    if part.kind == DISK:
        tc = rx * dx + ry * dy
        perp2 = (rx - tc * dx) ** 2 + (ry - tc * dy) ** 2
        h2 = part.radius ** 2 - perp2
        if h2 < 0:
            return None
        h = math.sqrt(h2)
        return (tc - h, tc + h)
    # rect: slab test in the local frame
    c, s = math.cos(part.yaw), math.sin(part.yaw)
    # point and direction in local coords
    lpx = c * (px - part.cx) + s * (py - part.cy)
    lpy = -s * (px - part.cx) + c * (py - part.cy)
    ldx = c * dx + s * dy
    ldy = -s * dx + c * dy
    t0, t1 = -math.inf, math.inf
    for p0, d0, half in ((lpx, ldx, 0.5 * part.lx), (lpy, ldy, 0.5 * part.ly)):
        if abs(d0) < 1e-12:
            if abs(p0) > half:
                return None
            continue
        ta = (-half - p0) / d0
        tb = (half - p0) / d0
        if ta > tb:
            ta, tb = tb, ta
        t0 = max(t0, ta)
        t1 = min(t1, tb)
    if t0 > t1:
        return None
    return (t0, t1)


def _rect_axes(part: WorldPart):
    c, s = math.cos(part.yaw), math.sin(part.yaw)
    return ((c, s), (-s, c)), (0.5 * part.lx, 0.5 * part.ly)


def rects_overlap(a: WorldPart, b: WorldPart) -> bool:
    """Strict interior overlap of two rotated rectangles (SAT; touching = no)."""
    (ax1, ax2), (ha1, ha2) = _rect_axes(a)
    (bx1, bx2), (hb1, hb2) = _rect_axes(b)
    tx, ty = b.cx - a.cx, b.cy - a.cy
    for ux, uy in (ax1, ax2, bx1, bx2):
        ra = ha1 * abs(ux * ax1[0] + uy * ax1[1]) + ha2 * abs(ux * ax2[0] + uy * ax2[1])
        rb = hb1 * abs(ux * bx1[0] + uy * bx1[1]) + hb2 * abs(ux * bx2[0] + uy * bx2[1])
        if abs(tx * ux + ty * uy) >= ra + rb:
            return False
    return True


def rect_disk_overlap(rect: WorldPart, disk: WorldPart) -> bool:
    c, s = math.cos(rect.yaw), math.sin(rect.yaw)
    dx = disk.cx - rect.cx
    dy = disk.cy - rect.cy
    lx = abs(c * dx + s * dy)
    ly = abs(-s * dx + c * dy)
    gx = max(lx - 0.5 * rect.lx, 0.0)
    gy = max(ly - 0.5 * rect.ly, 0.0)
    return gx * gx + gy * gy < disk.radius ** 2


def disks_overlap(a: WorldPart, b: WorldPart) -> bool:
    d2 = (a.cx - b.cx) ** 2 + (a.cy - b.cy) ** 2
    return d2 < (a.radius + b.radius) ** 2


def parts_overlap(a: WorldPart, b: WorldPart) -> bool:
    a_rect = a.kind == RECT
    b_rect = b.kind == RECT
    if a_rect and b_rect:
        return rects_overlap(a, b)
    if a_rect:
        return rect_disk_overlap(a, b)
    if b_rect:
        return rect_disk_overlap(b, a)
    return disks_overlap(a, b)
