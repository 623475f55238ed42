"""Procedural scenes: object construction, pools, domain randomization, sampling."""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

import numpy as np

from ..attributes import AttributeVocabulary, make_label
from ..config import SimConfig
from . import geometry
from .geometry import DISK, DOME, RECT, WorldPart, place_part

CANONICAL_RGB = {
    "red": (1.0, 0.0, 0.0),
    "green": (0.0, 1.0, 0.0),
    "blue": (0.0, 0.0, 1.0),
    "yellow": (1.0, 1.0, 0.0),
    "black": (0.0, 0.0, 0.0),
}

BASIC_GEOMETRIES = ("cube", "cuboid", "cylinder", "sphere")
COMPOSITE_GEOMETRIES = ("ell", "tee", "plus", "lollipop", "snowman")

# dominant primitive decides the shape attribute of a composite
COMPOSITE_SHAPE = {
    "ell": "cuboid",
    "tee": "cuboid",
    "plus": "cuboid",
    "lollipop": "cylinder",
    "snowman": "cylinder",
}

# adaptation targets: novel objects that get a name token (held-out combos and
# composite geometries, never seen during training)
ADAPTATION_OBJECTS = (
    ("lemon", "sphere", "yellow"),
    ("puck", "cube", "black"),
    ("barrel", "cylinder", "green"),
    ("bracket", "ell", "red"),
    ("mallet", "tee", "blue"),
)


@dataclass(frozen=True)
class LocalPart:
    kind: str
    ox: float
    oy: float
    yaw: float
    lx: float
    ly: float
    height: float
    color: tuple


@dataclass(frozen=True)
class ObjectSpec:
    id: int
    geometry: str
    label: tuple                 # (color id, shape id)
    color: tuple                 # dominant base RGB in [0,1]
    size: tuple                  # overall (length, width) footprint extents
    height: float
    pose: tuple = (0.0, 0.0, 0.0)
    name: int = 0                # name token id, 0 if unnamed
    parts: tuple = ()            # tuple of LocalPart

    def world_parts(self) -> list[WorldPart]:
        return [
            place_part(p.kind, (p.ox, p.oy), p.yaw, p.lx, p.ly, p.height, p.color, self.pose)
            for p in self.parts
        ]

    def bounding_radius(self) -> float:
        return max(math.hypot(p.ox, p.oy) + _part_radius(p) for p in self.parts)

    def contains(self, px, py):
        hit = None
        for wp in self.world_parts():
            m = geometry.point_in_part(wp, px, py)
            hit = m if hit is None else (hit | m)
        return hit


def _part_radius(p: LocalPart) -> float:
    if p.kind == RECT:
        return 0.5 * math.hypot(p.lx, p.ly)
    return 0.5 * p.lx


@dataclass(frozen=True)
class TextureParams:
    bg_base: float
    bg_amp: float
    obj_amp: float
    noise_seed: int


@dataclass(frozen=True)
class Scene:
    objects: tuple
    workspace: float
    texture: TextureParams
    rng_seed: int

    def object_by_id(self, obj_id: int) -> ObjectSpec:
        for o in self.objects:
            if o.id == obj_id:
                return o
        raise KeyError(f"no object with id {obj_id}")

    def without(self, obj_id: int) -> "Scene":
        self.object_by_id(obj_id)
        return dataclasses.replace(
            self, objects=tuple(o for o in self.objects if o.id != obj_id)
        )

    def validate(self, edge_margin: float = 0.0):
        """No footprint overlap between objects; everything in bounds."""
        objs = self.objects
        for i, a in enumerate(objs):
            x, y, _ = a.pose
            rb = a.bounding_radius()
            if not (rb + edge_margin <= x <= self.workspace - rb - edge_margin) or not (
                rb + edge_margin <= y <= self.workspace - rb - edge_margin
            ):
                raise ValueError(f"object {a.id} out of workspace bounds")
            for b in objs[i + 1:]:
                for pa in a.world_parts():
                    for pb in b.world_parts():
                        if geometry.parts_overlap(pa, pb):
                            raise ValueError(f"objects {a.id} and {b.id} overlap")
        return self


# ---------------------------------------------------------------------------
# object construction


def build_object(geometry_name: str, color_rgb, minor_rgb, dims: dict, label,
                 obj_id: int = -1, pose=(0.0, 0.0, 0.0), name: int = 0) -> ObjectSpec:
    """Construct an object's footprint parts from concrete dimensions."""
    c = tuple(color_rgb)
    if geometry_name == "cube":
        s, h = dims["side"], dims["height"]
        parts = (LocalPart(RECT, 0, 0, 0.0, s, s, h, c),)
        size = (s, s)
    elif geometry_name == "cuboid":
        l, w, h = dims["length"], dims["width"], dims["height"]
        parts = (LocalPart(RECT, 0, 0, 0.0, l, w, h, c),)
        size = (l, w)
    elif geometry_name == "cylinder":
        r, h = dims["radius"], dims["height"]
        parts = (LocalPart(DISK, 0, 0, 0.0, 2 * r, 2 * r, h, c),)
        size = (2 * r, 2 * r)
    elif geometry_name == "sphere":
        r = dims["radius"]
        h = 2 * r
        parts = (LocalPart(DOME, 0, 0, 0.0, 2 * r, 2 * r, h, c),)
        size = (2 * r, 2 * r)
    elif geometry_name in ("ell", "tee", "plus"):
        la, wa, h = dims["length"], dims["width"], dims["height"]
        lb = dims["arm_length"]
        wb = wa
        m = tuple(minor_rgb)
        if geometry_name == "ell":
            off = (la / 2 - wb / 2, lb / 2 - wa / 2)
        elif geometry_name == "tee":
            off = (la / 2 - wb / 2, 0.0)
        else:
            off = (0.0, 0.0)
        parts = (
            LocalPart(RECT, 0, 0, 0.0, la, wa, h, c),
            LocalPart(RECT, off[0], off[1], math.pi / 2, lb, wb, 0.8 * h, m),
        )
        size = (la, max(wa, lb))
    elif geometry_name == "lollipop":
        r, h = dims["radius"], dims["height"]
        ls, ws = dims["stick_length"], dims["stick_width"]
        m = tuple(minor_rgb)
        parts = (
            LocalPart(DISK, 0, 0, 0.0, 2 * r, 2 * r, h, c),
            LocalPart(RECT, r + ls / 2 - 0.005, 0, 0.0, ls, ws, 0.8 * h, m),
        )
        size = (2 * r + ls - 0.005, 2 * r)
    elif geometry_name == "snowman":
        r, h = dims["radius"], dims["height"]
        r2 = dims["head_radius"]
        m = tuple(minor_rgb)
        parts = (
            LocalPart(DISK, 0, 0, 0.0, 2 * r, 2 * r, h, c),
            LocalPart(DISK, r + r2 - 0.006, 0, 0.0, 2 * r2, 2 * r2, 0.8 * h, m),
        )
        size = (2 * r + 2 * r2 - 0.006, 2 * r)
    else:
        raise ValueError(f"unknown geometry: {geometry_name!r}")
    h_all = max(p.height for p in parts)
    return ObjectSpec(obj_id, geometry_name, tuple(label), c, size, h_all, tuple(pose), name, parts)


@dataclass(frozen=True)
class ObjectDraft:
    """Pre-randomization object request: geometry + attribute names."""

    geometry: str
    color: str
    minor_color: str = ""
    name: int = 0


def _nominal_dims(geometry_name: str, cfg: SimConfig) -> dict:
    mid = lambda r: 0.5 * (r[0] + r[1])
    h = mid(cfg.height_range)
    if geometry_name == "cube":
        return {"side": mid(cfg.cube_side), "height": h}
    if geometry_name == "cuboid":
        return {"length": mid(cfg.cuboid_length), "width": mid(cfg.cuboid_width), "height": h}
    if geometry_name == "cylinder":
        return {"radius": mid(cfg.cylinder_radius), "height": h}
    if geometry_name == "sphere":
        return {"radius": mid(cfg.sphere_radius)}
    if geometry_name in ("ell", "tee", "plus"):
        la = mid(cfg.cuboid_length)
        return {"length": la, "width": 0.032, "height": h, "arm_length": 0.6 * la}
    if geometry_name == "lollipop":
        r = max(0.025, mid(cfg.cylinder_radius))
        return {"radius": r, "height": h, "stick_length": 0.05, "stick_width": 0.016}
    if geometry_name == "snowman":
        r = max(0.025, mid(cfg.cylinder_radius))
        return {"radius": r, "height": h, "head_radius": 0.016}
    raise ValueError(f"unknown geometry: {geometry_name!r}")


def _random_dims(geometry_name: str, rng: np.random.Generator, cfg: SimConfig) -> dict:
    u = lambda r: float(rng.uniform(r[0], r[1]))
    h = u(cfg.height_range)
    if geometry_name == "cube":
        return {"side": u(cfg.cube_side), "height": h}
    if geometry_name == "cuboid":
        return {"length": u(cfg.cuboid_length), "width": u(cfg.cuboid_width), "height": h}
    if geometry_name == "cylinder":
        return {"radius": u(cfg.cylinder_radius), "height": h}
    if geometry_name == "sphere":
        return {"radius": u(cfg.sphere_radius)}
    if geometry_name in ("ell", "tee", "plus"):
        la = u(cfg.cuboid_length)
        wa = float(rng.uniform(0.028, 0.036))
        return {"length": la, "width": wa, "height": h, "arm_length": 0.6 * la}
    if geometry_name == "lollipop":
        r = float(rng.uniform(0.025, 0.032))
        return {"radius": r, "height": h, "stick_length": 0.05, "stick_width": 0.016}
    if geometry_name == "snowman":
        r = float(rng.uniform(0.025, 0.032))
        return {"radius": r, "height": h, "head_radius": 0.016}
    raise ValueError(f"unknown geometry: {geometry_name!r}")


def jitter_color(color_name: str, rng: np.random.Generator, cfg: SimConfig) -> tuple:
    base = np.array(CANONICAL_RGB[color_name])
    jit = base + rng.uniform(-cfg.color_jitter, cfg.color_jitter, size=3)
    return tuple(np.clip(jit, 0.0, 1.0).tolist())


def randomize_domain(drafts, rng: np.random.Generator, cfg: SimConfig, vocab: AttributeVocabulary,
                     randomize: bool = True):
    """Concrete objects + texture parameters from drafts.

    Jitters each object's RGB around its canonical color, draws sizes/heights
    from the configured ranges, and resamples the workspace texture
    parameters. With ``randomize=False`` the nominal mid-range values are used
    (identity under zero jitter and point ranges).
    """
    protos = []
    for d in drafts:
        if randomize:
            dims = _random_dims(d.geometry, rng, cfg)
            color = jitter_color(d.color, rng, cfg)
        else:
            dims = _nominal_dims(d.geometry, cfg)
            color = CANONICAL_RGB[d.color]
        minor = CANONICAL_RGB.get(d.minor_color, (0.5, 0.5, 0.5))
        if randomize and d.minor_color:
            minor = jitter_color(d.minor_color, rng, cfg)
        shape_name = COMPOSITE_SHAPE.get(d.geometry, d.geometry)
        label = make_label(vocab.color_id(d.color), vocab.shape_id(shape_name))
        protos.append(build_object(d.geometry, color, minor, dims, label, name=d.name))
    texture = TextureParams(
        bg_base=float(rng.uniform(*cfg.bg_base_range)) if randomize else float(np.mean(cfg.bg_base_range)),
        bg_amp=float(rng.uniform(*cfg.bg_noise_range)) if randomize else float(np.mean(cfg.bg_noise_range)),
        obj_amp=cfg.obj_noise,
        noise_seed=int(rng.integers(0, 2**31 - 1)),
    )
    return protos, texture


# ---------------------------------------------------------------------------
# object pools


class ObjectPool:
    """Samples object drafts; basic = training distribution, heldout = novel."""

    def __init__(self, kind: str, vocab: AttributeVocabulary, cfg: SimConfig):
        self.kind = kind
        self.vocab = vocab
        self.cfg = cfg
        excluded = {tuple(p) for p in cfg.heldout_combos}
        colors = vocab.colors
        if kind == "basic":
            self.entries = [
                ObjectDraft(shape, color)
                for color in colors
                for shape in BASIC_GEOMETRIES
                if (color, shape) not in excluded
            ]
        elif kind == "heldout":
            self.entries = [
                ObjectDraft(geo, color) for color in colors for geo in COMPOSITE_GEOMETRIES
            ] + [ObjectDraft(shape, color) for color, shape in sorted(excluded)]
        else:
            raise ValueError(f"unknown pool kind: {kind!r}")

    def geometry_ids(self) -> set:
        if self.kind == "basic":
            return {e.geometry for e in self.entries}
        # novel combos drawn from held-out pools count as distinct geometry ids
        return {
            e.geometry if e.geometry in COMPOSITE_GEOMETRIES else f"{e.color}-{e.geometry}"
            for e in self.entries
        }

    def distinct_labels(self) -> int:
        labels = set()
        for e in self.entries:
            shape = COMPOSITE_SHAPE.get(e.geometry, e.geometry)
            labels.add((e.color, shape))
        return len(labels)

    def sample_drafts(self, rng: np.random.Generator, count: int, unique_attributes: bool):
        if unique_attributes and count > self.distinct_labels():
            raise ValueError(
                f"cannot sample {count} objects with unique attributes from "
                f"{self.distinct_labels()} distinct pairs"
            )
        drafts: list[ObjectDraft] = []
        seen = set()
        while len(drafts) < count:
            d = self.entries[int(rng.integers(len(self.entries)))]
            shape = COMPOSITE_SHAPE.get(d.geometry, d.geometry)
            key = (d.color, shape)
            if unique_attributes and key in seen:
                continue
            seen.add(key)
            if d.geometry in COMPOSITE_GEOMETRIES:
                others = [c for c in self.vocab.colors if c != d.color]
                d = dataclasses.replace(d, minor_color=others[int(rng.integers(len(others)))])
            drafts.append(d)
        return drafts


# ---------------------------------------------------------------------------
# scene sampling


def place_objects(protos, rng: np.random.Generator, cfg: SimConfig, workspace: float):
    """Rejection-sample non-overlapping poses for pre-built objects."""
    placed = []
    for proto in protos:
        rb = proto.bounding_radius()
        lo = rb + cfg.edge_margin
        hi = workspace - rb - cfg.edge_margin
        if hi <= lo:
            raise ValueError(f"object too large for workspace: {proto.geometry}")
        for attempt in range(cfg.place_retries):
            x = float(rng.uniform(lo, hi))
            y = float(rng.uniform(lo, hi))
            yaw = float(rng.uniform(0.0, math.pi))
            ok = True
            for other in placed:
                ox, oy, _ = other.pose
                min_d = rb + other.bounding_radius() + cfg.clearance
                if (x - ox) ** 2 + (y - oy) ** 2 < min_d ** 2:
                    ok = False
                    break
            if ok:
                placed.append(dataclasses.replace(proto, id=len(placed), pose=(x, y, yaw)))
                break
        else:
            raise ValueError(f"failed to place object after {cfg.place_retries} retries")
    return placed


def sample_scene(seed: int, count: int, unique_attributes: bool, pool: ObjectPool,
                 cfg: SimConfig) -> Scene:
    """Random scene of ``count`` objects; deterministic given the seed."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    drafts = pool.sample_drafts(rng, count, unique_attributes)
    protos, texture = randomize_domain(drafts, rng, cfg, pool.vocab)
    objects = place_objects(protos, rng, cfg, cfg.workspace)
    return Scene(tuple(objects), cfg.workspace, texture, seed).validate()


def sole_scene(proto: ObjectSpec, seed: int, cfg: SimConfig, yaw: float = None) -> Scene:
    """Single object at the workspace center (the adaptation setting)."""
    rng = np.random.default_rng(seed)
    texture = TextureParams(
        bg_base=float(rng.uniform(*cfg.bg_base_range)),
        bg_amp=float(rng.uniform(*cfg.bg_noise_range)),
        obj_amp=cfg.obj_noise,
        noise_seed=int(rng.integers(0, 2**31 - 1)),
    )
    if yaw is None:
        yaw = float(rng.uniform(0.0, math.pi))
    c = cfg.workspace / 2
    obj = dataclasses.replace(proto, id=0, pose=(c, c, yaw))
    return Scene((obj,), cfg.workspace, texture, seed).validate()


def adaptation_object(name_token: int, entry, seed: int, cfg: SimConfig,
                      vocab: AttributeVocabulary) -> ObjectSpec:
    """Concrete (sized, colored) novel object for one-grasp adaptation."""
    _, geometry_name, color = entry
    rng = np.random.default_rng(seed)
    minor_choices = [c for c in vocab.colors if c != color]
    minor = minor_choices[int(rng.integers(len(minor_choices)))]
    draft = ObjectDraft(geometry_name, color, minor if geometry_name in COMPOSITE_GEOMETRIES else "",
                        name=name_token)
    protos, _ = randomize_domain([draft], rng, cfg, vocab)
    return protos[0]


def rotate_scene(scene: Scene, quarters: int) -> Scene:
    """Rotate all object poses by ``quarters`` * 90 degrees about the center.

    Uses exact right-angle trig so rotated scenes stay bit-comparable.
    """
    quarters %= 4
    cs = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][quarters]
    c0 = scene.workspace / 2
    ang = quarters * math.pi / 2
    new_objs = []
    for o in scene.objects:
        x, y, yaw = o.pose
        dx, dy = x - c0, y - c0
        nx = c0 + cs[0] * dx - cs[1] * dy
        ny = c0 + cs[1] * dx + cs[0] * dy
        new_objs.append(dataclasses.replace(o, pose=(nx, ny, yaw + ang)))
    return dataclasses.replace(scene, objects=tuple(new_objs))


# ---------------------------------------------------------------------------
# persistence


def scene_to_dict(scene: Scene) -> dict:
    return {
        "workspace": scene.workspace,
        "rng_seed": scene.rng_seed,
        "texture": dataclasses.asdict(scene.texture),
        "objects": [
            {
                "id": o.id,
                "geometry": o.geometry,
                "label": list(o.label),
                "color": list(o.color),
                "size": list(o.size),
                "height": o.height,
                "pose": list(o.pose),
                "name": o.name,
                "parts": [dataclasses.asdict(p) for p in o.parts],
            }
            for o in scene.objects
        ],
    }


def scene_from_dict(d: dict) -> Scene:
    objects = tuple(
        ObjectSpec(
            id=od["id"],
            geometry=od["geometry"],
            label=tuple(od["label"]),
            color=tuple(od["color"]),
            size=tuple(od["size"]),
            height=od["height"],
            pose=tuple(od["pose"]),
            name=od.get("name", 0),
            parts=tuple(
                LocalPart(p["kind"], p["ox"], p["oy"], p["yaw"], p["lx"], p["ly"],
                          p["height"], tuple(p["color"]))
                for p in od["parts"]
            ),
        )
        for od in d["objects"]
    )
    return Scene(objects, d["workspace"], TextureParams(**d["texture"]), d["rng_seed"])


def scene_to_json(scene: Scene) -> str:
    return json.dumps(scene_to_dict(scene), sort_keys=True)


def scene_from_json(text: str) -> Scene:
    return scene_from_dict(json.loads(text))
