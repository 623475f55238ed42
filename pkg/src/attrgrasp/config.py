"""Run configuration: simulator, model, training, adaptation, and eval knobs."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field


@dataclass
class SimConfig:
    workspace: float = 0.48          # side length, meters
    resolution: float = 0.005        # meters per pixel -> 96 x 96 maps
    tau_bg: float = 0.002            # background depth threshold, meters
    w_max: float = 0.08              # gripper opening, meters
    w_min: float = 0.0
    finger_width: float = 0.01       # finger extent along the closing direction
    finger_length: float = 0.02      # finger extent along the gripper axis
    color_jitter: float = 0.1        # per-component RGB jitter amplitude
    cube_side: tuple = (0.03, 0.06)
    cuboid_width: tuple = (0.025, 0.04)
    cuboid_length: tuple = (0.085, 0.12)
    cylinder_radius: tuple = (0.015, 0.03)
    sphere_radius: tuple = (0.015, 0.03)
    height_range: tuple = (0.02, 0.05)
    clearance: float = 0.02          # min gap between footprint bounding circles
    edge_margin: float = 0.01        # min gap between footprint and workspace edge
    place_retries: int = 500
    bg_base_range: tuple = (0.40, 0.55)   # background gray level
    bg_noise_range: tuple = (0.04, 0.10)  # background texture amplitude
    obj_noise: float = 0.02          # per-pixel object color perturbation
    # (color, shape) pairs excluded from the basic/training pool and used as
    # held-out novel combinations
    heldout_combos: tuple = (("yellow", "sphere"), ("black", "cube"), ("green", "cylinder"))

    def validate(self):
        if self.tau_bg <= 0:
            raise ValueError("tau_bg must be positive")
        if self.resolution <= 0 or self.workspace <= 0:
            raise ValueError("workspace geometry must be positive")
        if self.w_max <= self.w_min:
            raise ValueError("w_max must exceed w_min")
        # keep every jittered color nearest its own canonical color
        if self.color_jitter * (3 ** 0.5) >= 0.5:
            raise ValueError("color_jitter too large for unambiguous colors")

    @property
    def grid_size(self) -> int:
        return int(round(self.workspace / self.resolution))


@dataclass
class ModelConfig:
    embed_dim: int = 64              # shared text/visual embedding width D
    enc_channels: tuple = (8, 16, 32)
    dec_channels: tuple = (16, 8, 4)
    text_hidden: int = 64
    num_rotations: int = 6
    depth_scale: float = 10.0        # depth channel scaling before the encoder
    downsample: int = 8

    def validate(self):
        if len(self.enc_channels) != 3 or len(self.dec_channels) != 3:
            raise ValueError("expected 3 encoder and 3 decoder channel widths")
        if self.num_rotations < 1:
            raise ValueError("num_rotations must be >= 1")


@dataclass
class TrainConfig:
    collect_steps: int = 5000
    capacity: int = 5000
    batch_size: int = 16
    n_objects: int = 4
    lr: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    lambda_m: float = 0.1            # background-mask weight in the motion loss
    lambda_r: float = 1.0            # metric loss weight in the combined loss
    margin: float = 0.5              # triplet margin
    triplets_per_step: int = 16
    eps_start: float = 0.5
    eps_end: float = 0.1
    eps_anneal_steps: int = 2500
    replay_epochs: int = 2
    query_modes: tuple = ("both", "color-only", "shape-only")
    unique_attributes: bool = False  # training scenes may repeat attribute pairs

    def epsilon_at(self, step: int) -> float:
        if step >= self.eps_anneal_steps:
            return self.eps_end
        frac = step / max(1, self.eps_anneal_steps)
        return self.eps_start + (self.eps_end - self.eps_start) * frac


@dataclass
class AdaptConfig:
    steps: int = 100
    lr_scale: float = 0.1
    max_attempts: int = 50
    explore_after: int = 5           # failed argmax attempts before sampling explores
    explore_eps: float = 0.5


@dataclass
class EvalConfig:
    cases_basic: int = 200
    cases_heldout: int = 200
    n_objects: int = 4
    adapt_cases: int = 50
    min_success_basic: float = 0.85  # --assert threshold, basic pool
    min_success_heldout: float = 0.0


@dataclass
class Config:
    seed: int = 0
    sim: SimConfig = field(default_factory=SimConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    adapt: AdaptConfig = field(default_factory=AdaptConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)

    def validate(self) -> "Config":
        self.sim.validate()
        self.model.validate()
        return self

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        cfg = cls()
        for section, value in d.items():
            if section == "seed":
                cfg.seed = int(value)
                continue
            sub = getattr(cfg, section)
            for k, v in value.items():
                if not hasattr(sub, k):
                    raise ValueError(f"unknown config key: {section}.{k}")
                current = getattr(sub, k)
                if isinstance(current, tuple) and v is not None:
                    v = tuple(tuple(x) if isinstance(x, list) else x for x in v)
                setattr(sub, k, v)
        return cfg.validate()

    @classmethod
    def from_json(cls, text: str) -> "Config":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "Config":
        with open(path) as f:
            return cls.from_json(f.read())


def smoke_config(seed: int = 0) -> Config:
    """Small setup for quick end-to-end runs (<10 min on one core)."""
    cfg = Config(seed=seed)
    cfg.train.collect_steps = 600
    cfg.train.capacity = 600
    cfg.train.eps_anneal_steps = 300
    cfg.train.replay_epochs = 1
    cfg.eval.cases_basic = 50
    cfg.eval.cases_heldout = 50
    cfg.eval.adapt_cases = 10
    cfg.adapt.steps = 40
    return cfg
