"""Command-line front end.

    srgpa geodesic --image island.pgm --seeds seeds.txt --out labels.pgm [--frames DIR --every K]
    srgpa ordered --image relief.pgm --seeds seeds.txt --levels 256 --out labels.pgm
    srgpa oracle-check --trials 1000 --rng 42
    srgpa bench [--sizes 64,256,1024]

Exit codes: 0 success, 1 oracle failures, 2 configuration error, 3 I/O or
file-format error, 4 contract violation.
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import formats
from .algorithms import FrameRecorder, SeedError, geodesic_dilation, ordered_growing
from .checks import probe_bench, run_oracle_check
from .grid import ContractError, Neighborhood
from .queues import ConfigurationError

log = logging.getLogger("srgpa")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO, EXIT_CONTRACT = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    image: Optional[str] = None
    seeds: Optional[str] = None
    connectivity: int = 4
    levels: Optional[int] = None
    frames: Optional[str] = None
    every: int = 1
    out: Optional[str] = None
    trials: int = 1000
    rng: int = 0
    sizes: list = field(default_factory=lambda: [64, 256, 1024])


def _load_inputs(cfg: RunConfig):
    if not cfg.image or not cfg.seeds:
        raise ConfigError(f"{cfg.command} needs --image and --seeds")
    if not cfg.out:
        raise ConfigError(f"{cfg.command} needs --out")
    if cfg.connectivity not in (4, 8):
        raise ConfigError(f"connectivity must be 4 or 8, got {cfg.connectivity}")
    img = formats.read_pgm(cfg.image)
    seeds = formats.read_seeds(cfg.seeds, shape=img.pixels.shape)
    return img, seeds, Neighborhood.connectivity(cfg.connectivity)


def _recorder(cfg: RunConfig):
    if not cfg.frames:
        return None
    if cfg.every < 1:
        raise ConfigError(f"--every must be >= 1, got {cfg.every}")
    os.makedirs(cfg.frames, exist_ok=True)
    return FrameRecorder(
        cfg.every, sink=lambda k, labels: formats.write_labels(formats.frame_path(cfg.frames, k), labels)
    )


def _geodesic(cfg: RunConfig) -> int:
    img, seeds, v = _load_inputs(cfg)
    labels = geodesic_dilation(img.pixels, seeds, v, frames=_recorder(cfg))
    formats.write_labels(cfg.out, labels)
    log.info("labeled %d pixels into %d regions", int((labels > 0).sum()), len(seeds))
    return EXIT_OK


def _ordered(cfg: RunConfig) -> int:
    img, seeds, v = _load_inputs(cfg)
    n_levels = cfg.levels if cfg.levels is not None else img.maxval + 1
    if n_levels < 1:
        raise ConfigError(f"--levels must be >= 1, got {n_levels}")
    if int(img.pixels.max()) >= n_levels:
        raise ConfigError(f"image value {int(img.pixels.max())} does not fit {n_levels} levels")
    labels = ordered_growing(img.pixels.astype(int), seeds, v, n_levels, frames=_recorder(cfg))
    formats.write_labels(cfg.out, labels)
    return EXIT_OK


def _oracle_check(cfg: RunConfig) -> int:
    trials, failed, steps = run_oracle_check(cfg.trials, cfg.rng)
    print(f"trials={trials} steps={steps} failures={failed}")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _bench(cfg: RunConfig) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["grid_pixels", "regions", "mean_probes", "p99_probes"])
    for side in cfg.sizes:
        row = probe_bench(side, seed=cfg.rng)
        w.writerow([row.grid_pixels, row.regions, f"{row.mean_probes:.3f}", f"{row.p99_probes:.3f}"])
    return EXIT_OK


COMMANDS = {
    "geodesic": _geodesic,
    "ordered": _ordered,
    "oracle-check": _oracle_check,
    "bench": _bench,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; map failures to the documented exit codes."""
    try:
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, SeedError, ConfigurationError) as e:
        log.error("configuration error: %s", e)
        return EXIT_CONFIG
    except (OSError, formats.PGMError, formats.SeedFileError) as e:
        log.error("I/O error: %s", e)
        return EXIT_IO
    except ContractError as e:
        log.error("contract violation: %s", e)
        return EXIT_CONTRACT


def _sizes(text: str) -> list:
    try:
        sizes = [int(s) for s in text.split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="srgpa", description="Seeded region growing by pixel aggregation.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    for name, hlp in (("geodesic", "grow seeds inside the nonzero pixels of a binary image"),
                      ("ordered", "grow seeds in gray-level order")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--image", required=True)
        s.add_argument("--seeds", required=True)
        s.add_argument("--connectivity", type=int, default=4, choices=(4, 8))
        s.add_argument("--out", required=True)
        s.add_argument("--frames", metavar="DIR", help="write numbered label snapshots here")
        s.add_argument("--every", type=int, default=1, metavar="K")
        if name == "ordered":
            s.add_argument("--levels", type=int, metavar="N")

    s = sub.add_parser("oracle-check", help="randomized comparison against full recomputation")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--rng", type=int, default=0)

    s = sub.add_parser("bench", help="probe counts per growth across grid sizes (CSV)")
    s.add_argument("--sizes", type=_sizes, default=[64, 256, 1024])
    s.add_argument("--rng", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    opts = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    return run(RunConfig(**opts))


if __name__ == "__main__":
    sys.exit(main())
