#!/usr/bin/env python3
"""Monte Carlo check of the weighted fit: pull distribution of C_cross over seeds."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from hclockshift.fitting import density_grid, fit_coefficients, synthesize_dataset


@dataclass
class Config:
    C_cross: float = 8e-19      # G cm^3
    C_self: float = 0.0
    noise_G: float = 2e-4
    n_max: float = 1e16         # cm^-3
    steps: int = 5
    trials: int = 200
    transition: str = "ad"


def pulls(cfg: Config) -> np.ndarray:
    grid = density_grid(cfg.n_max, cfg.steps)
    out = []
    for seed in range(cfg.trials):
        rows = synthesize_dataset(cfg.C_cross, cfg.C_self, grid, noise=cfg.noise_G,
                                  seed=seed, transition=cfg.transition)
        res = fit_coefficients(rows)
        out.append((res.C_cross - cfg.C_cross) / res.sigma_cross)
    return np.array(out)


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--noise", type=float, default=Config.noise_G, help="gauss")
    args = p.parse_args(argv)
    cfg = Config(trials=args.trials, noise_G=args.noise)
    z = pulls(cfg)
    # a correct fit gives unit-normal pulls
    print(f"trials {len(z)}  mean pull {z.mean():+.3f}  std {z.std(ddof=1):.3f}  "
          f"|pull|>3: {int((abs(z) > 3).sum())}")


if __name__ == "__main__":
    main()
