"""Spatial sampling design: uniform stations on an inflated square region and
the distance-cutoff pair weight table."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._fmt import read_csv, write_csv
from .errors import ConfigError, DataError


@dataclass(frozen=True)
class StationLayout:
    """n station coordinates s_i = lambda_n * x_i with x_i uniform on (-1/2, 1/2]^2."""

    n: int
    lambda_n: float
    sites: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        sites = np.asarray(self.sites, dtype=float)
        object.__setattr__(self, "sites", sites)
        if sites.shape != (self.n, 2):
            raise DataError(f"expected {self.n} x 2 site array, got {sites.shape}")
        if self.lambda_n <= 0:
            raise DataError("inflation factor must be positive")


@dataclass(frozen=True)
class PairTable:
    """All station pairs i < j with Euclidean distance h and weight w = 1{h <= delta0}.

    dx, dy hold the signed offset s_i - s_j so anisotropic separations can be
    computed without going back to the site coordinates; h = hypot(dx, dy).
    """

    i: np.ndarray
    j: np.ndarray
    h: np.ndarray
    w: np.ndarray
    delta0: float
    dx: np.ndarray
    dy: np.ndarray

    def __len__(self) -> int:
        return len(self.h)

    @property
    def pairs(self):
        return list(zip(self.i.tolist(), self.j.tolist(), self.h.tolist(), self.w.tolist()))

    def weighted(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Index arrays and distances of the pairs with w = 1."""
        keep = self.w > 0
        return self.i[keep], self.j[keep], self.h[keep]


def sample_stations(n: int, seed) -> StationLayout:
    """n i.i.d. uniform stations on (-1/2, 1/2]^2, scaled by lambda_n = sqrt(n)."""
    if n < 2:
        raise ConfigError(f"need at least 2 stations, got {n}")
    rng = np.random.default_rng(seed)
    # 0.5 - U[0,1) lands exactly on the half-open square (-1/2, 1/2]^2
    x = 0.5 - rng.random((n, 2))
    lam = float(np.sqrt(n))
    return StationLayout(n=n, lambda_n=lam, sites=lam * x, seed=seed)


def pair_weights(layout: StationLayout) -> PairTable:
    """Weight 1 for pairs within delta0 = sqrt(2n)/2, the half diagonal of the
    scaled sampling region; 0 beyond."""
    n = layout.n
    iu, ju = np.triu_indices(n, k=1)
    d = layout.sites[iu] - layout.sites[ju]
    h = np.sqrt(np.sum(d * d, axis=1))
    delta0 = float(np.sqrt(2.0 * n) / 2.0)
    w = (h <= delta0).astype(float)
    return PairTable(i=iu, j=ju, h=h, w=w, delta0=delta0, dx=d[:, 0], dy=d[:, 1])


def write_stations(path, layout: StationLayout) -> None:
    write_csv(
        path,
        ["id", "x", "y"],
        [(k, layout.sites[k, 0], layout.sites[k, 1]) for k in range(layout.n)],
    )


def read_stations(path) -> StationLayout:
    header, rows = read_csv(path)
    if header != ["id", "x", "y"]:
        raise ConfigError(f"unexpected stations header {header!r} in {path}")
    sites = np.array([[float(r[1]), float(r[2])] for r in rows])
    n = len(sites)
    return StationLayout(n=n, lambda_n=float(np.sqrt(n)), sites=sites, seed=None)
