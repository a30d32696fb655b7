"""CSV ingestion and seeded synthetic data generators.

All generators are pure functions of their parameters and seed; identical
calls produce identical arrays. CSV files use a comma delimiter by default,
plain decimal text, UTF-8, and either LF or CRLF line endings; writing with
17 significant digits round-trips float64 exactly.
"""

from __future__ import annotations

import csv

import numpy as np

from .kernels import as_dataset


def load_csv(path, delimiter: str = ",", has_header: bool = False, columns=None) -> np.ndarray:
    """Read a numeric CSV into an ``(n, p)`` array, preserving row order.

    ``columns`` optionally selects a subset of columns by zero-based index.
    Malformed input is reported with the offending line (1-based, header
    included) and column.
    """
    rows = []
    width = None
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        for lineno, record in enumerate(reader, start=1):
            if has_header and lineno == 1:
                continue
            if not record:
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise ValueError(f"{path}: ragged row at line {lineno}: "
                                 f"expected {width} fields, got {len(record)}")
            if columns is not None:
                try:
                    record = [record[c] for c in columns]
                except IndexError:
                    raise ValueError(f"{path}: line {lineno} has no column {max(columns)}") from None
            try:
                rows.append([float(cell) for cell in record])
            except ValueError:
                bad = next(i for i, cell in enumerate(record) if not _is_number(cell))
                raise ValueError(f"{path}: non-numeric cell at line {lineno}, column {bad + 1}: "
                                 f"{record[bad]!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return as_dataset(np.array(rows))


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def save_csv(path, data, header=None, delimiter: str = ",") -> None:
    """Write an ``(n, p)`` array as decimal text with 17 significant digits."""
    X = np.asarray(data, dtype=float)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        if header is not None:
            writer.writerow(header)
        for row in X:
            writer.writerow([f"{v:.17g}" for v in row])


def gmm_synthetic(n: int = 1000, p: int = 10, components: int = 10,
                  mean_scale: float = 10.0, seed: int = 0) -> np.ndarray:
    """Gaussian mixture with unit isotropic covariances and axis-aligned means.

    Component j (chosen uniformly) contributes points centered at
    ``mean_scale`` times the j-th coordinate axis. Defaults give the
    1000-point, 10-dimensional, 10-component configuration.
    """
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n!r}, p={p!r}")
    if not 1 <= components <= p:
        raise ValueError(f"component count must lie in [1, p={p}], got {components!r}")
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, components, size=n)
    X = rng.standard_normal((n, p))
    X[np.arange(n), labels] += mean_scale
    return X


def gaussian_synthetic(n: int, p: int, sigma: float = 1.0, seed: int = 0) -> np.ndarray:
    """i.i.d. rows from N(0, sigma^2 I_p)."""
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n!r}, p={p!r}")
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma!r}")
    rng = np.random.default_rng(seed)
    return sigma * rng.standard_normal((n, p))


def sphere_uniform(n: int, p: int, seed: int = 0) -> np.ndarray:
    """Rows uniform on the unit sphere: normalized Gaussian vectors."""
    if n < 1 or p < 2:
        raise ValueError(f"need n >= 1 and p >= 2, got n={n!r}, p={p!r}")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def subsample(data, count: int, seed: int = 0) -> np.ndarray:
    """Uniform subsample without replacement, original row order preserved."""
    X = as_dataset(data)
    n = X.shape[0]
    if not 1 <= count <= n:
        raise ValueError(f"count must lie in [1, {n}], got {count!r}")
    rng = np.random.default_rng(seed)
    keep = np.sort(rng.choice(n, size=int(count), replace=False))
    return X[keep]
