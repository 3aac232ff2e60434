"""JSON wire formats.

Matrix: ``{"n": int, "data": [[re, im], ...]}``, row-major, ``n*n`` pairs.
Python's float repr is shortest-round-trip, so finite doubles survive a
dump/load cycle bit for bit.
"""

import json

import numpy as np

from .errors import UsageError


def matrix_to_json(M):
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UsageError(f"only square matrices are serializable, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise UsageError("cannot serialize non-finite entries")
    flat = M.reshape(-1)
    return {"n": int(M.shape[0]), "data": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_json(obj):
    try:
        n = obj["n"]
        data = obj["data"]
    except (KeyError, TypeError):
        raise UsageError("matrix JSON needs keys 'n' and 'data'") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise UsageError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(data, list) or len(data) != n * n:
        raise UsageError(f"'data' must hold n*n = {n * n} entries")
    out = np.empty(n * n, dtype=np.complex128)
    for k, pair in enumerate(data):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise UsageError(f"entry {k} is not a [re, im] pair")
        re, im = pair
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair):
            raise UsageError(f"entry {k} is not numeric")
        out[k] = complex(float(re), float(im))
    if not np.all(np.isfinite(out)):
        raise UsageError("matrix has non-finite entries")
    return out.reshape(n, n)


def dumps(obj):
    """Canonical JSON text: sorted keys, no NaN, fixed separators."""
    return json.dumps(obj, sort_keys=True, allow_nan=False, separators=(",", ": "), indent=1)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path):
    return matrix_from_json(load_json(path))


def save_matrix(path, M):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(matrix_to_json(M)))
