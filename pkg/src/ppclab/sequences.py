"""Point sequences in [0, 1).

Every statistic in this package takes a :class:`SequenceSample`, an ordered,
read-only array of doubles together with the :class:`SequenceSpec` that
produced it.  Generators are deterministic: the same spec always yields the
same bits, and a spec with ``n=M`` yields the first ``M`` entries of the same
spec with ``n=N >= M``.

Supported kinds
---------------
kronecker
    ``x_n = {n * alpha}`` for ``n = 1..N``.
quadratic
    ``x_n = {n^2 * alpha}``.
vdc
    van der Corput radical inverse of ``n = 1..N`` in ``base``.
sqrt_n
    ``{sqrt(n)}`` over the first ``N`` positive integers that are not perfect
    squares.
uniform_random
    ``N`` draws from numpy's PCG64 generator seeded with ``seed``.
file
    points read from a text file (see :func:`load_points`).

The products ``n * alpha`` are reduced modulo one in exact integer arithmetic
on the binary value of ``alpha``; for the quadratic kind ``n^2 * alpha``
exceeds 2**53 long before ``n`` gets interesting, and a floating-point
product would lose every digit of the fractional part.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "KINDS",
    "DEFAULT_KRONECKER_ALPHA",
    "DEFAULT_QUADRATIC_ALPHA",
    "PointFileError",
    "SequenceSpec",
    "SequenceSample",
    "frac",
    "radical_inverse",
    "generate",
    "load_points",
    "write_points",
    "sample_from_values",
]

KINDS = ("kronecker", "quadratic", "vdc", "sqrt_n", "uniform_random", "file")

DEFAULT_KRONECKER_ALPHA = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_QUADRATIC_ALPHA = math.sqrt(2.0)

_BELOW_ONE = math.nextafter(1.0, 0.0)


class PointFileError(ValueError):
    """A point file could not be parsed or holds a value outside [0, 1)."""

    def __init__(self, path, lineno: Optional[int], message: str, io_error: bool = False):
        self.path = str(path)
        self.lineno = lineno
        self.io_error = io_error
        where = f"{self.path}:{lineno}" if lineno is not None else self.path
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class SequenceSpec:
    """Recipe for a sample. Only the fields relevant to ``kind`` are used."""

    kind: str
    n: int
    alpha: Optional[float] = None
    base: Optional[int] = None
    seed: Optional[int] = None
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}; expected one of {KINDS}")
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.kind in ("kronecker", "quadratic"):
            if self.alpha is None:
                default = (DEFAULT_KRONECKER_ALPHA if self.kind == "kronecker"
                           else DEFAULT_QUADRATIC_ALPHA)
                object.__setattr__(self, "alpha", default)
            if not math.isfinite(self.alpha):
                raise ValueError(f"alpha must be finite, got {self.alpha!r}")
            object.__setattr__(self, "alpha", float(self.alpha))
        if self.kind == "vdc":
            if self.base is None:
                object.__setattr__(self, "base", 2)
            if isinstance(self.base, bool) or int(self.base) != self.base or self.base < 2:
                raise ValueError(f"base must be an integer >= 2, got {self.base!r}")
            object.__setattr__(self, "base", int(self.base))
        if self.kind == "uniform_random":
            if self.seed is None:
                raise ValueError("uniform_random requires a seed")
            if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
                raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
            object.__setattr__(self, "seed", int(self.seed))
        if self.kind == "file" and not self.path:
            raise ValueError("kind 'file' requires a path")
        object.__setattr__(self, "n", int(self.n))

    def with_n(self, n: int) -> "SequenceSpec":
        return SequenceSpec(self.kind, n, self.alpha, self.base, self.seed, self.path)


@dataclass(frozen=True, eq=False)
class SequenceSample:
    """An ordered finite sample ``x_1..x_N`` with its provenance."""

    values: np.ndarray
    spec: SequenceSpec
    _sorted: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1:
            raise ValueError("sample values must be one-dimensional")
        if values.size == 0:
            raise ValueError("empty sample")
        if values.size != self.spec.n:
            raise ValueError(f"sample has {values.size} values but spec.n = {self.spec.n}")
        if not np.all(np.isfinite(values)):
            raise ValueError("sample contains non-finite values")
        if values.min() < 0.0 or values.max() >= 1.0:
            raise ValueError("sample values must lie in [0, 1)")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def sorted_values(self) -> np.ndarray:
        """Ascending copy of the values, computed once and cached."""
        if not self._sorted:
            s = np.sort(self.values)
            s.flags.writeable = False
            self._sorted.append(s)
        return self._sorted[0]

    def prefix(self, m: int) -> "SequenceSample":
        if not 1 <= m <= self.n:
            raise ValueError(f"prefix length must be in [1, {self.n}], got {m}")
        return SequenceSample(self.values[:m], self.spec.with_n(m))


def frac(x: float) -> float:
    """Fractional part ``x - floor(x)``, always in [0, 1).

    >>> frac(3.25), frac(-0.25), frac(7.0)
    (0.25, 0.75, 0.0)
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"frac() needs a finite argument, got {x!r}")
    r = x - math.floor(x)
    # tiny negative x: 1 - |x| rounds up to 1.0
    return _BELOW_ONE if r >= 1.0 else r


def _frac_of_multiples(alpha: float, multipliers: Sequence[int]) -> np.ndarray:
    """``{m * alpha}`` for integer ``m``, reduced exactly on the binary value of alpha."""
    num, den = float(alpha).as_integer_ratio()
    out = np.empty(len(multipliers), dtype=np.float64)
    for idx, m in enumerate(multipliers):
        r = (m * num) % den
        v = r / den
        out[idx] = _BELOW_ONE if v >= 1.0 else v
    return out


def radical_inverse(indices, base: int) -> np.ndarray:
    """van der Corput radical inverse of non-negative integers in ``base``.

    The base-``b`` digits of ``i`` are mirrored about the radix point. The
    reversed digits are accumulated as an integer numerator over ``b**k`` and
    divided once, so the result is the correctly rounded value.
    """
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size and idx.min() < 0:
        raise ValueError("radical inverse is defined for non-negative integers")
    if base < 2:
        raise ValueError("base must be >= 2")
    rest = idx.copy()
    numer = np.zeros_like(idx)
    denom = np.ones_like(idx)
    while np.any(rest > 0):
        live = rest > 0
        numer[live] = numer[live] * base + rest[live] % base
        denom[live] *= base
        rest[live] //= base
    return numer / denom


def _sqrt_frac(n: int) -> np.ndarray:
    upper = n + isqrt(n) + 2
    cand = np.arange(1, upper + 1, dtype=np.int64)
    roots = np.floor(np.sqrt(cand.astype(np.float64))).astype(np.int64)
    # float sqrt can be one off near large squares
    roots[(roots + 1) * (roots + 1) <= cand] += 1
    roots[roots * roots > cand] -= 1
    keep = cand[roots * roots != cand][:n]
    r = np.sqrt(keep.astype(np.float64))
    return r - np.floor(r)


def generate(spec: SequenceSpec) -> SequenceSample:
    """Build the sample described by ``spec``."""
    n = spec.n
    if spec.kind == "kronecker":
        values = _frac_of_multiples(spec.alpha, range(1, n + 1))
    elif spec.kind == "quadratic":
        values = _frac_of_multiples(spec.alpha, [k * k for k in range(1, n + 1)])
    elif spec.kind == "vdc":
        values = radical_inverse(np.arange(1, n + 1), spec.base)
    elif spec.kind == "sqrt_n":
        values = _sqrt_frac(n)
    elif spec.kind == "uniform_random":
        values = np.random.Generator(np.random.PCG64(spec.seed)).random(n)
    else:
        loaded = load_points(spec.path)
        if loaded.n < n:
            raise ValueError(f"{spec.path} holds {loaded.n} points, spec asks for {n}")
        values = loaded.values[:n]
    return SequenceSample(values, spec)


def sample_from_values(values, kind_label: str = "file") -> SequenceSample:
    """Wrap an explicit array of points as a sample.

    Handy for hand-built configurations in tests and notebooks; the SequenceSpec
    records kind ``file`` with a synthetic path.
    """
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("empty sample")
    return SequenceSample(arr, SequenceSpec("file", arr.size, path=f"<{kind_label}>"))


def load_points(path) -> SequenceSample:
    """Read a point file: one decimal literal per line, ``#`` lines are comments."""
    path = os.fspath(path)
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise PointFileError(path, None, f"cannot read file ({exc.strerror})",
                             io_error=True) from exc
    except UnicodeDecodeError as exc:
        raise PointFileError(path, None, "file is not valid UTF-8") from exc

    values = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            v = float(text)
        except ValueError:
            raise PointFileError(path, lineno, f"cannot parse {text!r} as a number") from None
        if not math.isfinite(v):
            raise PointFileError(path, lineno, f"non-finite value {text!r}")
        if not 0.0 <= v < 1.0:
            raise PointFileError(path, lineno, f"value {text} outside [0, 1)")
        values.append(v)
    if not values:
        raise PointFileError(path, None, "empty sample")
    arr = np.array(values, dtype=np.float64)
    return SequenceSample(arr, SequenceSpec("file", arr.size, path=path))


def format_points(values) -> str:
    return "".join(f"{float(v):.17g}\n" for v in values)


def write_points(path, values) -> None:
    """Write a point file atomically (temporary file, then rename)."""
    text = format_points(values)
    path = os.fspath(path)
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)
