"""Finitely supported sequences on the integers, plus their file format.

A ``Sequence`` stores a dense window of values together with the integer
offset of its first entry; everything outside the window is zero.  The
text format used by the command-line tools is one ``n,value`` row per
index (shortest round-trip decimal, so parsing reproduces the float
bitwise), or the JSON mirror ``{"lo": ..., "values": [...]}``.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class Sequence:
    lo: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.values))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("sequence needs a one-dimensional, nonempty window")
        if not np.issubdtype(arr.dtype, np.complexfloating):
            arr = arr.astype(np.float64)
        if not np.all(np.isfinite(arr)):
            raise ValueError("sequence entries must be finite")
        object.__setattr__(self, "values", arr)

    @classmethod
    def delta(cls, n=0):
        return cls(lo=n, values=np.array([1.0]))

    @classmethod
    def from_pairs(cls, pairs):
        pairs = sorted(pairs)
        ns = [n for n, _ in pairs]
        if len(set(ns)) != len(ns):
            raise ValueError("duplicate indices")
        lo, hi = ns[0], ns[-1]
        vals = np.zeros(hi - lo + 1)
        for n, v in pairs:
            vals[n - lo] = v
        return cls(lo=lo, values=vals)

    @property
    def hi(self):
        return self.lo + len(self.values) - 1

    def __call__(self, n):
        if self.lo <= n <= self.hi:
            return self.values[n - self.lo]
        return 0.0

    def window(self, lo, hi):
        """Values on [lo, hi] as a dense array (zero-padded)."""
        if hi < lo:
            raise ValueError("empty window")
        out = np.zeros(hi - lo + 1, dtype=self.values.dtype)
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo:b - lo + 1] = self.values[a - self.lo:b - self.lo + 1]
        return out

    def trim(self):
        """Drop explicit zeros at both ends (keeping at least one entry)."""
        nz = np.nonzero(self.values)[0]
        if len(nz) == 0:
            return Sequence(lo=0, values=np.zeros(1, dtype=self.values.dtype))
        return Sequence(lo=self.lo + int(nz[0]),
                        values=self.values[nz[0]:nz[-1] + 1])

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        a, b = self.trim(), other.trim()
        return a.lo == b.lo and a.values.shape == b.values.shape \
            and bool(np.all(a.values == b.values))

    def __add__(self, other):
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return Sequence(lo=lo, values=self.window(lo, hi) + other.window(lo, hi))

    def __sub__(self, other):
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return Sequence(lo=lo, values=self.window(lo, hi) - other.window(lo, hi))

    def __rmul__(self, scalar):
        return Sequence(lo=self.lo, values=scalar * self.values)

    def norm(self, p=2):
        if p == math.inf:
            return float(np.max(np.abs(self.values)))
        return float(np.sum(np.abs(self.values) ** p) ** (1.0 / p))

    def support_radius(self):
        t = self.trim()
        return max(abs(t.lo), abs(t.hi))


def convolve_kernel(f, kernel, kernel_lo):
    """Sequence with values (kernel * f)(n); kernel[i] sits at offset kernel_lo + i."""
    vals = np.convolve(np.asarray(kernel), f.values)
    return Sequence(lo=f.lo + kernel_lo, values=vals)


# ---------------------------------------------------------------------------
# file format


def format_float(x):
    """Shortest decimal that round-trips the double exactly."""
    return repr(float(x))


def write_sequence(stream, seq, fmt="csv"):
    vals = seq.values
    if np.issubdtype(vals.dtype, np.complexfloating):
        scale = np.max(np.abs(vals)) or 1.0
        if np.max(np.abs(vals.imag)) > 1e-10 * scale:
            raise ValueError("sequence files hold real values only")
        vals = vals.real
    if fmt == "csv":
        stream.write("# n,value\n")
        for i, v in enumerate(vals):
            stream.write(f"{seq.lo + i},{format_float(v)}\n")
    elif fmt == "json":
        json.dump({"lo": int(seq.lo), "values": [float(v) for v in vals]}, stream)
        stream.write("\n")
    else:
        raise ValueError(f"unknown sequence format {fmt!r}")


def read_sequence(stream):
    """Parse either format; csv indices must be strictly increasing."""
    text = stream.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        return Sequence(lo=int(data["lo"]),
                        values=np.array([float(v) for v in data["values"]]))
    pairs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n_str, v_str = line.split(",")
        pairs.append((int(n_str), float(v_str)))
    if not pairs:
        raise ValueError("empty sequence file")
    ns = [n for n, _ in pairs]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("sequence file indices must be strictly increasing")
    return Sequence.from_pairs(pairs)
