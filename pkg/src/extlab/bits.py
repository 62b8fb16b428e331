"""Fixed-width bit strings and row matrices.

A BitString is an immutable (length, value) pair.  Bit 0 is the leftmost
bit, i.e. the most significant bit of ``val``.  ``slice_bits`` takes the
prefix, matching the convention that Slice(y, w) reads the first w bits.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_LEN = 1 << 24  # sanity guard; real instances stay far below this


@dataclass(frozen=True)
class BitString:
    n: int
    val: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.n > MAX_LEN:
            raise ValueError(f"bad width {self.n}")
        if self.val < 0 or self.val >> self.n:
            raise ValueError(f"value does not fit in {self.n} bits")

    def bit(self, i: int) -> int:
        """Bit i, counting from the left (i = 0 is leftmost)."""
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.val >> (self.n - 1 - i)) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return format(self.val, f"0{self.n}b") if self.n else ""

    def __xor__(self, other: "BitString") -> "BitString":
        if self.n != other.n:
            raise ValueError("xor width mismatch")
        return BitString(self.n, self.val ^ other.val)


def from_str(s: str) -> BitString:
    if s and set(s) - {"0", "1"}:
        raise ValueError("not a 0/1 string")
    return BitString(len(s), int(s, 2) if s else 0)


def from_int(n: int, val: int) -> BitString:
    return BitString(n, val)


def zeros(n: int) -> BitString:
    return BitString(n, 0)


def slice_bits(x: BitString, w: int) -> BitString:
    """Prefix of width w (the first w bits)."""
    if not 0 <= w <= x.n:
        raise ValueError(f"slice width {w} out of range for {x.n} bits")
    return BitString(w, x.val >> (x.n - w))


def suffix(x: BitString, start: int) -> BitString:
    """Everything after the first ``start`` bits."""
    if not 0 <= start <= x.n:
        raise ValueError("suffix start out of range")
    w = x.n - start
    return BitString(w, x.val & ((1 << w) - 1))


def segment(x: BitString, start: int, w: int) -> BitString:
    """Bits [start, start+w)."""
    return slice_bits(suffix(x, start), w)


def concat(*parts: BitString) -> BitString:
    n, val = 0, 0
    for p in parts:
        n += p.n
        val = (val << p.n) | p.val
    return BitString(n, val)


def pad_to(x: BitString, n: int) -> BitString:
    """Right-pad with zeros up to width n."""
    if n < x.n:
        raise ValueError("cannot pad down")
    return BitString(n, x.val << (n - x.n))


def blocks(x: BitString, b: int) -> list[int]:
    """Split into ceil(n/b) blocks of b bits, left to right, the last one
    right-padded with zeros.  Returned as ints."""
    if b <= 0:
        raise ValueError("block size must be positive")
    padded = pad_to(x, ((x.n + b - 1) // b) * b) if x.n % b else x
    k = padded.n // b
    out = []
    for i in range(k):
        out.append((padded.val >> ((k - 1 - i) * b)) & ((1 << b) - 1))
    return out if x.n else []


@dataclass(frozen=True)
class RowMatrix:
    """L rows of m bits each."""

    m: int
    rows: tuple[BitString, ...]

    def __post_init__(self) -> None:
        for r in self.rows:
            if r.n != self.m:
                raise ValueError("row width mismatch")

    @property
    def L(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> BitString:
        return self.rows[i]


def matrix(rows: list[BitString]) -> RowMatrix:
    if not rows:
        raise ValueError("empty matrix")
    return RowMatrix(rows[0].n, tuple(rows))
