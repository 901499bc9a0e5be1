"""Block designs over Z_v: difference families, designs, verification.

Conventions: points are residues 0..v-1, blocks are sorted tuples, and
lambda = 1 everywhere (Steiner 2-designs). Base blocks of a family are
indexed 1..t in construction order, matching the usual B_1..B_t naming.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidFamily, MissingResolution

Block = tuple  # sorted tuple of distinct residues mod v


def normalize_block(points, v: int) -> Block:
    b = tuple(sorted(int(x) % v for x in points))
    if len(set(b)) != len(b):
        raise ValueError(f"block {points} has repeated points mod {v}")
    return b


def block_differences(block, v: int) -> list[int]:
    """Multiset {b_i - b_j mod v : i != j}, as a list of k(k-1) residues."""
    return [(x - y) % v for x in block for y in block if x != y]


@dataclass(frozen=True)
class DifferenceFamily:
    """Base blocks whose translates generate a cyclic Steiner 2-design.

    For v = 1 (mod k(k-1)) the base-block differences tile Z_v \\ {0}
    exactly once. For v = k (mod k(k-1)) the multiples of v/k are left
    to the regular short orbit and has_short_orbit_block is set.
    """

    v: int
    k: int
    base_blocks: tuple
    kind: str = "cdf"  # "cdf" or "rdf"
    has_short_orbit_block: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "base_blocks", tuple(normalize_block(b, self.v) for b in self.base_blocks)
        )

    @property
    def t(self) -> int:
        """Number of full-orbit base blocks."""
        return len(self.base_blocks)

    def block(self, index: int) -> Block:
        """Base block B_index, 1-based."""
        if not 1 <= index <= self.t:
            raise IndexError(f"base block index {index} outside 1..{self.t}")
        return self.base_blocks[index - 1]

    def short_orbit_block(self) -> Block:
        if not self.has_short_orbit_block:
            raise InvalidFamily("family has no short-orbit block")
        step = self.v // self.k
        return tuple(step * i for i in range(self.k))

    def covered_differences(self) -> list[int]:
        out = []
        for b in self.base_blocks:
            out.extend(block_differences(b, self.v))
        return out


def _required_differences(f: DifferenceFamily) -> set[int]:
    need = set(range(1, f.v))
    if f.has_short_orbit_block:
        step = f.v // f.k
        need -= {step * i for i in range(1, f.k)}
    return need


def validate_difference_family(f: DifferenceFamily) -> None:
    """Raise InvalidFamily unless the base-block differences tile exactly
    (and, for radical families, every block is a root-of-unity coset)."""
    kk = f.k * (f.k - 1)
    if f.has_short_orbit_block:
        if f.v % kk != f.k % kk:
            raise InvalidFamily(f"v={f.v} is not k (mod k(k-1)); no regular short orbit")
    elif f.v % kk != 1:
        raise InvalidFamily(f"v={f.v} is not 1 (mod k(k-1))")
    for b in f.base_blocks:
        if len(b) != f.k:
            raise InvalidFamily(f"base block {b} has size {len(b)}, expected {f.k}")
    if f.kind == "rdf":
        from ..algebra import PrimeField, kth_roots_of_unity

        roots = kth_roots_of_unity(PrimeField(f.v), f.k)
        for b in f.base_blocks:
            inv = pow(b[0], f.v - 2, f.v)
            if {x * inv % f.v for x in b} != roots:
                raise InvalidFamily(f"radical base block {b} is not a coset of the "
                                    f"{f.k}-th roots of unity")
    need = _required_differences(f)
    got = f.covered_differences()
    if len(got) != len(need) or set(got) != need:
        from collections import Counter

        counts = Counter(got)
        missing = sorted(need - set(counts))[:5]
        doubled = sorted(d for d, c in counts.items() if c > 1 or d not in need)[:5]
        raise InvalidFamily(
            f"differences do not tile Z_{f.v}: missing {missing}, repeated/extra {doubled}"
        )


@dataclass(frozen=True)
class CyclicStructure:
    """Orbit data of a cyclic design: base blocks and their orbit lengths."""

    base_blocks: tuple
    orbit_lengths: tuple


@dataclass(frozen=True)
class Design:
    """Point set Z_v plus block list; optionally resolved and/or cyclic.

    resolution: tuple of classes, each a tuple of block indices.
    """

    v: int
    k: int
    blocks: tuple
    resolution: tuple | None = None
    cyclic: CyclicStructure | None = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(normalize_block(b, self.v) for b in self.blocks))
        if self.resolution is not None:
            object.__setattr__(
                self, "resolution", tuple(tuple(int(i) for i in cls) for cls in self.resolution)
            )

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def r(self) -> int:
        """Replication number (v-1)/(k-1) implied by lambda = 1."""
        return (self.v - 1) // (self.k - 1)

    def with_resolution(self, resolution) -> "Design":
        return Design(self.v, self.k, self.blocks, tuple(tuple(c) for c in resolution), self.cyclic)

    def without_resolution(self) -> "Design":
        return Design(self.v, self.k, self.blocks, None, self.cyclic)


def expand_cdf_to_design(f: DifferenceFamily) -> Design:
    """All translates of every base block, plus the short orbit if present.

    Block order is base-block-major, shift-minor (B_1+0, B_1+1, ...,
    B_2+0, ...), with the v/k short-orbit translates last. This order is
    what makes incidence matrices quasi-cyclic column block by block.
    """
    validate_difference_family(f)
    v = f.v
    blocks = []
    for base in f.base_blocks:
        for shift in range(v):
            blocks.append(tuple(sorted((x + shift) % v for x in base)))
    orbit_lengths = [v] * len(f.base_blocks)
    base_blocks = list(f.base_blocks)
    if f.has_short_orbit_block:
        short = f.short_orbit_block()
        for shift in range(v // f.k):
            blocks.append(tuple(sorted((x + shift) % v for x in short)))
        base_blocks.append(short)
        orbit_lengths.append(v // f.k)
    return Design(
        v=v,
        k=f.k,
        blocks=tuple(blocks),
        cyclic=CyclicStructure(tuple(base_blocks), tuple(orbit_lengths)),
    )


@dataclass(frozen=True)
class BibdReport:
    ok: bool
    lambda_histogram: dict
    r: int | None
    b: int
    problems: tuple = field(default_factory=tuple)


def verify_bibd(d: Design) -> BibdReport:
    """Count coverage of every point pair; ok iff all pairs covered once.

    Also checks block sizes and the bk = vr count identity. Failures are
    reported, never raised.
    """
    problems = []
    v, k, b = d.v, d.k, d.b
    for blk in d.blocks:
        if len(blk) != k:
            problems.append(f"block {blk} has size {len(blk)}, expected {k}")
    pair_counts = np.zeros(v * v, dtype=np.int64)
    if d.blocks:
        arr = np.array(d.blocks, dtype=np.int64)
        width = arr.shape[1]
        for i in range(width):
            for j in range(i + 1, width):
                lo = np.minimum(arr[:, i], arr[:, j])
                hi = np.maximum(arr[:, i], arr[:, j])
                np.add.at(pair_counts, lo * v + hi, 1)
    hist: dict[int, int] = {}
    n_pairs = v * (v - 1) // 2
    idx = np.triu_indices(v, k=1)
    counts = pair_counts[idx[0] * v + idx[1]]
    vals, freqs = np.unique(counts, return_counts=True)
    for val, fr in zip(vals.tolist(), freqs.tolist()):
        hist[int(val)] = int(fr)
    ok = hist == {1: n_pairs} and not problems
    point_degrees = np.zeros(v, dtype=np.int64)
    for blk in d.blocks:
        for x in blk:
            point_degrees[x] += 1
    degs = set(point_degrees.tolist())
    r = degs.pop() if len(degs) == 1 else None
    if r is None:
        problems.append("replication number is not constant")
        ok = False
    elif b * k != v * r:
        problems.append(f"bk = {b * k} differs from vr = {v * r}")
        ok = False
    return BibdReport(ok=ok, lambda_histogram=hist, r=r, b=b, problems=tuple(problems))


@dataclass(frozen=True)
class ResolutionReport:
    ok: bool
    class_histograms: tuple
    problems: tuple = field(default_factory=tuple)


def verify_resolution(d: Design) -> ResolutionReport:
    """Check each class covers every point exactly once and classes
    partition the block list. Raises MissingResolution when the design
    carries no resolution."""
    if d.resolution is None:
        raise MissingResolution("design has no resolution to verify")
    problems = []
    seen: dict[int, int] = {}
    histograms = []
    for ci, cls in enumerate(d.resolution):
        cover = np.zeros(d.v, dtype=np.int64)
        for bi in cls:
            if bi < 0 or bi >= d.b:
                problems.append(f"class {ci}: block index {bi} out of range")
                continue
            if bi in seen:
                problems.append(f"block {bi} appears in classes {seen[bi]} and {ci}")
            seen[bi] = ci
            for x in d.blocks[bi]:
                cover[x] += 1
        hist: dict[int, int] = {}
        for c in cover.tolist():
            hist[c] = hist.get(c, 0) + 1
        histograms.append(hist)
        if hist != {1: d.v}:
            bad = [p for p in range(d.v) if cover[p] != 1][:5]
            problems.append(f"class {ci} does not partition the points (e.g. points {bad})")
    if len(seen) != d.b:
        problems.append(f"classes use {len(seen)} of {d.b} blocks")
    return ResolutionReport(ok=not problems, class_histograms=tuple(histograms), problems=tuple(problems))
