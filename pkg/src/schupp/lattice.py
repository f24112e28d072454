"""Lattice families, bond lists, and the split / mirror-double construction.

Sites of an ``ny``-row, ``nx``-column lattice are indexed ``x * ny + y`` with
``x`` the column and ``y`` the row, so a straight column cut separates
contiguous index ranges.  Plaquettes are identified by their lower-left
corner ``(x, y)`` with ``x`` in ``[0, nx-2]`` and ``y`` in ``[0, ny-2]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

WEIGHT_TOL = 1e-15
PSD_TOL = -1e-12


class Family(str, Enum):
    CHAIN = "chain"
    SQUARE_LADDER = "ladder"
    CROSSED_LADDER = "x-ladder"
    PYRO_A = "pyro-a"
    PYRO_B = "pyro-b"
    RECTANGLE = "rect"


class Crossing(str, Enum):
    NONE = "none"
    CHECKER_A = "checker-a"
    CHECKER_B = "checker-b"
    ALL = "all"


class LatticeError(ValueError):
    """Invalid lattice specification or cut."""


@dataclass(frozen=True)
class LatticeSpec:
    family: Family
    nx: int
    ny: int = 0  # 0 means "derive from family"
    crossing: Crossing = Crossing.NONE
    j: float = 1.0
    jd: float = 0.0

    def __post_init__(self):
        fam = self.family
        if self.ny == 0:
            ny = {Family.CHAIN: 1, Family.RECTANGLE: 0}.get(fam, 2)
            if ny == 0:
                raise LatticeError("rectangle spec needs explicit ny")
            object.__setattr__(self, "ny", ny)
        # single-site specs are allowed so one-column cut parts are expressible
        if self.nx < 1 or self.ny < 1:
            raise LatticeError(f"lattice too small: {self.nx}x{self.ny}")
        if self.j <= 0:
            raise LatticeError("coupling j must be positive")
        if fam == Family.CHAIN:
            if self.ny != 1 or self.crossing != Crossing.NONE:
                raise LatticeError("chain requires ny=1 and no crossing")
        elif fam in (Family.SQUARE_LADDER, Family.CROSSED_LADDER,
                     Family.PYRO_A, Family.PYRO_B):
            if self.ny != 2:
                raise LatticeError(f"{fam.value} requires ny=2")
            if self.crossing != Crossing.NONE:
                raise LatticeError("crossing patterns apply to rectangles only")
        elif fam == Family.RECTANGLE:
            if self.ny < 2:
                raise LatticeError("rectangle requires ny >= 2")
        # diagonal-coupling conventions
        if fam in (Family.PYRO_A, Family.PYRO_B) or self.crossing in (
                Crossing.CHECKER_A, Crossing.CHECKER_B):
            jd = self.jd if self.jd else self.j
            if abs(jd - self.j) > WEIGHT_TOL:
                raise LatticeError("pyrochlore/checker diagonals must equal j")
            object.__setattr__(self, "jd", jd)
        elif fam == Family.CROSSED_LADDER or self.crossing == Crossing.ALL:
            jd = self.jd if self.jd else 0.5 * self.j
            if jd / self.j > 0.5 + WEIGHT_TOL:
                raise LatticeError("crossed couplings require jd/j <= 1/2")
            object.__setattr__(self, "jd", jd)
        else:
            object.__setattr__(self, "jd", 0.0)

    @property
    def n_sites(self) -> int:
        return self.nx * self.ny

    def site(self, x: int, y: int) -> int:
        return x * self.ny + y


def chain(n: int, j: float = 1.0) -> LatticeSpec:
    return LatticeSpec(Family.CHAIN, n, 1, j=j)


def square_ladder(length: int, j: float = 1.0) -> LatticeSpec:
    return LatticeSpec(Family.SQUARE_LADDER, length, 2, j=j)


def crossed_ladder(length: int, j: float = 1.0, jd: float = 0.5) -> LatticeSpec:
    return LatticeSpec(Family.CROSSED_LADDER, length, 2, j=j, jd=jd)


def pyro_a(length: int, j: float = 1.0) -> LatticeSpec:
    return LatticeSpec(Family.PYRO_A, length, 2, j=j)


def pyro_b(length: int, j: float = 1.0) -> LatticeSpec:
    return LatticeSpec(Family.PYRO_B, length, 2, j=j)


def rectangle(nx: int, ny: int, crossing: Crossing = Crossing.NONE,
              j: float = 1.0, jd: float = 0.0) -> LatticeSpec:
    return LatticeSpec(Family.RECTANGLE, nx, ny, crossing=crossing, j=j, jd=jd)


@dataclass(frozen=True)
class BondList:
    n_sites: int
    bonds: tuple  # of (i, j, w) with i < j

    def __post_init__(self):
        seen = set()
        for i, j, w in self.bonds:
            if not (0 <= i < j < self.n_sites):
                raise LatticeError(f"bad bond ({i},{j})")
            if (i, j) in seen:
                raise LatticeError(f"duplicate bond ({i},{j})")
            if w <= 0:
                raise LatticeError("couplings must be antiferromagnetic (w > 0)")
            seen.add((i, j))

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.bonds)

    def is_connected(self) -> bool:
        parent = list(range(self.n_sites))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j, _ in self.bonds:
            parent[find(i)] = find(j)
        return len({find(i) for i in range(self.n_sites)}) == 1


def crossed_plaquettes(spec: LatticeSpec) -> set:
    """Set of plaquettes (x, y) carrying both diagonal bonds."""
    fam, nx, ny = spec.family, spec.nx, spec.ny
    if fam in (Family.CHAIN, Family.SQUARE_LADDER):
        return set()
    if fam == Family.CROSSED_LADDER:
        return {(x, 0) for x in range(nx - 1)}
    if fam == Family.PYRO_A:
        return {(x, 0) for x in range(0, nx - 1, 2)}
    if fam == Family.PYRO_B:
        return {(x, 0) for x in range(1, nx - 1, 2)}
    # rectangle
    cells = [(x, y) for x in range(nx - 1) for y in range(ny - 1)]
    if spec.crossing == Crossing.NONE:
        return set()
    if spec.crossing == Crossing.ALL:
        return set(cells)
    want = 0 if spec.crossing == Crossing.CHECKER_A else 1
    return {(x, y) for x, y in cells if (x + y) % 2 == want}


def build(spec: LatticeSpec) -> BondList:
    """Weighted bond list of the open-boundary lattice."""
    nx, ny, j, jd = spec.nx, spec.ny, spec.j, spec.jd
    s = spec.site
    bonds = []
    for x in range(nx):
        for y in range(ny):
            if x + 1 < nx:
                bonds.append((s(x, y), s(x + 1, y), j))
            if y + 1 < ny:
                bonds.append((s(x, y), s(x, y + 1), j))
    for x, y in crossed_plaquettes(spec):
        bonds.append((s(x, y), s(x + 1, y + 1), jd))
        a, b = s(x, y + 1), s(x + 1, y)
        bonds.append((min(a, b), max(a, b), jd))
    bonds = tuple(sorted((min(a, b), max(a, b), w) for a, b, w in bonds))
    return BondList(spec.n_sites, bonds)


@dataclass(frozen=True)
class CutSpec:
    """Straight column cut: m columns on the left, n on the right."""
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise LatticeError("cut parts need at least one column each")

    @property
    def d2(self) -> int:
        """Twice the signed offset from the middle (= m - n)."""
        return self.m - self.n


def cut_from_d2(spec: LatticeSpec, d2: int) -> CutSpec:
    if (spec.nx + d2) % 2:
        raise LatticeError(f"d2={d2} incompatible with nx={spec.nx}")
    return CutSpec((spec.nx + d2) // 2, (spec.nx - d2) // 2)


@dataclass(frozen=True)
class InterfaceMatrix:
    left_boundary: tuple  # parent site indices, row ascending
    right_boundary: tuple
    k: tuple  # row-major coupling weights, len(left) x len(right)

    def as_array(self) -> np.ndarray:
        return np.array(self.k, dtype=float)

    def bonds(self):
        """Cut bonds in parent indexing."""
        out = []
        for a, i in enumerate(self.left_boundary):
            for b, jj in enumerate(self.right_boundary):
                w = self.k[a][b]
                if w > 0:
                    out.append((min(i, jj), max(i, jj), w))
        return sorted(out)


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    eigenvalues: tuple
    reason: str = ""


def check_applicability(iface: InterfaceMatrix) -> Applicability:
    """Whether the interface admits a mirror-symmetric spin-pair decomposition.

    Requires the coupling matrix to be symmetric and positive semidefinite;
    asymmetric interfaces are rejected outright rather than symmetrized.
    """
    k = iface.as_array()
    if k.shape[0] != k.shape[1]:
        return Applicability(False, (), "non-square interface matrix")
    if np.max(np.abs(k - k.T)) > 1e-12:
        return Applicability(False, (), "asymmetric interface matrix")
    ev = np.linalg.eigvalsh(k)
    if ev[0] < PSD_TOL:
        return Applicability(False, tuple(ev),
                             f"negative eigenvalue {ev[0]:.3e}")
    return Applicability(True, tuple(ev))


def _infer_family(nx: int, ny: int, pattern: set, j: float,
                  wd: float) -> LatticeSpec:
    """Find the family spec whose crossed-plaquette pattern matches."""
    if ny == 1:
        if pattern:
            raise LatticeError("chain cannot carry crossed plaquettes")
        return chain(nx, j)
    cols = {(x, y) for x, y in pattern}
    if ny == 2:
        evens = {(x, 0) for x in range(0, nx - 1, 2)}
        odds = {(x, 0) for x in range(1, nx - 1, 2)}
        if not cols:
            return square_ladder(nx, j)
        if cols == evens and abs(wd - j) <= WEIGHT_TOL:
            return pyro_a(nx, j)
        if cols == odds and abs(wd - j) <= WEIGHT_TOL:
            return pyro_b(nx, j)
        if cols == {(x, 0) for x in range(nx - 1)}:
            return crossed_ladder(nx, j, wd)
    else:
        every = {(x, y) for x in range(nx - 1) for y in range(ny - 1)}
        if not cols:
            return rectangle(nx, ny, Crossing.NONE, j)
        if cols == every:
            return rectangle(nx, ny, Crossing.ALL, j, wd)
        for crossing, want in ((Crossing.CHECKER_A, 0), (Crossing.CHECKER_B, 1)):
            if cols == {(x, y) for x, y in every if (x + y) % 2 == want}:
                if abs(wd - j) <= WEIGHT_TOL:
                    return rectangle(nx, ny, crossing, j, wd)
    raise LatticeError(
        f"crossing pattern on {nx}x{ny} matches no known family: {sorted(cols)}")


def cut(spec: LatticeSpec, cutspec: CutSpec):
    """Split a lattice into left/right column blocks plus the severed bonds.

    Returns ``(left, right, iface)`` where both children are specs of the
    matching (re-derived) family and ``iface`` carries the severed couplings
    between the boundary columns in parent site indexing.
    """
    m, n = cutspec.m, cutspec.n
    if m + n != spec.nx:
        raise LatticeError(f"cut {m}+{n} does not tile nx={spec.nx}")
    ny, j, jd = spec.ny, spec.j, spec.jd
    pattern = crossed_plaquettes(spec)
    left_pat = {(x, y) for x, y in pattern if x <= m - 2}
    right_pat = {(x - m, y) for x, y in pattern if x >= m}
    left = _infer_family(m, ny, left_pat, j, jd)
    right = _infer_family(n, ny, right_pat, j, jd)
    lb = tuple(spec.site(m - 1, y) for y in range(ny))
    rb = tuple(spec.site(m, y) for y in range(ny))
    k = np.zeros((ny, ny))
    for y in range(ny):
        k[y, y] = j
    for y in range(ny - 1):
        if (m - 1, y) in pattern:
            k[y, y + 1] = jd
            k[y + 1, y] = jd
    iface = InterfaceMatrix(lb, rb, tuple(tuple(row) for row in k))
    return left, right, iface


def double(part: LatticeSpec, iface: InterfaceMatrix,
           side: str = "left") -> LatticeSpec:
    """Mirror-doubled system: part joined to its reflection via the interface.

    ``side`` says which end of the part faced the cut ("left" part exposes its
    last column, "right" part its first).
    """
    ny = part.ny
    k = iface.as_array()
    if k.shape != (ny, ny):
        raise LatticeError("interface does not match part geometry")
    if np.max(np.abs(np.diag(k) - part.j)) > 1e-12:
        raise LatticeError("interface leg couplings differ from part coupling")
    m = part.nx
    pat = crossed_plaquettes(part)
    if side == "right":
        # reflect the part so its cut-facing column becomes the last one
        pat = {(m - 2 - x, y) for x, y in pat}
    elif side != "left":
        raise LatticeError(f"unknown side {side!r}")
    doubled = set(pat)
    join_w = 0.0
    for y in range(ny - 1):
        if k[y, y + 1] > 0:
            doubled.add((m - 1, y))
            join_w = k[y, y + 1]
    doubled |= {(2 * m - 2 - x, y) for x, y in pat}
    wd = part.jd if part.jd else (join_w if join_w else part.j)
    if join_w and abs(join_w - wd) > 1e-12:
        raise LatticeError("interface diagonal couplings differ from part jd")
    # the doubled pattern is reflection-symmetric by construction, so the
    # inferred family does not depend on orientation
    return _infer_family(2 * m, ny, doubled, part.j, wd)


def canonical_key(spec: LatticeSpec) -> str:
    """Stable injective text key for caching."""

    def fmt(v: float) -> str:
        return f"{v:.17g}"

    return (f"{spec.family.value}:{spec.nx}:{spec.ny}:"
            f"{spec.crossing.value}:{fmt(spec.j)}:{fmt(spec.jd)}")
