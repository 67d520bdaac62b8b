"""Exact integer linear algebra for lattices of monomial exponents.

Everything here runs over the integers (exact rationals internally, never
floats): Hermite and Smith normal forms with unimodular transforms,
saturated kernel/image lattices, membership tests, and Darboux-paired
bases of skew-symmetric forms.  Saturation matters because downstream
code rewrites Laurent monomials in lattice coordinates, which is only
well behaved when a basis generates the full intersection of its
rational span with the integer lattice.

Deterministic output is part of the contract: lattice bases are
normalized by the Hermite form of their stacked rows, so equal lattices
always produce identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "IntMatrix",
    "LatticeBasis",
    "DarbouxBasis",
    "hermite_normal_form",
    "smith_normal_form",
    "kernel_lattice",
    "image_lattice",
    "sublattice_subset",
    "solve_in_lattice",
    "saturation_index",
    "darboux_basis",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape.

    The shape is stored separately so degenerate matrices (zero rows or
    zero columns) keep their ambient dimensions, which the lattice
    routines rely on.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix")

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "IntMatrix":
        ent = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not ent:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(ent[0])
        return IntMatrix(len(ent), cols, ent)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ent = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return IntMatrix(self.rows, other.cols, ent)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in row) for row in self.entries))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def rank(self) -> int:
        h, _ = hermite_normal_form(self)
        return sum(1 for row in h.entries if any(row))

    def to_json_dict(self) -> dict:
        return {
            "schema": "v1",
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "IntMatrix":
        rows = int(data["rows"])
        cols = int(data["cols"])
        ent = tuple(tuple(int(x) for x in row) for row in data["entries"])
        return IntMatrix(rows, cols, ent)


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a sublattice of Z^ambient_dim, one vector per row."""

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]
    saturated: bool = True

    def __post_init__(self) -> None:
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.vectors, cols=self.ambient_dim)


@dataclass(frozen=True)
class DarbouxBasis:
    """Darboux-paired integer vectors u_1, ..., u_2k with scales.

    The pairing means  sum_m scales[m] * (u_{2m} u_{2m+1}^T - u_{2m+1} u_{2m}^T)
    reconstructs the skew form the basis was computed from (0-based pairs).
    Each scale is a positive rational.
    """

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]
    scales: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.vectors) != 2 * len(self.scales):
            raise ValueError("Darboux basis needs exactly two vectors per scale")
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")

    def __len__(self) -> int:
        return len(self.vectors)

    def basis(self) -> LatticeBasis:
        return LatticeBasis(self.ambient_dim, self.vectors, saturated=True)

    def reconstruct(self) -> IntMatrix:
        """Assemble sum_m lam_m (u v^T - v u^T); entries must come out integral."""
        n = self.ambient_dim
        acc = [[Fraction(0) for _ in range(n)] for _ in range(n)]
        for m, lam in enumerate(self.scales):
            u = self.vectors[2 * m]
            v = self.vectors[2 * m + 1]
            for i in range(n):
                for j in range(n):
                    acc[i][j] += lam * (u[i] * v[j] - v[i] * u[j])
        ent = []
        for row in acc:
            out = []
            for x in row:
                if x.denominator != 1:
                    raise ArithmeticError("Darboux reconstruction produced a non-integer entry")
                out.append(int(x))
            ent.append(tuple(out))
        return IntMatrix(n, n, tuple(ent))


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U @ m == H.  H is in row echelon
    form with positive pivots, entries above each pivot reduced into
    [0, pivot), and zero rows collected at the bottom.  This form is the
    canonical representative of the row space, which is what makes
    lattice bases reproducible.
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def add_multiple(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        ai, aj = a[i], a[j]
        for t in range(nc):
            ai[t] += q * aj[t]
        ui, uj = u[i], u[j]
        for t in range(nr):
            ui[t] += q * uj[t]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(nc):
        if r == nr:
            break
        # gcd cascade: repeatedly reduce below-pivot entries until they vanish
        while True:
            candidates = [i for i in range(r, nr) if a[i][c] != 0]
            if not candidates:
                break
            i0 = min(candidates, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                swap_rows(r, i0)
            if a[r][c] < 0:
                negate_row(r)
            finished = True
            for i in range(r + 1, nr):
                if a[i][c] != 0:
                    add_multiple(i, r, -(a[i][c] // a[r][c]))
                    if a[i][c] != 0:
                        finished = False
            if finished:
                break
        if a[r][c] != 0:
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    add_multiple(i, r, -q)
            r += 1

    h = IntMatrix(nr, nc, tuple(tuple(row) for row in a))
    uu = IntMatrix(nr, nr, tuple(tuple(row) for row in u))
    return h, uu


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with U @ m @ V == S.

    U and V are unimodular; S is diagonal with non-negative entries
    satisfying the divisibility chain d_1 | d_2 | ... .
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_add(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        for t in range(nc):
            a[i][t] += q * a[j][t]
        for t in range(nr):
            u[i][t] += q * u[j][t]

    def col_add(i: int, j: int, q: int) -> None:
        # col_i += q * col_j
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # locate the smallest nonzero entry of the trailing block
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                row_add(i, t, -(a[i][t] // a[t][t]))
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                col_add(j, t, -(a[t][j] // a[t][t]))
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # a strictly smaller pivot appeared; reselect

        # the pivot now divides everything it cleared; enforce divisibility
        # of the remaining block before moving on
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    s = IntMatrix(nr, nc, tuple(tuple(row) for row in a))
    uu = IntMatrix(nr, nr, tuple(tuple(row) for row in u))
    vv = IntMatrix(nc, nc, tuple(tuple(row) for row in v))
    return s, uu, vv


# ---------------------------------------------------------------------------
# Lattice constructions
# ---------------------------------------------------------------------------


def _normalized_basis(ambient: int, vectors) -> LatticeBasis:
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return LatticeBasis(ambient, ())
    h, _ = hermite_normal_form(IntMatrix.from_rows(vecs, cols=ambient))
    rows = tuple(row for row in h.entries if any(row))
    return LatticeBasis(ambient, rows)


def kernel_lattice(m: IntMatrix) -> LatticeBasis:
    """Saturated basis of the integer kernel {v in Z^cols : m v = 0}.

    Works through the Hermite form of the transpose: rows of the
    unimodular transform that map to zero rows span the kernel, and being
    rows of a unimodular matrix they generate the full (saturated)
    kernel lattice.
    """
    h, u = hermite_normal_form(m.transpose())
    vecs = [urow for urow, hrow in zip(u.entries, h.entries) if not any(hrow)]
    return _normalized_basis(m.cols, vecs)


def image_lattice(m: IntMatrix) -> LatticeBasis:
    """Saturated basis of (column span of m) intersected with Z^rows.

    The span generated by the columns alone need not be saturated (think
    of a single column (2,0)); taking the kernel of the orthogonal
    complement closes it up.
    """
    comp = kernel_lattice(m.transpose())
    comp_matrix = IntMatrix.from_rows(comp.vectors, cols=m.rows) if comp.vectors else IntMatrix.zeros(0, m.rows)
    return kernel_lattice(comp_matrix)


def solve_in_lattice(basis: LatticeBasis, v) -> tuple[int, ...] | None:
    """Integer coefficients c with sum_i c_i basis[i] == v, or None.

    None means v is not in the lattice generated by the basis; membership
    in the rational span alone is not enough.
    """
    vec = tuple(int(x) for x in v)
    if len(vec) != basis.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    if not basis.vectors:
        return () if not any(vec) else None
    bm = basis.matrix()
    h, u = hermite_normal_form(bm)
    residual = list(vec)
    coeffs_h = [0] * h.rows
    for i, hrow in enumerate(h.entries):
        pivot_col = next((j for j, x in enumerate(hrow) if x != 0), None)
        if pivot_col is None:
            continue
        q, r = divmod(residual[pivot_col], hrow[pivot_col])
        if r != 0:
            return None
        if q:
            coeffs_h[i] = q
            for j in range(basis.ambient_dim):
                residual[j] -= q * hrow[j]
    if any(residual):
        return None
    n = bm.rows
    return tuple(sum(coeffs_h[i] * u.entries[i][t] for i in range(n)) for t in range(n))


def sublattice_subset(a: LatticeBasis, b: LatticeBasis) -> bool:
    """True when every basis vector of a lies in the lattice spanned by b.

    For the saturated bases produced in this module this is exactly
    containment of the rational spans.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return all(solve_in_lattice(b, v) is not None for v in a.vectors)


def saturation_index(basis: LatticeBasis) -> int:
    """Index of the lattice inside (rational span) intersect Z^N.

    Computed as the product of the elementary divisors of the stacked
    basis rows; 1 means the basis is saturated.
    """
    if not basis.vectors:
        return 1
    s, _, _ = smith_normal_form(basis.matrix())
    idx = 1
    for t in range(min(s.rows, s.cols)):
        d = s.entries[t][t]
        if d == 0:
            raise ValueError("basis vectors are linearly dependent")
        idx *= d
    return idx


# ---------------------------------------------------------------------------
# Rational helpers (internal)
# ---------------------------------------------------------------------------


def _rat_identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _rat_mul(a, b) -> list[list[Fraction]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def _rat_inverse(mat) -> list[list[Fraction]]:
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    inv = _rat_identity(n)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        inv[col] = [x / d for x in inv[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    return inv


# ---------------------------------------------------------------------------
# Darboux bases of skew-symmetric forms
# ---------------------------------------------------------------------------


def _skew_congruence_blocks(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Unimodular congruence of an integer skew matrix into 2x2 blocks.

    Returns (q, ds) with q unimodular and q^T m q equal to the block
    diagonal  [[0, d_1], [-d_1, 0]], ..., padded by zeros; every d_m > 0.
    """
    n = len(m)
    a = [list(row) for row in m]
    q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_multiple(i: int, j: int, c: int) -> None:
        # basis change e_i += c * e_j, applied congruently
        for t in range(n):
            a[i][t] += c * a[j][t]
        for row in a:
            row[i] += c * row[j]
        for row in q:
            row[i] += c * row[j]

    ds: list[int] = []
    t = 0
    while t + 1 < n:
        pivot = None
        best = None
        for i in range(t, n):
            for j in range(i + 1, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap(pi, t)
            if pj == t:
                pj = pi
        if pj != t + 1:
            swap(pj, t + 1)
        if a[t][t + 1] < 0:
            swap(t, t + 1)

        # make the pivot divide the rest of its two rows, then clear them
        while True:
            p = a[t][t + 1]
            progressed = False
            for j in range(t + 2, n):
                r = a[t][j] % p
                if r:
                    add_multiple(j, t + 1, -(a[t][j] // p))
                    swap(j, t + 1)
                    if a[t][t + 1] < 0:
                        swap(t, t + 1)
                    progressed = True
                    break
                r = a[t + 1][j] % p
                if r:
                    add_multiple(j, t, a[t + 1][j] // p)
                    swap(j, t)
                    if a[t][t + 1] < 0:
                        swap(t, t + 1)
                    progressed = True
                    break
            if not progressed:
                break
        p = a[t][t + 1]
        for j in range(t + 2, n):
            if a[t][j]:
                add_multiple(j, t + 1, -(a[t][j] // p))
            if a[t + 1][j]:
                add_multiple(j, t, a[t + 1][j] // p)
        ds.append(a[t][t + 1])
        t += 2
    return q, ds


def darboux_basis(b: IntMatrix) -> DarbouxBasis:
    """Darboux-paired saturated basis of the image lattice of a skew form.

    The returned vectors generate the saturation of Im b and come in
    pairs (u_1, u_2), (u_3, u_4), ... with positive rational scales
    lam_m such that  sum_m lam_m (u_{2m-1} u_{2m}^T - u_{2m} u_{2m-1}^T)
    equals b exactly.
    """
    if not b.is_skew_symmetric():
        raise ValueError("Darboux basis requires a skew-symmetric matrix")
    n = b.rows
    img = image_lattice(b)
    r = img.dim
    if r == 0:
        return DarbouxBasis(n, (), ())
    if r % 2:
        raise ArithmeticError("skew-symmetric matrix with odd rank")
    s = img.matrix()

    # Write b = S^T G S for the unique rational skew G (S has full row rank).
    s_rat = [[Fraction(x) for x in row] for row in s.entries]
    s_t = [[Fraction(s.entries[i][j]) for i in range(r)] for j in range(n)]
    gram_inv = _rat_inverse(_rat_mul(s_rat, s_t))
    b_rat = [[Fraction(x) for x in row] for row in b.entries]
    middle = _rat_mul(_rat_mul(s_rat, b_rat), s_t)
    g = _rat_mul(_rat_mul(gram_inv, middle), gram_inv)

    # defensive exactness check: S^T G S must reproduce b
    recon = _rat_mul(_rat_mul(s_t, g), s_rat)
    for i in range(n):
        for j in range(n):
            if recon[i][j] != b_rat[i][j]:
                raise ArithmeticError("image basis does not carry the skew form")

    denom = lcm(*[x.denominator for row in g for x in row]) if r else 1
    g_int = [[int(x * denom) for x in row] for row in g]
    q, ds = _skew_congruence_blocks(g_int)
    if 2 * len(ds) != r:
        raise ArithmeticError("skew form degenerated on its own image")

    q_inv_rat = _rat_inverse([[Fraction(x) for x in row] for row in q])
    a_rows = []
    for i in range(r):
        row = []
        for j in range(n):
            x = sum(q_inv_rat[i][k] * s.entries[k][j] for k in range(r))
            if x.denominator != 1:
                raise ArithmeticError("unimodular inverse was not integral")
            row.append(int(x))
        a_rows.append(tuple(row))

    scales = tuple(Fraction(d, denom) for d in ds)
    if any(lam <= 0 for lam in scales):
        raise ArithmeticError("Darboux scales must be positive")
    return DarbouxBasis(n, tuple(a_rows), scales)
