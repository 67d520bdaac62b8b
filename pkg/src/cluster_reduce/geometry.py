"""Log-canonical presymplectic and Poisson geometry for birational maps.

The structures handled here are constant in logarithmic coordinates: a
presymplectic form with coefficient matrix [b_ij/(x_i x_j)] and a Poisson
tensor with coefficients [c_ij x_i x_j], each encoded by an integer
skew-symmetric matrix.  Invariance of such a structure under a birational
self-map is a rational-function identity, checked exactly at seeded random
positive rational points; reductions along monomial submersions are
derived and certified fully symbolically.

Conventions:

* a monomial submersion pi(x) = (x^{u_1}, ..., x^{u_r}) is stored by its
  exponent rows u_i;
* the fibers of pi are the leaves of the associated foliation, and a
  coarser foliation (bigger leaves) corresponds to a smaller exponent
  lattice;
* skew matrices are vectorized by their upper triangle in row-major
  order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .intlinalg import (
    DarbouxBasis,
    IntMatrix,
    LatticeBasis,
    darboux_basis,
    kernel_lattice,
    saturation_index,
    solve_in_lattice,
)
from .laurent import LaurentPoly, RationalFunction
from .maps import (
    BirationalMap,
    MonomialMap,
    PositivePoint,
    random_positive_point,
    rng_substream,
)

__all__ = [
    "GeometryError",
    "NotFiberConstantError",
    "NotReducibleError",
    "NotAChainError",
    "PresymplecticForm",
    "PoissonStructure",
    "Submersion",
    "ReducedSystem",
    "Flag",
    "InvarianceResult",
    "check_presymplectic_invariance",
    "check_poisson_map",
    "find_invariant_poisson",
    "poisson_bracket",
    "null_submersion",
    "casimir_submersion",
    "submersion_from_rows",
    "rewrite_in_fiber_coordinates",
    "derive_reduced_map",
    "check_subfoliation",
    "build_flag",
    "chained_reduction",
    "check_isotropy",
    "vectorize_skew",
    "unvectorize_skew",
]


class GeometryError(ValueError):
    """A geometric precondition or verification failed."""


class NotFiberConstantError(GeometryError):
    """A rational function is not constant on the fibers of a submersion."""


class NotReducibleError(GeometryError):
    """A map does not descend through a submersion."""


class NotAChainError(GeometryError):
    """A set of submersions is not totally ordered by leaf inclusion."""


# ---------------------------------------------------------------------------
# Structures


@dataclass(frozen=True)
class PresymplecticForm:
    """Log-canonical 2-form sum b_ij/(x_i x_j) dx_i ^ dx_j (i < j)."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        if not self.matrix.is_skew_symmetric():
            raise GeometryError("presymplectic coefficient matrix must be skew-symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    def coefficients_at(self, point: PositivePoint) -> list[list[Fraction]]:
        """The matrix [b_ij/(x_i x_j)] at a point."""
        n = self.dim
        return [
            [
                Fraction(self.matrix.entries[i][j]) / (point[i] * point[j])
                for j in range(n)
            ]
            for i in range(n)
        ]


@dataclass(frozen=True)
class PoissonStructure:
    """Log-canonical Poisson tensor with coefficients c_ij x_i x_j."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        if not self.matrix.is_skew_symmetric():
            raise GeometryError("Poisson coefficient matrix must be skew-symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def corank(self) -> int:
        return self.dim - self.rank

    def kernel(self) -> LatticeBasis:
        return kernel_lattice(self.matrix)

    def tensor_at(self, point: PositivePoint) -> list[list[Fraction]]:
        """The matrix [c_ij x_i x_j] at a point."""
        n = self.dim
        return [
            [
                Fraction(self.matrix.entries[i][j]) * point[i] * point[j]
                for j in range(n)
            ]
            for i in range(n)
        ]


def poisson_bracket(
    f: RationalFunction, g: RationalFunction, structure: PoissonStructure
) -> RationalFunction:
    """{f, g} = sum_{k<l} c_kl x_k x_l (d_k f d_l g - d_l f d_k g)."""
    n = structure.dim
    if f.nvars != n or g.nvars != n:
        raise GeometryError("bracket arguments must live in the structure's dimension")
    result = RationalFunction.constant(0, n)
    df = [f.derivative(k) for k in range(n)]
    dg = [g.derivative(k) for k in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            c = structure.matrix.entries[k][l]
            if c == 0:
                continue
            exp = [0] * n
            exp[k] += 1
            exp[l] += 1
            weight = RationalFunction.from_laurent(
                LaurentPoly.monomial(exp, n, Fraction(c))
            )
            result = result + (df[k] * dg[l] - df[l] * dg[k]) * weight
    return result


# ---------------------------------------------------------------------------
# Submersions and reduced systems


@dataclass(frozen=True)
class Submersion:
    """Monomial submersion x -> (x^{u_1}, ..., x^{u_r}) with metadata.

    kind is "null" (rows span the image lattice of a presymplectic
    matrix), "casimir" (rows span a Poisson kernel), "projection"
    (between reduced spaces), or "custom".  For null submersions the
    Darboux pairing scales are recorded; lattice saturation is the index
    of the row lattice inside its rational span intersected with Z^N.
    """

    map: MonomialMap
    kind: str = "custom"
    scales: tuple[Fraction, ...] = ()
    saturation: int = 1

    @property
    def dim_in(self) -> int:
        return self.map.dim_in

    @property
    def dim_out(self) -> int:
        return self.map.dim_out

    @property
    def is_trivial(self) -> bool:
        return self.dim_out == 0

    @property
    def is_local_diffeo(self) -> bool:
        return self.dim_out == self.dim_in

    def lattice(self) -> LatticeBasis:
        return LatticeBasis(
            self.dim_in,
            tuple(self.map.exponents.entries),
            saturated=self.saturation == 1,
        )

    def components(self) -> tuple[RationalFunction, ...]:
        return self.map.components()

    def evaluate(self, point: PositivePoint) -> tuple[Fraction, ...]:
        return self.map.evaluate(point)

    def evaluate_mp(self, point):
        return self.map.evaluate_mp(point)

    def to_json_dict(self) -> dict:
        data = {
            "schema": "v1",
            "kind": self.kind,
            "exponents": self.map.to_json_dict()["exponents"],
            "dim_in": self.dim_in,
        }
        if self.scales:
            data["scales"] = [str(s) for s in self.scales]
        if self.saturation != 1:
            data["saturation"] = self.saturation
        return data

    @staticmethod
    def from_json_dict(data: dict) -> "Submersion":
        mono = MonomialMap.from_json_dict(
            {"schema": "v1", "dim_in": data["dim_in"], "exponents": data["exponents"]}
        )
        scales = tuple(Fraction(s) for s in data.get("scales", []))
        return Submersion(
            mono, data.get("kind", "custom"), scales, data.get("saturation", 1)
        )


def submersion_from_rows(rows, ambient_dim: int | None = None, kind: str = "custom") -> Submersion:
    """Submersion from explicit exponent rows (validated independent)."""
    mono = MonomialMap.from_rows(rows, ambient_dim)
    u = mono.exponents
    if u.rows and u.rank() != u.rows:
        raise GeometryError("submersion exponent rows must be linearly independent")
    sat = (
        saturation_index(LatticeBasis(u.cols, u.entries, saturated=False))
        if u.rows
        else 1
    )
    return Submersion(mono, kind, (), sat)


@dataclass(frozen=True)
class ReducedSystem:
    """A pair (psi, pi) with pi o phi = psi o pi, certified symbolically."""

    map: BirationalMap
    submersion: Submersion
    verified: bool

    def to_json_dict(self) -> dict:
        return {
            "schema": "v1",
            "psi": self.map.to_strings(),
            "pi": self.submersion.to_json_dict(),
            "verified": self.verified,
        }


@dataclass(frozen=True)
class Flag:
    """Chain of submersions ordered by coarsening, with projection witnesses.

    submersions[0] has the smallest exponent lattice (largest leaves);
    projections[i] satisfies projections[i] o submersions[i+1] = submersions[i].
    """

    submersions: tuple[Submersion, ...]
    projections: tuple[MonomialMap, ...]

    def __len__(self) -> int:
        return len(self.submersions)

    def describe(self) -> str:
        parts = [
            f"{s.kind}({s.dim_out})" for s in self.submersions
        ]
        return " < ".join(parts) if len(parts) > 1 else (parts[0] if parts else "(empty)")


# ---------------------------------------------------------------------------
# Invariance checks


@dataclass(frozen=True)
class InvarianceResult:
    """Outcome of a sampled exact invariance check."""

    ok: bool
    samples: int
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _mat_close_pullback(j, w_out, w_in) -> bool:
    """Whether J^T W_out J == W_in for exact Fraction matrices."""
    n = len(j)
    for a in range(n):
        for b in range(n):
            total = Fraction(0)
            for i in range(n):
                ji = j[i][a]
                if ji == 0:
                    continue
                row = w_out[i]
                for k in range(n):
                    if row[k] != 0 and j[k][b] != 0:
                        total += ji * row[k] * j[k][b]
            if total != w_in[a][b]:
                return False
    return True


def _mat_close_pushforward(j, p_in, p_out) -> bool:
    """Whether J P_in J^T == P_out for exact Fraction matrices."""
    n = len(j)
    for a in range(n):
        for b in range(n):
            total = Fraction(0)
            for i in range(n):
                ja = j[a][i]
                if ja == 0:
                    continue
                row = p_in[i]
                for k in range(n):
                    if row[k] != 0 and j[b][k] != 0:
                        total += ja * row[k] * j[b][k]
            if total != p_out[a][b]:
                return False
    return True


def _sample_points(dim: int, count: int, seed: int, avoid=None):
    """Deterministic stream of random positive rational points.

    Substream index increments past points where `avoid` (a callable
    raising ZeroDivisionError) fails, so results are reproducible even
    when a map is undefined somewhere.
    """
    points = []
    index = 0
    attempts = 0
    while len(points) < count:
        if attempts > 100 * count + 100:
            raise GeometryError("could not sample enough well-defined points")
        rng = rng_substream(seed, index)
        index += 1
        attempts += 1
        p = random_positive_point(dim, rng)
        if avoid is not None:
            try:
                avoid(p)
            except ZeroDivisionError:
                continue
        points.append(p)
    return points


def check_presymplectic_invariance(
    phi: BirationalMap,
    form: PresymplecticForm,
    samples: int = 20,
    seed: int = 0,
) -> InvarianceResult:
    """Exact check of phi-invariance of the form at seeded random points.

    At each point p the identity J(p)^T W(phi(p)) J(p) = W(p) is tested
    with exact rational arithmetic, W(x) = [b_ij/(x_i x_j)].
    """
    n = form.dim
    if phi.dim_in != n or phi.dim_out != n:
        raise GeometryError("map and form dimensions differ")
    pts = _sample_points(n, samples, seed, avoid=phi.evaluate)
    for p in pts:
        image = phi.evaluate(p)
        if any(v <= 0 for v in image):
            return InvarianceResult(False, samples, p)
        j = phi.jacobian(p)
        if not _mat_close_pullback(j, form.coefficients_at(image), form.coefficients_at(p)):
            return InvarianceResult(False, samples, p)
    return InvarianceResult(True, samples)


def check_poisson_map(
    phi: BirationalMap,
    structure: PoissonStructure,
    samples: int = 20,
    seed: int = 0,
) -> InvarianceResult:
    """Exact check that phi preserves the Poisson tensor at seeded points.

    At each point p the identity J(p) Pi(p) J(p)^T = Pi(phi(p)) is
    tested exactly, Pi(x) = [c_ij x_i x_j].
    """
    n = structure.dim
    if phi.dim_in != n or phi.dim_out != n:
        raise GeometryError("map and structure dimensions differ")
    pts = _sample_points(n, samples, seed, avoid=phi.evaluate)
    for p in pts:
        image = phi.evaluate(p)
        j = phi.jacobian(p)
        if not _mat_close_pushforward(j, structure.tensor_at(p), structure.tensor_at(image)):
            return InvarianceResult(False, samples, p)
    return InvarianceResult(True, samples)


# ---------------------------------------------------------------------------
# Invariant-Poisson discovery


def _pair_index(n: int):
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            pairs.append((i, j))
    return pairs


def vectorize_skew(m: IntMatrix) -> tuple[int, ...]:
    """Upper triangle of a skew matrix, row-major."""
    if not m.is_skew_symmetric():
        raise GeometryError("vectorize_skew expects a skew-symmetric matrix")
    return tuple(m.entries[i][j] for i, j in _pair_index(m.rows))


def unvectorize_skew(vec, n: int) -> IntMatrix:
    """Inverse of vectorize_skew."""
    pairs = _pair_index(n)
    if len(vec) != len(pairs):
        raise GeometryError("vector length does not match an upper triangle")
    entries = [[0] * n for _ in range(n)]
    for (i, j), v in zip(pairs, vec):
        entries[i][j] = int(v)
        entries[j][i] = -int(v)
    return IntMatrix.from_rows(entries)


def _poisson_equations_at(phi: BirationalMap, p: PositivePoint) -> list[tuple[int, ...]]:
    """Integer linear equations on c_kl expressing J Pi(p) J^T = Pi(phi(p)).

    Unknowns are ordered by _pair_index.  Each equation row is cleared of
    denominators.
    """
    n = phi.dim_in
    pairs = _pair_index(n)
    j = phi.jacobian(p)
    image = phi.evaluate(p)
    rows = []
    for a, b in pairs:
        coeffs = []
        for k, l in pairs:
            value = (j[a][k] * j[b][l] - j[a][l] * j[b][k]) * p[k] * p[l]
            if (k, l) == (a, b):
                value -= image[a] * image[b]
            coeffs.append(value)
        denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        rows.append(tuple(int(c * denom) for c in coeffs))
    return rows


def _compatibility_equations(b: IntMatrix) -> list[tuple[int, ...]]:
    """Integer equations on c_kl expressing C B = 0."""
    n = b.rows
    pairs = _pair_index(n)
    index = {pair: t for t, pair in enumerate(pairs)}
    rows = []
    for i in range(n):
        for l in range(n):
            coeffs = [0] * len(pairs)
            for j in range(n):
                if j == i:
                    continue
                entry = b.entries[j][l]
                if entry == 0:
                    continue
                if i < j:
                    coeffs[index[(i, j)]] += entry
                else:
                    coeffs[index[(j, i)]] -= entry
            if any(coeffs):
                rows.append(tuple(coeffs))
    return rows


def find_invariant_poisson(
    phi: BirationalMap,
    compatible_with: IntMatrix | None = None,
    seed: int = 0,
    stable_runs: int = 3,
    max_points: int | None = None,
) -> list[IntMatrix]:
    """Saturated integer basis of the space of invariant log-canonical tensors.

    The invariance identity J Pi(p) J^T = Pi(phi(p)) is linear in the
    coefficients c_kl, so each sampled point contributes exact linear
    equations; points are added until the solution space dimension is
    unchanged for `stable_runs` consecutive points.  With
    `compatible_with` = B, the equations C B = 0 are imposed as well.
    Every basis element is re-verified by an independent sampled check;
    a failing candidate's witness point is fed back into the system.
    """
    n = phi.dim_in
    if phi.dim_out != n:
        raise GeometryError("invariant structures require a self-map")
    if compatible_with is not None and compatible_with.rows != n:
        raise GeometryError("compatibility matrix dimension differs from the map")
    n_unknowns = n * (n - 1) // 2
    if max_points is None:
        max_points = n_unknowns + stable_runs + 3

    equations: list[tuple[int, ...]] = []
    if compatible_with is not None:
        equations.extend(_compatibility_equations(compatible_with))

    def current_basis() -> LatticeBasis:
        if not equations:
            return kernel_lattice(IntMatrix.zeros(1, n_unknowns))
        return kernel_lattice(IntMatrix.from_rows(equations))

    pts = _sample_points(n, max_points, seed, avoid=phi.evaluate)
    dims = []
    basis = current_basis()
    for p in pts:
        if basis.dim == 0:
            break
        equations.extend(_poisson_equations_at(phi, p))
        basis = current_basis()
        dims.append(basis.dim)
        if len(dims) >= stable_runs and len(set(dims[-stable_runs:])) == 1:
            break

    # Independent re-verification; any failure feeds its witness back in.
    for _ in range(n_unknowns + 1):
        candidates = [unvectorize_skew(v, n) for v in basis.vectors]
        retry = None
        for c in candidates:
            res = check_poisson_map(phi, PoissonStructure(c), samples=5, seed=seed + 10_000)
            if not res.ok:
                retry = res.witness
                break
        if retry is None:
            return candidates
        equations.extend(_poisson_equations_at(phi, retry))
        basis = current_basis()
    raise GeometryError("invariant-structure search failed to stabilize")


# ---------------------------------------------------------------------------
# Submersion builders


def null_submersion(form: PresymplecticForm) -> Submersion:
    """Monomial submersion whose fibers are the null leaves of the form.

    Exponent rows are a Darboux-paired saturated basis of the image
    lattice of B; the recorded scales lambda_m express the pushed-down
    form as sum lambda_m dy_{2m-1}/y_{2m-1} ^ dy_{2m}/y_{2m}.  A rank-0
    form yields the trivial submersion (one leaf, the whole space); a
    full-rank form yields a local diffeomorphism rather than a genuine
    reduction, visible via is_local_diffeo.
    """
    d: DarbouxBasis = darboux_basis(form.matrix)
    mono = MonomialMap.from_rows(d.vectors, form.dim)
    return Submersion(mono, "null", d.scales, 1)


def casimir_submersion(structure: PoissonStructure) -> Submersion:
    """Monomial submersion by a maximal independent set of monomial Casimirs.

    Exponent rows are a saturated basis of ker C; each component x^u is
    verified symbolically to have vanishing bracket with every coordinate.
    """
    kernel = structure.kernel()
    if kernel.dim == 0:
        raise GeometryError(
            "Poisson structure has trivial kernel; there are no Casimirs to reduce along"
        )
    n = structure.dim
    for u in kernel.vectors:
        z = RationalFunction.monomial(u, n)
        for jvar in range(n):
            br = poisson_bracket(z, RationalFunction.coordinate(jvar, n), structure)
            if not br.is_zero():
                raise GeometryError("kernel vector failed the Casimir property")
    mono = MonomialMap.from_rows(kernel.vectors, n)
    return Submersion(mono, "casimir", (), 1)


# ---------------------------------------------------------------------------
# Fiber-coordinate rewriting and reduction


def rewrite_in_fiber_coordinates(f: RationalFunction, sub: Submersion) -> RationalFunction:
    """Express f as a rational function of the submersion components.

    Shifting numerator and denominator by a common monomial, every
    exponent must land in the submersion's row lattice; each lattice
    membership is solved exactly, and the solution exponents assemble
    the expression in the y variables.  Raises NotFiberConstantError
    when f genuinely varies along a fiber.
    """
    n = sub.dim_in
    if f.nvars != n:
        raise GeometryError("function and submersion dimensions differ")
    basis = sub.lattice()
    r = sub.dim_out
    e0 = f.num.leading_exponent()
    new_num: dict[tuple[int, ...], Fraction] = {}
    new_den: dict[tuple[int, ...], Fraction] = {}
    for source, target in ((f.num, new_num), (f.den, new_den)):
        for exp, coeff in source.terms.items():
            delta = tuple(e - b for e, b in zip(exp, e0))
            sol = solve_in_lattice(basis, delta)
            if sol is None:
                raise NotFiberConstantError(
                    "not constant on fibers: monomial exponent "
                    f"{exp} is not reachable from the reference exponent inside the lattice"
                )
            target[sol] = target.get(sol, Fraction(0)) + coeff
    num = LaurentPoly(r, new_num)
    den = LaurentPoly(r, new_den)
    if den.is_zero():
        raise NotFiberConstantError("denominator collapsed to zero during rewriting")
    return RationalFunction(num, den)


def derive_reduced_map(phi: BirationalMap, sub: Submersion) -> ReducedSystem:
    """The reduced map psi with pi o phi = psi o pi, certified symbolically.

    Each component y_i o phi is rewritten in fiber coordinates; failure
    of any component means phi does not descend through pi.  The
    commutation identity is then re-checked as an exact identity of
    rational functions before the system is returned as verified.
    """
    n = sub.dim_in
    if phi.dim_in != n or phi.dim_out != n:
        raise GeometryError("map and submersion dimensions differ")
    pulled = sub.map.after(phi)
    comps = []
    for i, g in enumerate(pulled.components):
        try:
            comps.append(rewrite_in_fiber_coordinates(g, sub))
        except NotFiberConstantError as exc:
            raise NotReducibleError(
                f"component {i + 1} of pi o phi is not fiber-constant: {exc}"
            ) from exc
    psi = BirationalMap(sub.dim_out, comps)
    pi_comps = list(sub.components())
    for i, c in enumerate(psi.components):
        if c.compose(pi_comps) != pulled.components[i]:
            raise NotReducibleError(
                f"symbolic verification of pi o phi = psi o pi failed at component {i + 1}"
            )
    return ReducedSystem(psi, sub, True)


def check_subfoliation(pi1: Submersion, pi2: Submersion) -> MonomialMap | None:
    """The monomial projection p with p o pi2 = pi1, or None.

    Exists exactly when the exponent lattice of pi1 is contained in the
    exponent lattice of pi2 (pi1's leaves are unions of pi2's leaves).
    """
    if pi1.dim_in != pi2.dim_in:
        raise GeometryError("submersions live on different spaces")
    basis = pi2.lattice()
    rows = []
    for u in pi1.map.exponents.entries:
        sol = solve_in_lattice(basis, u)
        if sol is None:
            return None
        rows.append(sol)
    proj = MonomialMap.from_rows(rows, pi2.dim_out)
    if proj.after_monomial(pi2.map).exponents != pi1.map.exponents:
        raise GeometryError("internal error: projection witness failed to recompose")
    return proj


def build_flag(submersions) -> Flag:
    """Order submersions into a flag of coarsening foliations.

    Sorted by target dimension (coarsest first, i.e. smallest lattice);
    every consecutive pair must be related by a projection witness, else
    NotAChainError identifies the incomparable pair.
    """
    subs = sorted(submersions, key=lambda s: s.dim_out)
    projections = []
    for a, b in zip(subs, subs[1:]):
        p = check_subfoliation(a, b)
        if p is None:
            raise NotAChainError(
                f"submersions with targets of dimension {a.dim_out} and {b.dim_out} "
                "are not nested: neither exponent lattice contains the other"
            )
        projections.append(p)
    return Flag(tuple(subs), tuple(projections))


def chained_reduction(
    outer: ReducedSystem, inner: ReducedSystem, p: MonomialMap
) -> ReducedSystem:
    """Certify (psi_outer, p) as a reduced system of psi_inner.

    Requires the witness p o pi_inner = pi_outer and verifies the
    symbolic identity p o psi_inner = psi_outer o p.
    """
    if p.after_monomial(inner.submersion.map).exponents != outer.submersion.map.exponents:
        raise GeometryError("projection does not relate the two submersions")
    lhs = p.after(inner.map)
    p_comps = list(p.components())
    for i, c in enumerate(outer.map.components):
        if c.compose(p_comps) != lhs.components[i]:
            raise GeometryError(
                f"chained reduction identity p o psi = psi' o p failed at component {i + 1}"
            )
    sub = submersion_from_rows(p.exponents.entries, p.dim_in, kind="projection")
    return ReducedSystem(outer.map, sub, True)


def check_isotropy(
    form: PresymplecticForm,
    sub: Submersion,
    samples: int = 10,
    seed: int = 0,
) -> bool:
    """Whether the fibers of the submersion are isotropic for the form.

    The tangent space of a fiber at p is spanned by vectors (w_j p_j)_j
    with w in the kernel of the exponent matrix; the form evaluated on
    every pair of such vectors must vanish.  Checked exactly at seeded
    sample points.
    """
    if form.dim != sub.dim_in:
        raise GeometryError("form and submersion dimensions differ")
    kernel = kernel_lattice(sub.map.exponents)
    if kernel.dim <= 1:
        return True
    n = form.dim
    for p in _sample_points(n, samples, seed):
        w = form.coefficients_at(p)
        tangents = [[Fraction(vec[j]) * p[j] for j in range(n)] for vec in kernel.vectors]
        for a in range(len(tangents)):
            for b in range(a + 1, len(tangents)):
                total = Fraction(0)
                for i in range(n):
                    if tangents[a][i] == 0:
                        continue
                    for jj in range(n):
                        if w[i][jj] != 0 and tangents[b][jj] != 0:
                            total += tangents[a][i] * w[i][jj] * tangents[b][jj]
                if total != 0:
                    return False
    return True
