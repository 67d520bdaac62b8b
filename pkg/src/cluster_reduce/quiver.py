"""Quiver (exchange matrix) mutation and mutation-periodic cluster maps.

A quiver is encoded by its skew-symmetric integer exchange matrix B.
Mutation-periodicity with period m means that mutating nodes 1..m in
order reproduces B up to the cyclic relabelling (1,...,N) -> (2,...,N,1)
applied m times; the associated cluster map is the composite of the m
exchange relations followed by that relabelling, so one application of
the map advances the underlying recurrence by m steps.

Node indices in the public API are 1-based, matching the usual labelling
of quiver nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import IntMatrix
from .laurent import RationalFunction
from .maps import BirationalMap

__all__ = [
    "CertificateError",
    "Quiver",
    "Seed",
    "PeriodicityCertificate",
    "mutate_matrix",
    "mutate_seed",
    "shifted_matrix",
    "detect_period",
    "cluster_map",
]


class CertificateError(ValueError):
    """A periodicity certificate does not match the matrix it claims."""


@dataclass(frozen=True)
class Quiver:
    """Skew-symmetric integer exchange matrix with node count."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        if not self.matrix.is_skew_symmetric():
            raise ValueError("exchange matrix must be skew-symmetric")

    @property
    def n(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class Seed:
    """Exchange matrix together with cluster variables.

    Cluster entries are rational functions of the initial cluster, so a
    sequence of seed mutations accumulates the full birational change of
    variables.
    """

    matrix: IntMatrix
    cluster: tuple[RationalFunction, ...]

    @staticmethod
    def initial(matrix: IntMatrix) -> "Seed":
        n = matrix.rows
        if not matrix.is_skew_symmetric():
            raise ValueError("exchange matrix must be skew-symmetric")
        return Seed(matrix, tuple(RationalFunction.coordinate(i, n) for i in range(n)))


@dataclass(frozen=True)
class PeriodicityCertificate:
    """Witness that mutating nodes 1..period reproduces the shifted matrix."""

    n: int
    period: int

    @property
    def mutation_sequence(self) -> tuple[int, ...]:
        return tuple(range(1, self.period + 1))

    def verify(self, b: IntMatrix) -> bool:
        m = b
        for k in self.mutation_sequence:
            m = mutate_matrix(m, k)
        return m == shifted_matrix(b, self.period)


def _check_node(b: IntMatrix, k: int) -> None:
    if not 1 <= k <= b.rows:
        raise IndexError(f"node index {k} out of range 1..{b.rows}")


def mutate_matrix(b: IntMatrix, k: int) -> IntMatrix:
    """Matrix mutation at node k (1-based).

    Entries in row or column k flip sign; all others receive the
    standard correction (|b_ik| b_kj + b_ik |b_kj|) / 2, which is always
    an integer.
    """
    if not b.is_skew_symmetric():
        raise ValueError("mutation requires a skew-symmetric matrix")
    _check_node(b, k)
    kk = k - 1
    n = b.rows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b.entries[i][j])
            else:
                bik = b.entries[i][kk]
                bkj = b.entries[kk][j]
                row.append(b.entries[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        rows.append(tuple(row))
    return IntMatrix(n, n, tuple(rows))


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation at node k: exchange relation plus matrix mutation."""
    b = seed.matrix
    _check_node(b, k)
    kk = k - 1
    n = b.rows
    plus = RationalFunction.constant(1, n)
    minus = RationalFunction.constant(1, n)
    for j in range(n):
        e = b.entries[kk][j]
        if e > 0:
            plus = plus * seed.cluster[j] ** e
        elif e < 0:
            minus = minus * seed.cluster[j] ** (-e)
    new_var = (plus + minus) / seed.cluster[kk]
    cluster = tuple(
        new_var if j == kk else seed.cluster[j] for j in range(n)
    )
    return Seed(mutate_matrix(b, k), cluster)


def shifted_matrix(b: IntMatrix, m: int) -> IntMatrix:
    """Conjugate of b by the m-th power of the cyclic node relabelling."""
    n = b.rows
    return IntMatrix(
        n,
        n,
        tuple(
            tuple(b.entries[(i - m) % n][(j - m) % n] for j in range(n))
            for i in range(n)
        ),
    )


def detect_period(b: IntMatrix, m_max: int = 8) -> PeriodicityCertificate | None:
    """Smallest m <= m_max with mu_m ... mu_1 (B) equal to the shifted B.

    Returns None when no period up to min(m_max, N) works.
    """
    if not b.is_skew_symmetric():
        raise ValueError("periodicity detection requires a skew-symmetric matrix")
    n = b.rows
    current = b
    for m in range(1, min(m_max, n) + 1):
        current = mutate_matrix(current, m)
        if current == shifted_matrix(b, m):
            return PeriodicityCertificate(n, m)
    return None


def cluster_map(b: IntMatrix, cert: PeriodicityCertificate) -> BirationalMap:
    """The birational map of a mutation-periodic quiver.

    Applies the m exchange relations recorded in the certificate and
    then the cyclic relabelling, so for a 1-periodic quiver the result
    is (x_2, ..., x_N, exchange(x)).
    """
    if cert.n != b.rows or not cert.verify(b):
        raise CertificateError("certificate does not verify against this matrix")
    seed = Seed.initial(b)
    for k in cert.mutation_sequence:
        seed = mutate_seed(seed, k)
    n = b.rows
    m = cert.period
    comps = tuple(seed.cluster[(i + m) % n] for i in range(n))
    return BirationalMap(n, comps)
