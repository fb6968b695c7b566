"""Integer frequency lattices in Hermite normal form.

All arithmetic is on Python ints, so reduction is exact at any size.
"""

from dataclasses import dataclass, field

from .errors import DimensionError, SpectralError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(x, y, g) with x*a + y*b == g == gcd(a, b) up to sign."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def _as_int_vector(v) -> tuple[int, ...]:
    out = []
    for c in v:
        if isinstance(c, float):
            if not c.is_integer():
                raise SpectralError(f"lattice vectors must be integer, got {tuple(v)}")
            c = int(c)
        out.append(int(c))
    return tuple(out)


def hermite_normal_form(rows, dimension: int) -> list[list[int]]:
    """Row-style HNF: echelon rows, positive pivots, entries above a pivot in [0, pivot)."""
    basis: list[list[int]] = []
    pivots: list[int] = []

    for row in rows:
        vec = list(row)
        if len(vec) != dimension:
            raise DimensionError(f"vector {row} is not in Z^{dimension}")
        i = 0
        for j in range(dimension):
            if not vec[j]:
                continue
            while i < len(pivots) and pivots[i] < j:
                i += 1
            if i == len(pivots) or pivots[i] != j:
                # new pivot column: insert in echelon position
                basis.insert(i, vec)
                pivots.insert(i, j)
                break
            prow = basis[i]
            a, b = prow[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [v - q * p for v, p in zip(vec, prow)]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                basis[i] = [x * p + y * v for p, v in zip(prow, vec)]
                vec = [ag * v - bg * p for p, v in zip(prow, vec)]
        # a vector reduced to zero adds nothing

    for i, j in enumerate(pivots):
        if basis[i][j] < 0:
            basis[i] = [-v for v in basis[i]]
    for i, j in enumerate(pivots):
        p = basis[i][j]
        for k in range(i):
            q = basis[k][j] // p
            if q:
                basis[k] = [u - q * v for u, v in zip(basis[k], basis[i])]
    return basis


def _pivot_columns(basis) -> list[int]:
    return [next(j for j, v in enumerate(row) if v) for row in basis]


@dataclass(frozen=True)
class FrequencyLattice:
    generators: tuple[tuple[int, ...], ...]
    dimension: int
    hnf_basis: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        gens = tuple(_as_int_vector(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        basis = hermite_normal_form(gens, self.dimension)
        object.__setattr__(self, "hnf_basis", tuple(tuple(r) for r in basis))

    @property
    def rank(self) -> int:
        return len(self.hnf_basis)

    def __contains__(self, u) -> bool:
        return member(self, u)

    def max_coordinate(self) -> int:
        return max((abs(c) for row in self.hnf_basis for c in row), default=0)


def lattice_from_supports(supports) -> FrequencyLattice:
    """The integer span of the union of all supports."""
    vectors = [_as_int_vector(v) for support in supports for v in support]
    if not vectors:
        raise SpectralError("need at least one nonempty support")
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise DimensionError(f"support vectors have mixed dimensions {sorted(dims)}")
    return FrequencyLattice(tuple(vectors), dims.pop())


def member(lattice: FrequencyLattice, u) -> bool:
    """u is an integer combination of the generators (back-substitution on the HNF)."""
    vec = list(_as_int_vector(u))
    if len(vec) != lattice.dimension:
        raise DimensionError(f"vector of length {len(vec)} vs lattice in Z^{lattice.dimension}")
    for row, j in zip(lattice.hnf_basis, _pivot_columns(lattice.hnf_basis)):
        if any(vec[:j]):
            return False
        if vec[j] % row[j]:
            return False
        q = vec[j] // row[j]
        if q:
            vec = [v - q * r for v, r in zip(vec, row)]
    return not any(vec)
