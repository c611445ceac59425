"""Derivation algebras of block parabolics: oracle, decomposition, theorem checks.

Three independent routes to the same objects meet here. The oracle computes
Der q as the exact kernel of the Leibniz system in the dim^2 matrix unknowns.
The structural route builds the ideal of center-valued maps killing the
derived algebra, plus the span of the adjoint maps. The constructive route
peels an arbitrary derivation into those two pieces explicitly: first an
inner correction read off the Cartan images, then a Cartan element solved
from the simple-root eigenvalues, leaving a map into the center.

Endomorphisms are flattened column-major (image of basis j stacked), fixed
package-wide so subspaces of endomorphism space are comparable everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .lie import (
    Element,
    EndoMatrix,
    LieAlgebra,
    ad_matrix,
    first_leibniz_violation,
)
from .linalg import (
    Matrix,
    Q,
    Subspace,
    Vector,
    contains,
    nullspace_of_rows,
    solve,
    subspace_intersect,
    subspace_sum,
)
from .parabolic import ParabolicAlgebra

__all__ = [
    "NotADerivationError",
    "DecompositionError",
    "DerivationMatrix",
    "DecompositionResult",
    "VerificationReport",
    "flatten_endo",
    "unflatten_endo",
    "derivation_algebra",
    "inner_derivations",
    "l_ideal",
    "verify_main_theorem",
    "constructive_decompose",
    "root_line_reduction",
    "split_derivation",
    "dimension_formula",
    "h1_dimension",
    "complexify",
    "extend_derivation",
    "random_combination",
]


class NotADerivationError(ValueError):
    """A matrix failed the Leibniz identity; carries the first bad pair."""

    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"Leibniz identity fails at basis pair {pair}")
        self.pair = pair


class DecompositionError(RuntimeError):
    """The constructed decomposition violated its own invariants."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


def flatten_endo(m: Matrix) -> Vector:
    """Column-major flattening: entry (i, j) lands at position j*dim + i."""
    if m.rows != m.cols:
        raise ValueError("only square endomorphisms are flattened")
    d = m.rows
    return tuple(m.at(i, j) for j in range(d) for i in range(d))


def unflatten_endo(dim: int, flat) -> Matrix:
    flat = tuple(flat)
    if len(flat) != dim * dim:
        raise ValueError("flattened length does not match dimension")
    return Matrix(dim, dim, [flat[j * dim + i] for i in range(dim) for j in range(dim)])


@dataclass(frozen=True)
class DerivationMatrix:
    """An endomorphism checked to satisfy the Leibniz identity."""

    endo: EndoMatrix

    def __post_init__(self):
        viol = first_leibniz_violation(self.endo.algebra, self.endo.matrix)
        if viol is not None:
            raise NotADerivationError(viol)

    @classmethod
    def from_matrix(cls, L: LieAlgebra, m: Matrix) -> DerivationMatrix:
        return cls(EndoMatrix(L, m))

    @property
    def matrix(self) -> Matrix:
        return self.endo.matrix


def _algebra_of(q) -> LieAlgebra:
    return q.algebra if isinstance(q, ParabolicAlgebra) else q


def derivation_algebra(L: LieAlgebra | ParabolicAlgebra) -> Subspace:
    """Der L as a subspace of endomorphism space (ambient dim = dim^2).

    Kernel of the Leibniz system
    d([x_i,x_j]) - [d x_i, x_j] - [x_i, d x_j] = 0 over all i < j,
    one scalar equation per output coordinate.
    """
    L = _algebra_of(L)
    d = L.dim
    # rowmap[j][l] = entries (m, val) with val = coefficient of x_l in [x_m, x_j]
    rowmap: list[dict[int, list[tuple[int, Q]]]] = [dict() for _ in range(d)]
    for (a, b), ks in L.table.items():
        for k, v in ks.items():
            rowmap[b].setdefault(k, []).append((a, v))
            rowmap[a].setdefault(k, []).append((b, -v))

    def rows():
        for i in range(d):
            for j in range(i + 1, d):
                cdict = L.bracket_coords(i, j)
                if cdict:
                    lset = range(d)
                else:
                    lset = sorted(rowmap[i].keys() | rowmap[j].keys())
                for l in lset:
                    row: dict[int, Q] = {}
                    for k, v in cdict.items():
                        idx = k * d + l  # coefficient of D_{l,k}
                        row[idx] = row.get(idx, Q(0)) + v
                    # [d x_i, x_j]_l = sum_m D_{m,i} c_{mj}^l enters negatively
                    for (m, v) in rowmap[j].get(l, ()):
                        idx = i * d + m
                        row[idx] = row.get(idx, Q(0)) - v
                    # [x_i, d x_j]_l = sum_m D_{m,j} c_{im}^l = -sum_m D_{m,j} c_{mi}^l
                    for (m, v) in rowmap[i].get(l, ()):
                        idx = j * d + m
                        row[idx] = row.get(idx, Q(0)) + v
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        yield row

    return nullspace_of_rows(d * d, rows())


def inner_derivations(q: ParabolicAlgebra | LieAlgebra) -> Subspace:
    """Span of the adjoint maps of all basis elements."""
    L = _algebra_of(q)
    d = L.dim
    vectors = []
    for i in range(d):
        vectors.append(flatten_endo(ad_matrix(L.basis_element(i)).matrix))
    return Subspace.from_vectors(d * d, vectors)


def l_ideal(q: ParabolicAlgebra) -> Subspace:
    """Maps sending the center + c block into the center, zero on the derived
    algebra: the span of the elementary matrices E(z, u) in the adapted basis."""
    d = q.algebra.dim
    dp = set(q.root_datum.delta_prime)
    c_idx = [q.coroot_index[k] for k in range(1, q.composition.n) if k not in dp]
    vectors = []
    for z in q.center_indices:
        for u in list(q.center_indices) + c_idx:
            vectors.append({u * d + z: Q(1)})
    return Subspace.from_sparse(d * d, vectors)


def dimension_formula(center_dim: int, simple_count: int, selected_count: int, dim_qs: int) -> int:
    """(center_dim + simple_count - selected_count) * center_dim + dim_qs."""
    if selected_count > simple_count:
        raise ValueError("selected simple roots exceed the simple root count")
    if min(center_dim, simple_count, selected_count, dim_qs) < 0:
        raise ValueError("arguments must be nonnegative")
    return (center_dim + simple_count - selected_count) * center_dim + dim_qs


def h1_dimension(q: ParabolicAlgebra, der: Subspace | None = None,
                 inner: Subspace | None = None) -> int:
    """dim Der q - dim ad q, the dimension of the outer part."""
    if der is None:
        der = derivation_algebra(q.algebra)
    if inner is None:
        inner = inner_derivations(q)
    return der.dim - inner.dim


# ---------------------------------------------------------------------------
# integer fast paths for the commutator-closure sweep
# ---------------------------------------------------------------------------

def _primitive_int_rows(v) -> list[int]:
    den = 1
    for x in v:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in v]


def _int_matrix_from_flat(d: int, flat: list[int]) -> list[list[int]]:
    return [[flat[j * d + i] for j in range(d)] for i in range(d)]


def _sparse_ad_entries(L: LieAlgebra, i: int) -> list[tuple[int, int, Q]]:
    """Nonzero entries (row, col, val) of ad x_i."""
    out = []
    # adjacency lists [x_j, x_i] = sign * ks, so column j of ad x_i is -sign * ks
    for (j, sign, ks) in L.adjacency()[i]:
        for k, v in ks.items():
            out.append((k, j, -sign * v))
    return out


def _commutator_with_sparse(D: list[list[int]], entries, d: int):
    """[D, S] for a dense matrix D and sparse S given as (row, col, val)."""
    C = [[0] * d for _ in range(d)]
    for (m, c, v) in entries:
        # (D S)[r][c] += D[r][m] * v
        for r in range(d):
            a = D[r][m]
            if a:
                C[r][c] += a * v
        # (S D)[m][c2] += v * D[c][c2]
        row = D[c]
        Cm = C[m]
        for c2 in range(d):
            b = row[c2]
            if b:
                Cm[c2] -= v * b
    return C


def _ad_of_vector_entries(L: LieAlgebra, w) -> dict[tuple[int, int], Q]:
    """Sparse entries of ad(w) for a coordinate vector w."""
    out: dict[tuple[int, int], Q] = {}
    for (a, b), ks in L.table.items():
        wa, wb = w[a], w[b]
        if wa:
            for k, v in ks.items():
                key = (k, b)
                out[key] = out.get(key, Q(0)) + wa * v
        if wb:
            for k, v in ks.items():
                key = (k, a)
                out[key] = out.get(key, Q(0)) - wb * v
    return {k: v for k, v in out.items() if v}


@dataclass
class VerificationReport:
    """Outcome of the full decomposition check for one parabolic."""

    der_dim: int
    l_dim: int
    inner_dim: int
    h1_dim: int
    direct_sum_ok: bool
    l_is_ideal_ok: bool
    inner_is_ideal_ok: bool
    formula_ok: bool
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return (
            self.direct_sum_ok
            and self.l_is_ideal_ok
            and self.inner_is_ideal_ok
            and self.formula_ok
        )

    def to_json_dict(self) -> dict:
        out = {
            "der_dim": self.der_dim,
            "l_dim": self.l_dim,
            "inner_dim": self.inner_dim,
            "h1_dim": self.h1_dim,
            "direct_sum_ok": self.direct_sum_ok,
            "l_is_ideal_ok": self.l_is_ideal_ok,
            "inner_is_ideal_ok": self.inner_is_ideal_ok,
            "formula_ok": self.formula_ok,
            "ok": self.ok,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def verify_main_theorem(q: ParabolicAlgebra, der: Subspace | None = None) -> VerificationReport:
    """Check Der q = (center-valued maps) + (inner maps) as a sum of ideals.

    (a) the two spans add up to the oracle kernel, (b) they intersect
    trivially, (c) both are closed under commutator with every oracle basis
    derivation, (d) the dimension formula matches the oracle. Failures are
    recorded with a witness instead of raising.
    """
    L = q.algebra
    d = L.dim
    if der is None:
        der = derivation_algebra(L)
    inner = inner_derivations(q)
    lid = l_ideal(q)
    h1 = der.dim - inner.dim
    report = VerificationReport(
        der_dim=der.dim,
        l_dim=lid.dim,
        inner_dim=inner.dim,
        h1_dim=h1,
        direct_sum_ok=True,
        l_is_ideal_ok=True,
        inner_is_ideal_ok=True,
        formula_ok=True,
    )

    if subspace_sum(lid, inner) != der or subspace_intersect(lid, inner).dim != 0:
        report.direct_sum_ok = False
        report.counterexample = {"kind": "direct_sum"}

    datum = q.root_datum
    expected = dimension_formula(
        len(q.center_indices),
        len(datum.delta),
        len(datum.delta_prime),
        q.semisimple_part.dim,
    )
    if expected != der.dim:
        report.formula_ok = False
        if report.counterexample is None:
            report.counterexample = {"kind": "formula", "expected": expected, "oracle": der.dim}

    der_int = [
        _int_matrix_from_flat(d, _primitive_int_rows(v)) for v in der.vectors()
    ]

    # closure of the center-valued ideal: [D, E] stays in it
    for di, D in enumerate(der_int):
        if not report.l_is_ideal_ok:
            break
        for li, lv in enumerate(lid.vectors()):
            E = _int_matrix_from_flat(d, _primitive_int_rows(lv))
            entries = [
                (r, c, Q(E[r][c])) for r in range(d) for c in range(d) if E[r][c]
            ]
            C = _commutator_with_sparse(D, entries, d)
            flat = [Q(C[i][j]) for j in range(d) for i in range(d)]
            if not contains(lid, flat):
                report.l_is_ideal_ok = False
                report.counterexample = {"kind": "l_closure", "der_index": di, "l_index": li}
                break

    # closure of the inner ideal: [D, ad x_i] must equal ad(D x_i)
    for di, D in enumerate(der_int):
        if not report.inner_is_ideal_ok:
            break
        for i in range(d):
            entries = _sparse_ad_entries(L, i)
            num = 1
            for (_, _, v) in entries:
                num = num * v.denominator // gcd(num, v.denominator)
            int_entries = [(r, c, int(v * num)) for (r, c, v) in entries]
            C = _commutator_with_sparse(D, int_entries, d)
            w = [D[r][i] for r in range(d)]  # scaled D x_i
            expected_entries = _ad_of_vector_entries(L, w)
            mismatch = False
            for r in range(d):
                for c in range(d):
                    if C[r][c] != num * expected_entries.get((r, c), 0):
                        mismatch = True
                        break
                if mismatch:
                    break
            if mismatch:
                flat = [Q(C[a][b]) for b in range(d) for a in range(d)]
                if not contains(inner, flat):
                    report.inner_is_ideal_ok = False
                    report.counterexample = {
                        "kind": "inner_closure",
                        "der_index": di,
                        "basis_index": i,
                    }
                    break
    return report


# ---------------------------------------------------------------------------
# constructive decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionResult:
    """D = l_part + ad(p), with the scalars read off along the way."""

    l_part: EndoMatrix
    p: Element
    d_gamma: dict[tuple[int, int], Q]
    c_gamma: dict[tuple[int, int], Q]
    h_star: Element

    def to_json_dict(self) -> dict:
        return {
            "l_part": [[str(e) for e in row] for row in self.l_part.matrix.tolist()],
            "p": [str(e) for e in self.p.coords],
            "d_gamma": [[i, j, str(v)] for (i, j), v in sorted(self.d_gamma.items())],
            "c_gamma": [[i, j, str(v)] for (i, j), v in sorted(self.c_gamma.items())],
            "h_star": [str(e) for e in self.h_star.coords],
        }


def _as_matrix(q: ParabolicAlgebra, D) -> Matrix:
    if isinstance(D, DerivationMatrix):
        return D.matrix
    if isinstance(D, EndoMatrix):
        return D.matrix
    if isinstance(D, Matrix):
        return D
    raise TypeError("expected a DerivationMatrix, EndoMatrix, or Matrix")


def root_line_reduction(q: ParabolicAlgebra, D) -> tuple[Vector, Matrix, dict[tuple[int, int], Q]]:
    """First reduction step: returns (x, D - ad x, the d_gamma table).

    For each allowed root (i, j) pick h = e_ii - e_jj, on which the root
    takes the value 2; the coefficient of the root generator in D(h) then
    determines the inner correction. When D satisfies Leibniz, the reduced
    map sends the Cartan into the center, annihilates the within-block
    coroots, and stabilizes every root line.
    """
    L = q.algebra
    m = _as_matrix(q, D)
    d = L.dim
    d_gamma: dict[tuple[int, int], Q] = {}
    x = [Q(0)] * d
    for root in q.roots:
        pos = q.root_index[root]
        h = q.cartan_element_for_root(root)
        Dh = m.mul_vec(h)
        dg = Dh[pos] / 2
        d_gamma[root] = dg
        x[pos] -= dg
    adx = ad_matrix(L.element(x))
    return tuple(x), m - adx.matrix, d_gamma


def constructive_decompose(q: ParabolicAlgebra, D) -> DecompositionResult:
    """Split a derivation as l_part + ad(p) following the explicit recipe.

    Step 1 removes the root-generator components of the Cartan images with
    an inner correction ad(x). Step 2 reads the eigenvalue of the reduced
    map on each simple root generator and solves the Cartan-matrix system
    for an element h* with matching root values; subtracting ad(h*) then
    kills the whole derived algebra. What remains maps into the center and
    is zero on the derived algebra, which is verified and enforced.
    """
    L = q.algebra
    m = _as_matrix(q, D)
    if not isinstance(D, DerivationMatrix):
        viol = first_leibniz_violation(L, m)
        if viol is not None:
            raise NotADerivationError(viol)
    d = L.dim
    n = q.composition.n

    x, Dp, d_gamma = root_line_reduction(q, m)

    c_gamma: dict[tuple[int, int], Q] = {}
    for root in q.roots:
        pos = q.root_index[root]
        c_gamma[root] = Dp.at(pos, pos)

    h_star = [Q(0)] * d
    if n > 1:
        # alpha_k(h_m) is the type A Cartan matrix
        size = n - 1
        cartan = Matrix(
            size,
            size,
            [
                2 if k == mm else (-1 if abs(k - mm) == 1 else 0)
                for k in range(size)
                for mm in range(size)
            ],
        )
        rhs = [c_gamma[(k, k + 1)] for k in range(1, n)]
        b = solve(cartan, rhs)
        if b is None:  # invertible system; cannot happen
            raise DecompositionError("Cartan system inconsistent", {"rhs": rhs})
        for k in range(1, n):
            h_star[q.coroot_index[k]] = b[k - 1]

    adh = ad_matrix(L.element(h_star))
    l_mat = Dp - adh.matrix
    p = tuple(a + b for a, b in zip(x, h_star))

    diagnostics = {
        "d_gamma": d_gamma,
        "c_gamma": c_gamma,
        "h_star": h_star,
        "p": p,
    }
    center_set = set(q.center_indices)
    for jdx in range(d):
        col = l_mat.col(jdx)
        if any(col[i] for i in range(d) if i not in center_set):
            raise DecompositionError(
                f"residual map does not land in the center at column {jdx}", diagnostics
            )
    dp = set(q.root_datum.delta_prime)
    derived_idx = [q.coroot_index[k] for k in range(1, n) if k in dp]
    derived_idx += [q.root_index[r] for r in q.roots]
    for jdx in derived_idx:
        if any(l_mat.col(jdx)):
            raise DecompositionError(
                f"residual map does not kill the derived algebra at column {jdx}", diagnostics
            )
    if any(p[i] for i in center_set):
        raise DecompositionError("inner element has a central component", diagnostics)

    return DecompositionResult(
        l_part=EndoMatrix(L, l_mat),
        p=L.element(p),
        d_gamma=d_gamma,
        c_gamma=c_gamma,
        h_star=L.element(h_star),
    )


def split_derivation(
    q: ParabolicAlgebra,
    D,
    lid: Subspace | None = None,
    inner: Subspace | None = None,
) -> tuple[Matrix, Matrix]:
    """Independent projection of a derivation onto the two summands.

    Solves for coordinates in the concatenated basis of the center-valued
    ideal and the inner maps; no use of the constructive recipe. Returns the
    (center-valued component, inner component) as matrices.
    """
    L = q.algebra
    m = _as_matrix(q, D)
    d = L.dim
    if lid is None:
        lid = l_ideal(q)
    if inner is None:
        inner = inner_derivations(q)
    basis = lid.vectors() + inner.vectors()
    cols = len(basis)
    flat = flatten_endo(m)
    system = Matrix(d * d, cols, [basis[k][i] for i in range(d * d) for k in range(cols)])
    lam = solve(system, flat)
    if lam is None:
        raise NotADerivationError(first_leibniz_violation(L, m) or (0, 0))
    l_flat = [Q(0)] * (d * d)
    for k in range(lid.dim):
        if lam[k]:
            for i, e in enumerate(basis[k]):
                if e:
                    l_flat[i] += lam[k] * e
    l_comp = unflatten_endo(d, l_flat)
    return l_comp, m - l_comp


# ---------------------------------------------------------------------------
# complexification
# ---------------------------------------------------------------------------

def complexify(L: LieAlgebra) -> tuple[LieAlgebra, Matrix, EndoMatrix]:
    """Dimension-doubled algebra with an operator J, J^2 = -1.

    Basis: x_1..x_d then J x_1..J x_d, with
    [x + J y, u + J v] = [x,u] - [y,v] + J([x,v] + [y,u]).
    Returns (doubled algebra, embedding matrix of L, J).
    """
    d = L.dim
    labels = list(L.labels) + [f"i*{lab}" for lab in L.labels]
    triples = []
    for (i, j, k, v) in L.triples():
        triples.append((i, j, k, v))
        triples.append((i, j + d, k + d, v))
        triples.append((j, i + d, k + d, -v))
        triples.append((i + d, j + d, k, -v))
    hat = LieAlgebra(2 * d, labels, triples)
    embed = Matrix(2 * d, d, [1 if i == j else 0 for i in range(2 * d) for j in range(d)])
    jflat = [Q(0)] * (4 * d * d)
    for k in range(d):
        jflat[(k + d) * 2 * d + k] = Q(1)   # J x_k = x_{k+d}
        jflat[k * 2 * d + (k + d)] = Q(-1)  # J x_{k+d} = -x_k
    J = EndoMatrix(hat, Matrix(2 * d, 2 * d, jflat))
    return hat, embed, J


def extend_derivation(L: LieAlgebra, D, hat: LieAlgebra | None = None) -> EndoMatrix:
    """Extend a derivation of L to the doubled algebra, acting blockwise.

    The extension agrees with D on both copies, commutes with J, and
    stabilizes the embedded original algebra.
    """
    m = D.matrix if isinstance(D, (EndoMatrix, DerivationMatrix)) else D
    viol = first_leibniz_violation(L, m)
    if viol is not None:
        raise NotADerivationError(viol)
    if hat is None:
        hat, _, _ = complexify(L)
    d = L.dim
    flat = [Q(0)] * (4 * d * d)
    for i in range(d):
        for j in range(d):
            e = m.at(i, j)
            if e:
                flat[i * 2 * d + j] = e
                flat[(i + d) * 2 * d + (j + d)] = e
    return EndoMatrix(hat, Matrix(2 * d, 2 * d, flat))


def random_combination(space: Subspace, rng, lo: int = -9, hi: int = 9) -> Vector:
    """Integer random combination of the canonical basis of a subspace."""
    out = [Q(0)] * space.ambient_dim
    for row in space.vectors():
        c = rng.randint(lo, hi)
        if c:
            for j, e in enumerate(row):
                if e:
                    out[j] += c * e
    return tuple(out)
