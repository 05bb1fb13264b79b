"""Exact rank/kernel computations over the rationals.

Two independent elimination routines live here on purpose:

* a sparse, fraction-free (integer cross-multiplication) echelon
  accumulator used by all production code paths, and
* a dense textbook Gauss-Jordan eliminator kept solely as a cross-check
  oracle for tests and the CLI verify suites.

Vectors are dicts mapping coordinate index -> Fraction (or int).  All
results are exact and deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def clear_denominators(vec: dict):
    """Scale a rational vector to coprime integers.

    Returns (ivec, alpha) with ivec = alpha * vec, alpha a positive Fraction.
    """
    vec = {j: Fraction(c) for j, c in vec.items() if c}
    if not vec:
        return {}, Fraction(1)
    denom = 1
    for c in vec.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ivec = {j: int(c * denom) for j, c in vec.items()}
    g = 0
    for v in ivec.values():
        g = gcd(g, v)
    if g > 1:
        ivec = {j: v // g for j, v in ivec.items()}
    else:
        g = 1
    return ivec, Fraction(denom, g)


class SparseEchelon:
    """Incremental fraction-free row echelon over the rationals.

    Row vectors keep integer entries; elimination uses integer
    cross-multiplication followed by a gcd reduction.  Each row carries
    an exact rational bookkeeping record `aug` with the invariant

        row == sum_i aug[i] * column_i

    over the columns fed to :meth:`add`, which yields kernels and solves.
    """

    def __init__(self):
        self.rows: list[tuple[dict[int, int], dict[int, Fraction]]] = []
        self.pivot_cols: dict[int, int] = {}  # pivot col -> row position

    @property
    def rank(self) -> int:
        return len(self.rows)

    @staticmethod
    def _normalize(vec: dict[int, int], aug: dict[int, Fraction]):
        g = 0
        for v in vec.values():
            g = gcd(g, v)
        if g > 1:
            vec = {j: v // g for j, v in vec.items()}
            aug = {j: v / g for j, v in aug.items() if v}
        if vec and vec[min(vec)] < 0:
            vec = {j: -v for j, v in vec.items()}
            aug = {j: -v for j, v in aug.items()}
        return vec, {j: v for j, v in aug.items() if v}

    def _reduce(self, vec: dict[int, int], aug: dict[int, Fraction]):
        for col, rowpos in sorted(self.pivot_cols.items()):
            coeff = vec.get(col)
            if not coeff:
                continue
            row, rowaug = self.rows[rowpos]
            lead = row[col]
            # vec <- lead*vec - coeff*row  (kills column `col`)
            new = {j: lead * v for j, v in vec.items()}
            for j, v in row.items():
                s = new.get(j, 0) - coeff * v
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            newaug = {j: lead * v for j, v in aug.items()}
            for j, v in rowaug.items():
                s = newaug.get(j, Fraction(0)) - coeff * v
                if s:
                    newaug[j] = s
                else:
                    newaug.pop(j, None)
            vec, aug = self._normalize(new, newaug)
        return vec, aug

    def reduce(self, vec: dict) -> dict[int, int]:
        """Residue of a vector modulo the row space (integer-normalized)."""
        ivec, _ = clear_denominators(vec)
        res, _ = self._reduce(ivec, {})
        return res

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict, tag=None):
        """Insert a vector; returns (pivot_col_or_None, relation).

        When the vector is dependent (pivot None) and tags were supplied,
        the relation maps tags to rational coefficients: the tagged input
        combination that equals zero.
        """
        ivec, alpha = clear_denominators(vec)
        aug = {tag: alpha} if tag is not None else {}
        ivec, aug = self._reduce(ivec, aug)
        if not ivec:
            return None, aug
        pivot = min(ivec)
        self.pivot_cols[pivot] = len(self.rows)
        self.rows.append((ivec, aug))
        return pivot, aug


def sparse_rank(columns: list[dict]) -> int:
    """Rank of the matrix whose columns are the given sparse vectors."""
    ech = SparseEchelon()
    for col in columns:
        ech.add(col)
    return ech.rank


def sparse_rank_kernel(columns: list[dict]):
    """Rank and kernel basis of the linear map sending e_j to columns[j].

    Kernel vectors are integer-normalized dicts over the domain indices,
    produced in a deterministic order.
    """
    ech = SparseEchelon()
    kernel: list[dict[int, int]] = []
    for j, col in enumerate(columns):
        pivot, aug = ech.add(col, tag=j)
        if pivot is None:
            ker, _ = clear_denominators(aug if aug else {j: 1})
            kernel.append(ker)
    return ech.rank, kernel


def sparse_solve(columns: list[dict], target: dict):
    """Solve sum_j x_j * columns[j] = target; None when unsolvable."""
    ech = SparseEchelon()
    for j, col in enumerate(columns):
        ech.add(col, tag=j)
    ivec, beta = clear_denominators(target)
    if not ivec:
        return {}
    combo: dict = {}
    for col, rowpos in sorted(ech.pivot_cols.items()):
        coeff = ivec.get(col)
        if not coeff:
            continue
        row, rowaug = ech.rows[rowpos]
        lead = row[col]
        new = {j: lead * v for j, v in ivec.items()}
        for j, v in row.items():
            s = new.get(j, 0) - coeff * v
            if s:
                new[j] = s
            else:
                new.pop(j, None)
        beta = beta * lead
        combo = {j: lead * v for j, v in combo.items()}
        for j, v in rowaug.items():
            combo[j] = combo.get(j, Fraction(0)) + coeff * v
        # joint gcd reduction keeps the invariant ivec = beta*target - combo.cols
        g = 0
        for v in new.values():
            g = gcd(g, v)
        if g > 1:
            new = {j: v // g for j, v in new.items()}
            beta = beta / g
            combo = {j: v / g for j, v in combo.items()}
        ivec = new
    if ivec:
        return None
    return {j: v / beta for j, v in combo.items() if v}


# ---------------------------------------------------------------------------
# Dense cross-check oracle (independent code path; not used in production)
# ---------------------------------------------------------------------------

def dense_rank(rows: list[list[Fraction]]) -> int:
    """Rank by plain dense Gauss-Jordan over Fraction."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def dense_from_columns(columns: list[dict], nrows: int) -> list[list[Fraction]]:
    """Materialize sparse columns as a dense row-major matrix."""
    mat = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            mat[i][j] = Fraction(v)
    return mat
