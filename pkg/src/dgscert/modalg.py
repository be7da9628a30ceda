"""Polynomial and linear algebra over the prime field F_p."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intalg import IntPoly, berkowitz

MAX_MODULUS = 2**61


def check_modulus(p: int) -> int:
    if p < 2:
        raise ValueError(f"modulus must be a prime >= 2, got {p}")
    if p > MAX_MODULUS:
        raise ValueError(f"unsupported modulus {p}: larger than 2^61")
    return p


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over F_p, coefficients ascending, canonically trimmed."""

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        check_modulus(self.p)
        c = [x % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one(cls, p: int) -> "ModPoly":
        return cls(p, (1,))

    @classmethod
    def x(cls, p: int) -> "ModPoly":
        return cls(p, (0, 1))

    @classmethod
    def from_int_poly(cls, f: IntPoly, p: int) -> "ModPoly":
        return cls(p, f.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _same(self, other: "ModPoly") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.p, tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "ModPoly":
        return ModPoly(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        return self + (-other)

    def __mul__(self, other: "ModPoly | int") -> "ModPoly":
        if isinstance(other, int):
            return ModPoly(self.p, tuple(c * other for c in self.coeffs))
        self._same(other)
        if self.is_zero() or other.is_zero():
            return ModPoly(self.p)
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ModPoly(p, tuple(x % p for x in out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ModPoly":
        result = ModPoly.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        dg = other.degree
        inv = pow(other.lead, -1, p)
        q = [0] * max(len(r) - dg, 0)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = r[k + dg] * inv % p
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] = (r[k + j] - c * b) % p
        return ModPoly(p, tuple(q)), ModPoly(p, tuple(r[:dg]) if dg > 0 else ())

    def __floordiv__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "ModPoly") -> "ModPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self} over F_{self.p}")
        return q

    def divides(self, other: "ModPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "ModPoly":
        if self.is_zero():
            return self
        return self * pow(self.lead, -1, self.p)

    def is_monic(self) -> bool:
        return self.lead == 1

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def apply(self, A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
        """The vector f(A) v over F_p."""
        p = self.p
        acc = [0] * len(v)
        for c in reversed(self.coeffs):
            acc = [(sum(a * x for a, x in zip(row, acc)) + c * vi) % p for row, vi in zip(A, v)]
        return acc

    def lift(self) -> IntPoly:
        """Integer polynomial with coefficients in {0, ..., p-1}."""
        return IntPoly(self.coeffs)

    def __str__(self) -> str:
        return str(self.lift())


def poly_gcd(f: ModPoly, g: ModPoly) -> ModPoly:
    """Monic gcd over F_p."""
    f._same(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def _pth_root(f: ModPoly) -> ModPoly:
    # f(x) = g(x^p); Frobenius is the identity on F_p
    p = f.p
    if any(c for i, c in enumerate(f.coeffs) if i % p):
        raise ArithmeticError("polynomial is not a p-th power")
    return ModPoly(p, f.coeffs[::p])


def _check_monic(f: ModPoly) -> None:
    if f.is_zero() or not f.is_monic():
        raise ValueError(f"expected a non-zero monic polynomial, got {f}")


def squarefree_decomposition(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Pairs (g_e, e) with f = prod g_e^e, each g_e square-free, monic, coprime.

    Multiplicities are distinct and sorted; factors equal to 1 are omitted.
    """
    _check_monic(f)
    layers: dict[int, ModPoly] = {}
    _sqf(f, 1, layers)
    return sorted(((g, e) for e, g in layers.items() if not g.is_one()), key=lambda t: t[1])


def _sqf(f: ModPoly, scale: int, layers: dict[int, ModPoly]) -> None:
    if f.degree <= 0:
        return
    p = f.p
    c = poly_gcd(f, f.derivative())
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if not fac.is_one():
            e = i * scale
            layers[e] = layers.get(e, ModPoly.one(p)) * fac
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one():
        _sqf(_pth_root(c), scale * p, layers)


def sfp(f: ModPoly) -> ModPoly:
    """Square-free part: product of the distinct irreducible factors."""
    out = ModPoly.one(f.p)
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def sqrt_poly(f: ModPoly) -> ModPoly:
    """prod f_i^ceil(e_i/2) over the irreducible factorisation of f."""
    out = ModPoly.one(f.p)
    for g, e in squarefree_decomposition(f):
        out = out * g ** ((e + 1) // 2)
    return out


def is_perfect_square(f: ModPoly) -> bool:
    return all(e % 2 == 0 for _, e in squarefree_decomposition(f))


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------


def reduce_matrix(M: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    return [[x % p for x in row] for row in M]


def rref(M: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form over F_p and the pivot columns."""
    check_modulus(p)
    a = reduce_matrix(M, p)
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        rowr = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], rowr)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_p(M: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(M, p)[1])


def nullity_p(M: Sequence[Sequence[int]], p: int) -> int:
    """Dimension of the (right) null space of M over F_p."""
    cols = len(M[0]) if M else 0
    return cols - rank_p(M, p)


def null_space(M: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : M x = 0} over F_p."""
    ncols = len(M[0]) if M else (ncols or 0)
    R, pivots = rref(M, p) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n with a basis kept in reduced row-echelon form."""

    p: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], p: int, n: int) -> "Subspace":
        if not vectors:
            return cls(p, n, ())
        R, _ = rref(vectors, p)
        return cls(p, n, tuple(tuple(r) for r in R))

    @classmethod
    def whole(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(b) if x) for b in self.basis]

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Coordinates of v in the basis, or None if v is not in the subspace."""
        p = self.p
        coords = [v[c] % p for c in self.pivots]
        rebuilt = [0] * self.n
        for c, b in zip(coords, self.basis):
            if c:
                rebuilt = [(x + c * y) % p for x, y in zip(rebuilt, b)]
        if rebuilt != [x % p for x in v]:
            return None
        return coords

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)


def left_null_space(M: Sequence[Sequence[int]], p: int) -> Subspace:
    """{v : v^T M = 0 over F_p}."""
    n = len(M)
    Mt = [list(col) for col in zip(*M)]
    return Subspace.span(null_space(Mt, p, ncols=n), p, n)


def orthogonal_complement(V: Subspace) -> Subspace:
    """V^perp with respect to the standard bilinear form u^T v."""
    if not V.basis:
        return Subspace.whole(V.p, V.n)
    return Subspace.span(null_space([list(b) for b in V.basis], V.p), V.p, V.n)


def radical(V: Subspace) -> Subspace:
    """V intersected with V^perp, via the null space of the Gram matrix."""
    p = V.p
    B = V.basis
    if not B:
        return V
    gram = [[sum(x * y for x, y in zip(u, w)) % p for w in B] for u in B]
    vecs = []
    for c in null_space(gram, p):
        v = [0] * V.n
        for ci, b in zip(c, B):
            if ci:
                v = [(x + ci * y) % p for x, y in zip(v, b)]
        vecs.append(v)
    return Subspace.span(vecs, p, V.n)


def char_poly_mod(M: Sequence[Sequence[int]], p: int) -> ModPoly:
    return ModPoly(p, tuple(berkowitz(reduce_matrix(M, p), mod=p)))


def restricted_char_poly(A: Sequence[Sequence[int]], V: Subspace) -> ModPoly:
    """Characteristic polynomial of x -> A x restricted to the A-invariant V."""
    p = V.p
    k = V.dim
    if k == 0:
        return ModPoly.one(p)
    # column j of C holds the coordinates of A b_j
    C = [[0] * k for _ in range(k)]
    for j, b in enumerate(V.basis):
        Ab = [sum(a * x for a, x in zip(row, b)) % p for row in A]
        coords = V.coordinates(Ab)
        if coords is None:
            raise ValueError("subspace is not invariant under the matrix")
        for i in range(k):
            C[i][j] = coords[i]
    return char_poly_mod(C, p)


def krylov_min_poly(A: Sequence[Sequence[int]], v: Sequence[int], p: int) -> ModPoly:
    """Monic f of least degree with f(A) v = 0 over F_p."""
    n = len(v)
    # incremental elimination; each stored row carries its polynomial combination
    echelon: list[tuple[int, list[int], list[int]]] = []  # (pivot col, vector, combination)
    cur = [x % p for x in v]
    for k in range(n + 1):
        vec = cur[:]
        comb = [0] * (n + 1)
        comb[k] = 1
        for piv, evec, ecomb in echelon:
            c = vec[piv]
            if c:
                vec = [(x - c * y) % p for x, y in zip(vec, evec)]
                comb = [(x - c * y) % p for x, y in zip(comb, ecomb)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return ModPoly(p, tuple(comb[: k + 1])).monic()
        inv = pow(vec[piv], -1, p)
        echelon.append((piv, [x * inv % p for x in vec], [x * inv % p for x in comb]))
        cur = [sum(a * x for a, x in zip(row, cur)) % p for row in A]
    raise ArithmeticError("Krylov sequence did not become dependent")  # pragma: no cover
