"""Floating-coefficient polynomial arithmetic.

Homogeneous forms in ``n + 2`` variables (the hypersurfaces), dense univariate
polynomials (fibers over a base point), Aberth-Ehrlich root finding,
Sylvester resultants and discriminants of one-parameter fiber families.

All coefficients are double-precision complex.  A coefficient counts as zero
when its magnitude is below ``ZERO_THRESHOLD`` times the largest coefficient
magnitude of the polynomial that contains it.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg

from .exceptions import InputError, NonConvergence, NonReducedFamily, ParseError

ZERO_THRESHOLD = 1e-12
ROOT_RESIDUAL_TOL = 1e-10

__all__ = [
    "ZERO_THRESHOLD",
    "ROOT_RESIDUAL_TOL",
    "HomogeneousPoly",
    "UnivariatePoly",
    "monomial_exponents",
    "normalize_point",
    "roots",
    "resultant",
    "discriminant",
    "discriminant_on_line",
    "discriminant_degree_bound",
    "discriminant_roots",
    "parse_poly",
    "format_poly",
    "parse_complex",
    "format_complex",
]


def monomial_exponents(num_vars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total ``degree`` in descending lexicographic order."""
    if num_vars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomial_exponents(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return out


def normalize_point(x) -> np.ndarray:
    """Scale a projective point so its largest coordinate has modulus one.

    The scaling is by a positive real, so the phase of the coordinates is kept.
    """
    x = np.asarray(x, dtype=complex).ravel()
    m = np.max(np.abs(x)) if x.size else 0.0
    if m == 0.0:
        raise InputError("the zero vector is not a projective point")
    return x / m


@dataclass(frozen=True)
class HomogeneousPoly:
    """A degree-``degree`` form in ``num_vars`` variables.

    ``terms`` maps exponent tuples to complex coefficients.  Exponent tuples
    are kept in descending lexicographic order and exact zeros are dropped.
    """

    num_vars: int
    degree: int
    terms: Mapping[tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 3:
            raise InputError("a hypersurface needs at least 3 homogeneous variables")
        if self.degree < 0:
            raise InputError("degree must be non-negative")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_vars or min(exps) < 0:
                raise InputError(f"bad exponent vector {exps}")
            if sum(exps) != self.degree:
                raise InputError(f"term {exps} is not of degree {self.degree}")
            c = complex(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
        ordered = {k: clean[k] for k in sorted(clean, reverse=True) if clean[k] != 0}
        object.__setattr__(self, "terms", ordered)
        exps = np.array(list(ordered), dtype=np.int64).reshape(-1, self.num_vars)
        coeffs = np.array(list(ordered.values()), dtype=complex)
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "_coeffs", coeffs)

    # construction ---------------------------------------------------------

    @classmethod
    def from_coefficients(cls, num_vars, degree, coeffs):
        """Build from a coefficient vector indexed like ``monomial_exponents``."""
        exps = monomial_exponents(num_vars, degree)
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        if coeffs.size != len(exps):
            raise InputError(f"expected {len(exps)} coefficients, got {coeffs.size}")
        return cls(num_vars, degree, dict(zip(exps, coeffs)))

    @classmethod
    def linear(cls, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        nv = coeffs.size
        terms = {tuple(int(i == j) for j in range(nv)): c for i, c in enumerate(coeffs)}
        return cls(nv, 1, terms)

    def coefficient_vector(self) -> np.ndarray:
        return np.array(
            [self.terms.get(e, 0j) for e in monomial_exponents(self.num_vars, self.degree)],
            dtype=complex,
        )

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if (other.num_vars, other.degree) != (self.num_vars, self.degree):
            raise InputError("can only add forms of equal degree and variable count")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousPoly(self.num_vars, self.degree, terms)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            if other.num_vars != self.num_vars:
                raise InputError("variable count mismatch")
            terms: dict = {}
            for (e1, c1), (e2, c2) in itertools.product(self.terms.items(), other.terms.items()):
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
            return HomogeneousPoly(self.num_vars, self.degree + other.degree, terms)
        if isinstance(other, (int, float, complex, np.number)):
            c = complex(other)
            return HomogeneousPoly(self.num_vars, self.degree, {e: c * v for e, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self):
        return hash((self.num_vars, self.degree, tuple(self.terms.items())))

    @property
    def coefficient_scale(self) -> float:
        return float(np.max(np.abs(self._coeffs))) if self._coeffs.size else 0.0

    def unit_scaled(self) -> "HomogeneousPoly":
        """Same hypersurface with max coefficient modulus one."""
        m = self.coefficient_scale
        if m == 0.0:
            raise InputError("the zero form does not define a hypersurface")
        return self * (1.0 / m)

    # evaluation -----------------------------------------------------------

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Value at ``x``; ``x`` may carry leading batch axes."""
        x = np.asarray(x, dtype=complex)
        if x.shape[-1] != self.num_vars:
            raise InputError(
                f"point has {x.shape[-1]} coordinates, form has {self.num_vars} variables"
            )
        if not self.terms:
            return np.zeros(x.shape[:-1], dtype=complex)[()]
        monos = np.prod(x[..., None, :] ** self._exps, axis=-1)
        return (monos @ self._coeffs)[()]

    def gradient(self) -> list["HomogeneousPoly"]:
        """The ``num_vars`` partial derivatives, each of degree ``degree - 1``."""
        if self.degree < 1:
            raise InputError("cannot differentiate a constant form")
        out = []
        for i in range(self.num_vars):
            terms = {}
            for e, c in self.terms.items():
                if e[i]:
                    e2 = list(e)
                    e2[i] -= 1
                    terms[tuple(e2)] = c * e[i]
            out.append(HomogeneousPoly(self.num_vars, self.degree - 1, terms))
        return out

    def eval_gradient(self, x) -> np.ndarray:
        return np.stack([g.eval(x) for g in self.gradient()], axis=-1)

    def __repr__(self):
        return f"HomogeneousPoly({format_poly(self)!r}, num_vars={self.num_vars})"


class UnivariatePoly:
    """Dense polynomial with coefficients in ascending degree order.

    Trailing coefficients below the zero threshold are trimmed on construction,
    so ``coeffs[-1]`` is always a genuine leading coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, threshold=ZERO_THRESHOLD):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        scale = np.max(np.abs(c))
        k = c.size - 1
        while k > 0 and abs(c[k]) <= threshold * scale:
            k -= 1
        self.coeffs = c[: k + 1].copy()
        self.coeffs.flags.writeable = False

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def normalized(self) -> "UnivariatePoly":
        m = np.max(np.abs(self.coeffs))
        return self if m == 0 else UnivariatePoly(self.coeffs / m, threshold=0.0)

    def __call__(self, z):
        return _horner(self.coeffs, z)

    def derivative(self) -> "UnivariatePoly":
        if self.degree == 0:
            return UnivariatePoly([0])
        return UnivariatePoly(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    @classmethod
    def from_roots(cls, rts, leading=1.0):
        c = np.array([leading], dtype=complex)
        for r in rts:
            c = np.concatenate([[0.0], c]) - r * np.concatenate([c, [0.0]])
        return cls(c)

    def __repr__(self):
        return f"UnivariatePoly(degree={self.degree}, coeffs={np.array2string(self.coeffs, precision=4)})"


def _horner(coeffs, z):
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def _horner_with_derivative(coeffs, z):
    p = np.zeros_like(z) + coeffs[-1]
    dp = np.zeros_like(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def roots(p: UnivariatePoly, max_iter: int = 500, tol: float = ROOT_RESIDUAL_TOL) -> np.ndarray:
    """All complex roots of ``p`` with multiplicity, sorted by (real, imag).

    Aberth-Ehrlich simultaneous iteration from a perturbed circle, followed by
    guarded Newton polishing.  Raises :class:`NonConvergence` if some root
    fails the scaled residual test ``|p(r)| / (1 + |r|)^n < tol``.
    """
    p = p.normalized()
    c = p.coeffs
    n = p.degree
    if n < 1:
        raise InputError("roots() needs a polynomial of degree >= 1")
    # exact zero roots
    nz = 0
    while nz < n and c[nz] == 0:
        nz += 1
    c = c[nz:]
    m = c.size - 1
    if m == 0:
        return np.zeros(n, dtype=complex)
    if m == 1:
        z = np.array([-c[0] / c[1]])
    else:
        z = _aberth(c, max_iter)
    z = _newton_polish(c, z)
    scaled = np.abs(_horner(c, z)) / (1.0 + np.abs(z)) ** m
    if not np.all(scaled < tol):
        raise NonConvergence(f"root residual {scaled.max():.3e} exceeds {tol:.1e}")
    z = np.concatenate([z, np.zeros(nz, dtype=complex)])
    return z[np.lexsort((z.imag, z.real))]


def _aberth(c, max_iter):
    m = c.size - 1
    # geometric-mean radius of the roots, with a fixed angular offset to break symmetry
    radius = abs(c[0] / c[-1]) ** (1.0 / m)
    k = np.arange(m)
    z = radius * np.exp(1j * (2 * np.pi * k / m + 0.4)) * (1 + 0.05 * np.cos(3.0 * k))
    active = np.ones(m, dtype=bool)
    eps = np.finfo(float).eps
    absc = np.abs(c)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        za = z[idx]
        pv, dpv = _horner_with_derivative(c, za)
        # |p(z)| already at the rounding level of Horner's rule
        floor = 4 * m * eps * _horner(absc, np.abs(za)).real
        settled = np.abs(pv) <= floor
        diff = za[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = np.inf
        diff[diff == 0] = 1e-300
        s = (1.0 / diff).sum(axis=1)
        hit = pv == 0
        ratio = pv / np.where(dpv == 0, 1e-300, dpv)
        denom = 1.0 - ratio * s
        step = np.where(hit, 0, ratio / np.where(denom == 0, 1e-300, denom))
        z[idx] = za - step
        done = (np.abs(step) <= 8 * eps * np.abs(z[idx])) | settled
        active[idx[done | hit]] = False
        if not active.any():
            break
    return z


def _newton_polish(c, z, steps=3):
    for _ in range(steps):
        pv, dpv = _horner_with_derivative(c, z)
        ok = dpv != 0
        cand = np.where(ok, z - pv / np.where(ok, dpv, 1), z)
        better = np.abs(_horner(c, cand)) < np.abs(pv)
        z = np.where(better, cand, z)
    return z


def resultant(p: UnivariatePoly, q: UnivariatePoly) -> complex:
    """Sylvester resultant, ``Res(p, q) = lc(p)^deg(q) * prod q(r_i)`` over roots of ``p``.

    The determinant is evaluated by LU with partial pivoting; ``Res(t - a, t - b) = a - b``.
    """
    m, n = p.degree, q.degree
    if m < 1 or n < 1:
        raise InputError("resultant needs two polynomials of degree >= 1")
    a = p.coeffs[::-1]
    b = q.coeffs[::-1]
    size = m + n
    syl = np.zeros((size, size), dtype=complex)
    for i in range(n):
        syl[i, i : i + m + 1] = a
    for i in range(m):
        syl[n + i, i : i + n + 1] = b
    return complex(np.linalg.det(syl))


def discriminant(p: UnivariatePoly) -> complex:
    """``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``; for ``a t^2 + b t + c`` this is ``b^2 - 4ac``."""
    n = p.degree
    if n < 2:
        raise InputError("discriminant needs degree >= 2")
    dp = UnivariatePoly(p.coeffs[1:] * np.arange(1, n + 1))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, dp) / p.leading


def _dense_discriminant(coeffs, n):
    """Discriminant of a degree-``n`` coefficient vector without trimming."""
    a = np.asarray(coeffs, dtype=complex)
    p = UnivariatePoly.__new__(UnivariatePoly)
    p.coeffs = a
    q = UnivariatePoly.__new__(UnivariatePoly)
    q.coeffs = a[1:] * np.arange(1, n + 1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, q) / a[-1]


def _has_repeated_root(coeffs, rel=1e-7):
    try:
        r = roots(UnivariatePoly(coeffs))
    except NonConvergence:
        return True
    if r.size < 2:
        return False
    gap = np.abs(r[:, None] - r[None, :]) + np.diag(np.full(r.size, np.inf))
    return bool(gap.min() < rel * max(1.0, float(np.abs(r).max())))


DISCRIMINANT_TRIM = 1e-9


def discriminant_degree_bound(coeff_matrix) -> int:
    """Isobaric bound on ``deg_s Disc_t``.

    With ``m`` the fiber degree and ``deg_s c_k <= (m - k) + beta`` for every
    nonzero row, the discriminant (isobaric of weight ``m(m-1)`` and
    homogeneous of degree ``2m - 2``) has ``s``-degree at most
    ``m(m-1) + beta(2m-2)``.
    """
    C = np.asarray(coeff_matrix)
    m = C.shape[0] - 1
    beta = None
    for k, row in enumerate(C):
        nz = np.flatnonzero(row)
        if nz.size:
            b = int(nz[-1]) - (m - k)
            beta = b if beta is None else max(beta, b)
    beta = 0 if beta is None else beta
    return max(m * (m - 1) + beta * (2 * m - 2), 0)


def discriminant_on_line(fam, radius: float = 1.0, trim: float | None = DISCRIMINANT_TRIM) -> UnivariatePoly:
    """Discriminant of ``t -> fam(s, t)`` as a polynomial in ``s``.

    Evaluation-interpolation: ``Disc_t f(s_j, .) = +-Res_t(f, f_t) / lc`` is
    sampled at the ``D + 1`` points ``radius * exp(2 pi i j / (D + 1))``
    (``D`` from :func:`discriminant_degree_bound`), interpolated by FFT and
    trailing coefficients below ``trim`` (relative, in the variable
    ``s / radius``) are dropped.  ``trim=None`` keeps all ``D + 1``
    coefficients.  ``fam`` needs ``fiber_degree``, ``coeff_matrix`` and
    ``coefficients_at(s)``.
    """
    m = fam.fiber_degree
    if m < 2:
        raise InputError("discriminant_on_line needs fiber degree >= 2")
    bound = discriminant_degree_bound(fam.coeff_matrix)
    npts = bound + 1
    s = radius * np.exp(2j * np.pi * np.arange(npts) / npts)
    coeff_rows = fam.coefficients_at(s)
    # balance the t-scale before the Sylvester determinants; undone exactly below
    C = np.asarray(fam.coeff_matrix)
    lo, hi = np.max(np.abs(C[0])), np.max(np.abs(C[-1]))
    tau = (lo / hi) ** (1.0 / m) if lo > 0 and hi > 0 else 1.0
    weights = tau ** np.arange(m + 1)
    vals = np.array([_dense_discriminant(row * weights, m) for row in coeff_rows])
    vals = vals / tau ** (m * (m - 1))
    if all(_has_repeated_root(row) for row in coeff_rows[:3]):
        raise NonReducedFamily("discriminant vanishes identically on the line")
    c = np.fft.fft(vals) / npts
    if trim is not None:
        c = UnivariatePoly(c, threshold=trim).coeffs
    return UnivariatePoly(c / radius ** np.arange(c.size), threshold=0.0)


def _sylvester_pencil(coeff_matrix) -> np.ndarray:
    """Coefficients ``S_j`` of the Sylvester matrix ``S(s)`` of ``f`` and ``f_t``.

    Shape ``(J, 2m - 1, 2m - 1)`` with ``S(s) = sum_j S_j s^j``.
    """
    C = np.asarray(coeff_matrix, dtype=complex)
    m = C.shape[0] - 1
    J = C.shape[1]
    P = C[::-1]
    Q = (C[1:] * np.arange(1, m + 1)[:, None])[::-1]
    N = 2 * m - 1
    S = np.zeros((J, N, N), dtype=complex)
    for i in range(m - 1):
        S[:, i, i : i + m + 1] = P.T
    for i in range(m):
        S[:, m - 1 + i, i : i + m] = Q.T
    while J > 1 and not np.any(S[J - 1]):
        J -= 1
    return S[:J]


def discriminant_roots(coeff_matrix, max_modulus: float = 1e8) -> np.ndarray:
    """Zeros in ``s`` of ``Disc_t f(s, t)``, with multiplicity.

    The Sylvester matrix of ``(f, f_t)`` is a matrix polynomial in ``s``; its
    finite eigenvalues (companion linearization, generalized QZ) are the zeros
    of ``Res_t(f, f_t) = +-lc(s) Disc(s)``.  Zeros of ``lc`` are then removed.
    This avoids expanding the determinant, whose values can span many orders
    of magnitude across the disk.  At most
    :func:`discriminant_degree_bound` values are returned, ascending by
    modulus; eigenvalues beyond ``max_modulus`` count as infinite.
    """
    C = np.asarray(coeff_matrix, dtype=complex)
    m = C.shape[0] - 1
    if m < 2:
        raise InputError("discriminant_roots needs fiber degree >= 2")
    # balance the t-scale; eigenvalues in s are unaffected
    lo, hi = np.max(np.abs(C[0])), np.max(np.abs(C[-1]))
    if lo > 0 and hi > 0:
        C = C * ((lo / hi) ** (1.0 / m)) ** np.arange(m + 1)[:, None]
    S = _sylvester_pencil(C)
    k = S.shape[0] - 1
    if k == 0:
        return np.zeros(0, dtype=complex)
    # scale the eigenvalue parameter so the end coefficients have equal norm
    n0, nk = np.linalg.norm(S[0]), np.linalg.norm(S[k])
    gamma = (n0 / nk) ** (1.0 / k) if n0 > 0 else 1.0
    S = S * gamma ** np.arange(k + 1)[:, None, None]
    S = S / np.linalg.norm(S[k])
    N = S.shape[1]
    n = N * k
    A = np.zeros((n, n), dtype=complex)
    B = np.eye(n, dtype=complex)
    B[:N, :N] = S[k]
    for j in range(k):
        A[:N, j * N : (j + 1) * N] = -S[k - 1 - j]
    for j in range(1, k):
        A[j * N : (j + 1) * N, (j - 1) * N : j * N] = np.eye(N)
    w = scipy.linalg.eigvals(A, B)
    w = w[np.isfinite(w)] * gamma
    w = w[np.abs(w) < max_modulus]
    w = list(w[np.argsort(np.abs(w))])
    lead = UnivariatePoly(C[-1])
    if lead.degree > 0:
        for z in roots(lead):
            if w and abs(z) < max_modulus:
                w.pop(int(np.argmin(np.abs(np.array(w) - z))))
    bound = discriminant_degree_bound(coeff_matrix)
    return np.array(w[:bound], dtype=complex)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<var>x\d+)
  | (?P<imag>i)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            tokens.append((kind, val, line, col))
        for ch in val:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)
        return tok

    def number(self):
        kind, val, *_ = tok = self.take()
        if kind == "imag":
            return 1j
        if kind == "num":
            return complex(float(val[:-1]), 0) * 1j if val.endswith("i") else complex(float(val))
        self.fail("expected a number", tok)

    def constant_sum(self, closing):
        """``[+-] num ([+-] num)*`` up to ``closing``; used inside parentheses and for points."""
        total = 0j
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        total += sign * self.number()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
                total += sign * self.number()
            elif closing is None and tok[0] == "end" or tok[0] == "op" and tok[1] == closing:
                return total
            else:
                self.fail("malformed constant")

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            c = self.constant_sum(")")
            self.expect_op(")")
            return c, None
        if tok[0] in ("num", "imag"):
            return self.number(), None
        if tok[0] == "var":
            self.take()
            idx = int(tok[1][1:])
            power = 1
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                self.take()
                ptok = self.take()
                if ptok[0] != "num" or not ptok[1].isdigit():
                    self.fail("exponent must be a non-negative integer", ptok)
                power = int(ptok[1])
            return None, (idx, power, tok)
        self.fail("expected a coefficient or a variable")

    def term(self):
        coeff = 1 + 0j
        powers: dict[int, int] = {}
        start = self.peek()
        while True:
            c, v = self.factor()
            if c is not None:
                coeff *= c
            else:
                idx, power, _ = v
                powers[idx] = powers.get(idx, 0) + power
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                continue
            if tok[0] in ("num", "imag", "var") or tok[0] == "op" and tok[1] == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            return coeff, powers, start

    def poly(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            c, powers, start = self.term()
            terms.append((sign * c, powers, start))
            tok = self.take()
            if tok[0] == "end":
                return terms
            if tok[0] == "op" and tok[1] in "+-":
                sign = -1 if tok[1] == "-" else 1
                continue
            self.fail(f"unexpected {tok[1]!r}", tok)


def parse_poly(text: str, num_vars: int | None = None) -> HomogeneousPoly:
    """Parse e.g. ``3.5*x0^2*x2 - (1+2i)*x1^3``.

    Variables are ``x0 .. x{k}``; ``num_vars`` defaults to the largest index
    plus one (at least 3).  Raises :class:`ParseError` with line/column.
    """
    raw = _Parser(text).poly()
    max_idx = max((i for _, p, _ in raw for i in p), default=-1)
    nv = num_vars if num_vars is not None else max(max_idx + 1, 3)
    if max_idx >= nv:
        raise ParseError(f"variable x{max_idx} out of range for {nv} variables")
    degree = None
    terms: dict = {}
    for c, powers, tok in raw:
        exps = tuple(powers.get(i, 0) for i in range(nv))
        deg = sum(exps)
        if degree is None:
            degree = deg
        elif deg != degree:
            raise ParseError(f"term of degree {deg} in a form of degree {degree}", tok[2], tok[3])
        terms[exps] = terms.get(exps, 0) + c
    return HomogeneousPoly(nv, degree, terms)


def parse_complex(text: str) -> complex:
    """Parse a constant such as ``-0.5``, ``2i``, ``1-3.5i`` or ``(1+2i)``."""
    p = _Parser(text.strip())
    tok = p.peek()
    if tok[0] == "op" and tok[1] == "(":
        p.take()
        val = p.constant_sum(")")
        p.expect_op(")")
        if p.peek()[0] != "end":
            p.fail("trailing input")
        return val
    return p.constant_sum(None)


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def format_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return _fmt_real(c.real)
    if c.real == 0:
        return f"{_fmt_real(c.imag)}i"
    sign = "-" if math.copysign(1.0, c.imag) < 0 else "+"
    return f"{_fmt_real(c.real)}{sign}{_fmt_real(abs(c.imag))}i"


def format_poly(F: HomogeneousPoly) -> str:
    """Canonical text: descending lexicographic terms, no zero terms; round-trips through ``parse_poly``."""
    if not F.terms:
        return "0"
    parts = []
    for exps, c in F.terms.items():
        mono = "*".join(
            f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
        )
        neg = False
        if c.imag == 0:
            neg = c.real < 0
            mag = abs(c.real)
            coef = "" if mag == 1 and mono else _fmt_real(mag)
        else:
            coef = f"({format_complex(c)})"
        body = "*".join(x for x in (coef, mono) if x)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
