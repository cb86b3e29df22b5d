"""Truncated intersection-class calculator for eigenvector incidence loci.

The ambient ring is Z[h_0, h_1, ..., h_s] / (h_0^{n^2}, h_1^n, ..., h_s^n):
h_0 is the hyperplane class of the projectivized matrix space, h_i the
hyperplane class of the i-th eigenvector factor.  Classes are stored as
sparse integer combinations of exponent tuples (e_0, ..., e_s) below the
truncation bounds.

Implemented classes, for the locus W_s of matrices with s prescribed
eigenvector factors:

  class_W(n, s)        product formula for the full incidence class [W_s]
  class_Wtilde(n, s)   the distinct-eigenvector component, closed form for
                       s <= 2; the (n, s) = (3, 3) instance ships as an
                       explicitly expanded fixture
  class_WsP(n, s, P)   the component where eigenvectors collide along the
                       blocks of a set partition P: a substitution of
                       class_Wtilde(|P|) times one complete-homogeneous
                       pairing factor per non-minimal block element
  fixture_E3()         the two-dimensional-eigenspace component at
                       (n, s) = (3, 3)

plus the coefficient extraction coeff_ctilde(n, s) = C(n,2)(n-1)_{s-1}
(the shared coefficient of h_0 * h_1^{n-1} ... h_i^{n-2} ... h_s^{n-1},
the same for every i) and the degree bridge deg_mu_from_chow, which
re-derives each eigenvalue-partition factor degree from the classes and
cross-asserts it against the combinatorial formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .enumerative import deg_mu_kalman, falling_factorial
from .veronese import PartitionType


class TruncationError(ValueError):
    """Exponent tuple outside the ring truncation bounds."""


class TruncatedClass:
    """Element of Z[h_0..h_s]/(h_0^{n^2}, h_i^n), as {exponents: int}."""

    __slots__ = ("n", "s", "terms")

    def __init__(self, n: int, s: int, terms: Mapping[tuple, int] | None = None):
        if n < 2:
            raise ValueError("n must be at least 2")
        if s < 1:
            raise ValueError("s must be at least 1")
        self.n = n
        self.s = s
        clean: dict[tuple[int, ...], int] = {}
        cap0 = n * n
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != s + 1:
                raise TruncationError(f"exponent tuple {e} must have length {s + 1}")
            if e[0] < 0 or e[0] >= cap0 or any(x < 0 or x >= n for x in e[1:]):
                raise TruncationError(f"exponent tuple {e} outside truncation")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n: int, s: int) -> "TruncatedClass":
        return TruncatedClass(n, s, {})

    @staticmethod
    def one(n: int, s: int) -> "TruncatedClass":
        return TruncatedClass(n, s, {(0,) * (s + 1): 1})

    @staticmethod
    def h(n: int, s: int, i: int, exp: int = 1, coeff: int = 1) -> "TruncatedClass":
        """coeff * h_i^exp (reduced: a zero class if exp hits truncation)."""
        if i < 0 or i > s:
            raise ValueError(f"variable index {i} out of range 0..{s}")
        cap = n * n if i == 0 else n
        if exp >= cap:
            return TruncatedClass.zero(n, s)
        e = [0] * (s + 1)
        e[i] = exp
        return TruncatedClass(n, s, {tuple(e): coeff})

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "TruncatedClass") -> None:
        if not isinstance(other, TruncatedClass):
            raise TypeError("expected a TruncatedClass")
        if (self.n, self.s) != (other.n, other.s):
            raise ValueError("ring mismatch")

    def __add__(self, other: "TruncatedClass") -> "TruncatedClass":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        res = TruncatedClass.zero(self.n, self.s)
        res.terms = out
        return res

    def __neg__(self) -> "TruncatedClass":
        res = TruncatedClass.zero(self.n, self.s)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "TruncatedClass") -> "TruncatedClass":
        return self + (-other)

    def scale(self, c: int) -> "TruncatedClass":
        res = TruncatedClass.zero(self.n, self.s)
        if c:
            res.terms = {e: c * v for e, v in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        n, s = self.n, self.s
        cap0 = n * n
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e0 = ea[0] + eb[0]
                if e0 >= cap0:
                    continue
                e = [e0]
                dead = False
                for x, y in zip(ea[1:], eb[1:]):
                    v = x + y
                    if v >= n:
                        dead = True
                        break
                    e.append(v)
                if dead:
                    continue
                key = tuple(e)
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    del out[key]
        res = TruncatedClass.zero(n, s)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedClass":
        if k < 0:
            raise ValueError("negative power")
        res = TruncatedClass.one(self.n, self.s)
        for _ in range(k):
            res = res * self
        return res

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(int(x) for x in exponents), 0)

    def __eq__(self, other):
        return (isinstance(other, TruncatedClass)
                and (self.n, self.s) == (other.n, other.s)
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        return f"TruncatedClass(n={self.n}, s={self.s}, {len(self.terms)} terms)"

    def to_text(self) -> str:
        """Graded, order-sorted monomial listing (degree, then exponents)."""
        if not self.terms:
            return "0"
        def mono(e: tuple[int, ...]) -> str:
            parts = []
            for i, x in enumerate(e):
                if x == 1:
                    parts.append(f"h{i}")
                elif x > 1:
                    parts.append(f"h{i}^{x}")
            return "*".join(parts) if parts else "1"
        out = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            m = mono(e)
            body = (str(abs(c)) if m == "1"
                    else m if abs(c) == 1 else f"{abs(c)}*{m}")
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "terms": [{"exponents": list(e), "coefficient": c}
                      for e in sorted(self.terms, key=lambda e: (sum(e), e))
                      for c in [self.terms[e]]],
        }


def elementary_symmetric(n: int, s: int, indices: Sequence[int], l: int) -> TruncatedClass:
    """e_l of the variables {h_i : i in indices}, as a class."""
    idx = list(indices)
    if l < 0 or l > len(idx):
        return TruncatedClass.zero(n, s)
    out: dict[tuple[int, ...], int] = {}
    for chosen in itertools.combinations(idx, l):
        e = [0] * (s + 1)
        for i in chosen:
            e[i] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + 1
    return TruncatedClass(n, s, out)


# -- set partitions -----------------------------------------------------------


@dataclass(frozen=True)
class SetPartition:
    """Partition of {1, ..., s} into disjoint nonempty blocks, stored with
    each block sorted and blocks ordered by their minima."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks),
                             key=lambda b: b[0] if b else 0))
        object.__setattr__(self, "blocks", canon)
        elems = [x for b in canon for x in b]
        if not elems:
            raise ValueError("a set partition needs at least one block")
        s = len(elems)
        if sorted(elems) != list(range(1, s + 1)):
            raise ValueError(f"blocks must partition 1..{s}: got {canon}")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def s(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def minima(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    def is_singletons(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @staticmethod
    def all_partitions(s: int) -> list["SetPartition"]:
        """All set partitions of {1, ..., s}, canonically ordered."""
        if s < 1:
            raise ValueError("s must be at least 1")
        parts: list[list[list[int]]] = [[[1]]]
        for x in range(2, s + 1):
            nxt = []
            for p in parts:
                for i in range(len(p)):
                    nxt.append([b + [x] if j == i else list(b)
                                for j, b in enumerate(p)])
                nxt.append([list(b) for b in p] + [[x]])
            parts = nxt
        out = [SetPartition.of(p) for p in parts]
        out.sort(key=lambda sp: (sp.k, sp.blocks))
        return out


# -- the classes --------------------------------------------------------------


def _w1_factor(n: int, s: int, i: int) -> TruncatedClass:
    """sum_j C(n,j) h_0^{n-1-j} h_i^j — the one-eigenvector incidence class
    written in the variables (h_0, h_i) of the s-factor ring."""
    out: dict[tuple[int, ...], int] = {}
    for j in range(n):
        e = [0] * (s + 1)
        e[0] = n - 1 - j
        e[i] = j
        out[tuple(e)] = math.comb(n, j)
    return TruncatedClass(n, s, out)


def _pairing_factor(n: int, s: int, q: int, p: int) -> TruncatedClass:
    """sum_r h_q^{n-1-r} h_p^r — the class forcing factors q and p to share
    an eigenvector (complete homogeneous of degree n-1 in h_q, h_p)."""
    out: dict[tuple[int, ...], int] = {}
    for r in range(n):
        e = [0] * (s + 1)
        e[q] = n - 1 - r
        e[p] = r
        out[tuple(e)] = 1
    return TruncatedClass(n, s, out)


def class_W(n: int, s: int) -> TruncatedClass:
    """[W_s] = prod_{i=1}^s sum_j C(n,j) h_0^{n-1-j} h_i^j."""
    res = TruncatedClass.one(n, s)
    for i in range(1, s + 1):
        res = res * _w1_factor(n, s, i)
    return res


def class_Wtilde(n: int, s: int) -> TruncatedClass:
    """Distinct-eigenvector component class, closed form for s <= 2:
    [W~_1] = [W_1]; [W~_2] = [W_2] - [W_{2,{{1,2}}}], which factors as
    sum_j C(n,j) h_0^{n-1-j} h_1^j * sum_r (C(n,r) h_0^{n-1-r} - h_1^{n-1-r}) h_2^r.
    Use fixture_Wtilde3() for (n, s) = (3, 3)."""
    if s == 1:
        return class_W(n, 1)
    if s == 2:
        out: dict[tuple[int, ...], int] = {}
        for r in range(n):
            out[(n - 1 - r, 0, r)] = math.comb(n, r)
            key = (0, n - 1 - r, r)
            out[key] = out.get(key, 0) - 1
        second = TruncatedClass(n, 2, out)
        return _w1_factor(n, 2, 1) * second
    raise ValueError(
        "closed form available only for s <= 2; (n, s) = (3, 3) ships as "
        "fixture_Wtilde3()")


def _e3(l: int) -> TruncatedClass:
    return elementary_symmetric(3, 3, (1, 2, 3), l)


def _t0_pow(k: int) -> TruncatedClass:
    return TruncatedClass.h(3, 3, 0, k)


def fixture_Wtilde3(n: int = 3) -> TruncatedClass:
    """The (n, s) = (3, 3) distinct-eigenvector class, expanded from its
    elementary-symmetric shorthand (e_l in h_1, h_2, h_3):

      6 e_3^2 + 6 e_2 e_3 t_0 + 2(e_2^2 + 2 e_1 e_3) t_0^2
      + 3(e_1 e_2 + e_3) t_0^3 + (e_1^2 + 3 e_2) t_0^4 + 2 e_1 t_0^5 + t_0^6
    """
    if n != 3:
        raise ValueError("this class is only available for n = 3")
    e1, e2, e3 = _e3(1), _e3(2), _e3(3)
    return (e3 * e3 * 6
            + e2 * e3 * 6 * _t0_pow(1)
            + (e2 * e2 + e1 * e3 * 2) * 2 * _t0_pow(2)
            + (e1 * e2 + e3) * 3 * _t0_pow(3)
            + (e1 * e1 + e2 * 3) * _t0_pow(4)
            + e1 * 2 * _t0_pow(5)
            + _t0_pow(6))


def fixture_E3(n: int = 3) -> TruncatedClass:
    """The (n, s) = (3, 3) class of the locus where the matrix has a
    two-dimensional eigenspace: 6 e_3 t_0^3 + 3 e_2 t_0^4 + e_1 t_0^5."""
    if n != 3:
        raise ValueError("this class is only available for n = 3")
    return (_e3(3) * 6 * _t0_pow(3)
            + _e3(2) * 3 * _t0_pow(4)
            + _e3(1) * _t0_pow(5))


def class_WsP(n: int, s: int, P) -> TruncatedClass:
    """Class of the component of W_s where the eigenvectors of the factors
    in each block of P coincide: substitute h_i -> h_{q_i} (block minima)
    into the |P|-factor distinct-eigenvector class, then multiply one
    pairing factor sum_r h_{q_i}^{n-1-r} h_p^r per non-minimal block
    element p (empty product for singleton blocks)."""
    if not isinstance(P, SetPartition):
        P = SetPartition.of(P)
    if P.s != s:
        raise ValueError(f"partition covers 1..{P.s}, expected 1..{s}")
    k = P.k
    if k <= 2:
        wt = class_Wtilde(n, k)
    elif (n, k) == (3, 3):
        wt = fixture_Wtilde3(n)
    else:
        raise ValueError(
            f"|P| = {k} needs the {k}-factor distinct-eigenvector class, "
            "available only for |P| <= 2 or (n, |P|) = (3, 3)")
    minima = P.minima
    out: dict[tuple[int, ...], int] = {}
    for e, c in wt.terms.items():
        t = [0] * (s + 1)
        t[0] = e[0]
        for i, q in enumerate(minima, start=1):
            t[q] = e[i]
        out[tuple(t)] = c
    res = TruncatedClass(n, s, out)
    for block in P.blocks:
        q = block[0]
        for p in block[1:]:
            res = res * _pairing_factor(n, s, q, p)
    return res


# -- coefficient extraction and the degree bridge ------------------------------


def _wtilde_class(n: int, s: int) -> TruncatedClass | None:
    if s <= 2:
        return class_Wtilde(n, s)
    if (n, s) == (3, 3):
        return fixture_Wtilde3(n)
    return None


def coeff_ctilde(n: int, s: int) -> int:
    """The common coefficient of h_0 * h_1^{n-1} ... h_i^{n-2} ... h_s^{n-1}
    (one exponent dropped to n-2, the same value for every i) in the
    s-factor distinct-eigenvector class: C(n,2) * (n-1)_{s-1}.

    Whenever the class itself is computable, the coefficient is extracted
    from it for every i and asserted equal to the closed form.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    formula = math.comb(n, 2) * falling_factorial(n - 1, s - 1)
    wt = _wtilde_class(n, s)
    if wt is not None:
        for i in range(1, s + 1):
            e = [n - 1] * (s + 1)
            e[0] = 1
            e[i] = n - 2
            got = wt.coefficient(e)
            if got != formula:
                raise AssertionError(
                    f"coefficient at i={i} is {got}, formula gives {formula}")
    return formula


def deg_mu_from_chow(n: int, d: int, mu: PartitionType | Sequence[int]) -> int:
    """Degree of the eigenvalue-partition factor, derived from the classes:
    pair the s-factor distinct-eigenvector class with sum_i mu_i h_i (the
    coefficient of h_0 * h_1^{n-1} ... h_s^{n-1} in the product is then
    d * coeff_ctilde) and divide by the part-multiplicity factorials.
    Asserted equal to the combinatorial degree formula."""
    if not isinstance(mu, PartitionType):
        mu = PartitionType(tuple(mu))
    if mu.d != d:
        raise ValueError(f"partition {mu.parts} does not sum to d={d}")
    if mu.s > n:
        raise ValueError(f"partition {mu.parts} has more than n={n} parts")
    s = mu.s
    ct = coeff_ctilde(n, s)
    wt = _wtilde_class(n, s)
    if wt is not None:
        lin = TruncatedClass.zero(n, s)
        for i, part in enumerate(mu.parts, start=1):
            lin = lin + TruncatedClass.h(n, s, i, 1, part)
        paired = wt * lin
        target = [n - 1] * (s + 1)
        target[0] = 1
        top = paired.coefficient(target)
        if top != ct * d:
            raise AssertionError(
                f"class pairing gives {top}, expected {ct * d}")
    val = Fraction(ct * d, mu.mult_factorial())
    if val.denominator != 1:
        raise AssertionError(f"non-integral degree {val} for mu={mu.parts}")
    combinatorial = deg_mu_kalman(n, d, mu)
    if int(val) != combinatorial:
        raise AssertionError(
            f"class route gives {val}, degree formula gives {combinatorial}")
    return int(val)
