"""Elementary certificates and unimodular rows."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import matrices as mx
from .errors import MalformedCertificate, NotUnimodular


@dataclass(frozen=True)
class ElemCert:
    """An ordered product e_{i1 j1}(lam1) e_{i2 j2}(lam2) ... over ``ambient``.

    Indices are 0-based here and 1-based in the text format. Applied to a
    row from the right, the ops run first to last.
    """

    ambient: object
    n: int
    ops: tuple = field(default=())

    def __post_init__(self):
        ops = tuple((int(i), int(j), lam) for i, j, lam in self.ops)
        for i, j, lam in ops:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise MalformedCertificate(f"bad op indices ({i + 1}, {j + 1}) for n={self.n}")
            if not self.ambient.contains(lam):
                raise MalformedCertificate(f"{lam!r} is not an element of {self.ambient}")
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def then(self, other: ElemCert | Sequence) -> ElemCert:
        more = other.ops if isinstance(other, ElemCert) else tuple(other)
        if isinstance(other, ElemCert) and (other.ambient != self.ambient or other.n != self.n):
            raise ValueError("cannot compose certificates over different ambients or sizes")
        return ElemCert(self.ambient, self.n, self.ops + tuple(more))

    def inverse(self) -> ElemCert:
        return ElemCert(self.ambient, self.n, tuple((i, j, -lam) for i, j, lam in reversed(self.ops)))

    def resized(self, n: int) -> ElemCert:
        return ElemCert(self.ambient, n, self.ops)

    def mapped(self, fn: Callable, ambient) -> ElemCert:
        """Push every coefficient through a ring map into ``ambient``."""
        return ElemCert(ambient, self.n, tuple((i, j, fn(lam)) for i, j, lam in self.ops))

    def matrix(self) -> list[list]:
        m = mx.identity(self.ambient, self.n)
        for i, j, lam in self.ops:
            mx.op_right(m, i, j, lam)
        return m

    def apply_row(self, row) -> list:
        v = list(row)
        if len(v) != self.n:
            raise ValueError(f"row of length {len(v)} for a size-{self.n} certificate")
        for i, j, lam in self.ops:
            mx.op_on_row(v, i, j, lam)
        return v

    def apply_right(self, m) -> list[list]:
        """m . product."""
        out = mx.copy_matrix(m)
        for i, j, lam in self.ops:
            mx.op_right(out, i, j, lam)
        return out

    def apply_left(self, m) -> list[list]:
        """product . m."""
        out = mx.copy_matrix(m)
        for i, j, lam in reversed(self.ops):
            mx.op_left(out, i, j, lam)
        return out


def empty_cert(ambient, n: int) -> ElemCert:
    return ElemCert(ambient, n, ())


@dataclass(frozen=True)
class UmRow:
    """A row together with a dual row pairing to 1."""

    ambient: object
    entries: tuple
    dual: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "dual", tuple(self.dual))
        if len(self.entries) != len(self.dual):
            raise ValueError("row and dual differ in length")
        if not all(self.ambient.contains(x) for x in self.entries + self.dual):
            raise ValueError(f"row entries must lie in {self.ambient}")
        if mx.dot(self.entries, self.dual, self.ambient) != self.ambient.one:
            raise NotUnimodular("row and dual do not pair to 1")

    def __len__(self):
        return len(self.entries)


def transport_dual(dual, cert: ElemCert) -> list:
    """Dual of ``row . cert`` given the dual of ``row``: cert^-1 . dual."""
    w = list(dual)
    for i, j, lam in cert.ops:
        # column vector: w <- e_ij(-lam) w
        if lam and w[j]:
            w[i] = w[i] - lam * w[j]
    return w
