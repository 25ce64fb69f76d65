"""The category contract shared by all four instances, and the value types
that flow through the generic algorithms."""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any, Hashable, Iterable


class ContractViolation(RuntimeError):
    """An instance hook broke its contract (e.g. a non-canonical factorization)."""


class GuardExceeded(ValueError):
    """A brute-force routine was asked to enumerate more than its guard allows."""


PASS = "pass"
FAIL = "fail"
HYPOTHESIS_FAILS = "hypothesis fails"
SKIPPED = "skipped"
NOT_APPLICABLE = "not applicable"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``status`` is one of ``pass``, ``fail``, ``hypothesis fails``, ``skipped``
    and ``not applicable``.  Only ``fail`` counts as a failure; a verdict whose
    hypothesis does not hold is reported separately so that a vacuous pass is
    never mistaken for a real one.
    """

    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def __bool__(self) -> bool:
        return self.status == PASS

    @classmethod
    def ok(cls, detail: str = "") -> "Verdict":
        return cls(PASS, detail)

    @classmethod
    def fail(cls, detail: str) -> "Verdict":
        return cls(FAIL, detail)

    def to_json(self) -> dict:
        return {"status": self.status, "detail": self.detail}


def all_of(verdicts: Iterable[Verdict], detail: str = "") -> Verdict:
    """Combine verdicts: the first failure wins, otherwise pass."""
    for v in verdicts:
        if v.status in (FAIL, HYPOTHESIS_FAILS):
            return v
    return Verdict.ok(detail)


class CategoryInstance(abc.ABC):
    """A category with an (embedding, covering) factorization system of finite type.

    Morphisms are immutable, hashable values; objects are whatever the
    instance uses to describe them.  ``factorize`` must be canonical: the
    embedding it returns depends only on the image of its argument, so two
    morphisms with the same image get literally equal embeddings.
    """

    name: str = "abstract"

    # -- category structure --------------------------------------------------

    @abc.abstractmethod
    def dom(self, m) -> Any: ...

    @abc.abstractmethod
    def cod(self, m) -> Any: ...

    @abc.abstractmethod
    def compose(self, g, f):
        """g after f."""

    @abc.abstractmethod
    def identity(self, obj): ...

    def equal(self, f, g) -> bool:
        return f == g

    @abc.abstractmethod
    def size(self, obj) -> int:
        """Cardinality, dimension or point count."""

    @abc.abstractmethod
    def validate(self, m) -> None:
        """Raise ValueError if ``m`` is not a morphism of this category."""

    # -- factorization system ------------------------------------------------

    @abc.abstractmethod
    def factorize(self, m) -> tuple[Any, Any]:
        """Return ``(cover, emb)`` with ``emb o cover == m``."""

    @abc.abstractmethod
    def is_embedding(self, m) -> bool: ...

    @abc.abstractmethod
    def is_covering(self, m) -> bool: ...

    @abc.abstractmethod
    def image_key(self, m) -> Hashable:
        """Canonical form of the image of ``m`` as a subobject of its codomain."""

    @abc.abstractmethod
    def image_leq(self, m1, m2) -> bool:
        """Whether the image of ``m1`` is contained in the image of ``m2``."""

    # -- automorphisms -------------------------------------------------------

    @abc.abstractmethod
    def invert_automorphism(self, a):
        """Inverse of an invertible endomorphism."""

    @abc.abstractmethod
    def inverse(self, iso):
        """Inverse of an isomorphism between possibly different objects."""

    @abc.abstractmethod
    def find_conjugator(self, a, b):
        """An isomorphism ``k`` with ``k o a == b o k``, or None if a and b are
        not conjugate automorphisms."""

    def is_invertible(self, m) -> bool:
        return self.is_embedding(m) and self.is_covering(m)

    # -- instance specifics used by the algorithms and oracles ---------------

    def idempotent_in_powers(self, f) -> tuple[Any, int | None]:
        """An idempotent in the closed semigroup generated by ``f`` and the
        exponent ``N`` with ``f^N`` equal to it, when there is one."""
        from .algorithms import idempotent_power_search

        n, idem = idempotent_power_search(self, f)
        return idem, n

    @abc.abstractmethod
    def eventual_quotient(self, f) -> "Quotient":
        """The covering ``X ->> X/~`` realizing the colimit side of ``f``."""

    def subobject_candidates(self, f, carrier_emb, guard: int):
        """Candidate subobjects for the coalgebra oracle.

        Returns ``(candidates, exhaustive)``; raises GuardExceeded when the
        enumeration would exceed ``guard``.
        """
        raise NotImplementedError

    # -- serialization ---------------------------------------------------------

    @abc.abstractmethod
    def describe(self, m) -> Any:
        """A JSON-compatible description of a morphism."""

    @abc.abstractmethod
    def describe_object(self, obj) -> Any: ...


@dataclass(frozen=True)
class Endo:
    """An endomorphism ``f`` of ``obj`` in the instance ``cat``."""

    cat: CategoryInstance
    obj: Any
    f: Any

    def __post_init__(self):
        self.cat.validate(self.f)
        if self.cat.dom(self.f) != self.obj or self.cat.cod(self.f) != self.obj:
            raise ValueError("map is not an endomorphism of the given object")

    @classmethod
    def of(cls, cat: CategoryInstance, f) -> "Endo":
        return cls(cat, cat.dom(f), f)

    @property
    def tag(self) -> str:
        return self.cat.name


@dataclass(frozen=True)
class Subobject:
    carrier: Any
    j: Any


@dataclass(frozen=True)
class Quotient:
    carrier: Any
    q: Any


@dataclass(frozen=True)
class EventualImageData:
    """Splitting data of the eventual idempotent.

    ``iota: E >-> X`` and ``pi: X ->> E`` with ``pi o iota = 1``,
    ``idempotent = iota o pi``, and ``auto`` the automorphism of ``E``
    induced by ``f``.  ``exponent`` is set by the idempotent-power
    algorithm to the least ``N`` with ``f^N`` idempotent (None if the
    idempotent is not a power of ``f``).
    """

    carrier: Any
    iota: Any
    pi: Any
    idempotent: Any
    auto: Any
    auto_inv: Any
    stabilization_index: int
    exponent: int | None = None
