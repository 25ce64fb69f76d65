"""Finite metric spaces with short (distance non-increasing) maps.

Embeddings are isometries and coverings are surjections.  Distances are
exact rationals, so every infimum and supremum over a finite space is an
attained min or max.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core.algorithms import eventual_image_chain, idempotent_power_search
from .core.category import ContractViolation, Endo, GuardExceeded, Quotient, Verdict
from .linalg import ZERO, rat, rat_str
from .tables import TableCategory, TableMap


def validate_metric(d) -> Verdict:
    """Check the metric axioms on a square matrix, reporting the first violation."""
    n = len(d)
    try:
        d = [[rat(x) for x in row] for row in d]
    except (TypeError, ValueError) as exc:
        return Verdict.fail(f"non-rational distance: {exc}")
    for i, row in enumerate(d):
        if len(row) != n:
            return Verdict.fail(f"row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        if d[i][i] != 0:
            return Verdict.fail(f"d({i},{i}) = {rat_str(d[i][i])} != 0")
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                return Verdict.fail(f"asymmetric: d({i},{j}) = {rat_str(d[i][j])} != d({j},{i}) = {rat_str(d[j][i])}")
            if d[i][j] <= 0:
                return Verdict.fail(f"not positive: d({i},{j}) = {rat_str(d[i][j])}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k]:
                    return Verdict.fail(
                        f"triangle inequality fails: d({i},{k}) = {rat_str(d[i][k])} > "
                        f"d({i},{j}) + d({j},{k}) = {rat_str(d[i][j] + d[j][k])}"
                    )
    return Verdict.ok("metric axioms hold")


@dataclass(frozen=True)
class FinMetric:
    d: tuple

    def __post_init__(self):
        verdict = validate_metric(self.d)
        if verdict.failed:
            raise ValueError(verdict.detail)
        object.__setattr__(self, "d", tuple(tuple(rat(x) for x in row) for row in self.d))

    @property
    def n(self) -> int:
        return len(self.d)

    def diameter(self):
        return max((x for row in self.d for x in row), default=ZERO)


class ShortMap(TableMap):
    pass


class FinMet(TableCategory):
    name = "finmet"
    map_type = ShortMap

    def points(self, obj) -> int:
        return obj.n

    def induced(self, obj, pts):
        return FinMetric(tuple(tuple(obj.d[i][j] for j in pts) for i in pts))

    def map_error(self, src, tgt, table):
        err = self._range_error(src, tgt, table)
        if err:
            return err
        for x in range(src.n):
            for y in range(x + 1, src.n):
                if tgt.d[table[x]][table[y]] > src.d[x][y]:
                    return (
                        f"not short: d(f({x}), f({y})) = {rat_str(tgt.d[table[x]][table[y]])} "
                        f"> d({x}, {y}) = {rat_str(src.d[x][y])}"
                    )
        return None

    def is_isometry(self, m) -> bool:
        s, t = m.src.d, m.tgt.d
        tab = m.table
        return all(
            t[tab[x]][tab[y]] == s[x][y] for x in range(len(tab)) for y in range(x + 1, len(tab))
        )

    def is_embedding(self, m) -> bool:
        return self.is_isometry(m)

    def iso_pair_ok(self, src, tgt, x, x2, y, y2) -> bool:
        return src.d[x][x2] == tgt.d[y][y2]

    def eventual_quotient(self, f) -> Quotient:
        carrier, table = quotient_metric(f)
        return Quotient(carrier, self._mk(f.src, carrier, table))

    def describe_object(self, obj):
        return {"size": obj.n, "distances": [[rat_str(x) for x in row] for row in obj.d]}


FINMET = FinMet()


def short_map(space: FinMetric, table, target: FinMetric | None = None) -> ShortMap:
    return FINMET.make(space, space if target is None else target, table)


def factorize_short(f: ShortMap) -> tuple[ShortMap, ShortMap]:
    return FINMET.factorize(f)


def _orbit_horizon(f: ShortMap) -> int:
    """Preperiod + period of the power sequence f, f^2, ..."""
    seen = {}
    p = f.table
    k = 1
    while p not in seen:
        seen[p] = k
        p = tuple(f.table[y] for y in p)
        k += 1
    return k


def quotient_metric(f: ShortMap) -> tuple[FinMetric, tuple[int, ...]]:
    """X/~ with d([x],[y]) = inf_n d(f^n x, f^n y), and the quotient table.

    The infimum runs over n up to preperiod + period, after which the pair
    sequence repeats.  Classes are labelled by their least point.
    """
    n = f.src.n
    horizon = _orbit_horizon(f)
    d = f.src.d
    inf = [[d[x][y] for y in range(n)] for x in range(n)]
    cur = list(range(n))
    for _ in range(horizon):
        cur = [f.table[x] for x in cur]
        for x in range(n):
            for y in range(n):
                v = d[cur[x]][cur[y]]
                if v < inf[x][y]:
                    inf[x][y] = v
    reps: list[int] = []
    labels = []
    for x in range(n):
        for i, r in enumerate(reps):
            if inf[x][r] == 0:
                labels.append(i)
                break
        else:
            labels.append(len(reps))
            reps.append(x)
    carrier = FinMetric(tuple(tuple(inf[a][b] for b in reps) for a in reps))
    return carrier, tuple(labels)


def recurrent_points(f: ShortMap) -> list[int]:
    """Points lying in the closure of their forward orbit; on a finite space
    the closure adds nothing, so these are the points with f^k(x) == x."""
    n = f.src.n
    out = []
    for x in range(n):
        orbit = set()
        y = x
        for _ in range(n):
            y = f.table[y]
            orbit.add(y)
        if x in orbit:
            out.append(x)
    return out


def max_epsilon_separated(space: FinMetric, eps, guard: int = 12) -> int:
    """Largest set of points pairwise at distance >= eps (branch and bound)."""
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = space.n
    if n > guard:
        raise GuardExceeded(f"{n} points exceed the guard {guard}")
    close = [{y for y in range(n) if y != x and space.d[x][y] < eps} for x in range(n)]
    best = 0

    def grow(chosen: int, candidates: list[int]):
        nonlocal best
        if chosen + len(candidates) <= best:
            return
        if not candidates:
            best = max(best, chosen)
            return
        x, rest = candidates[0], candidates[1:]
        grow(chosen + 1, [y for y in rest if y not in close[x]])
        grow(chosen, rest)

    grow(0, list(range(n)))
    return best


def sup_metric(f: ShortMap, g: ShortMap):
    """d_inf(f, g) = max_x d(f(x), g(x))."""
    if f.src != g.src or f.tgt != g.tgt:
        raise ValueError("maps have different source or target")
    d = f.tgt.d
    return max((d[a][b] for a, b in zip(f.table, g.table)), default=ZERO)


def unique_idempotent_in_closure(f: ShortMap) -> ShortMap:
    """The idempotent in the closure of {f, f^2, ...} under d_inf.

    The power sequence of a map on a finite set is eventually periodic, so
    the set of powers is finite and closed: its unique idempotent is found by
    the finite-semigroup search.
    """
    _, idem = idempotent_power_search(FINMET, f)
    FINMET.validate(idem)
    if FINMET.compose(idem, idem) != idem:
        raise ContractViolation("power search returned a non-idempotent")
    expected = eventual_image_chain(Endo.of(FINMET, f)).idempotent
    if idem != expected:
        raise ContractViolation("idempotent power differs from the eventual idempotent")
    return idem


def quotient_subspace_isometry(f: ShortMap) -> Verdict:
    """The canonical bijection from the intersection of images (subspace
    metric) to X/~ (quotient metric) preserves distances exactly."""
    data = eventual_image_chain(Endo.of(FINMET, f))
    sub = data.iota.table
    quot, labels = quotient_metric(f)
    image = [labels[y] for y in sub]
    if sorted(image) != list(range(quot.n)):
        return Verdict.fail(f"canonical map {image} is not a bijection onto {quot.n} classes")
    d = f.src.d
    for a in range(len(sub)):
        for b in range(a + 1, len(sub)):
            if d[sub[a]][sub[b]] != quot.d[image[a]][image[b]]:
                return Verdict.fail(
                    f"d({sub[a]},{sub[b]}) = {rat_str(d[sub[a]][sub[b]])} in the subspace but "
                    f"{rat_str(quot.d[image[a]][image[b]])} between their classes"
                )
    return Verdict.ok(f"subspace on {list(sub)} is isometric to the quotient")
