"""Command line interface: ``evimg analyze|verify|compare FILE``.

Input is a JSON document::

    {"category": "finset" | "fdvect" | "finmet" | "finposet",
     "object": {"size": 4} | {"dim": 2}
               | {"size": 3, "distances": [["0", "1", "2"], ...]}
               | {"size": 3, "order": [[1, 1, 0], ...]},
     "map": {"table": [1, 2, 1, 2]} | {"matrix": [["1", "1/2"], ...]},
     "second": {"object": ..., "map": ...},      # optional: g on Y
     "u": {...}, "v": {...}, "n": 2}             # optional: u: X -> Y, v: Y -> X

Rationals are integers or "p/q" strings.  Reports are JSON with sorted keys
(``--format machine``) or plain text (``--format pretty``).  The exit status
is 0 when every verdict passed or was skipped, 1 when some verdict failed and
2 when the input could not be read.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from . import CATEGORIES
from .core import (
    FAIL,
    SKIPPED,
    Endo,
    Verdict,
    algorithms_agree,
    check_coalgebra_agrees,
    check_commuting_product,
    check_quotient_agrees,
    check_splitting,
    check_timescale,
    check_vu_uv,
    eventual_equivalence_witness,
    eventual_image_chain,
    eventual_image_idempotent_power,
    limit_colimit_oracle,
    power,
    shift_equivalence_verify,
    subobject_oracle,
    universal_property_oracle,
)
from .core.category import ContractViolation, EventualImageData, GuardExceeded
from .fdvect import (
    FDVECT,
    char_poly,
    check_fitting,
    f_infinity_poly,
    fitting,
    idempotent_polynomial,
    invariant_factors,
    linearly_periodic,
    similar,
    williams_check,
)
from .finmet import (
    FINMET,
    FinMetric,
    quotient_metric,
    quotient_subspace_isometry,
    recurrent_points,
    validate_metric,
)
from .finposet import FINPOSET, FinPoset, eventual_image_poset, order_error
from .finset import (
    FINSET,
    back_and_forth,
    conjugate,
    cycle_type,
    factorial_power,
    periodic_points,
)
from .linalg import RatMatrix, rat, rat_str

SUITES = ("splitting", "agree", "timescale", "commuting", "vu-uv", "coalgebra", "limit-colimit", "universal")
DEFAULT_SEED = 0


class InputError(ValueError):
    """A document that does not parse or does not validate."""


@dataclass
class Document:
    category: str
    obj: Any
    f: Any
    raw: dict
    second: tuple[Any, Any] | None = None
    u: Any = None
    v: Any = None
    n: int | None = None

    @property
    def cat(self):
        return CATEGORIES[self.category]

    @property
    def endo(self) -> Endo:
        return Endo(self.cat, self.obj, self.f)


# --- parsing -------------------------------------------------------------------


def _need(node, key: str, where: str):
    if not isinstance(node, dict):
        raise InputError(f"{where}: expected an object")
    if key not in node:
        raise InputError(f"{where}: missing field '{key}'")
    return node[key]


def _int(value, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {json.dumps(value)}")
    if value < minimum:
        raise InputError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _rational(value, where: str):
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not exact; write {json.dumps(str(Fraction(value).limit_denominator()))}")
    try:
        return rat(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational: {json.dumps(value)}") from None


def _square(value, n: int, where: str, entry):
    if not isinstance(value, list) or len(value) != n:
        raise InputError(f"{where}: expected {n} rows")
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{where}[{i}]: expected {n} entries")
        out.append([entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def parse_object(category: str, node, where: str):
    if category == "fdvect":
        return _int(_need(node, "dim", where), f"{where}.dim")
    n = _int(_need(node, "size", where), f"{where}.size")
    if category == "finset":
        return n
    if category == "finmet":
        d = _square(_need(node, "distances", where), n, f"{where}.distances", _rational)
        verdict = validate_metric(d)
        if verdict.failed:
            raise InputError(f"{where}.distances: {verdict.detail}")
        return FinMetric(d)

    def bit(x, at):
        if x not in (0, 1, True, False):
            raise InputError(f"{at}: expected 0 or 1, got {json.dumps(x)}")
        return bool(x)

    leq = _square(_need(node, "order", where), n, f"{where}.order", bit)
    err = order_error(leq)
    if err:
        raise InputError(f"{where}.order: {err}")
    return FinPoset(tuple(map(tuple, leq)))


def parse_map(category: str, node, src, tgt, where: str):
    cat = CATEGORIES[category]
    if category == "fdvect":
        rows = _need(node, "matrix", where)
        if not isinstance(rows, list) or len(rows) != tgt:
            raise InputError(f"{where}.matrix: expected {tgt} rows")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != src:
                raise InputError(f"{where}.matrix[{i}]: expected {src} entries")
            out.append([_rational(x, f"{where}.matrix[{i}][{j}]") for j, x in enumerate(row)])
        return RatMatrix(out, ncols=src)
    table = _need(node, "table", where)
    if not isinstance(table, list):
        raise InputError(f"{where}.table: expected a list")
    for i, x in enumerate(table):
        _int(x, f"{where}.table[{i}]")
    err = cat.map_error(src, tgt, tuple(table))
    if err:
        raise InputError(f"{where}.table: {err}")
    return cat.make(src, tgt, table)


def parse_document(text: str, path: str = "<input>") -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    category = _need(raw, "category", path)
    if category not in CATEGORIES:
        raise InputError(f"{path}: category: expected one of {sorted(CATEGORIES)}, got {json.dumps(category)}")
    try:
        obj = parse_object(category, _need(raw, "object", path), "object")
        f = parse_map(category, _need(raw, "map", path), obj, obj, "map")
        doc = Document(category, obj, f, raw)
        if "second" in raw:
            sec = raw["second"]
            y = parse_object(category, _need(sec, "object", "second"), "second.object")
            g = parse_map(category, _need(sec, "map", "second"), y, y, "second.map")
            doc.second = (y, g)
        y = doc.second[0] if doc.second else obj
        if "u" in raw:
            doc.u = parse_map(category, raw["u"], obj, y, "u")
        if "v" in raw:
            doc.v = parse_map(category, raw["v"], y, obj, "v")
        if "n" in raw:
            doc.n = _int(raw["n"], "n", 1)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
    return doc


# --- report pieces ----------------------------------------------------------------


def describe_data(cat, data: EventualImageData) -> dict:
    return {
        "carrier": cat.describe_object(data.carrier),
        "iota": cat.describe(data.iota),
        "pi": cat.describe(data.pi),
        "idempotent": cat.describe(data.idempotent),
        "auto": cat.describe(data.auto),
        "auto_inv": cat.describe(data.auto_inv),
        "stabilization_index": data.stabilization_index,
    }


def _guarded(fn, *args) -> Verdict:
    try:
        return fn(*args)
    except GuardExceeded as exc:
        return Verdict(SKIPPED, str(exc))
    except ContractViolation as exc:
        return Verdict.fail(f"contract violation: {exc}")


def _sorted_list(xs) -> list[int]:
    return sorted(int(x) for x in xs)


def instance_extras(doc: Document, data: EventualImageData) -> tuple[dict, dict]:
    """Instance-specific data and the verdicts comparing it to the eventual image."""
    cat, f = doc.cat, doc.f
    extras: dict = {}
    verdicts: dict = {}
    if cat in (FINSET, FINPOSET, FINMET):
        carrier = _sorted_list(data.iota.table)
        periodic = periodic_points(f)
        extras["periodic_points"] = periodic
        verdicts["periodic points == carrier"] = (
            Verdict.ok(f"{periodic}") if periodic == carrier
            else Verdict.fail(f"periodic points {periodic} != carrier {carrier}")
        )
    if cat is FINSET:
        bf = [back_and_forth(f, x) for x in range(f.n)]
        extras["back_and_forth"] = bf
        verdicts["back and forth == idempotent"] = (
            Verdict.ok() if tuple(bf) == data.idempotent.table
            else Verdict.fail(f"back and forth {bf} != idempotent {list(data.idempotent.table)}")
        )
        try:
            fp = factorial_power(f)
            extras["factorial_power"] = list(fp.table)
            verdicts["f^(|X|!) == idempotent"] = (
                Verdict.ok() if fp == data.idempotent
                else Verdict.fail(f"f^(|X|!) = {list(fp.table)} != idempotent {list(data.idempotent.table)}")
            )
        except GuardExceeded as exc:
            verdicts["f^(|X|!) == idempotent"] = Verdict(SKIPPED, str(exc))
        extras["cycle_type"] = list(cycle_type(data.auto).lengths)
    elif cat is FINMET:
        quot, labels = quotient_metric(f)
        extras["quotient_metric"] = {
            "labels": list(labels),
            "distances": [[rat_str(x) for x in row] for row in quot.d],
        }
        rec = recurrent_points(f)
        extras["recurrent_points"] = rec
        verdicts["recurrent points == carrier"] = (
            Verdict.ok() if rec == _sorted_list(data.iota.table)
            else Verdict.fail(f"recurrent points {rec} != carrier {_sorted_list(data.iota.table)}")
        )
        verdicts["quotient metric == subspace metric"] = quotient_subspace_isometry(f)
    elif cat is FINPOSET:
        try:
            eventual_image_poset(f)
            verdicts["induced automorphism is an order isomorphism"] = Verdict.ok()
        except ContractViolation as exc:
            verdicts["induced automorphism is an order isomorphism"] = Verdict.fail(str(exc))
    elif cat is FDVECT:
        ei, ek = fitting(f)
        r, n = idempotent_polynomial(f)
        extras["fitting"] = {
            "ei": [[rat_str(x) for x in v] for v in ei.vectors],
            "ek": [[rat_str(x) for x in v] for v in ek.vectors],
        }
        extras["char_poly"] = str(char_poly(f))
        extras["idempotent_polynomial"] = {"r": str(r), "power": n}
        extras["invariant_factors_auto"] = [str(p) for p in invariant_factors(data.auto)]
        verdicts["fitting decomposition"] = check_fitting(f)
        poly = f_infinity_poly(f)
        verdicts["polynomial formula == idempotent"] = (
            Verdict.ok() if poly == data.idempotent
            else Verdict.fail(f"formula {FDVECT.describe(poly)} != idempotent {FDVECT.describe(data.idempotent)}")
        )
        bad = [
            i for i, x in enumerate(RatMatrix.identity(f.nrows).rows)
            if linearly_periodic(f, x) != ei.contains(x)
        ]
        verdicts["linearly periodic <=> in ei"] = (
            Verdict.ok() if not bad else Verdict.fail(f"basis vectors {bad} disagree")
        )
    return extras, verdicts


def corrupt(cat, m):
    """A different morphism with the same source and target, or None."""
    if cat is FDVECT:
        if m.nrows == 0:
            return None
        rows = [list(r) for r in m.rows]
        rows[0][0] += 1
        return RatMatrix(rows, ncols=m.ncols)
    table = list(m.table)
    npts = cat.points(m.tgt)
    for i in range(len(table)):
        for y in range(npts):
            if y != table[i]:
                cand = table[:i] + [y] + table[i + 1 :]
                return cat._mk(m.src, m.tgt, cand)
    return None


# --- commands --------------------------------------------------------------------


def analyze(doc: Document, corrupt_idempotent: bool = False) -> dict:
    cat, e = doc.cat, doc.endo
    chain = eventual_image_chain(e)
    powered = eventual_image_idempotent_power(e)
    verdicts: dict = {}
    if corrupt_idempotent:
        bad = corrupt(cat, chain.idempotent)
        if bad is None:
            verdicts["debug: corrupted idempotent"] = Verdict(SKIPPED, "no other map to inject")
        else:
            chain = replace(chain, idempotent=bad)
    verdicts["splitting (chain)"] = check_splitting(e, chain)
    verdicts["splitting (idempotent power)"] = check_splitting(e, powered)
    verdicts["algorithms agree"] = algorithms_agree(e)
    verdicts["terminal coalgebra == eventual image"] = check_coalgebra_agrees(e)
    verdicts["quotient == eventual image"] = check_quotient_agrees(e)
    extras, more = instance_extras(doc, chain)
    verdicts.update(more)
    return {
        "eventual_image": describe_data(cat, chain),
        "idempotent_exponent": powered.exponent,
        "extras": extras,
        "verdicts": verdicts,
    }


def verify(doc: Document, suites, k: int, seed: int, guard: int, corrupt_idempotent: bool = False) -> dict:
    cat, e = doc.cat, doc.endo
    rng = random.Random(seed)
    chain = eventual_image_chain(e)
    verdicts: dict = {}
    if "splitting" in suites:
        data = chain
        if corrupt_idempotent:
            bad = corrupt(cat, chain.idempotent)
            if bad is not None:
                data = replace(chain, idempotent=bad)
        verdicts["splitting"] = check_splitting(e, data)
    if "agree" in suites:
        verdicts["agree"] = algorithms_agree(e)
    if "timescale" in suites:
        for n in range(1, 7):
            verdicts[f"timescale n={n}"] = check_timescale(e, n)
    if "commuting" in suites:
        if doc.second is not None and doc.second[0] == doc.obj:
            verdicts["commuting (given g)"] = check_commuting_product(e, Endo(cat, doc.obj, doc.second[1]))
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        fa, fb = power(cat, doc.f, a), power(cat, doc.f, b)
        verdicts[f"commuting f^{a}, f^{b}"] = check_commuting_product(
            Endo(cat, doc.obj, fa), Endo(cat, doc.obj, fb)
        )
    if "vu-uv" in suites:
        if doc.u is not None and doc.v is not None:
            verdicts["vu-uv (given u, v)"] = check_vu_uv(cat, doc.u, doc.v)
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        verdicts[f"vu-uv u=f^{a}, v=f^{b}"] = check_vu_uv(cat, power(cat, doc.f, a), power(cat, doc.f, b))
    if "coalgebra" in suites:
        verdicts["coalgebra oracle"] = _guarded(subobject_oracle, e, guard)
        verdicts["terminal coalgebra == eventual image"] = check_coalgebra_agrees(e)
        verdicts["quotient == eventual image"] = check_quotient_agrees(e)
    if "limit-colimit" in suites:
        verdicts["limit-colimit oracle"] = limit_colimit_oracle(e)
    if "universal" in suites:
        verdicts[f"universal property k={k}"] = universal_property_oracle(e, k)
    return {"eventual_image": describe_data(cat, chain), "verdicts": verdicts}


def compare(doc: Document) -> dict:
    cat = doc.cat
    if doc.second is None:
        raise InputError("compare needs a 'second' endomorphism")
    ef = doc.endo
    eg = Endo(cat, doc.second[0], doc.second[1])
    a, b = eventual_image_chain(ef), eventual_image_chain(eg)
    verdicts: dict = {}
    out: dict = {}
    if doc.u is not None and doc.v is not None and doc.n is not None:
        verdicts["shift equivalence"] = shift_equivalence_verify(ef, eg, doc.u, doc.v, doc.n)
    witness = eventual_equivalence_witness(ef, eg)
    if witness is None:
        out["eventual_equivalence_witness"] = None
        verdicts["eventual equivalence"] = Verdict.fail("no witness: eventual automorphisms are not conjugate")
    else:
        u, v = witness
        out["eventual_equivalence_witness"] = {"u": cat.describe(u), "v": cat.describe(v)}
        verdicts["eventual equivalence"] = Verdict.ok("v o u == f^inf and u o v == g^inf")
    if cat is FINSET:
        verdicts["conjugacy (cycle type)"] = conjugate(a.auto, b.auto)
    elif cat is FDVECT:
        verdicts["conjugacy (invariant factors)"] = similar(a.auto, b.auto)
        verdicts["williams"] = williams_check(doc.f, doc.second[1])
    else:
        k = cat.find_conjugator(a.auto, b.auto)
        verdicts["conjugacy (isomorphism search)"] = (
            Verdict.fail("no structure-preserving conjugating bijection") if k is None
            else Verdict.ok(f"conjugate via k = {cat.describe(k)}")
        )
    out["eventual_image_f"] = describe_data(cat, a)
    out["eventual_image_g"] = describe_data(cat, b)
    out["verdicts"] = verdicts
    return out


# --- output ----------------------------------------------------------------------


def _jsonable(report: dict) -> dict:
    out = dict(report)
    out["verdicts"] = {k: v.to_json() for k, v in report["verdicts"].items()}
    return out


def render(report: dict, fmt: str, elapsed: float | None = None) -> str:
    if fmt == "machine":
        return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    lines = [f"{report['command']} {report['category']}"]
    for key in ("eventual_image", "eventual_image_f", "eventual_image_g"):
        if key in report:
            lines.append(f"{key}:")
            for name, value in sorted(report[key].items()):
                lines.append(f"  {name}: {json.dumps(value)}")
    for name, value in sorted(report.get("extras", {}).items()):
        lines.append(f"{name}: {json.dumps(value, sort_keys=True)}")
    if "eventual_equivalence_witness" in report:
        lines.append(f"eventual_equivalence_witness: {json.dumps(report['eventual_equivalence_witness'])}")
    for name, v in sorted(report["verdicts"].items()):
        lines.append(f"[{v.status}] {name}" + (f": {v.detail}" if v.detail else ""))
    lines.append("result: " + ("ok" if report["ok"] else "FAILED"))
    if elapsed is not None:
        lines.append(f"time: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("EVIMG_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"EVIMG_SEED must be an integer, got {env!r}") from None


def _suites(value: str) -> tuple[str, ...]:
    if value == "all":
        return SUITES
    chosen = tuple(s.strip() for s in value.split(",") if s.strip())
    unknown = [s for s in chosen if s not in SUITES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
    return chosen


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evimg", description="Eventual images of finite endomorphisms.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="input JSON document ('-' for stdin)")
    common.add_argument("--format", choices=("pretty", "machine"), default="pretty")
    sub.add_parser("analyze", parents=[common], help="compute the eventual image and instance data").add_argument(
        "--debug-corrupt-idempotent", action="store_true", help=argparse.SUPPRESS
    )
    v = sub.add_parser("verify", parents=[common], help="run property and oracle suites")
    v.add_argument("--suites", type=_suites, default=SUITES, help=f"comma list or 'all' ({', '.join(SUITES)})")
    v.add_argument("--k", type=int, default=2, help="automorphism size bound for the universal-property oracle")
    v.add_argument("--seed", type=int, default=None, help="seed for randomized suites (default $EVIMG_SEED or 0)")
    v.add_argument("--oracle-guard", type=int, default=1 << 12, help="max subobjects the coalgebra oracle enumerates")
    v.add_argument("--debug-corrupt-idempotent", action="store_true",
                   help="replace the computed idempotent by a wrong one (negative-path testing)")
    sub.add_parser("compare", parents=[common], help="compare two endomorphisms")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.path == "-":
            text, path = sys.stdin.read(), "<stdin>"
        else:
            with open(args.path, encoding="utf-8") as fh:
                text, path = fh.read(), args.path
        doc = parse_document(text, path)
        report: dict = {"command": args.command, "category": doc.category, "input": doc.raw}
        if args.command == "analyze":
            report.update(analyze(doc, args.debug_corrupt_idempotent))
        elif args.command == "verify":
            seed = _seed(args.seed)
            report["seed"] = seed
            report["suites"] = list(args.suites)
            report.update(verify(doc, args.suites, args.k, seed, args.oracle_guard, args.debug_corrupt_idempotent))
        else:
            report.update(compare(doc))
    except OSError as exc:
        print(f"evimg: cannot read {args.path}: {exc.strerror}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"evimg: {exc}", file=sys.stderr)
        return 2
    report["ok"] = not any(v.status == FAIL for v in report["verdicts"].values())
    elapsed = time.perf_counter() - start if args.format == "pretty" else None
    sys.stdout.write(render(report, args.format, elapsed))
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
