"""Command-line front end: lengths, unions, check, corpus.

Every command renders a human table by default and schema-stable JSON or
CSV on request. Identical inputs produce byte-identical JSON. Exit codes:
0 success, 2 presentation parse error, 3 invalid seed word, 4 exactness
requirement violated, 5 corpus oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .corpus import CheckStatus, corpus_entries, run_oracle_suite
from .invariants import (
    LengthSet,
    distance_set,
    elasticity_of,
    unions_profile,
)
from .presentation import (
    Presentation,
    PresentationSyntaxError,
    parse_presentation,
    parse_word,
    serialize_presentation,
)
from .rewrite import ExplorationBudget, default_budget, explore_class
from .structure import (
    SearchCaps,
    acyclicity_reducedness_probe,
    adyan_check,
    atom_probe,
    delta_bound_check,
    delta_subgroup,
    irredundancy_probe,
    normalizing_probe,
    one_relation_analysis,
    unions_structure_verifier,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BAD_WORD = 3
EXIT_INEXACT = 4
EXIT_CORPUS_MISMATCH = 5

_PRESET_ENV = "FACTORLAB_BUDGET_PRESET"


@dataclass(frozen=True)
class BudgetSpec:
    """Preset plus optional per-field overrides; resolved per seed length."""

    preset: str = "default"
    max_word_len: int | None = None
    max_states: int | None = None
    max_transitions: int | None = None

    def for_seed(self, seed_len: int) -> ExplorationBudget:
        base = default_budget(seed_len, self.preset)
        return ExplorationBudget(
            self.max_word_len if self.max_word_len is not None else base.max_word_len,
            self.max_states if self.max_states is not None else base.max_states,
            self.max_transitions if self.max_transitions is not None else base.max_transitions,
        )

    def as_json(self) -> dict[str, Any]:
        return {
            "preset": self.preset,
            "max_word_len": self.max_word_len,
            "max_states": self.max_states,
            "max_transitions": self.max_transitions,
        }


def _budget_spec(args: argparse.Namespace) -> BudgetSpec:
    preset = os.environ.get(_PRESET_ENV, "default")
    if preset not in ("small", "default", "large"):
        preset = "default"
    return BudgetSpec(
        preset=preset,
        max_word_len=args.max_len,
        max_states=args.max_states,
        max_transitions=args.max_transitions,
    )


def _add_common(parser: argparse.ArgumentParser, with_file: bool = True) -> None:
    parser.add_argument("--max-len", type=int, default=None, help="max word length explored")
    parser.add_argument("--max-states", type=int, default=None, help="max distinct words explored")
    parser.add_argument("--max-transitions", type=int, default=None, help="max rewrites examined")
    parser.add_argument(
        "--format", choices=("table", "json", "csv"), default="table", help="output format"
    )
    if with_file:
        parser.add_argument("file", help="presentation file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorlab",
        description="Factorization invariants of finitely presented monoids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_len = sub.add_parser("lengths", help="length sets of seed words")
    p_len.add_argument(
        "--word", action="append", required=True, dest="words",
        help="seed word, whitespace-separated generator names ('1' = identity); repeatable",
    )
    _add_common(p_len)
    p_len.set_defaults(func=_cmd_lengths)

    p_uni = sub.add_parser("unions", help="unions of length sets over a range of k")
    p_uni.add_argument("--k", required=True, help="inclusive range A..B")
    p_uni.add_argument(
        "--require-exact", action="store_true",
        help="exit 4 unless every union is exact",
    )
    _add_common(p_uni)
    p_uni.set_defaults(func=_cmd_unions)

    p_chk = sub.add_parser("check", help="structural verdicts and bounded probes")
    _add_common(p_chk)
    p_chk.set_defaults(func=_cmd_check)

    p_cor = sub.add_parser("corpus", help="run the shipped oracle suite")
    p_cor.add_argument("--scale", type=int, default=4, help="scale, clamped per entry")
    p_cor.add_argument("--entry", default=None, help="run a single entry by name")
    _add_common(p_cor, with_file=False)
    p_cor.set_defaults(func=_cmd_corpus)
    return parser


def _load(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def _emit_json(payload: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_csv(rows: list[dict[str, Any]], fieldnames: list[str]) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(buf.getvalue())


def _payload(command: str, path: str | None, p: Presentation | None, spec: BudgetSpec) -> dict[str, Any]:
    return {
        "command": command,
        "presentation": None
        if p is None
        else {"path": path, "text": serialize_presentation(p)},
        "budget": spec.as_json(),
        "results": [],
        "exact_flags": [],
    }


def _fmt_set(values: Sequence[int]) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def _cmd_lengths(args: argparse.Namespace) -> int:
    p = _load(args.file)
    spec = _budget_spec(args)
    payload = _payload("lengths", args.file, p, spec)
    lines: list[str] = []
    rows: list[dict[str, Any]] = []
    for text in args.words:
        try:
            word = parse_word(p, text)
        except PresentationSyntaxError as exc:
            print(f"error: invalid word {text!r}: {exc}", file=sys.stderr)
            return EXIT_BAD_WORD
        budget = spec.for_seed(len(word))
        fc = explore_class(word, p, budget)
        ls = LengthSet.from_class(fc)
        ds = distance_set(ls)
        rho = elasticity_of(ls)
        exact = fc.exact
        payload["results"].append(
            {
                "word": p.format_word(word),
                "lengths": list(ls.values),
                "distances": list(ds.values),
                "elasticity": str(rho),
                "elasticity_status": "exact" if exact else "lower_bound",
                "exact": exact,
                "truncation": None if exact else fc.truncation_reason.value,
            }
        )
        payload["exact_flags"].append(exact)
        flag = "exact" if exact else f"inexact({fc.truncation_reason.value})"
        lines.append(
            f"{p.format_word(word)}: L={_fmt_set(ls.values)} "
            f"Δ={_fmt_set(ds.values)} ρ={rho} {flag}"
        )
        rows.append(
            {
                "word": p.format_word(word),
                "lengths": " ".join(map(str, ls.values)),
                "distances": " ".join(map(str, ds.values)),
                "elasticity": str(rho),
                "exact": exact,
            }
        )
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv(rows, ["word", "lengths", "distances", "elasticity", "exact"])
    else:
        print("\n".join(lines))
    return EXIT_OK


def _parse_k_range(text: str) -> range:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not m:
        raise ValueError(f"expected A..B, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _cmd_unions(args: argparse.Namespace) -> int:
    p = _load(args.file)
    spec = _budget_spec(args)
    try:
        ks = _parse_k_range(args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_WORD
    fixed = (
        spec.for_seed(max(ks))
        if (spec.max_word_len or spec.max_states or spec.max_transitions)
        else None
    )
    profile = unions_profile(p, ks, fixed)
    payload = _payload("unions", args.file, p, spec)
    lines: list[str] = []
    rows: list[dict[str, Any]] = []
    for e in profile.entries:
        status = "exact" if e.exact else "lower_bound"
        payload["results"].append(
            {
                "k": e.k,
                "union": list(e.values),
                "lambda_k": e.lambda_k,
                "rho_k": e.rho_k,
                "rho_k_status": status,
                "exact": e.exact,
            }
        )
        payload["exact_flags"].append(e.exact)
        lines.append(
            f"k={e.k}: U={_fmt_set(e.values)} λ={e.lambda_k} ρ={e.rho_k} {status}"
        )
        rows.append(
            {
                "k": e.k,
                "union": " ".join(map(str, e.values)),
                "lambda_k": e.lambda_k,
                "rho_k": e.rho_k,
                "exact": e.exact,
            }
        )
    if profile.exact:
        report = unions_structure_verifier(profile, SearchCaps())
        if report.candidate:
            d, kstar, m = report.candidate
            payload["structure"] = {"candidate": [d, kstar, m], "trend": None}
            lines.append(f"structure: candidate d={d} k*={kstar} m={m}")
        else:
            trend = [[k, m] for k, m in report.failure_trend or ()]
            payload["structure"] = {"candidate": None, "trend": trend}
            lines.append(
                "structure: no (d,k*,m) within caps; min m per k: "
                + ", ".join(f"k={k}→m≥{m}" for k, m in trend)
            )
    else:
        payload["structure"] = {"candidate": None, "trend": "unknown"}
        lines.append("structure: unknown (profile inexact)")
    if args.require_exact and not profile.exact:
        print("error: profile is not exact at this budget", file=sys.stderr)
        return EXIT_INEXACT
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv(rows, ["k", "union", "lambda_k", "rho_k", "exact"])
    else:
        print("\n".join(lines))
    return EXIT_OK


def _default_samples(p: Presentation) -> list[tuple[int, ...]]:
    import itertools

    n = len(p.generators)
    max_len = 3 if n <= 4 else 2
    out: list[tuple[int, ...]] = []
    for k in range(1, max_len + 1):
        out.extend(itertools.product(range(n), repeat=k))
    return out


def _cmd_check(args: argparse.Namespace) -> int:
    p = _load(args.file)
    spec = _budget_spec(args)
    payload = _payload("check", args.file, p, spec)
    lines: list[str] = []
    rows: list[dict[str, Any]] = []

    def add(name: str, verdict: str, definitive: bool, detail: str = "") -> None:
        payload["results"].append(
            {"probe": name, "verdict": verdict, "definitive": definitive, "detail": detail}
        )
        payload["exact_flags"].append(definitive)
        suffix = f" ({detail})" if detail else ""
        lines.append(f"{name}: {verdict}{suffix}")
        rows.append({"probe": name, "verdict": verdict, "definitive": definitive, "detail": detail})

    adyan = adyan_check(p)
    add("adyan", "yes" if adyan.is_adyan else "no", True, "; ".join(adyan.reasons))
    if len(p.relations) == 1:
        ora = one_relation_analysis(p)
        add("one-relation", ora.kind.value, True, f"d={ora.difference}")
    add("delta-subgroup", f"d={delta_subgroup(p).d}", True)

    samples = _default_samples(p)
    budget = spec.for_seed(max((len(w) for w in samples), default=1))

    def describe(pv) -> tuple[str, str]:
        detail = ""
        if pv.witness is not None:
            detail = pv.witness.detail
        name = pv.verdict.value
        if pv.verdict.value == "holds" and not pv.definitive:
            name = "holds-at-bound"
        return name, detail

    v, table = normalizing_probe(p, budget)
    name, detail = describe(v)
    pairs = len(p.generators) ** 2
    add("normalizing-swaps", name, v.definitive, detail or f"{len(table.swaps)}/{pairs} pairs swappable")
    v = irredundancy_probe(p, budget)
    name, detail = describe(v)
    add("irredundancy", name, v.definitive, detail)
    for g in p.generators:
        v = atom_probe(p, g.id, budget)
        name, detail = describe(v)
        add(f"atom:{g.name}", name, v.definitive, detail)
    v = acyclicity_reducedness_probe(p, samples, budget)
    name, detail = describe(v)
    add("acyclic-and-reduced", name, v.definitive, detail)
    v = delta_bound_check(p, samples, budget)
    name, detail = describe(v)
    add("distance-bound", name, v.definitive, detail)

    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv(rows, ["probe", "verdict", "definitive", "detail"])
    else:
        print("\n".join(lines))
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    spec = _budget_spec(args)
    payload = _payload("corpus", None, None, spec)
    entries = corpus_entries()
    if args.entry is not None:
        entries = tuple(e for e in entries if e.name == args.entry)
        if not entries:
            print(f"error: no corpus entry named {args.entry!r}", file=sys.stderr)
            return EXIT_BAD_WORD
    lines: list[str] = []
    rows: list[dict[str, Any]] = []
    any_fail = False
    for entry in entries:
        scale = min(args.scale, entry.max_scale)
        report = run_oracle_suite(entry, scale)
        counts = report.counts
        any_fail = any_fail or not report.ok
        payload["results"].append(
            {
                "entry": entry.name,
                "scale": scale,
                "ok": report.ok,
                "counts": counts,
                "oracle_comparisons": report.oracle_comparisons,
                "failures": [
                    {"check": r.name, "detail": r.detail}
                    for r in report.results
                    if r.status is CheckStatus.FAIL
                ],
            }
        )
        payload["exact_flags"].append(counts["inconclusive"] == 0)
        lines.append(
            f"{entry.name} (scale {scale}): {counts['pass']} pass, "
            f"{counts['fail']} fail, {counts['inconclusive']} inconclusive, "
            f"{report.oracle_comparisons} oracle comparisons"
        )
        for r in report.results:
            if r.status is CheckStatus.FAIL:
                lines.append(f"  FAIL {r.name}: {r.detail}")
            elif r.status is CheckStatus.INCONCLUSIVE:
                lines.append(f"  INCONCLUSIVE {r.name}: {r.detail}")
        for r in report.results:
            rows.append(
                {
                    "entry": entry.name,
                    "check": r.name,
                    "status": r.status.value,
                    "detail": r.detail,
                }
            )
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv(rows, ["entry", "check", "status", "detail"])
    else:
        print("\n".join(lines))
    return EXIT_CORPUS_MISMATCH if any_fail else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PresentationSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
