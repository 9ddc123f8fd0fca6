"""Command line entry point: ``palctl <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import sequences as seqs
from . import verify as V
from .classp import ClassPError, detect_class_p, normalize_class_p, periodic_class_p
from .complexity import (
    DEFAULT_K_MAX,
    complexity_profile,
    complexity_ratios,
    default_budget,
    maximal_palindromes,
    palindrome_complexity,
    palindrome_inventory,
)
from .formats import FormatError, format_morphism, read_morphism
from .periods import PalindromeClass, classify_palindrome, smallest_period
from .sequences import MorphicSource, SequenceSource, SourceError
from .words import Alphabet, Morphism, WordError, is_palindrome

CHECKS = ("general", "kernel", "cassaigne", "droubay-pirillo", "rote", "survey", "scrambler")


class UsageError(Exception):
    pass


# -- sources ------------------------------------------------------------------------

def resolve_source(name: str, instructions: str | None = None, cf: str | None = None,
                   w0: int = 0) -> SequenceSource:
    """Builtin name, ``file:<path>``, or a parametrized family.

    ``paperfolding`` / ``rudin-shapiro`` take ``instructions``; ``sturmian``
    and ``rote`` (Rote sequence over that Sturmian word) take ``cf``.
    """
    if name.startswith("file:"):
        mf = read_morphism(name[5:])
        seed = mf.seed
        if seed is None:
            seeds = [a for a in range(mf.morphism.alphabet.size) if mf.morphism.images[a][:1] == bytes([a])]
            if not seeds:
                raise UsageError(f"{name}: no 'seed:' line and no prolongable letter")
            seed = seeds[0]
        try:
            return MorphicSource(name[5:], mf.morphism, seed)
        except WordError as e:
            raise UsageError(f"{name}: {e}") from None
    if instructions is not None:
        stream = seqs.parse_expansion(instructions, digits=True)
        if name in ("paperfolding", "paperfolding-classical"):
            return seqs.paperfolding(stream)
        if name == "rudin-shapiro":
            return seqs.rudin_shapiro_generalized(stream)
        raise UsageError("--instructions applies to paperfolding and rudin-shapiro")
    if name in ("sturmian", "rote"):
        if cf is None:
            raise UsageError(f"source {name} needs --cf")
        beta = seqs.sturmian(seqs.parse_expansion(cf), name=f"sturmian[{cf}]")
        return beta if name == "sturmian" else seqs.rote_from_sturmian(beta, w0, name=f"rote[{cf}]")
    if cf is not None:
        raise UsageError("--cf applies to the sturmian and rote sources")
    if name == "paperfolding":
        return seqs.paperfolding()
    return seqs.builtin(name)


# -- output -------------------------------------------------------------------------

def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=str) + "\n"


def profile_plain(profile) -> str:
    lines = [f"# {profile.source}  prefix_len={profile.prefix_len}"]
    lines.append(f"{'k':>4} {'fac':>10} {'pal':>6}  stable")
    for k, f, p, _, st in profile.rows():
        lines.append(f"{k:>4} {'-' if f is None else f:>10} {'-' if p is None else p:>6}  "
                     f"{'yes' if st else 'no'}")
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------------------

def cmd_generate(args) -> int:
    src = resolve_source(args.source, args.instructions, args.cf, args.w0)
    word = src.alphabet.decode(src.prefix(args.length))
    if args.format == "json":
        emit(dump_json({"source": src.describe(), "length": args.length, "word": word}), args.out)
    else:
        emit(word + "\n", args.out)
    return 0


def cmd_complexity(args) -> int:
    src = resolve_source(args.source, args.instructions, args.cf, args.w0)
    profile = complexity_profile(src, args.max_k, args.budget, args.method)
    if args.format == "csv":
        text = profile.to_csv()
        if args.ratios:
            lines = text.splitlines()
            lines[0] += ",k_pal_over_fac,pal_squared_over_fac"
            for i, r in enumerate(complexity_ratios(profile), 1):
                lines[i] += f",{'' if r.k_pal_over_fac is None else r.k_pal_over_fac}" \
                            f",{'' if r.pal_squared_over_fac is None else r.pal_squared_over_fac}"
            text = "\n".join(lines) + "\n"
        emit(text, args.out)
    elif args.format == "json":
        data = profile.to_dict()
        if args.ratios:
            data["ratios"] = [
                {"k": r.k, "k_pal_over_fac": None if r.k_pal_over_fac is None else str(r.k_pal_over_fac),
                 "pal_squared_over_fac": None if r.pal_squared_over_fac is None
                 else str(r.pal_squared_over_fac)}
                for r in complexity_ratios(profile)]
        emit(dump_json(data), args.out)
    else:
        text = profile_plain(profile)
        if args.ratios:
            text += "\n k  k*pal/fac  pal^2/fac\n"
            for r in complexity_ratios(profile):
                text += f"{r.k:>2}  {r.k_pal_over_fac}  {r.pal_squared_over_fac}\n"
        emit(text, args.out)
    return 0


def cmd_palindromes(args) -> int:
    src = resolve_source(args.source, args.instructions, args.cf, args.w0)
    dec = src.alphabet.decode
    if args.maximal:
        words = maximal_palindromes(src, args.max_k, args.budget)
        if args.format == "json":
            emit(dump_json({"source": src.describe(), "len_max": args.max_k,
                            "maximal": [dec(w) for w in words]}), args.out)
        else:
            emit("".join(f"{len(w)} {dec(w)}\n" for w in words), args.out)
        return 0
    inv = palindrome_inventory(src, args.max_k, args.budget)
    rows = []
    for k in range(1, args.max_k + 1):
        for w, pos in sorted(inv.by_length[k].items(), key=lambda kv: kv[1]):
            rows.append((k, dec(w), pos, inv.stable[k]))
    if args.format == "json":
        emit(dump_json({"source": src.describe(), "prefix_len": inv.prefix_len,
                        "palindromes": [{"k": k, "word": w, "first": p, "stable": st}
                                        for k, w, p, st in rows]}), args.out)
    elif args.format == "csv":
        emit("k,word,first,stable\n" + "".join(
            f"{k},{w},{p},{'true' if st else 'false'}\n" for k, w, p, st in rows), args.out)
    else:
        emit("".join(f"{k:>3} {w}  @{p}\n" for k, w, p, _ in rows), args.out)
    return 0


def cmd_periods(args) -> int:
    text = args.word
    if args.alphabet:
        alphabet = Alphabet(tuple(args.alphabet.split()))
    else:
        tokens = text.split() if any(c.isspace() for c in text) else list(text)
        alphabet = Alphabet(tuple(dict.fromkeys(tokens)))
    w = alphabet.encode(text)
    result = {"word": alphabet.decode(w), "length": len(w), "period": smallest_period(w),
              "palindrome": is_palindrome(w)}
    if result["palindrome"]:
        rec = classify_palindrome(w)
        result["class"] = rec.kind.value
        if rec.kind is PalindromeClass.EVEN_PERIOD:
            result["twin"] = alphabet.decode(rec.twin)
    if args.format == "json":
        emit(dump_json(result), args.out)
    else:
        emit("".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}\n"
                     for k, v in result.items()), args.out)
    return 0


def cmd_classp(args) -> int:
    if args.periodic is not None:
        tokens = args.periodic.split() if " " in args.periodic else list(args.periodic)
        alphabet = Alphabet(tuple(dict.fromkeys(tokens)))
        found = periodic_class_p(alphabet.encode(args.periodic), alphabet)
        if found is None:
            emit("no palindrome of length >= 2|w| in the periodic sequence\n", args.out)
            return 1
        emit(f"A: {alphabet.decode(found.a)}\nB: {alphabet.decode(found.b)}\n", args.out)
        return 0
    if args.file is None:
        raise UsageError("classp needs --file or --periodic")
    mf = read_morphism(args.file)
    m = mf.morphism
    decomps = detect_class_p(m)
    described = [d.describe(m.alphabet) for d in decomps]
    out = {"morphism": str(m), "class_p": bool(decomps), "decompositions": described}
    text = ""
    if args.normalize:
        try:
            norm = normalize_class_p(m)
        except ClassPError as e:
            sys.stderr.write(f"normalization failed: {e}\n")
            return 1
        out["normalized"] = {"morphism": str(norm.morphism), "power": norm.power,
                             "seed": m.alphabet.letters[norm.seed],
                             "decomposition": norm.decomposition.describe(m.alphabet)}
        text = format_morphism(norm.morphism, norm.seed,
                               comment=f"normalized; power {norm.power} has a fixed point")
    if args.format == "json":
        emit(dump_json(out), args.out)
        return 0
    lines = [f"morphism: {m}", f"class P: {'yes' if decomps else 'no'}"]
    for d in described:
        q = " ".join(f"{a}:{w or 'ε'}" for a, w in d["q"].items())
        lines.append(f"  {d['side']}-form  p={d['p'] or 'ε'}  q: {q}")
    body = "\n".join(lines) + "\n"
    if text:
        body += "\n" + text
    emit(body, args.out)
    return 0


def run_check(check: str, src: SequenceSource | None, args) -> V.VerificationReport:
    k_max = args.max_k
    if check == "scrambler":
        return V.scrambler_absence_oracle()
    if src is None:
        raise UsageError(f"check {check} needs --source")
    if check == "general":
        if not isinstance(src, MorphicSource):
            return V.VerificationReport("general", {"source": src.name}, V.NOT_APPLICABLE,
                                        notes=["source is not a morphic fixed point"])
        return V.verify_general_recursion(src.morphism, k_max, budget=args.budget, seed=src.seed)
    if check == "kernel":
        horizon = args.horizon
        profile = palindrome_complexity(src, horizon - 1, args.budget)
        report = V.kernel_finiteness_check(list(profile.pal), args.base, args.depth, horizon,
                                           bound=args.bound, label=src.name)
        if not profile.all_stable:
            report.notes.append("some pal values were not stable at the budget")
        return report
    if check == "cassaigne":
        return V.verify_cassaigne_bound(src, k_max, args.budget)
    if check == "droubay-pirillo":
        return V.verify_droubay_pirillo(src, k_max, args.budget)
    if check == "rote":
        return V.verify_rote_bijection(src, k_max, args.budget)
    if check == "survey":
        return V.survey_table_check(src.name, args.budget)
    raise UsageError(f"unknown check {check}")


def cmd_verify(args) -> int:
    src = None
    if args.source:
        src = resolve_source(args.source, args.instructions, args.cf, args.w0)
    elif args.check != "scrambler":
        raise UsageError(f"check {args.check} needs --source")
    if args.check == "survey" and src is not None and src.name not in V.SURVEY:
        raise UsageError(f"no survey expectations for {src.name}; known: {', '.join(V.SURVEY)}")
    report = run_check(args.check, src, args)
    emit(dump_json(report.to_dict()), args.out)
    return report.exit_code


def full_report(budget: int | None = None, k_max: int = DEFAULT_K_MAX) -> dict:
    """Every registered check, in a fixed order."""
    reports = []
    for name in V.SURVEY:
        reports.append(V.survey_table_check(name, budget))
    for name in seqs.NON_PERIODIC_BUILTINS:
        reports.append(V.verify_cassaigne_bound(seqs.builtin(name), k_max, budget))
    for rules in (seqs.PERIOD_DOUBLING, seqs.THUE_MORSE_SQUARED):
        reports.append(V.verify_general_recursion(Morphism.from_rules(rules), k_max, budget=budget))
    pd = palindrome_complexity(seqs.builtin("period-doubling"), 4095, budget)
    reports.append(V.kernel_finiteness_check(list(pd.pal), 2, 6, 4096, bound=16,
                                             label="period-doubling"))
    reports.append(V.verify_droubay_pirillo(seqs.builtin("fibonacci"), k_max, budget))
    reports.append(V.verify_rote_bijection(seqs.builtin("rote-fibonacci"), 32, budget))
    reports.append(V.scrambler_absence_oracle())
    reports.append(V.verify_pansiot_maximal(6, budget))
    reports.append(V.remcor_structure_check())
    summary = {}
    for r in reports:
        summary[r.status] = summary.get(r.status, 0) + 1
    return {"summary": summary, "reports": [r.to_dict() for r in reports]}


def cmd_report(args) -> int:
    data = full_report(args.budget, args.max_k)
    doc = {"data": data}
    if args.stamp:
        doc = {"metadata": {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                            "budget": args.budget or default_budget()}, **doc}
    emit(dump_json(doc), args.out)
    return 1 if data["summary"].get(V.FAIL) else 0


# -- parser -------------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="palctl",
                                     description="Palindrome and factor complexity of infinite words.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source_opts(p, required=True):
        p.add_argument("--source", required=required,
                       help="builtin name, file:<morphism-file>, sturmian, rote, paperfolding or rudin-shapiro")
        p.add_argument("--instructions", help="folding instructions, e.g. 001010 or 0(01)")
        p.add_argument("--cf", help="Sturmian directive sequence, e.g. 1,1,... or 2,(1,3)")
        p.add_argument("--w0", type=int, default=0, choices=(0, 1), help="first letter of a Rote source")

    def common(p, formats=("csv", "json", "plain"), default="plain"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write to this file instead of stdout")

    def sizing(p):
        p.add_argument("--max-k", "--k-max", dest="max_k", type=_positive, default=DEFAULT_K_MAX)
        p.add_argument("--budget", type=_positive, default=None,
                       help="maximal prefix length (default: $PALCTL_BUDGET or 2^20)")

    p = sub.add_parser("generate", help="print a prefix")
    source_opts(p)
    p.add_argument("--length", type=int, required=True)
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("complexity", help="fac(k) and pal(k) table")
    source_opts(p)
    sizing(p)
    p.add_argument("--method", default="auto",
                   choices=("auto", "windows", "automaton", "tree", "brute"))
    p.add_argument("--ratios", action="store_true", help="add k*pal/fac and pal^2/fac")
    common(p, default="csv")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("palindromes", help="list palindromic factors")
    source_opts(p)
    sizing(p)
    p.add_argument("--maximal", action="store_true", help="only palindromes that cannot be extended")
    common(p)
    p.set_defaults(func=cmd_palindromes)

    p = sub.add_parser("periods", help="period, class and twin of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--alphabet", help="space-separated letters (default: letters of the word)")
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("classp", help="class P decompositions of a morphism")
    p.add_argument("--file")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--periodic", help="split w = AB for the periodic sequence www...")
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_classp)

    p = sub.add_parser("verify", help="run one check; exit 0 pass, 1 fail, 2 not applicable")
    p.add_argument("--check", required=True, choices=CHECKS)
    source_opts(p, required=False)
    sizing(p)
    p.add_argument("--base", type=int, default=2, help="kernel base d")
    p.add_argument("--depth", type=_positive, default=6, help="kernel depth")
    p.add_argument("--horizon", type=_positive, default=4096, help="kernel horizon")
    p.add_argument("--bound", type=int, default=None, help="maximal kernel size")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="all checks over all builtins as one JSON document")
    sizing(p)
    p.add_argument("--stamp", action="store_true", help="add a metadata section with a timestamp")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = getattr(args, "budget", None)
    max_k = getattr(args, "max_k", None)
    if budget is not None and max_k is not None and budget < 2 * max_k:
        parser.error(f"--budget must be at least 2 * --max-k = {2 * max_k}")
    try:
        return args.func(args)
    except FormatError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (UsageError, SourceError, WordError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f"error: {msg}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
