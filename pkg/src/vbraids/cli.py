"""
Command-line front end.

Batch subcommands over the word, presentation, rewriting, diagram, braiding
and homomorphism machinery.  Exit codes: 0 success, 1 verification failure
(an uncertified relator, a failed replay, a non-equivalence), 2 malformed
input.  Output is deterministic; JSON payloads carry ``"schema": 1`` and
sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import braiding, diagrams, maps, presentations, render, rewrite, scripts
from .diagrams import DiagramError
from .presentations import PresentationError, SINGLE_WELDED, WELDED_EXPANSION_NOTE
from .rewrite import ScriptError
from .words import (
    GroupKind,
    WordError,
    concat,
    format_word,
    free_reduce,
    inverse,
    parse_word,
    permutation_image,
)

INPUT_ERRORS = (WordError, DiagramError, ScriptError, PresentationError, maps.MapError, OSError)


def _kind(text: str) -> GroupKind:
    return GroupKind.parse(text)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------


def _cmd_word(args) -> int:
    kind = _kind(args.kind)
    words = [parse_word(t, kind, args.n) for t in args.word]
    if args.op == "reduce":
        print(format_word(free_reduce(words[0])))
    elif args.op == "perm":
        img = permutation_image(words[0])
        print(" ".join(str(img(i)) for i in range(1, args.n + 1)))
    elif args.op == "invert":
        print(format_word(inverse(words[0])))
    else:  # compose
        print(format_word(concat(words)))
    return 0


def _cmd_present(args) -> int:
    kind = _kind(args.kind)
    if args.single_welded:
        p = presentations.reduced_presentation(kind, args.n, SINGLE_WELDED)
    elif args.reduced:
        p = presentations.reduced_presentation(kind, args.n)
    else:
        p = presentations.full_presentation(kind, args.n)
    if args.json:
        _emit_json(presentations.presentation_to_json(p))
    else:
        sys.stdout.write(presentations.serialize_presentation(p))
    if args.single_welded:
        print(f"# {WELDED_EXPANSION_NOTE}")
    return 0


def _cmd_verify(args) -> int:
    if args.what == "identities":
        n_max = args.n
        total = 0
        for n in range(2, n_max + 1):
            for i, j in rewrite.dagger_instances(n):
                if not rewrite.prove_pure_virtual(*rewrite.dagger_words(i, j, n)):
                    print(f"FAIL valley-mountain i={i} j={j} n={n}")
                    return 1
                total += 1
            for i in rewrite.ddagger_instances(n):
                if not rewrite.prove_pure_virtual(*rewrite.ddagger_words(i, n)):
                    print(f"FAIL block-reshuffle i={i} n={n}")
                    return 1
                total += 1
        print(f"identities: {total} instances verified, n <= {n_max}")
        return 0
    if args.what == "lemmas":
        failures = 0
        total = 0
        for kind in (GroupKind.VB, GroupKind.FV):
            for script in scripts.lemma_family_scripts(args.n, kind):
                report = rewrite.verify_script(script)
                total += 1
                status = "ok" if report.ok else f"FAIL ({report.message})"
                print(f"{kind.value} {script.name}: {len(script.steps)} steps {status}")
                failures += 0 if report.ok else 1
        ws = scripts.welded_substitution_script()
        report = rewrite.verify_script(ws)
        total += 1
        print(f"WB {ws.name}: {len(ws.steps)} steps {'ok' if report.ok else 'FAIL'}")
        failures += 0 if report.ok else 1
        print(f"lemmas: {total - failures}/{total} scripts replayed")
        return 1 if failures else 0
    if args.what == "reduction":
        kind = _kind(args.kind)
        report = rewrite.certify_reduction(kind, args.n)
        for e in report.entries:
            print(f"{e.relator_id}: {e.mechanism}" + (f" ({e.detail})" if e.detail else ""))
        print(f"certify {kind.value} n={args.n}: {'PASS' if report.passed else 'FAIL'}")
        return 0 if report.passed else 1
    # maps
    ok = True
    for a in maps.ARROWS:
        rep = maps.check_well_defined(a, args.n)
        print(f"{a.name}: {'ok' if rep.passed else 'FAIL ' + str(rep.uncertified)}")
        ok = ok and rep.passed
    import random

    rng = random.Random(0)
    checked = 0
    for source in GroupKind:
        paths = maps.all_paths(source, GroupKind.S)
        if len(paths) < 2:
            continue
        fams = sorted(source.families)
        for _ in range(50):
            n = 5
            letters = []
            for _ in range(rng.randint(0, 10)):
                fam = rng.choice(fams)
                tok = f"{fam}{rng.randint(1, n - 1)}"
                if fam == "s" and rng.random() < 0.3:
                    tok += "^-1"
                letters.append(tok)
            w = parse_word(" ".join(letters), source, n)
            images = {maps.compose_path(w, p).images for p in paths}
            if len(images) != 1:
                print(f"FAIL commutativity from {source.value} on {format_word(w)}")
                ok = False
            checked += 1
    print(f"maps: arrows + {checked} path-commutativity samples {'ok' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_braid(args) -> int:
    d = diagrams.parse_diagram(_read(args.diagram))
    result = braiding.to_braid(d, category=args.category, under=args.under)
    print(format_word(result.word))
    print(f"strands: {result.strands}")
    return 0


def _cmd_closure(args) -> int:
    w = parse_word(args.word, _kind(args.kind), args.n)
    d = diagrams.closure(w)
    _write(args.output, diagrams.format_diagram(d))
    return 0


def _cmd_invariants(args) -> int:
    d = diagrams.parse_diagram(_read(args.diagram))
    inv = diagrams.invariants(d)
    if args.json:
        _emit_json(
            {
                "schema": 1,
                "components": inv.component_count,
                "lk": [list(r) for r in inv.lk],
                "vparity": [list(r) for r in inv.vparity],
            }
        )
    else:
        print(f"components: {inv.component_count}")
        for name, m in (("lk", inv.lk), ("vparity", inv.vparity)):
            for row in m:
                print(f"{name}: " + " ".join(str(v) for v in row))
    return 0


def _cmd_gauss(args) -> int:
    if args.parse is not None:
        g = diagrams.parse_gauss(args.parse)
        print(f"components: {len(g.components)}")
        print(f"crossings: {g.crossing_count}")
        return 0
    d = diagrams.parse_diagram(_read(args.diagram))
    print(diagrams.format_gauss(diagrams.gauss_code(d)))
    return 0


def _cmd_map(args) -> int:
    source = _kind(args.source)
    target = _kind(args.target)
    if args.via:
        kinds = [source] + [_kind(k) for k in args.via] + [target]
        path = [maps.arrow(kinds[i], kinds[i + 1]) for i in range(len(kinds) - 1)]
    else:
        path = maps.find_path(source, target)
    text = args.word if args.word is not None else sys.stdin.read().strip()
    w = parse_word(text, source, args.n)
    result = maps.compose_path(w, path)
    if isinstance(result, rewrite.BraidWord):
        print(format_word(result))
    else:
        print(" ".join(str(result(i)) for i in range(1, args.n + 1)))
    return 0


def _cmd_render(args) -> int:
    if args.kind is not None:
        obj = parse_word(args.input, _kind(args.kind), args.n)
    else:
        obj = diagrams.parse_diagram(_read(args.input))
    text = render.render_svg(obj) if args.format == "svg" else render.render_ascii(obj)
    _write(args.output, text)
    return 0


def _cmd_script(args) -> int:
    script = rewrite.parse_script(_read(args.script))
    report = rewrite.verify_script(script, trace=True)
    word = script.start
    print(f"start:  {format_word(word)}")
    table = rewrite.relation_table(script.kind, script.n, script.relation_set)
    for rec in report.trace:
        rel = table[rec.step.relator_id]
        print(
            f"step:   {rec.step.relator_id} {rec.step.direction} @{rec.step.position} "
            f"-> {_bracketed(rec.word, rec.step.position, rec.step.forward, rel)}"
        )
    if report.ok:
        print(f"target: {format_word(script.target)}")
        print(f"replayed {report.steps_applied} steps: ok")
        return 0
    print(f"FAILED: {report.message}")
    return 1


def _bracketed(word, pos: int, forward: bool, rel) -> str:
    dst = rel.rhs if forward else rel.lhs
    toks = [g.token for g in word.letters]
    end = pos + len(dst.letters)
    out = toks[:pos] + ["["] + toks[pos:end] + ["]"] + toks[end:]
    return " ".join(out) if out else "e"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vbraids", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    w = sub.add_parser("word", help="braid word algebra")
    w.add_argument("op", choices=["reduce", "perm", "compose", "invert"])
    w.add_argument("word", nargs="+")
    w.add_argument("--kind", required=True)
    w.add_argument("-n", type=int, required=True)
    w.set_defaults(func=_cmd_word)

    p = sub.add_parser("present", help="emit presentations")
    p.add_argument("kind")
    p.add_argument("n", type=int)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--single-welded", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_present)

    v = sub.add_parser("verify", help="run certification suites")
    vsub = v.add_subparsers(dest="what", required=True)
    vl = vsub.add_parser("lemmas")
    vl.add_argument("--n", type=int, default=5)
    vi = vsub.add_parser("identities")
    vi.add_argument("--n", type=int, default=7)
    vr = vsub.add_parser("reduction")
    vr.add_argument("kind")
    vr.add_argument("n", type=int)
    vm = vsub.add_parser("maps")
    vm.add_argument("--n", type=int, default=4)
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("braid", help="convert a diagram to a braid word")
    b.add_argument("diagram")
    b.add_argument("--category", default=None)
    b.add_argument("--under", action="store_true")
    b.set_defaults(func=_cmd_braid)

    c = sub.add_parser("closure", help="write the closure diagram of a word")
    c.add_argument("word")
    c.add_argument("--kind", required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-o", dest="output", default=None)
    c.set_defaults(func=_cmd_closure)

    i = sub.add_parser("invariants", help="closure invariants of a diagram")
    i.add_argument("diagram")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=_cmd_invariants)

    g = sub.add_parser("gauss", help="Gauss codes")
    g.add_argument("diagram", nargs="?")
    g.add_argument("--parse", default=None)
    g.set_defaults(func=_cmd_gauss)

    m = sub.add_parser("map", help="apply lattice homomorphisms")
    m.add_argument("word", nargs="?")
    m.add_argument("--from", dest="source", required=True)
    m.add_argument("--to", dest="target", required=True)
    m.add_argument("--via", nargs="*", default=None)
    m.add_argument("-n", type=int, required=True)
    m.set_defaults(func=_cmd_map)

    r = sub.add_parser("render", help="draw a diagram or braid word")
    r.add_argument("input")
    r.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    r.add_argument("--kind", default=None, help="treat input as a word of this kind")
    r.add_argument("-n", type=int, default=None)
    r.add_argument("-o", dest="output", default=None)
    r.set_defaults(func=_cmd_render)

    s = sub.add_parser("script", help="derivation scripts")
    ssub = s.add_subparsers(dest="action", required=True)
    sr = ssub.add_parser("run")
    sr.add_argument("script")
    sr.set_defaults(func=_cmd_script)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
