"""Command line interface: ``hyperkm <command> ...``.

Every command prints one JSON document (sorted keys, with a ``version``
field) or, for ``disk svg``, an SVG document.  Exit status is 0 on success,
1 for mathematical-domain errors and 2 for usage or input errors; failures
still print a JSON error document.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from . import lattice as L
from .errors import DomainError


class UsageError(Exception):
    code = "UsageError"


class InputError(Exception):
    code = "InputError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Input parsing

def parse_root(text: str) -> tuple[int, ...]:
    """``"n1,n2,..."`` simple-root coordinates, or ``"m:a,b,c"`` for the matrix ``[[a, b], [b, c]]`` of F."""
    text = text.strip()
    try:
        if text.startswith("m:"):
            a, b, c = (int(x) for x in text[2:].split(","))
            return L.to_coords(L.SymMat2(a, b, c))
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse root {text!r}") from exc


def parse_root_list(text: str) -> list[tuple[int, ...]]:
    return [parse_root(t) for t in text.split(";") if t.strip()]


def _json_root(item) -> tuple[int, ...]:
    if isinstance(item, str):
        return parse_root(item)
    if isinstance(item, list) and all(isinstance(x, int) for x in item):
        return tuple(item)
    raise InputError(f"cannot parse root {item!r}")


def load_input(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict) or "roots" not in data:
        raise InputError('input must be an object with a "roots" list')
    data["roots"] = [_json_root(r) for r in data["roots"]]
    return data


def _ambient(name: str, max_height: int = 24):
    from .roots import ambient_by_name

    try:
        return ambient_by_name(name, max_height)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def resolve_set(name: str):
    """Named root sets: ``example-4.N``, ``example-4.1b``, ``fundamental``,
    ``h:<m><+|->``, ``rank-r1:<ambient>:<m>`` and ``rank-r2:<ambient>:<m>``."""
    from .roots import F
    from .subalgebras import SimpleRootSet, example_fixtures, series_h, series_rank_r1, series_rank_r2

    fx = example_fixtures()
    if name in fx:
        return fx[name]
    if name == "fundamental":
        return SimpleRootSet(F, tuple(F.unit(i) for i in range(3)), name="fundamental")
    try:
        if name.startswith("h:"):
            return series_h(int(name[2:-1]), name[-1])
        for kind, fn in (("rank-r1:", series_rank_r1), ("rank-r2:", series_rank_r2)):
            if name.startswith(kind):
                amb_name, m = name[len(kind):].rsplit(":", 1)
                return fn(_ambient(amb_name), int(m))
    except ValueError as exc:
        raise InputError(f"bad set name {name!r}: {exc}") from exc
    raise InputError(f"unknown root set {name!r}; known fixtures: {', '.join(sorted(fx))}")


def _root_set(args):
    from .subalgebras import SimpleRootSet

    if getattr(args, "fixture", None):
        return resolve_set(args.fixture)
    if getattr(args, "input", None):
        data = load_input(args.input)
        amb = _ambient(data.get("ambient", "F"))
        return SimpleRootSet(amb, tuple(data["roots"]), name=data.get("name", ""))
    if getattr(args, "roots", None):
        return SimpleRootSet(_ambient(getattr(args, "ambient", "F") or "F"), tuple(parse_root_list(args.roots)))
    raise UsageError("give --fixture, --roots or --input")


# ---------------------------------------------------------------------------
# Commands

def cmd_roots(args) -> dict:
    from .roots import enumerate_roots_F, level1_normal_form, lightcone_normal_form

    if args.action == "status":
        amb = _ambient(args.ambient)
        beta = parse_root(args.root)
        st = amb.status(beta)
        out = {"ambient": amb.name, "root": list(beta), "status": st.to_json()}
        if amb.name == "F":
            n = L.to_matrix(beta)
            out.update(matrix=str(n), det=int(n.det()), level=int(L.level(n)))
        return out
    if args.action == "enumerate":
        levels = [int(x) for x in args.levels.split(",")]
        rows = enumerate_roots_F(levels, args.height)
        return {"ambient": "F", "levels": levels, "height": args.height,
                "roots": [{"matrix": str(n), "coords": list(L.to_coords(n)), **st.to_json()} for n, st in rows]}
    n = L.to_matrix(parse_root(args.root))
    if n.det() == 0:
        a, g = lightcone_normal_form(n)
        form = L.SymMat2(a, 0, 0)
    else:
        if n.c < 0:
            # positive roots sit at negative level in the matrix model
            n = -n
        a, g = level1_normal_form(n)
        form = L.SymMat2(a, 0, 1)
    return {"root": str(n), "normal_form": str(form), "a": a, "element": [list(r) for r in g.entries],
            "word": g.word_label()}


def cmd_mult(args) -> dict:
    amb = _ambient(args.ambient, args.max_height)
    if args.root:
        beta = parse_root(args.root)
        return {"ambient": amb.name, "root": list(beta), "mult": amb.mult(beta)}
    if args.table is None:
        raise UsageError("give --root or --table HEIGHT")
    table = amb.engine.table(args.table)
    return {"ambient": amb.name, "height": args.table,
            "mults": {",".join(map(str, k)): v for k, v in table.items() if v}}


def cmd_genfunc(args) -> dict:
    from .series import first_partition_divergence, level2_genfunc, level2_root, partition_p

    coeffs = level2_genfunc(args.terms)
    return {
        "terms": args.terms,
        "coefficients": [{"index": i, "root": str(level2_root(i)), "mult": c, "partition": partition_p(i)}
                         for i, c in enumerate(coeffs)],
        "first_partition_divergence": first_partition_divergence(args.terms),
    }


def cmd_subalgebra(args) -> dict:
    from .subalgebras import (check_simple_set, commutator_word, example_fixtures, series_h,
                              series_rank_r1, series_rank_r2)

    if args.action == "fixtures":
        out = {}
        for name, s in example_fixtures().items():
            rep = check_simple_set(s).to_json()
            rep["words"] = [{"word": [L.SIMPLE_LABELS[i] for i in w], "simple": L.SIMPLE_LABELS[k]}
                            for w, k in s.words]
            out[name] = rep
        return {"fixtures": out}
    if args.action == "series":
        if args.m is None:
            raise UsageError("--m is required")
        if args.kind == "h":
            s = series_h(args.m, args.sign)
        else:
            amb = _ambient(args.ambient)
            if not hasattr(amb, "delta"):
                raise InputError("series need an over-extended ambient")
            s = (series_rank_r1 if args.kind == "rank-r1" else series_rank_r2)(amb, args.m)
        rep = check_simple_set(s)
        return {"set": s.to_json(), "report": rep.to_json(), "cartan": [list(r) for r in rep.cartan_entries]}
    if args.action == "word":
        w = commutator_word(parse_root(args.root))
        return {"root": list(w.target), "letters": [L.SIMPLE_LABELS[i] for i in w.letters],
                "commutator": w.render()}
    s = _root_set(args)
    return {"set": s.to_json(), "report": check_simple_set(s).to_json()}


def cmd_disk(args):
    from .disk import format_index, index_in_W, pair_angle, project_root_line, region_polygon
    from .svg import fundamental_scene, region_scene, render_svg

    if args.action == "line":
        return {"geodesic": project_root_line(parse_root(args.root)).to_json()}
    if args.action == "svg":
        if args.figure:
            scene = fundamental_scene(args.depth, args.size, not args.no_labels, not args.no_shade)
        else:
            s = _root_set(args)
            scene = region_scene(s.roots, args.depth, args.size, not args.no_labels, not args.no_shade)
        text = render_svg(scene)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            return {"svg": args.output, "bytes": len(text.encode())}
        return text
    s = _root_set(args)
    roots = list(s.roots)
    if args.action == "angles":
        out = []
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                out.append({"pair": [i, j], **pair_angle(roots[i], roots[j]).to_json()})
        return {"roots": [list(r) for r in roots], "angles": out}
    if args.action == "area":
        return {"region": region_polygon(roots).to_json()}
    return {"roots": [list(r) for r in roots], "index": format_index(index_in_W(roots))}


def cmd_borcherds(args) -> dict:
    from .borcherds import line_borcherds_h3, mu_simple_mults, plane_roots

    if args.action == "plane":
        return plane_roots(args.m, args.bound).to_json()
    if args.action == "line":
        return line_borcherds_h3(args.bound).to_json()
    return mu_simple_mults(args.m, args.bound).to_json()


def cmd_verify(args) -> dict:
    from .verify import run_all

    results = run_all()
    return {"criteria": [r.to_json() for r in results], "all_passed": all(r.passed for r in results),
            "_lines": [r.line() for r in results]}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperkm", description="Exact computations for the hyperbolic algebra F.")
    p.add_argument("--version", action="store_true", help="print the version and exit")
    p.add_argument("--human", action="store_true", help="human-readable output (allowed anywhere)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("roots", help="root status, enumeration, normal forms")
    r.add_argument("action", choices=["status", "enumerate", "normal-form"])
    r.add_argument("--ambient", default="F")
    r.add_argument("--root")
    r.add_argument("--levels", default="0,1,2")
    r.add_argument("--height", type=int, default=6)

    m = sub.add_parser("mult", help="root multiplicities")
    m.add_argument("--ambient", default="F")
    m.add_argument("--root")
    m.add_argument("--table", type=int, metavar="HEIGHT")
    m.add_argument("--max-height", type=int, default=24)

    g = sub.add_parser("genfunc", help="level-2 generating function")
    g.add_argument("--terms", type=int, default=24)

    s = sub.add_parser("subalgebra", help="simple root sets and their Cartan matrices")
    s.add_argument("action", choices=["check", "series", "fixtures", "word"])
    s.add_argument("--ambient", default="F")
    s.add_argument("--roots", help='semicolon separated, e.g. "0,0,1;0,2,1"')
    s.add_argument("--input", help="JSON file with a roots list")
    s.add_argument("--fixture")
    s.add_argument("--kind", choices=["h", "rank-r1", "rank-r2"], default="h")
    s.add_argument("--m", type=int)
    s.add_argument("--sign", choices=["+", "-"], default="-")
    s.add_argument("--root")

    d = sub.add_parser("disk", help="Poincare disk geometry and SVG")
    d.add_argument("action", choices=["line", "angles", "area", "index", "svg"])
    d.add_argument("--root")
    d.add_argument("--roots")
    d.add_argument("--input")
    d.add_argument("--fixture")
    d.add_argument("--figure", action="store_true", help="tesselation with the fundamental triangle")
    d.add_argument("--depth", type=int, default=4)
    d.add_argument("--size", type=int, default=600)
    d.add_argument("--no-labels", action="store_true")
    d.add_argument("--no-shade", action="store_true")
    d.add_argument("--output")

    b = sub.add_parser("borcherds", help="plane and line Borcherds subalgebras")
    b.add_argument("action", choices=["plane", "line", "mu"])
    b.add_argument("--m", type=int, default=3)
    b.add_argument("--bound", type=int, default=6)

    sub.add_parser("verify-paper", help="run every reproduction check")
    return p


COMMANDS = {
    "roots": cmd_roots, "mult": cmd_mult, "genfunc": cmd_genfunc, "subalgebra": cmd_subalgebra,
    "disk": cmd_disk, "borcherds": cmd_borcherds, "verify-paper": cmd_verify,
}


def _human(doc: dict) -> str:
    lines = []
    for k, v in sorted(doc.items()):
        lines.append(f"{k}: {v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute a command; returns ``(exit status, output text)``."""
    human = False
    try:
        argv = list(argv)
        human = "--human" in argv
        args = build_parser().parse_args([a for a in argv if a != "--human"])
        if args.version:
            return 0, f"hyperkm {__version__}\n"
        if not args.command:
            raise UsageError("missing command")
        result = COMMANDS[args.command](args)
        if isinstance(result, str):
            return 0, result
        lines = result.pop("_lines", None)
        status = 0 if result.get("all_passed", True) else 1
        result["version"] = __version__
        if human:
            return status, ("\n".join(lines) + "\n" if lines else _human(result))
        if lines:
            result["summary"] = lines
        return status, json.dumps(result, sort_keys=True, indent=2) + "\n"
    except (UsageError, InputError) as exc:
        return 2, _error(exc, exc.code)
    except DomainError as exc:
        return 1, _error(exc, exc.code)


def _error(exc: Exception, code: str) -> str:
    return json.dumps({"error": code, "message": str(exc), "version": __version__}, sort_keys=True) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
