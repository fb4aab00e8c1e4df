"""Command line: ``weylbraid <verb> [action] [options]``.

Every result is a JSON document on stdout.  Exit status is 0 on success,
1 on usage errors and 2 on domain errors or a failed verification suite.
``--human`` prints a plain-text rendering instead of JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import artin, defmodel, dynkin, lattice, verify, weyl
from .errors import WeylBraidError

VERBS = ("diagram", "fold", "affinize", "kodaira", "weyl", "artin", "lattice", "bfield", "defmodel", "verify")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def print_help(self, file=None):
        # help is a successful exit path, so it is JSON as well
        _emit({"usage": self.format_help(), "verbs": list(VERBS)}, human=_HUMAN)


_HUMAN = False


# --------------------------------------------------------------------------
# output

def _jsonable(x: Any):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _render(x: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(x, dict):
        lines = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return lines
    if isinstance(x, list):
        if x and all(isinstance(r, dict) for r in x):
            keys = list(dict.fromkeys(k for r in x for k in r))
            rows = [[_inline(r.get(k, "")) for k in keys] for r in x]
            widths = [max(len(k), *(len(r[c]) for r in rows)) for c, k in enumerate(keys)]
            out = [pad + "  ".join(k.ljust(w) for k, w in zip(keys, widths))]
            out += [pad + "  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
            return out
        return [pad + _inline(v) for v in x]
    return [pad + _inline(x)]


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(e, (dict, list)) or (isinstance(e, list) and all(not isinstance(f, (dict, list)) for f in e)) for e in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(e) for e in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(obj: Any, human: bool = False) -> None:
    obj = _jsonable(obj)
    if human:
        print("\n".join(_render(obj)))
    else:
        print(json.dumps(obj))


# --------------------------------------------------------------------------
# argument readers

def _json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None


def _ints(text: str, what: str) -> list[int]:
    if text.strip().startswith("["):
        v = _json(text, what)
    else:
        v = text.replace(",", " ").split()
    try:
        return [int(x) for x in v]
    except (TypeError, ValueError):
        raise UsageError(f"{what}: expected integers, got {text!r}") from None


def _strings(text: str, what: str) -> list[str]:
    if text.strip().startswith("["):
        return [str(x) for x in _json(text, what)]
    return text.replace(",", " ").split()


def _rationals(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in _strings(text, what)]
    except ValueError:
        raise UsageError(f"{what}: expected rationals, got {text!r}") from None


def _matrix(text: str, what: str) -> list[list[int]]:
    m = _json(text, what)
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise UsageError(f"{what}: expected a JSON list of rows")
    return m


def _word(text: str) -> artin.BraidWord:
    try:
        return artin.BraidWord.parse(text)
    except ValueError:
        raise UsageError(f"cannot read braid word {text!r}") from None


def _weyl_word(text: str) -> list[int]:
    w = _word(text)
    if not w.is_positive():
        raise UsageError("Weyl words have no inverse letters (every r_i is an involution)")
    return w.nodes()


def _diagram(args) -> dynkin.DynkinDiagram:
    return dynkin.parse_type(args.type)


def _group(d: dynkin.DynkinDiagram, args) -> list[dynkin.DiagramAutomorphism]:
    if getattr(args, "auto", None):
        return dynkin.named_automorphisms(d, args.auto)
    if getattr(args, "perm", None):
        return [dynkin.DiagramAutomorphism.from_images(d, _ints(p, "--perm")) for p in args.perm]
    raise UsageError("give --auto or at least one --perm")


def _configuration(args) -> lattice.ExceptionalConfiguration:
    d = _diagram(args)
    if args.gram is None:
        if args.classes is not None:
            raise UsageError("--classes needs --gram")
        return lattice.ExceptionalConfiguration.standard(d)
    lat = lattice.IntegralLattice(_matrix(args.gram, "--gram"))
    if args.classes is None:
        return lattice.embed_ade(d, lat, box=args.box)
    return lattice.ExceptionalConfiguration(lat, d, _matrix(args.classes, "--classes"))


def _diagram_out(d: dynkin.DynkinDiagram) -> dict:
    out = d.to_dict()
    out["name"] = d.name
    out["nodes"] = list(d.nodes)
    return out


# --------------------------------------------------------------------------
# verbs

def cmd_diagram(args):
    return _diagram_out(_diagram(args))


def cmd_fold(args):
    d = _diagram(args)
    return _diagram_out(dynkin.fold(d, _group(d, args)))


def cmd_affinize(args):
    return _diagram_out(dynkin.affinize(_diagram(args)))


def cmd_kodaira(args):
    f = dynkin.KodairaFiberType.parse(args.fiber)
    mono = None
    if args.perm:
        base = dynkin.kodaira_diagram(f)
        mono = [dynkin.DiagramAutomorphism.from_images(base, _ints(p, "--perm")) for p in args.perm]
    out = _diagram_out(dynkin.kodaira_to_affine(f, mono))
    out["fiber"] = f.name
    return out


def _element_out(w: weyl.WeylElement) -> dict:
    out = w.to_dict()
    out["length"] = weyl.length(w)
    out["reduced_word"] = list(weyl.reduced_word(w))
    return out


def cmd_weyl(args):
    d = _diagram(args)
    act = args.action
    if act == "roots":
        rs = weyl.roots(d)
        return {"type": d.name, "positive": rs.positive, "count": len(rs.all)}
    if act == "order":
        return {"type": d.name, "order": len(weyl.enumerate_group(d, args.cap)), "formula": weyl.weyl_order(d)}
    if act == "element":
        w = weyl.word_to_element(d, _weyl_word(args.word))
        out = _element_out(w)
        out["inversion_set"] = weyl.inversion_set(w)
        return out
    if act == "equal":
        a = weyl.word_to_element(d, _weyl_word(args.a))
        b = weyl.word_to_element(d, _weyl_word(args.b))
        return {"equal": weyl.equal(a, b)}
    if act == "enumerate":
        els = weyl.enumerate_group(d, args.cap)
        return {"type": d.name, "order": len(els), "words": [list(w.word) for w in els]}
    if act == "longest":
        return _element_out(weyl.longest_element(d))
    if act == "fixed":
        els = weyl.fixed_subgroup(d, _group(d, args), args.cap)
        return {"type": d.name, "order": len(els), "words": [list(w.word) for w in els]}
    if act == "wall":
        return {"node": args.node, **weyl.fixed_hyperplane(d, args.node).to_dict()}
    if act == "orbit":
        pts = weyl.orbit(d, _rationals(args.point, "--point"), args.cap)
        return {"size": len(pts), "orbit": pts}
    raise AssertionError(act)


def cmd_artin(args):
    act = args.action
    if act == "michel":
        return {"n": args.n, "generators": [g.to_list() for g in artin.michel_generators(args.n)]}
    if act == "verify-folded":
        return artin.verify_folded_braid_relations(args.n).to_dict()
    d = _diagram(args)
    if act == "normal-form":
        return artin.normal_form(d, _word(args.word)).to_dict()
    if act == "equal":
        return {"equal": artin.words_equal(d, _word(args.a), _word(args.b))}
    if act == "project":
        return _element_out(artin.project_to_weyl(d, _word(args.word)))
    if act == "lift":
        return {"word": artin.lift(weyl.word_to_element(d, _weyl_word(args.word))).to_list()}
    if act == "verify":
        return artin.verify_braid_relations(d).to_dict()
    raise AssertionError(act)


def cmd_lattice(args):
    act = args.action
    if act == "embed":
        return _configuration(args).to_dict()
    if act == "reflect":
        cfg = _configuration(args)
        v = _rationals(args.vector, "--vector")
        return {"image": lattice.reflect_in_class(cfg, args.node, v)}
    if act == "orbit-action":
        cfg = _configuration(args)
        v = _rationals(args.vector, "--vector")
        return {"image": lattice.weyl_orbit_action(cfg, _weyl_word(args.word), v)}
    if act == "twist":
        lat = lattice.IntegralLattice(_matrix(args.gram, "--gram"))
        if args.mukai:
            lat = lattice.mukai_lattice(lat)
        v = lattice.GradedCohomologyVector(tuple(_ints(args.v, "--v")), ())
        alpha = lattice.GradedCohomologyVector(
            tuple(_rationals(args.alpha, "--alpha")), tuple(_rationals(args.odd, "--odd")) if args.odd else ()
        )
        if lat.dot(v.even, v.even) != -2:
            raise lattice.InvalidSphericalClassError(f"<v, v> = {lat.dot(v.even, v.even)}, a spherical class has -2")
        out = lattice.spherical_twist_cohomology(v, alpha, lat)
        return {"even": out.even, "odd": out.odd}
    if act == "base-map":
        psi = _matrix(args.psi, "--psi")
        if args.gram is None:
            cfg, tangent = lattice.k3_local_model(_diagram(args), args.polarization)
            lat = cfg.lattice
        else:
            lat = lattice.IntegralLattice(_matrix(args.gram, "--gram"))
            tangent = _matrix(args.tangent, "--tangent") if args.tangent else lat.basis()
        return lattice.induced_base_map(psi, lat, tangent).to_dict()
    raise AssertionError(act)


def cmd_bfield(args):
    cfg = _configuration(args)
    b = lattice.BField(tuple(_strings(args.b, "--b")))
    if args.action == "check":
        out = lattice.enhanced_symmetry_bfield(cfg, b).to_dict()
        out["B"] = b.to_list()
        return out
    return {"B": lattice.bfield_reflect(cfg, args.node, b).to_list()}


def cmd_defmodel(args):
    d = _diagram(args)
    m = defmodel.build_model(d, args.genus, surface=args.surface)
    act = args.action
    if act == "build":
        return m.to_dict()
    if act == "codim":
        return defmodel.wall_codimension(m, args.node).to_dict()
    point = defmodel.generic_point(m) if args.point in (None, "generic") else _rationals(args.point, "--point")
    if act == "census":
        out = defmodel.census(m, point).to_dict()
        out["point"] = point
        return out
    if act == "orbit":
        w = weyl.word_to_element(d, _weyl_word(args.word))
        return defmodel.orbit_relation(m, w, point).to_dict()
    if act == "fixes":
        return {"node": args.node, "fixed": defmodel.reflection_fixes(m, args.node, point), "on_wall": m.wall(args.node).contains(point)}
    raise AssertionError(act)


def cmd_verify(args):
    return verify.run_suite(args.suite)


# --------------------------------------------------------------------------
# parser

def _add_type(p, required=True):
    p.add_argument("--type", required=required, help="diagram type, e.g. E6, C3, ~A2")


def _add_group(p):
    p.add_argument("--auto", choices=("z2", "z3", "s3"), help="named automorphism group")
    p.add_argument("--perm", action="append", help="generator as node images, e.g. '5 4 3 2 1' (repeatable)")


def _add_config(p):
    _add_type(p)
    p.add_argument("--gram", help="ambient Gram matrix as JSON (default: the root lattice itself)")
    p.add_argument("--classes", help="exceptional classes as JSON rows (default: search with --box)")
    p.add_argument("--box", type=int, default=10, help="coefficient box for the embedding search")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weylbraid", description="Dynkin folding, Weyl and Artin groups, lattice reflections, deformation models.")
    p.add_argument("--human", action="store_true", help="plain-text output instead of JSON")
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb", parser_class=_Parser)

    q = sub.add_parser("diagram", help="Cartan and Coxeter data of a diagram")
    _add_type(q)
    q = sub.add_parser("fold", help="quotient of a simply-laced diagram by automorphisms")
    _add_type(q)
    _add_group(q)
    q = sub.add_parser("affinize", help="extended (affine) diagram")
    _add_type(q)
    q = sub.add_parser("kodaira", help="affine diagram of a Kodaira fibre, folded by monodromy")
    q.add_argument("--fiber", required=True, help="I<n>, I*<n>, II*, III*, IV*")
    q.add_argument("--perm", action="append", help="monodromy generator as node images (repeatable)")

    q = sub.add_parser("weyl", help="Weyl group operations")
    wa = q.add_subparsers(dest="action", required=True, metavar="action", parser_class=_Parser)
    for name in ("roots", "order", "enumerate", "longest"):
        r = wa.add_parser(name)
        _add_type(r)
        r.add_argument("--cap", type=int)
    r = wa.add_parser("element")
    _add_type(r)
    r.add_argument("--word", required=True)
    r = wa.add_parser("equal")
    _add_type(r)
    r.add_argument("--a", required=True)
    r.add_argument("--b", required=True)
    r = wa.add_parser("fixed")
    _add_type(r)
    _add_group(r)
    r.add_argument("--cap", type=int)
    r = wa.add_parser("wall")
    _add_type(r)
    r.add_argument("--node", type=int, required=True)
    r = wa.add_parser("orbit")
    _add_type(r)
    r.add_argument("--point", required=True)
    r.add_argument("--cap", type=int)

    q = sub.add_parser("artin", help="Artin (braid) group operations")
    aa = q.add_subparsers(dest="action", required=True, metavar="action", parser_class=_Parser)
    for name in ("normal-form", "project", "lift"):
        r = aa.add_parser(name)
        _add_type(r)
        r.add_argument("--word", required=True, help="letters like '1 2 -1'")
    r = aa.add_parser("equal")
    _add_type(r)
    r.add_argument("--a", required=True)
    r.add_argument("--b", required=True)
    r = aa.add_parser("verify")
    _add_type(r)
    for name in ("michel", "verify-folded"):
        r = aa.add_parser(name)
        r.add_argument("--n", type=int, required=True)

    q = sub.add_parser("lattice", help="integral lattices and (-2)-reflections")
    la = q.add_subparsers(dest="action", required=True, metavar="action", parser_class=_Parser)
    r = la.add_parser("embed")
    _add_config(r)
    r = la.add_parser("reflect")
    _add_config(r)
    r.add_argument("--node", type=int, required=True)
    r.add_argument("--vector", required=True)
    r = la.add_parser("orbit-action")
    _add_config(r)
    r.add_argument("--word", required=True)
    r.add_argument("--vector", required=True)
    r = la.add_parser("twist")
    r.add_argument("--gram", required=True, help="pairing on even cohomology (or on H^2 with --mukai)")
    r.add_argument("--mukai", action="store_true", help="extend --gram to the Mukai lattice H^0 + H^2 + H^4")
    r.add_argument("--v", required=True, help="even class of the spherical object")
    r.add_argument("--alpha", required=True, help="even part of the class to twist")
    r.add_argument("--odd", help="odd part of the class to twist")
    r = la.add_parser("base-map")
    _add_type(r, required=False)
    r.add_argument("--polarization", type=int, default=2)
    r.add_argument("--gram")
    r.add_argument("--tangent", help="spanning vectors of the subspace as JSON rows")
    r.add_argument("--psi", required=True, help="isometry as a JSON matrix")

    q = sub.add_parser("bfield", help="torsion B-fields and the enhanced-symmetry criterion")
    ba = q.add_subparsers(dest="action", required=True, metavar="action", parser_class=_Parser)
    r = ba.add_parser("check")
    _add_config(r)
    r.add_argument("--b", required=True, help="coordinates as fractions, e.g. '1/2 0'")
    r = ba.add_parser("reflect")
    _add_config(r)
    r.add_argument("--b", required=True)
    r.add_argument("--node", type=int, required=True)

    q = sub.add_parser("defmodel", help="linear deformation model and exceptional census")
    da = q.add_subparsers(dest="action", required=True, metavar="action", parser_class=_Parser)
    for name in ("build", "census", "orbit", "codim", "fixes"):
        r = da.add_parser(name)
        _add_type(r)
        r.add_argument("--genus", type=int, default=1)
        r.add_argument("--surface", action="store_true", help="K3 (surface) model")
        if name in ("census", "orbit", "fixes"):
            r.add_argument("--point", help="rational coordinates, or 'generic' (default)")
        if name in ("codim", "fixes"):
            r.add_argument("--node", type=int, required=True)
        if name == "orbit":
            r.add_argument("--word", required=True)

    q = sub.add_parser("verify", help="run a named verification suite")
    q.add_argument("suite", choices=tuple(verify.SUITES))
    return p


COMMANDS = {
    "diagram": cmd_diagram,
    "fold": cmd_fold,
    "affinize": cmd_affinize,
    "kodaira": cmd_kodaira,
    "weyl": cmd_weyl,
    "artin": cmd_artin,
    "lattice": cmd_lattice,
    "bfield": cmd_bfield,
    "defmodel": cmd_defmodel,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    global _HUMAN
    argv = list(sys.argv[1:] if argv is None else argv)
    # --human is accepted anywhere on the line
    _HUMAN = "--human" in argv
    argv = [a for a in argv if a != "--human"]
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.verb](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, _HUMAN)
        return 1
    except WeylBraidError as exc:
        _emit(exc.to_dict(), _HUMAN)
        return 2
    if hasattr(result, "to_dict"):
        _emit(result.to_dict(), _HUMAN)
        return 0 if result.passed else 2
    _emit(result, _HUMAN)
    return 0


if __name__ == "__main__":
    sys.exit(main())
