"""Batch command line front end (``freyd``).

Exit codes: 0 success, 1 a "no"/"none" answer to a decision command,
2 usage errors (malformed input, failed preconditions), 3 enumeration or
resource limits.
"""

from __future__ import annotations

import argparse
import sys

from . import homological as H
from .errors import FreydError, ResourceError, UsageError
from .formats import (FORMAT_VERSION, FunctorSpec, MorphismSpec, SystemSpec, dumps, load_file,
                      matrix_to_json, presentation_from_json, ring_to_json)
from .rings import parse_ring
from .rows import rows_mor

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


# --- reports -------------------------------------------------------------------

def module_report(command: str, module) -> dict:
    inv = H.module_invariants(module)
    return {"version": FORMAT_VERSION, "command": command, "ring": ring_to_json(inv.ring),
            "invariants": inv.to_json(), "pretty": inv.pretty(),
            "answer_relations": matrix_to_json(H.relation_matrix(module))}


def decision_report(command: str, ring, label: str, decision: bool) -> dict:
    return {"version": FORMAT_VERSION, "command": command, "ring": ring_to_json(ring),
            "decision": decision, "pretty": f"{label}: {'yes' if decision else 'no'}"}


def render_text(report: dict) -> str:
    lines = [report["pretty"]]
    if "invariants" in report:
        inv = report["invariants"]
        lines.append(f"free_rank: {inv['free_rank']}")
        lines.append("torsion: " + (" ".join(str(d) for d in inv["torsion"]) or "-"))
    if "answer_relations" in report:
        m = report["answer_relations"]
        lines.append(f"relations: {m['rows']}x{m['cols']}")
        lines.extend("  " + " ".join(row) for row in m["entries"])
    for key in ("solution", "embedding"):
        if key in report and report[key] is not None:
            lines.append(f"{key}:")
            lines.append("  " + dumps(report[key]).strip().replace("\n", "\n  "))
    return "\n".join(lines) + "\n"


# --- commands ----------------------------------------------------------------

def _ring(args):
    return parse_ring(args.ring) if args.ring else None


def _module(path, ring):
    return H.present_module(presentation_from_json(load_file(path), ring, path))


def _two_modules(args):
    ring = _ring(args)
    a = _module(args.inputs[0], ring)
    b = _module(args.inputs[1], ring or a.desc.base_ring)
    if a.desc != b.desc:
        raise UsageError("the two modules live over different rings")
    return a, b


def _need_inputs(args, k):
    if len(args.inputs) != k:
        raise UsageError(f"{args.command_name} expects {k} input file(s), got {len(args.inputs)}")


def _mod_morphism(args):
    spec = MorphismSpec.from_json(load_file(args.inputs[0]), _ring(args), args.inputs[0])
    c = H.fpmod(spec.datum.ring)
    f = c.freyd_morphism(H.present_module(spec.source), H.present_module(spec.target), rows_mor(spec.datum))
    if f is None:
        raise UsageError(f"{args.inputs[0]}: datum does not respect the relations")
    return c, f


def cmd_mod(args) -> tuple[dict, int]:
    op = args.op
    name = f"mod {op}"
    if op == "invariants":
        _need_inputs(args, 1)
        return module_report(name, _module(args.inputs[0], _ring(args))), EXIT_OK
    if op in ("kernel", "cokernel"):
        _need_inputs(args, 1)
        c, f = _mod_morphism(args)
        obj, _ = c.kernel(f) if op == "kernel" else c.cokernel(f)
        return module_report(name, obj), EXIT_OK
    _need_inputs(args, 2)
    a, b = _two_modules(args)
    if op == "hom":
        return module_report(name, H.hom_module(a, b)), EXIT_OK
    if op == "tensor":
        return module_report(name, H.tensor_module(a, b)), EXIT_OK
    i = 1 if args.i is None else args.i
    if op == "ext":
        return module_report(name, H.ext_module(a, b, i)), EXIT_OK
    return module_report(name, H.tor_module(a, b, i)), EXIT_OK


def _functor(path, ring):
    return FunctorSpec.from_json(load_file(path), ring, path).build()


def cmd_functor(args) -> tuple[dict, int]:
    op = args.op
    name = f"functor {op}"
    ring = _ring(args)
    if op == "nat-hom":
        _need_inputs(args, 2)
        f = _functor(args.inputs[0], ring)
        g = _functor(args.inputs[1], ring or f.ring)
        return module_report(name, H.nat_hom(f, g)), EXIT_OK
    _need_inputs(args, 1)
    f = _functor(args.inputs[0], ring)
    if op == "left-exact":
        ok = H.decide_left_exact(f)
        return decision_report(name, f.ring, "left exact", ok), EXIT_OK if ok else EXIT_NO
    if op == "right-exact":
        ok = H.decide_right_exact(f)
        return decision_report(name, f.ring, "right exact", ok), EXIT_OK if ok else EXIT_NO
    iota = H.injective_embedding(f)
    mono = f.cat.is_mono(iota)
    target = iota.target.payload
    rho_p = target.relation.payload  # module map P -> Q
    report = decision_report(name, f.ring, "monomorphism", mono)
    report["embedding"] = {
        "injective_range": matrix_to_json(H.relation_matrix(rho_p.source)),
        "injective_relation_object": matrix_to_json(H.relation_matrix(rho_p.target)),
        "injective_datum": matrix_to_json(rho_p.payload.datum.payload),
        "datum": matrix_to_json(iota.payload.datum.payload.payload.datum.payload),
        "witness": matrix_to_json(f.cat.witness(iota).payload.payload.datum.payload),
    }
    return report, EXIT_OK if mono else EXIT_NO


def cmd_solve(args) -> tuple[dict, int]:
    _need_inputs(args, 1)
    spec = SystemSpec.from_json(load_file(args.inputs[0]), _ring(args), args.inputs[0])
    sys_ = spec.build()
    sol = sys_.cat.solve_linear_system(sys_)
    ok = sol is not None
    report = {"version": FORMAT_VERSION, "command": "solve", "ring": ring_to_json(spec.ring),
              "decision": ok, "pretty": "solvable: yes" if ok else "solvable: no",
              "solution": None if sol is None else [matrix_to_json(x.payload) for x in sol]}
    return report, EXIT_OK if ok else EXIT_NO


# --- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="ring Z, Q or Z/n (needed for bare matrices; must agree with files)")
    common.add_argument("--i", type=int, default=None, help="homological index for ext/tor (default 1)")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="freyd", description="Computations in Freyd categories over Z, Q and Z/n.")
    sub = p.add_subparsers(dest="group", required=True)
    mod = sub.add_parser("mod", parents=[common], help="finitely presented modules")
    mod.add_argument("op", choices=("invariants", "kernel", "cokernel", "hom", "tensor", "ext", "tor"))
    mod.add_argument("inputs", nargs="+")
    fun = sub.add_parser("functor", parents=[common], help="finitely presented functors on modules")
    fun.add_argument("op", choices=("nat-hom", "left-exact", "right-exact", "inject"))
    fun.add_argument("inputs", nargs="+")
    sol = sub.add_parser("solve", parents=[common], help="solve a linear system over ROWS(ring)")
    sol.add_argument("inputs", nargs="+")
    return p


def execute(args) -> tuple[str, int]:
    """Run one parsed job; returns ``(report_text, exit_code)``."""
    args.command_name = args.group if args.group == "solve" else f"{args.group} {args.op}"
    handler = {"mod": cmd_mod, "functor": cmd_functor, "solve": cmd_solve}[args.group]
    report, code = handler(args)
    text = dumps(report) if args.format == "json" else render_text(report)
    return text, code


def run(argv) -> tuple[str, int]:
    return execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else list(argv))
    try:
        text, code = execute(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except ResourceError as e:
        print(f"freyd: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FreydError, OSError) as e:
        print(f"freyd: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
