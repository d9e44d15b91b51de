"""Command line front end: ``vknot <command> ...``.

Every command writes JSON to stdout. Logs and errors go to stderr.
Exit codes: 0 ok, 1 a check failed, 2 bad input.
"""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import SCHEMA_VERSION, __version__
from .egc import EGCError, EGCSyntaxError, PairingError, parse_egc, validate
from .fixtures import FIXTURES

log = logging.getLogger("vknot")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, message, **extra):
        super().__init__(message)
        self.extra = extra


def read_source(arg):
    """Code text from '-', a file path, a fixture name or a literal code."""
    if arg == "-":
        return sys.stdin.read().strip()
    if os.path.isfile(arg):
        try:
            with open(arg) as fh:
                return fh.read().strip()
        except OSError as err:
            raise InputError(f"cannot read {arg}: {err}")
    return FIXTURES.get(arg.strip().upper(), arg).strip()


def load_code(arg):
    text = read_source(arg)
    try:
        return parse_egc(text)
    except EGCSyntaxError as err:
        raise InputError(str(err), kind="syntax", position=err.position)
    except PairingError as err:
        raise InputError(str(err), kind="pairing", crossing=err.crossing_id)
    except EGCError as err:
        raise InputError(str(err), kind="code")


def emit(data, args):
    if args.json:
        sys.stdout.write(json.dumps(data, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")


# commands
def cmd_validate(args):
    text = read_source(args.code)
    report = validate(text, args.level)
    emit(report.to_json(), args)
    if report.ok:
        return EXIT_OK
    if any(d.kind in ("syntax", "pairing") for d in report.diagnostics):
        return EXIT_INPUT
    return EXIT_FAILED


def _bundle_json(item):
    from .invariants import bundle
    arg, alexander, khovanov, cochains = item
    code = load_code(arg)
    data = bundle(code, alexander=alexander, khovanov=khovanov).to_json()
    if cochains:
        from .cochain import canonical_index_cocycle, virtual_index_cocycle
        data["cochains"] = {"vi": virtual_index_cocycle(code).to_json(),
                            "ci": canonical_index_cocycle(code).to_json()}
    return data


def cmd_invariants(args):
    items = [(a, args.alexander, args.khovanov, args.emit_cochains) for a in args.codes]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            out = list(pool.map(_bundle_json, items))
    else:
        out = [_bundle_json(i) for i in items]
    emit(out[0] if len(out) == 1 else out, args)
    return EXIT_OK


def cmd_alexander(args):
    from .biquandle import abq, generalized_alexander, vaq, xi
    from .laurent import normalize_units
    code = load_code(args.code)
    data = {"schema_version": SCHEMA_VERSION}
    if args.flavor in ("abq", "both"):
        data["abq"] = normalize_units(generalized_alexander(code)).to_json()
        data["abq_square"] = abq(code).square
    if args.flavor in ("vaq", "both"):
        data["vaq"] = normalize_units(xi(code)).to_json()
        data["vaq_square"] = vaq(code).square
    emit(data, args)
    return EXIT_OK


def _parse_aux(code, text):
    from .khovanov import default_aux, random_aux
    if text == "canonical":
        return default_aux(code)
    if text.startswith("random:"):
        try:
            return random_aux(code, int(text.split(":", 1)[1]))
        except ValueError:
            pass
    raise InputError(f"bad --aux value {text!r}; use canonical or random:SEED")


def cmd_khovanov(args):
    from .khovanov import complex_, homology
    code = load_code(args.code)
    aux = _parse_aux(code, args.aux)
    try:
        cx = complex_(code, aux)
    except ValueError as err:
        raise InputError(str(err))
    data = homology(cx).to_json()
    if args.emit_complex:
        data = {"homology": data, "complex": cx.to_json()}
    emit(data, args)
    return EXIT_OK


def cmd_color(args):
    from .biquandle import (BiquandleError, VirtualBiquandle, count_colorings,
                            count_virtual_colorings, load_biquandle)
    code = load_code(args.code)
    try:
        with open(args.biquandle) as fh:
            B = load_biquandle(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as err:
        report = getattr(err, "report", None)
        if isinstance(err, BiquandleError):
            raise InputError(str(err), kind="biquandle", report=report)
        raise InputError(f"cannot load biquandle: {err}")
    if args.virtual:
        if not isinstance(B, VirtualBiquandle):
            raise InputError("--virtual needs an 'f' entry in the biquandle file")
        data = {"count": count_virtual_colorings(code, B), "virtual": True}
    else:
        base = B.base if isinstance(B, VirtualBiquandle) else B
        data = {"count": count_colorings(code, base), "virtual": False}
    emit(data, args)
    return EXIT_OK


def cmd_fuzz(args):
    from .invariants import CHECKS
    from .moves import Move, fuzz, replay
    code = load_code(args.code)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    known = {c.lower() for c in CHECKS}
    bad = [c for c in checks if c.lower() not in known]
    if bad:
        raise InputError(f"unknown checks: {', '.join(bad)}")
    if args.replay:
        with open(args.replay) as fh:
            script = json.load(fh)
        moves = [Move.from_json(m) for m in script.get("moves", script)]
        final, fp = replay(code, moves, checks)
        emit({"final": str(final), "fingerprint": json.loads(json.dumps(fp, default=str))}, args)
        return EXIT_OK
    report = fuzz(code, args.steps, args.seed, checks, max_crossings=args.max_crossings)
    emit(report.to_json(), args)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_fixtures(args):
    emit(dict(FIXTURES), args)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="vknot", description="Invariants of virtual links from extended Gauss codes")
    p.add_argument("--version", action="version", version=f"vknot {__version__} (schema {SCHEMA_VERSION})")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a code")
    s.add_argument("code", help="code, fixture name, file, or - for stdin")
    s.add_argument("--level", choices=["basic", "cohomological"], default="basic")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", parents=[common], help="writhe, wriggle, Q, indices, parity")
    s.add_argument("codes", nargs="+")
    s.add_argument("--alexander", action="store_true", help="include G_D and xi")
    s.add_argument("--khovanov", action="store_true", help="include Khovanov homology")
    s.add_argument("--emit-cochains", action="store_true", help="include vi and ci")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("alexander", parents=[common], help="generalized Alexander polynomials")
    s.add_argument("code")
    s.add_argument("--flavor", choices=["abq", "vaq", "both"], default="both")
    s.set_defaults(func=cmd_alexander)

    s = sub.add_parser("khovanov", parents=[common], help="Khovanov homology")
    s.add_argument("code")
    s.add_argument("--aux", default="canonical", help="canonical or random:SEED")
    s.add_argument("--emit-complex", action="store_true")
    s.set_defaults(func=cmd_khovanov)

    s = sub.add_parser("color", parents=[common], help="count biquandle colourings")
    s.add_argument("code")
    s.add_argument("--biquandle", required=True, help="JSON file {n, circ, star, f?}")
    s.add_argument("--virtual", action="store_true", help="use f at virtual crossings")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("fuzz", parents=[common], help="random moves with invariance checks")
    s.add_argument("code")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--checks", default="Q,wriggle")
    s.add_argument("--max-crossings", type=int, default=9)
    s.add_argument("--replay", help="move script from an earlier report")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("fixtures", parents=[common], help="list built-in diagrams")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as err:
        sys.stderr.write(json.dumps({"error": "input", "message": str(err), **err.extra}) + "\n")
        return EXIT_INPUT
    except Exception as err:  # module failures, reported not swallowed
        log.debug("failure", exc_info=True)
        sys.stderr.write(json.dumps({"error": type(err).__name__, "message": str(err)}) + "\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
