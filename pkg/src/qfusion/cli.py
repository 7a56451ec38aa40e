"""Command-line front end.

Every subcommand builds one session (Cartan type, height bound, root order)
and prints either readable text or line-delimited JSON records headed by a
versioned session record.
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .funcalg import CarrierRegistry, arrow, coarrow, evaluate, invariant_subspace, matrix_coefficient, product, unit
from .fusion import fusion_family, fusion_reduced, k_equals_ktilde, kostant_probe, regularity_probe, star, star_limit_check
from .modules import check_relations, finite_dim, irreducible, verma
from .roots import CartanError, RootData, Weight, height
from .shapovalov import gram_block, kernel_block, kernel_generation_check, kernel_inclusion
from .uqg_core import UqAlgebra

FORMAT_VERSION = 1
SUBCOMMANDS = ("gram", "kernel", "module", "fn", "fusion", "star", "probe", "kostant", "verify")


class UsageError(ValueError):
    pass


# -- parsing helpers ---------------------------------------------------------------

def parse_weight(text, rank):
    try:
        c = tuple(Fraction(x) for x in text.replace(" ", "").split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weight {text!r}; use comma-separated rationals like 0,1/3") from None
    if len(c) != rank:
        raise UsageError(f"weight {text!r} has {len(c)} coordinates, rank is {rank}")
    return c


def parse_beta(text, rank):
    """'2,1' or '2a1+a2' (rank one also accepts '1a')."""
    text = text.replace(" ", "")
    if re.fullmatch(r"\d+(,\d+)*", text):
        beta = tuple(int(x) for x in text.split(","))
        if len(beta) != rank:
            raise UsageError(f"beta {text!r} has the wrong rank")
        return beta
    beta = [0] * rank
    for term in text.split("+"):
        m = re.fullmatch(r"(\d*)a(\d*)", term)
        if not m:
            raise UsageError(f"bad beta {text!r}; use 2,1 or 2a1+a2")
        i = int(m.group(2) or 1) - 1
        if not 0 <= i < rank:
            raise UsageError(f"simple root index out of range in {text!r}")
        beta[i] += int(m.group(1) or 1)
    return tuple(beta)


def read_config(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


# -- output -------------------------------------------------------------------------

class Out:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def header(self, alg):
        if self.fmt == "structured":
            self.record("session", format="qfusion-structured", version=FORMAT_VERSION,
                        type=alg.rd.name or str(alg.rd.A), D=alg.D, Dprime=alg.Dz, height_bound=alg.N)
        else:
            self.text(f"# type {alg.rd.name or alg.rd.A}  D={alg.D}  D'={alg.Dz}  N={alg.N}")

    def record(self, rec, /, **fields):
        if self.fmt == "structured":
            self.stream.write(json.dumps({"record": rec, **_jsonable(fields)}, sort_keys=True) + "\n")
        else:
            body = "  ".join(f"{k}={_plain(v)}" for k, v in fields.items())
            self.stream.write(f"{rec}: {body}\n")

    def text(self, line):
        if self.fmt == "text":
            self.stream.write(line + "\n")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def _plain(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


# -- session ------------------------------------------------------------------------

def build_session(args, extra_height=0):
    try:
        rd = RootData.of(args.type)
    except CartanError as exc:
        raise UsageError(str(exc)) from None
    r = rd.rank
    weights = []
    lam = None
    if getattr(args, "weight", None):
        c = parse_weight(args.weight, r)
        d = parse_weight(args.direction, r) if getattr(args, "direction", None) else None
        lam = Weight(c, d)
        weights.append(lam)
    if getattr(args, "inside", None):
        weights.append(Weight(parse_weight(args.inside, r)))
    carrier_w = None
    need = args.height
    if getattr(args, "carrier", None):
        carrier_w = Weight(parse_weight(args.carrier, r))
        if not rd.is_dominant_integral(carrier_w):
            raise UsageError(f"carrier weight {args.carrier} is not dominant integral")
        need = max(need, rd.depth(carrier_w) + 1)
    need = max(need, extra_height)
    alg = UqAlgebra(rd, need, root_order=args.root_order, weights=weights)
    return alg, lam, carrier_w


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this subcommand")
    return value


# -- subcommands ----------------------------------------------------------------------

def cmd_gram(args, out):
    alg, lam, _ = build_session(args)
    _require(lam, "--weight")
    beta = parse_beta(_require(args.beta, "--beta"), alg.r)
    alg.N = max(alg.N, height(beta))
    out.header(alg)
    block = gram_block(alg, lam, beta)
    out.record("basis", beta=beta, words=[alg.format_monomial((w, alg.zero_t, ())) for w in block.words])
    for i, row in enumerate(block.matrix):
        out.record("row", index=i, entries=row)
    out.record("det", value=block.det())
    if lam.direction is None:
        out.record("kernel", dim=len(block.kernel_basis), vectors=block.kernel_basis)
        out.record("complement", tags=block.complement_tags)
    else:
        out.record("inverse", rows=block.inverse)
    return 0


def cmd_kernel(args, out):
    alg, lam, _ = build_session(args)
    _require(lam, "--weight")
    out.header(alg)
    if args.gens:
        gens = [alg.parse_element(g) for g in args.gens.split(";")]
        rep = kernel_generation_check(alg, lam, gens, args.height)
        for r in rep:
            out.record("generation", **r)
        return 0 if all(r["relation"] == "equal" for r in rep) else 1
    if args.inside:
        lam0 = Weight(parse_weight(args.inside, alg.r))
        rep = kernel_inclusion(alg, lam, lam0, args.height)
        for r in rep:
            out.record("inclusion", **r)
        return 0 if all(r["included"] for r in rep) else 1
    betas = [parse_beta(args.beta, alg.r)] if args.beta else alg.rd.enumerate_qplus(args.height)
    for beta in betas:
        ks = kernel_block(alg, lam, beta)
        out.record("kernel", beta=beta, dim=len(ks), elements=[str(y) for y in ks])
    return 0


def cmd_module(args, out):
    alg, lam, _ = build_session(args)
    _require(lam, "--weight")
    if args.kind == "finite":
        if not alg.rd.is_dominant_integral(lam):
            raise UsageError(f"--kind finite needs a dominant integral weight, got {args.weight}")
        alg.N = max(alg.N, alg.rd.depth(lam) + 1)
    out.header(alg)
    if args.kind == "verma":
        V = verma(alg, lam, args.height)
    elif args.kind == "irreducible":
        V = irreducible(alg, lam, args.height)
    else:
        V = finite_dim(alg, lam)
    layers = {}
    for w in V.weights:
        layers[w] = layers.get(w, 0) + 1
    out.record("module", kind=V.kind, dim=V.dim, truncated=V.truncated)
    for w, m in layers.items():
        out.record("weight", weight=w, multiplicity=m)
    if args.matrices:
        for name, mats in (("e", V.E), ("f", V.F)):
            for i, M in enumerate(mats):
                entries = [[r, c, v] for r in sorted(M) for c, v in sorted(M[r].items())]
                out.record("matrix", generator=f"{name}{i + 1}", entries=entries)
    if args.check:
        bad = check_relations(V)
        out.record("relations", failures=bad)
        return 0 if not bad else 1
    return 0


def _carrier(alg, carrier_w):
    reg = CarrierRegistry(alg)
    V = reg.register(finite_dim(alg, carrier_w), f"L({carrier_w})")
    return reg, V


def cmd_fn(args, out):
    alg, _, cw = build_session(args)
    reg, V = _carrier(alg, _require(cw, "--carrier"))
    out.header(alg)
    p, j = (int(x) for x in args.coefficient.split(","))
    f = matrix_coefficient(reg, V, p, j)
    if args.arrow:
        f = arrow(alg.parse_element(args.arrow), f)
    if args.coarrow:
        f = coarrow(f, alg.parse_element(args.coarrow))
    if args.times:
        p2, j2 = (int(x) for x in args.times.split(","))
        f = product(f, matrix_coefficient(reg, V, p2, j2))
    out.record("function", carrier=f.carrier.name, atoms=[[p, j, c] for p, j, c in f.atoms()])
    if args.evaluate:
        out.record("value", at=args.evaluate, value=evaluate(f, alg.parse_element(args.evaluate)))
    return 0


def cmd_fusion(args, out):
    alg, lam, _ = build_session(args)
    _require(lam, "--weight")
    out.header(alg)
    if lam.direction is None:
        F = fusion_reduced(alg, lam, args.height)
    else:
        F = fusion_family(alg, lam.base(), Weight(lam.direction), args.height)
    poles = F.pole_orders() if F.is_family else {}
    for beta, (tags, inv) in F.blocks.items():
        names = [alg.format_monomial((t, alg.zero_t, ())) for t in tags]
        fields = {"beta": beta, "tags": names, "inverse": inv}
        if F.is_family:
            fields["pole_order"] = poles[beta]
        out.record("block", **fields)
    return 0


def _pick(reg, lam, V, choice, B):
    if choice == "unit":
        return unit(reg)
    k = int(choice)
    if not 0 <= k < len(B):
        raise UsageError(f"invariant basis index {k} out of range (size {len(B)})")
    return B[k]


def cmd_star(args, out):
    alg, lam, cw = build_session(args)
    _require(lam, "--weight")
    reg, V = _carrier(alg, _require(cw, "--carrier"))
    out.header(alg)
    base = lam.base() if lam.direction is not None else lam
    B = invariant_subspace(reg, base, V)
    out.record("invariant_basis", size=len(B))
    if lam.direction is None:
        F = fusion_reduced(alg, lam, alg.N)
    else:
        F = fusion_family(alg, base, Weight(lam.direction), alg.N)
    f1 = _pick(reg, base, V, args.lhs, B)
    f2 = _pick(reg, base, V, args.rhs, B)
    s = star(F, f1, f2)
    out.record("star", carrier=s.carrier.name, atoms=[[p, j, c] for p, j, c in s.atoms()])
    if lam.direction is not None:
        out.record("limit", atoms=[[p, j, c] for p, j, c in s.eval_z1().atoms()])
    return 0


def cmd_probe(args, out):
    alg, lam, cw = build_session(args)
    _require(lam, "--weight")
    _require(lam.direction, "--direction")
    reg, V = _carrier(alg, _require(cw, "--carrier"))
    out.header(alg)
    lam0, nu = lam.base(), Weight(lam.direction)
    rep = regularity_probe(alg, lam0, nu, V, args.height)
    for r in rep["rows"]:
        out.record("row", control=r["control"], vector=r["vector"], pole_order=r["pole_order"],
                   limits_match=r["limits_match"], witness=r["witness"], verdict=r["verdict"])
    out.record("block_poles", poles={",".join(map(str, k)): v for k, v in rep["family_block_poles"].items()})
    lim = star_limit_check(alg, reg, lam0, nu, V)
    out.record("star_limit", pairs=lim["pairs"], failures=lim["failures"], verdict=lim["verdict"])
    ok = rep["verdict"] == "PASS" and lim["verdict"] == "PASS"
    out.record("verdict", value="PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_kostant(args, out):
    alg, lam, cw = build_session(args)
    _require(lam, "--weight")
    _require(lam.direction, "--direction")
    reg, V = _carrier(alg, _require(cw, "--carrier"))
    out.header(alg)
    lam0, nu = lam.base(), Weight(lam.direction)
    eq = k_equals_ktilde(alg, lam0, V)
    out.record("k_equals_ktilde", **eq)
    rep = kostant_probe(alg, lam0, nu, V, args.height)
    for r in rep["rows"]:
        out.record("lift", **r)
    ok = eq["equal"] and rep["verdict"] == "PASS"
    out.record("verdict", value="PASS" if ok else "FAIL", evidence=rep["evidence"])
    return 0 if ok else 1


def cmd_verify(args, out):
    from .verify import CRITERIA, run
    keys = {key: n for n, _, _, key in CRITERIA}
    wanted = []
    for name in (args.suite or "all").split(","):
        name = name.strip()
        if name == "all":
            wanted = [n for n, *_ in CRITERIA]
            break
        if name.isdigit() and int(name) in {n for n, *_ in CRITERIA}:
            wanted.append(int(name))
        elif name in keys:
            wanted.append(keys[name])
        else:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(keys)} or all")
    if out.fmt == "structured":
        out.record("session", format="qfusion-structured", version=FORMAT_VERSION, suite=args.suite or "all")
    ok = True
    for n in wanted:
        v = run(n)
        ok &= v.passed
        if out.fmt == "structured":
            out.record("criterion", number=v.number, name=v.name, verdict="PASS" if v.passed else "FAIL",
                       details=v.details)
        else:
            out.text(v.line())
            if args.verbose or not v.passed:
                for d in v.details:
                    out.text("    " + d)
    out.record("summary", verdict="PASS" if ok else "FAIL", criteria=len(wanted))
    return 0 if ok else 1


COMMANDS = {"gram": cmd_gram, "kernel": cmd_kernel, "module": cmd_module, "fn": cmd_fn, "fusion": cmd_fusion,
            "star": cmd_star, "probe": cmd_probe, "kostant": cmd_kostant, "verify": cmd_verify}


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of key = value lines; flags override it")
    common.add_argument("--type", help="Cartan type (A2, B3, ...) or an explicit matrix like [[2,-1],[-1,2]]")
    common.add_argument("--height", type=int, help="height bound N (default 4)")
    common.add_argument("--root-order", type=int, dest="root_order", help="override D (a multiple of the minimal D)")
    common.add_argument("--format", choices=("text", "structured"), help="output format (default text)")
    common.add_argument("--weight", help="weight in fundamental coordinates, e.g. 0,1/3")
    common.add_argument("--direction", help="family direction nu for lambda0 + t nu")
    common.add_argument("--carrier", help="dominant integral highest weight of the carrier module")

    p = argparse.ArgumentParser(prog="qfusion", description="Exact computations in quantized enveloping algebras.")
    p.add_argument("--version", action="version", version=f"qfusion {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("gram", parents=[common], help="Gram block, determinant, kernel and complement")
    g.add_argument("--beta", help="degree, e.g. 1a, 2a1+a2 or 2,1")
    k = sub.add_parser("kernel", parents=[common], help="kernel blocks, generation and inclusion checks")
    k.add_argument("--beta")
    k.add_argument("--gens", help="';'-separated generators, e.g. 'f1^2;f2'")
    k.add_argument("--inside", help="weight lambda0: test K_weight inside K_lambda0")
    m = sub.add_parser("module", parents=[common], help="layer dimensions and action matrices")
    m.add_argument("--kind", choices=("verma", "irreducible", "finite"), default="finite")
    m.add_argument("--matrices", action="store_true")
    m.add_argument("--check", action="store_true", help="verify the defining relations as matrix identities")
    f = sub.add_parser("fn", parents=[common], help="matrix coefficients, arrows and products")
    f.add_argument("--coefficient", default="0,0", help="covector,vector indices")
    f.add_argument("--arrow", help="apply ->a for an element a")
    f.add_argument("--coarrow", help="apply <-a for an element a")
    f.add_argument("--times", help="multiply by another coefficient p,j on the same carrier")
    f.add_argument("--evaluate", help="evaluate at an element")
    sub.add_parser("fusion", parents=[common], help="blocks of the reduced fusion element or of a family")
    s = sub.add_parser("star", parents=[common], help="star product of invariant basis elements")
    s.add_argument("--lhs", default="0", help="invariant basis index or 'unit'")
    s.add_argument("--rhs", default="0", help="invariant basis index or 'unit'")
    sub.add_parser("probe", parents=[common], help="regularity probe along lambda0 + t nu")
    sub.add_parser("kostant", parents=[common], help="Kostant lift probe along lambda0 + t nu")
    v = sub.add_parser("verify", parents=[common], help="run acceptance criteria")
    v.add_argument("--suite", help="comma-separated suite names or numbers, or all")
    v.add_argument("--verbose", action="store_true")
    return p


DEFAULTS = {"type": "A1", "height": 4, "root_order": None, "format": "text", "weight": None,
            "direction": None, "carrier": None}


def resolve(args):
    conf = read_config(args.config) if args.config else {}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            val = conf.get(key, default)
            if key in ("height", "root_order") and isinstance(val, str):
                val = int(val)
            setattr(args, key, val)
    if args.height < 1:
        raise UsageError("--height must be >= 1")
    return args


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        args = resolve(args)
        return COMMANDS[args.command](args, Out(args.format, stream))
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"qfusion {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
