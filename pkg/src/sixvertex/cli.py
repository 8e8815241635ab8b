"""Command-line interface: ``sixv``.

Subcommands::

    sixv z   --n N [--method M] [--params FILE | --seed S] [--eta E] [--bits P]
    sixv g   --n N --m M [...same options...]
    sixv h   --n N --m M [...same options...]
    sixv ff  --n N --lambda L (--m M | --sweep-m)
    sixv hom {z,g,h} --n N [--m M] --lambda L --eta E [--bits P]
    sixv oracle --n N [--params FILE | --seed S] [--eta E]
    sixv selftest [--seed S]
    sixv sweep {ff,hom} --n N (--lambda L ... | --lambda-grid START STOP COUNT)
               [--m-start A] [--m-stop B] [--eta E] [--bits P]

Complex flags use the grammar ``RE`` or ``RE+IMj`` (also ``RE-IMj`` and
``IMj``), e.g. ``--eta 0.5``, ``--eta 0+0.7853981633974483j``.

A parameter file is JSON of the form
``{"lambdas": [[re, im], ...], "nus": [[re, im], ...], "eta": [re, im]}``.

Exit status: 0 success, 1 selftest failure, 2 usage or validation error,
3 numeric singularity.  All numbers are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import determinant, enumeration, free_fermion, homogeneous, qism
from . import numeric as nm
from .determinant import CorrelatorResult
from .errors import SingularParameterError, SixVertexError
from .model import SpectralParams, random_params

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3
METHODS = ("det", "perm", "reduction", "qism", "enum")
SELFTEST_MAX_N = 4
SELFTEST_TOL = 1e-9


class UsageError(Exception):
    pass


# ------------------------------------------------------------- formatting


def fmt(x: float) -> str:
    """17 significant digits; integers and specials stay JSON/CSV friendly."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(x)
    return format(x, ".17g")


def fmt_complex(z) -> str:
    """``RE`` when the imaginary part is zero, ``RE+IMj`` otherwise."""
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


def to_json(obj) -> str:
    """``json.dumps`` with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, float):
        return fmt(obj)
    return json.dumps(obj)


# ---------------------------------------------------------------- parsing


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number (RE or RE+IMj): {text!r}") from None


def load_params(path: str) -> SpectralParams:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read parameter file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"parameter file is not valid JSON: {exc}") from None

    def pair(v, what):
        if (not isinstance(v, (list, tuple)) or len(v) != 2
                or not all(isinstance(x, (int, float)) for x in v)):
            raise UsageError(f"{what} must be a [re, im] pair, got {v!r}")
        return complex(v[0], v[1])

    if not isinstance(data, dict) or set(data) != {"lambdas", "nus", "eta"}:
        raise UsageError('parameter file needs exactly the keys "lambdas", "nus", "eta"')
    lams = [pair(v, "lambda") for v in data["lambdas"]]
    nus = [pair(v, "nu") for v in data["nus"]]
    return SpectralParams(lams, nus, pair(data["eta"], "eta"))


def resolve_params(args) -> SpectralParams:
    if args.params is not None:
        if args.seed is not None:
            raise UsageError("--params and --seed are mutually exclusive")
        p = load_params(args.params)
        if args.n is not None and args.n != p.n:
            raise UsageError(f"--n {args.n} does not match the {p.n} parameters in {args.params}")
        if args.eta is not None:
            p = SpectralParams(p.lambdas, p.nus, args.eta)
        return p
    if args.n is None:
        raise UsageError("--n is required unless --params is given")
    if args.n < 1:
        raise UsageError("--n must be positive")
    seed = 0 if args.seed is None else args.seed
    return random_params(args.n, seed=seed, eta=args.eta)


# --------------------------------------------------------------- commands


def _evaluate(quantity: str, method: str, params: SpectralParams, m: int | None) -> CorrelatorResult:
    n = params.n
    if quantity == "Z":
        if m is not None:
            raise UsageError("--m is not used for the partition function")
        if method == "reduction":
            raise UsageError("method 'reduction' applies to g and h only")
    else:
        if m is None:
            raise UsageError("--m is required for g and h")
        if not 1 <= m <= n:
            raise UsageError(f"--m must lie in 1..{n}")
        if method == "perm":
            raise UsageError("method 'perm' applies to z only")
    if method == "enum" and n > enumeration.MAX_ENUMERATION_N:
        raise UsageError(f"method 'enum' is capped at N = {enumeration.MAX_ENUMERATION_N}")
    if method == "qism" and n > qism.MAX_SITES:
        raise UsageError(f"method 'qism' is capped at N = {qism.MAX_SITES}")
    if method == "perm" and n > determinant.MAX_PERM_N:
        raise UsageError(f"method 'perm' is capped at N = {determinant.MAX_PERM_N}")

    if method in ("qism", "enum"):
        # both oracles run in double precision
        if method == "qism":
            value = {"Z": lambda: qism.z_via_monodromy(params),
                     "G": lambda: qism.g_via_monodromy(params, m),
                     "H": lambda: qism.h_via_monodromy(params, m)}[quantity]()
        else:
            tally = enumeration.correlators_by_enumeration(params)
            if quantity == "Z":
                value = tally.total
            else:
                value = (tally.g if quantity == "G" else tally.h)[m - 1]
        nm.ensure_finite(value, quantity)
        return CorrelatorResult(complex(value), quantity, n, m, method, nm.DEFAULT_BITS)

    table = {
        ("Z", "det"): lambda: determinant.z_det(params),
        ("Z", "perm"): lambda: determinant.z_perm(params),
        ("G", "det"): lambda: determinant.g_det(params, m),
        ("H", "det"): lambda: determinant.h_det(params, m),
        ("G", "reduction"): lambda: determinant.g_reduction(params, m),
        ("H", "reduction"): lambda: determinant.h_reduction(params, m),
    }
    if quantity != "Z" and method == "reduction" and n < 2:
        raise UsageError("method 'reduction' needs N >= 2")
    return table[(quantity, method)]()


def cmd_correlator(args) -> int:
    params = resolve_params(args)
    with nm.precision(args.bits):
        result = _evaluate(args.command.upper(), args.method, params, args.m)
    print(to_json(result.to_dict()))
    return EXIT_OK


def _ff_row(n: int, m: int, lam: float) -> tuple[float, float]:
    return free_fermion.h_ff(n, m, lam), free_fermion.g_ff(n, m, lam)


def cmd_ff(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.sweep_m == (args.m is not None):
        raise UsageError("give exactly one of --m and --sweep-m")
    ms = range(1, args.n + 1) if args.sweep_m else [args.m]
    if not args.sweep_m and not 1 <= args.m <= args.n:
        raise UsageError(f"--m must lie in 1..{args.n}")
    print("M,H,G")
    for m in ms:
        h, g = _ff_row(args.n, m, args.lam)
        print(f"{m},{fmt(h)},{fmt(g)}")
    return EXIT_OK


def _check_hom(n: int, m: int | None, need_m: bool) -> None:
    if not 1 <= n <= homogeneous.MAX_HOMOGENEOUS_N:
        raise UsageError(f"--n must lie in 1..{homogeneous.MAX_HOMOGENEOUS_N}")
    if need_m and m is None:
        raise UsageError("--m is required for g and h")
    if not need_m and m is not None:
        raise UsageError("--m is not used for the partition function")
    if m is not None and not 1 <= m <= n:
        raise UsageError(f"--m must lie in 1..{n}")


def cmd_hom(args) -> int:
    q = args.quantity
    _check_hom(args.n, args.m, q != "z")
    if q == "z":
        value = homogeneous.z_hom(args.lam, args.eta, args.n, bits=args.bits)
    elif q == "g":
        value = homogeneous.g_hom(args.lam, args.eta, args.n, args.m, bits=args.bits)
    else:
        value = homogeneous.h_hom(args.lam, args.eta, args.n, args.m, bits=args.bits)
    bits = args.bits if args.bits is not None else max(nm.DEFAULT_BITS, homogeneous.required_bits(args.n))
    result = CorrelatorResult(complex(value), q.upper(), args.n, args.m, "hom", bits)
    print(to_json(result.to_dict()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    params = resolve_params(args)
    if params.n > enumeration.MAX_ENUMERATION_N:
        raise UsageError(f"enumeration is capped at N = {enumeration.MAX_ENUMERATION_N}")
    print(to_json(enumeration.correlators_by_enumeration(params).to_dict()))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.lambda_grid is not None and args.lam:
        raise UsageError("--lambda and --lambda-grid are mutually exclusive")
    if args.lambda_grid is not None:
        start, stop, count = args.lambda_grid
        try:
            start, stop, count = parse_complex(start), parse_complex(stop), int(count)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"bad --lambda-grid: {exc}") from None
        if count < 0:
            raise UsageError("COUNT must be non-negative")
        lams = [start + (stop - start) * (i / (count - 1) if count > 1 else 0) for i in range(count)]
    else:
        lams = list(args.lam or [])
    if args.kind == "ff":
        if args.eta is not None or args.bits is not None:
            raise UsageError("--eta and --bits apply to hom sweeps only")
        if any(z.imag != 0 for z in lams):
            raise UsageError("free-fermion sweeps take real lambda values")
        if args.n < 1:
            raise UsageError("--n must be positive")
    else:
        if args.eta is None:
            raise UsageError("hom sweeps need --eta")
        _check_hom(args.n, None, False)
    m_start = 1 if args.m_start is None else args.m_start
    m_stop = args.n if args.m_stop is None else args.m_stop
    if m_start < 1 or m_stop > args.n:
        raise UsageError(f"the M range must lie within 1..{args.n}")

    print("n,m,lambda_re,lambda_im,G,H")
    for lam in lams:
        for m in range(m_start, m_stop + 1):
            if args.kind == "ff":
                h, g = _ff_row(args.n, m, lam.real)
            else:
                g = homogeneous.g_hom(lam, args.eta, args.n, m, bits=args.bits)
                h = homogeneous.h_hom(lam, args.eta, args.n, m, bits=args.bits)
            print(f"{args.n},{m},{fmt(lam.real)},{fmt(lam.imag)},{fmt_complex(g)},{fmt_complex(h)}")
    return EXIT_OK


# ---------------------------------------------------------------- selftest


def _rel(a, b) -> float:
    a, b = complex(a), complex(b)
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _spread(values) -> float:
    return max(_rel(v, values[0]) for v in values)


def selftest_checks(seed: int = 0):
    """Yield ``(name, residual, tolerance)`` for the oracle-equivalence suite."""
    for n in range(1, SELFTEST_MAX_N + 1):
        p = random_params(n, seed=seed + n)
        zs = [determinant.z_det(p).value, determinant.z_perm(p).value,
              qism.z_via_monodromy(p), enumeration.z_by_enumeration(p)]
        yield f"Z det/perm/qism/enum N={n}", _spread(zs), SELFTEST_TOL

        tally = enumeration.correlators_by_enumeration(p)
        worst_g = worst_h = worst_conn = 0.0
        for m in range(1, n + 1):
            gs = [determinant.g_det(p, m).value, qism.g_via_monodromy(p, m), tally.g[m - 1]]
            hs = [determinant.h_det(p, m).value, qism.h_via_monodromy(p, m), tally.h[m - 1]]
            if n >= 2:
                gs.append(determinant.g_reduction(p, m).value)
                hs.append(determinant.h_reduction(p, m).value)
            worst_g = max(worst_g, _spread(gs))
            worst_h = max(worst_h, _spread(hs))
            hsum = sum(determinant.h_det(p, k).value for k in range(1, m + 1))
            worst_conn = max(worst_conn, _rel(hsum, gs[0]))
        yield f"G det/reduction/qism/enum N={n}", worst_g, SELFTEST_TOL
        yield f"H det/reduction/qism/enum N={n}", worst_h, SELFTEST_TOL
        yield f"G = cumulative sum of H N={n}", worst_conn, SELFTEST_TOL

        if n >= 2:
            yield (f"recursion all columns N={n}",
                   max(determinant.recursion_residual(p, j) for j in range(1, n + 1)), SELFTEST_TOL)
        yield f"algebra residuals N={n}", qism.algebra_residuals(p, sample_size=1, seed=seed).max(), 1e-10

        ff = free_fermion.FreeFermionParams([float(x.imag) for x in p.lambdas], [float(x.imag) for x in p.nus])
        z_map = free_fermion.from_generic_z(complex(determinant.z_det(ff.to_spectral()).value), n)
        yield f"free-fermion product form N={n}", _rel(z_map, free_fermion.z_ff(ff)), 1e-10

        lam_ff = 0.4
        lam_h = free_fermion.homogeneous_lambda(lam_ff)
        worst = max(max(_rel(homogeneous.h_hom(lam_h, free_fermion.ETA_FF, n, m), free_fermion.h_ff(n, m, lam_ff)),
                        _rel(homogeneous.g_hom(lam_h, free_fermion.ETA_FF, n, m), free_fermion.g_ff(n, m, lam_ff)))
                    for m in range(1, n + 1))
        yield f"free-fermion binomial law N={n}", worst, 1e-8

        yield (f"ice point ASM count N={n}",
               abs(homogeneous.ice_point_asm(n) - enumeration.count_configs(n)), 1e-6)


def cmd_selftest(args) -> int:
    seed = 0 if args.seed is None else args.seed
    failures = 0
    with nm.precision(args.bits):
        for name, residual, tol in selftest_checks(seed):
            ok = residual < tol
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'}  {name}  residual={residual:.3e}  tol={tol:.0e}")
    print(f"{'all checks passed' if not failures else f'{failures} check(s) failed'}")
    return EXIT_OK if not failures else EXIT_FAIL


# ------------------------------------------------------------------ parser


def _add_param_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="lattice size N")
    p.add_argument("--params", metavar="FILE", help="JSON parameter file")
    p.add_argument("--seed", type=int, help="seed for random parameters (default 0)")
    p.add_argument("--eta", type=parse_complex, help="override the crossing parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sixv", description="Six-vertex model with domain-wall boundary.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in (("z", "partition function Z_N"), ("g", "boundary polarization G_N^(M)"),
                      ("h", "turning probability H_N^(M)")):
        p = sub.add_parser(name, help=doc)
        _add_param_options(p)
        p.add_argument("--m", type=int, help="row M, counted from the top (1..N)")
        p.add_argument("--method", choices=METHODS, default="det")
        p.add_argument("--bits", type=int, default=nm.DEFAULT_BITS, help="working precision in bits")
        p.set_defaults(func=cmd_correlator)

    p = sub.add_parser("ff", help="free-fermion closed forms, CSV rows M,H,G")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--sweep-m", action="store_true", help="emit every M = 1..N")
    p.set_defaults(func=cmd_ff)

    p = sub.add_parser("hom", help="homogeneous-lattice determinants")
    p.add_argument("quantity", choices=("z", "g", "h"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    p.add_argument("--eta", type=parse_complex, required=True)
    p.add_argument("--bits", type=int, help="working precision (default: chosen from N)")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("oracle", help="enumeration tallies as JSON")
    _add_param_options(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="oracle-equivalence checks at N <= 4")
    p.add_argument("--seed", type=int)
    p.add_argument("--bits", type=int, default=nm.DEFAULT_BITS,
                   help="precision of the determinant evaluations")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("sweep", help="CSV grid n,m,lambda_re,lambda_im,G,H")
    p.add_argument("kind", choices=("ff", "hom"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=parse_complex, action="append",
                   help="grid value (repeatable)")
    p.add_argument("--lambda-grid", nargs=3, metavar=("START", "STOP", "COUNT"),
                   help="COUNT evenly spaced values from START to STOP")
    p.add_argument("--m-start", type=int)
    p.add_argument("--m-stop", type=int)
    p.add_argument("--eta", type=parse_complex)
    p.add_argument("--bits", type=int)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sixv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularParameterError as exc:
        print(f"sixv: singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (SixVertexError, ValueError) as exc:
        print(f"sixv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
