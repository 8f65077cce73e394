"""Command-line driver.

Subcommands:
  eval      one integral value I(n) for a family
  certify   full pipeline for one family, JSON certificate + theorem block
  search    parameter-grid search with equivalence-class deduplication
  identify  run the identification ladder on a value or a certificate file

Exit codes: 0 success, 2 usage, 3 pipeline-stage failure, 4 I/O failure.
"""

import argparse
import datetime
import json
import os
import sys

import mpmath
from mpmath import mp, mpf

from .substrate import PreciseReal, rational
from .quadrature import DomainError, IntegralFamily, family_integral, ConvergenceError
from .lattice import identify_constant, PrecisionError
from .certificate import PipelineError, format_theorem
from .search import SearchJob, format_report, run_search, write_report
from . import cache as cache_mod

_KIND_ALIASES = {
    "log1": "Log1",
    "logratio": "LogRatio",
    "log_ratio": "LogRatio",
    "zeta2": "Zeta2",
    "zeta3k": "Zeta3K",
}


class UsageError(ValueError):
    pass


def parse_family(kind, params):
    key = (kind or "").lower()
    if key not in _KIND_ALIASES:
        raise UsageError("unknown family %r (expected one of %s)"
                         % (kind, ", ".join(sorted(_KIND_ALIASES))))
    try:
        values = tuple(rational(p.strip()) for p in params.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError("could not parse parameters %r" % params)
    try:
        return IntegralFamily(_KIND_ALIASES[key], values)
    except DomainError as exc:
        raise UsageError(str(exc))


def _family_from_args(args):
    kind = args.family_pos or args.family
    params = args.params_pos or args.params
    if not kind or not params:
        raise UsageError("a family kind and comma-separated parameters are required")
    return parse_family(kind, params)


def cmd_eval(args):
    fam = _family_from_args(args)
    res = family_integral(fam, args.n, args.prec)
    with mp.workdps(args.prec):
        print(mpmath.nstr(res.value.value, args.prec))
    return 0


def cmd_certify(args):
    fam = _family_from_args(args)
    cache_dir = args.cache_dir or cache_mod.default_cache_dir()
    progress = (lambda msg: print("... " + msg, file=sys.stderr)) if args.verbose else None
    cert = cache_mod.build_certificate_cached(
        fam, terms=args.terms, precision=args.prec, cache_dir=cache_dir,
        progress=progress)
    out = args.out or (cache_mod.cache_key(fam) + ".certificate.json")
    cache_mod.atomic_write_json(out, cert.to_json())
    print(format_theorem(cert))
    print("certificate written to %s" % out)
    return 0


def cmd_search(args):
    kind = args.family_pos or args.family
    if not kind:
        raise UsageError("search needs a family kind")
    key = kind.lower()
    if key not in _KIND_ALIASES:
        raise UsageError("unknown family %r" % kind)
    if not args.denominator:
        raise UsageError("search needs --denominator")
    numerators = None
    if args.numerators:
        numerators = tuple(int(v) for v in args.numerators.split(","))
    job = SearchJob(kind=_KIND_ALIASES[key], denominator=args.denominator,
                    numerators=numerators, terms=args.terms,
                    precision=args.prec, jobs=args.jobs,
                    max_tuples=args.max_tuples)
    cache_dir = args.cache_dir or cache_mod.default_cache_dir()
    progress = (lambda msg: print("... " + msg, file=sys.stderr)) if args.verbose else None
    report = run_search(job, cache_dir=cache_dir, progress=progress)
    report["header"] = {"generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat()}
    out = args.out or ("%s_den%d.report.json" % (key, args.denominator))
    write_report(report, out)
    print(format_report(report))
    print("report written to %s" % out)
    return 0


def cmd_identify(args):
    source = args.value_or_path
    prec = args.prec
    if os.path.exists(source):
        try:
            with open(source) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("unreadable certificate file: %s" % exc)
        try:
            fam = IntegralFamily.from_json(doc["family"])
            stored = PreciseReal.from_json(doc["constant_value"])
        except (KeyError, TypeError) as exc:
            raise UsageError("malformed certificate: missing %s" % exc)
        if stored.precision >= prec + 45:
            value = stored
        else:
            value = family_integral(fam, 0, prec + 45).value
    else:
        digits = sum(ch.isdigit() for ch in source)
        if digits == 0:
            raise UsageError("argument is neither a file nor a numeric value")
        if digits < prec + 45:
            prec = max(60, digits - 45)
        with mp.workdps(digits + 10):
            try:
                value = PreciseReal(mpf(source), digits)
            except ValueError:
                raise UsageError("could not parse value %r" % source)
        if value.precision < prec + 45:
            raise UsageError(
                "value carries ~%d digits; identification at %d digits needs %d"
                % (digits, prec, prec + 45))
    ident = identify_constant(value, prec)
    if ident is None:
        print("unidentified")
    else:
        from .lattice import identification_residual
        res = identification_residual(ident, value, prec + 40)
        print(ident.describe())
        with mp.workdps(15):
            print("verification residual at %d digits: %s"
                  % (prec + 40, mpmath.nstr(res.value, 4)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="irrcert",
        description="Irrationality certificates for constants defined by "
                    "parameterized unit-cube integrals.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=False, with_terms=False):
        p.add_argument("family_pos", nargs="?", metavar="family",
                       help="log1 | logratio | zeta2 | zeta3k")
        p.add_argument("params_pos", nargs="?", metavar="params",
                       help="comma-separated rational parameters, e.g. 0,0,1/2,0")
        p.add_argument("--family", help="family kind (alternative to positional)")
        p.add_argument("--params", help="parameters (alternative to positional)")
        p.add_argument("--prec", type=int, default=100,
                       help="working precision in decimal digits (default 100)")
        if with_n:
            p.add_argument("--n", type=int, default=0, help="integral index (default 0)")
        if with_terms:
            p.add_argument("--terms", type=int, default=2000,
                           help="exact approximant terms (default 2000)")
        p.add_argument("--cache-dir", default=None,
                       help="cache directory (default $CACHE_DIR or ~/.cache/irrcert)")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--verbose", action="store_true", help="stage progress on stderr")

    p_eval = sub.add_parser("eval", help="evaluate one integral value")
    common(p_eval, with_n=True)
    p_eval.set_defaults(func=cmd_eval)

    p_cert = sub.add_parser("certify", help="run the full pipeline for one family")
    common(p_cert, with_terms=True)
    p_cert.set_defaults(func=cmd_certify)

    p_search = sub.add_parser("search", help="grid search over a denominator")
    common(p_search, with_terms=True)
    p_search.add_argument("--denominator", type=int, help="parameter denominator (>= 2)")
    p_search.add_argument("--numerators",
                          help="comma-separated candidate numerators (default full range)")
    p_search.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_search.add_argument("--max-tuples", type=int, default=None,
                          help="cap on enumerated tuples")
    p_search.set_defaults(func=cmd_search)

    p_id = sub.add_parser("identify", help="identification ladder on a value or certificate")
    p_id.add_argument("value_or_path", help="decimal value or certificate JSON path")
    p_id.add_argument("--prec", type=int, default=100)
    p_id.set_defaults(func=cmd_identify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except PipelineError as exc:
        print("pipeline failure %s" % exc, file=sys.stderr)
        return 3
    except (ConvergenceError, DomainError) as exc:
        print("pipeline failure [quadrature] %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("i/o failure: %s" % exc, file=sys.stderr)
        return 4
    except ValueError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
