"""Parameter-grid searches with equivalence-class deduplication.

A search enumerates every admissible parameter tuple with numerators over a
fixed denominator, certifies each (with caching, so searches resume), then
clusters the constants by fractional-linear equivalence; each class carries
a stored witness quadruple.  Classes with no identification are flagged as
candidate first-ever irrationality proofs.
"""

import concurrent.futures
from dataclasses import dataclass
from itertools import product

from gmpy2 import mpq

from .substrate import PreciseReal
from .quadrature import DomainError, IntegralFamily, family_integral
from .lattice import equivalent_constants
from .certificate import PipelineError
from . import cache as cache_mod

REPORT_SCHEMA_VERSION = 1

# conjectural equivalences only below this height, so false merges stay rare
# height, at the report's working precision
EQUIVALENCE_HEIGHT_BOUND = 10 ** 6


@dataclass(frozen=True)
class SearchJob:
    kind: str
    denominator: int
    numerators: tuple = None     # candidate numerators; default -(q-1)..q-1
    terms: int = 2000
    precision: int = 100
    jobs: int = 1
    max_tuples: int = None       # safety valve for enormous grids

    def __post_init__(self):
        if self.denominator < 2:
            raise ValueError("denominator must be >= 2")
        if self.numerators is None:
            q = self.denominator
            object.__setattr__(self, "numerators",
                               tuple(range(-(q - 1), q)))

    def families(self):
        """Admissible parameter tuples, one per symmetry class."""
        q = self.denominator
        count = {"Log1": 3, "LogRatio": 4, "Zeta2": 4, "Zeta3K": 5}[self.kind]
        seen = set()
        out = []
        for nums in product(self.numerators, repeat=count):
            params = tuple(mpq(j, q) for j in nums)
            if all(p.denominator == 1 for p in params):
                continue  # integer tuple: not a denominator-q point
            try:
                fam = IntegralFamily(self.kind, params)
            except DomainError:
                continue
            key = fam.param_key()
            if key in seen:
                continue
            seen.update(fam.symmetries())
            out.append(fam)
            if self.max_tuples and len(out) >= self.max_tuples:
                break
        return out

    def to_json(self):
        return {"kind": self.kind, "denominator": self.denominator,
                "numerators": list(self.numerators), "terms": self.terms,
                "precision": self.precision, "jobs": self.jobs}


def _certify_worker(args):
    kind, params, terms, precision, cache_dir = args
    fam = IntegralFamily(kind, tuple(params))
    try:
        cache_mod.build_certificate_cached(fam, terms=terms, precision=precision,
                                           cache_dir=cache_dir)
        return (fam.param_key(), None)
    except PipelineError as exc:
        return (fam.param_key(), "%s: %s" % (exc.stage, exc))
    except Exception as exc:  # individual-tuple failures never kill the job
        return (fam.param_key(), "error: %s" % exc)


def run_search(job, cache_dir=None, progress=None):
    """Certify the whole grid (resumable via cache), cluster by equivalence,
    and return the report dict."""
    cache_dir = cache_dir or cache_mod.default_cache_dir()
    note = progress or (lambda msg: None)
    families = job.families()
    note("grid: %d admissible tuples" % len(families))

    failures = {}
    todo = [(job.kind, [str(p) for p in f.params], job.terms, job.precision, cache_dir)
            for f in families]
    if job.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=job.jobs) as pool:
            for key, err in pool.map(_certify_worker, todo):
                if err:
                    failures[key] = err
                note("done %s%s" % (key, " [%s]" % err if err else ""))
    else:
        for args in todo:
            key, err = _certify_worker(args)
            if err:
                failures[key] = err
            note("done %s%s" % (key, " [%s]" % err if err else ""))

    # single-threaded assembly over completed certificates
    certs = []
    for fam in families:
        entry = cache_mod.load_entry(cache_dir, fam)
        if not entry or entry.get("certificate") is None:
            continue
        from .certificate import IrrationalityCertificate
        certs.append(IrrationalityCertificate.from_json(entry["certificate"]))
    certs.sort(key=lambda c: c.family.param_key())

    classes = []
    for cert in certs:
        placed = False
        c_val = _rebuild_value(cert, job.precision)
        eq_prec = max(60, min(job.precision, c_val.precision - 45))
        for cls in classes:
            witness = equivalent_constants(cls["_value"], c_val, eq_prec,
                                           EQUIVALENCE_HEIGHT_BOUND)
            if witness is not None:
                cls["members"].append({
                    "params": cert.family.param_key(),
                    "witness": list(witness),
                    "delta": _num(cert.delta),
                })
                placed = True
                break
        if not placed:
            classes.append({
                "_value": c_val,
                "representative": cert.family.param_key(),
                "identification": (cert.identification.to_json()
                                   if cert.identification else None),
                "delta": _num(cert.delta),
                "measure": _num(cert.measure) if cert.measure else None,
                "verdict": cert.verdict,
                "members": [],
                "first_proof_candidate": (cert.identification is None
                                          and cert.verdict == "irrationality-candidate"),
            })
    for cls in classes:
        del cls["_value"]

    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "job": job.to_json(),
        "equivalence_height_bound": EQUIVALENCE_HEIGHT_BOUND,
        "tuples_enumerated": len(families),
        "tuples_certified": len(certs),
        "classes": classes,
        "class_count": len(classes),
        "failures": dict(sorted(failures.items())),
    }


def _rebuild_value(cert, precision):
    """Constant value with confirmation headroom for equivalence testing;
    the stored value is reused whenever it already carries enough digits."""
    if cert.constant_value.precision >= 105:
        return cert.constant_value
    return family_integral(cert.family, 0, min(precision, 100) + 45).value


def _num(x):
    return float(x.value) if isinstance(x, PreciseReal) else x


def format_report(report):
    lines = []
    job = report["job"]
    lines.append("search %s denominator %d: %d tuples, %d certified, %d classes"
                 % (job["kind"], job["denominator"], report["tuples_enumerated"],
                    report["tuples_certified"], report["class_count"]))
    lines.append("(equivalences conjectural, height bound %d at %d digits)"
                 % (report["equivalence_height_bound"], job["precision"]))
    for i, cls in enumerate(report["classes"]):
        ident = cls["identification"]
        alias = ident["description"] if ident else "UNIDENTIFIED"
        flag = "  ** candidate first-ever irrationality proof" if cls["first_proof_candidate"] else ""
        lines.append("class %d: %s  delta=%.6g  %s%s"
                     % (i + 1, cls["representative"], cls["delta"], alias, flag))
        for m in cls["members"]:
            lines.append("    ~ %s  witness %s" % (m["params"], m["witness"]))
    for key, err in report["failures"].items():
        lines.append("failed %s: %s" % (key, err))
    return "\n".join(lines)


def write_report(report, path):
    cache_mod.atomic_write_json(path, report)
