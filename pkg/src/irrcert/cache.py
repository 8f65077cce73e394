"""Persistent per-family cache: quadrature values, recurrence, exact term
arrays, and the finished certificate, one JSON file per (family, params).

Writes are atomic (temp file + rename) so a killed search never leaves a
torn cache entry; exact rationals round-trip as "p/q" strings.
"""

import json
import os
import tempfile

from .substrate import PreciseReal, rational, rational_str
from .quadrature import family_integral
from .certificate import (
    DEFAULT_MAX_DEGREE,
    IrrationalityCertificate,
    PipelineError,
    build_certificate,
)

CACHE_SCHEMA_VERSION = 1


def default_cache_dir():
    env = os.environ.get("CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "irrcert")


def cache_key(family):
    safe = family.param_key().replace("/", "_").replace(",", "_").replace("-", "m")
    return "%s_%s" % (family.kind.lower(), safe)


def cache_path(cache_dir, family):
    return os.path.join(cache_dir, cache_key(family) + ".json")


def atomic_write_json(path, payload):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_entry(cache_dir, family):
    path = cache_path(cache_dir, family)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        entry = json.load(fh)
    if entry.get("schema_version") != CACHE_SCHEMA_VERSION:
        return None
    return entry


def save_entry(cache_dir, family, entry):
    entry = dict(entry)
    entry["schema_version"] = CACHE_SCHEMA_VERSION
    entry["family"] = family.to_json()
    atomic_write_json(cache_path(cache_dir, family), entry)


def cached_values(entry, count, precision):
    """Quadrature values from a cache entry when they cover the request."""
    if not entry:
        return None
    stored = entry.get("values")
    if not stored or entry.get("precision") != precision or len(stored) < count:
        return None
    return [PreciseReal.from_json(v) for v in stored[:count]]


def certificate_from_entry(entry, terms, precision):
    if not entry or entry.get("certificate") is None:
        return None
    if entry.get("terms") != terms or entry.get("precision") != precision:
        return None
    return IrrationalityCertificate.from_json(entry["certificate"])


def sequences_to_json(cert_seqs_a, cert_seqs_b):
    return ([rational_str(x) for x in cert_seqs_a],
            [rational_str(x) for x in cert_seqs_b])


def build_certificate_cached(family, terms=2000, precision=100, cache_dir=None,
                             max_degree=None, identify=True, progress=None):
    """build_certificate with a persistent cache of values and results.

    A completed certificate for the same (terms, precision) is returned
    as-is; otherwise cached quadrature values at the same precision are
    reused, and the outcome (certificate or stage error) is written back.
    """
    cache_dir = cache_dir or default_cache_dir()
    entry = load_entry(cache_dir, family) or {}
    cert = certificate_from_entry(entry, terms, precision)
    if cert is not None:
        return cert

    if max_degree is None:
        max_degree = DEFAULT_MAX_DEGREE[family.kind]
    value_count = max(40, 3 * (max_degree + 1) + 14)
    values = cached_values(entry, value_count, precision)
    if values is None:
        values = [family_integral(family, n, precision).value
                  for n in range(value_count)]
        entry.update({
            "precision": precision,
            "values": [v.to_json() for v in values],
        })
        save_entry(cache_dir, family, entry)

    try:
        cert = build_certificate(family, terms=terms, precision=precision,
                                 max_degree=max_degree, identify=identify,
                                 values=values, progress=progress)
    except PipelineError as exc:
        entry.update({"terms": terms, "precision": precision,
                      "certificate": None, "stage_error": exc.stage,
                      "stage_message": str(exc)})
        save_entry(cache_dir, family, entry)
        raise

    # exact sequences for cross-run verification and resume
    from .holonomic import build_sequences
    seqs = build_sequences(cert.recurrence, cert.initial_relation,
                           cert.constant_value, min(terms, 400))
    a_json, b_json = sequences_to_json(seqs.a, seqs.b)
    entry.update({
        "terms": terms,
        "precision": precision,
        "certificate": cert.to_json(),
        "stage_error": None,
        "recurrence": cert.recurrence.to_json(),
        "initial_relation": [int(c) for c in cert.initial_relation],
        "a": a_json,
        "b": b_json,
    })
    save_entry(cache_dir, family, entry)
    return cert


def entry_sequences(entry):
    """Exact rational term arrays from a cache entry."""
    if not entry or "a" not in entry:
        return None
    return ([rational(s) for s in entry["a"]],
            [rational(s) for s in entry["b"]])
