"""Stable JSON formats for the exact types.

Rationals always travel as canonical strings "p/q" (or "p" when integral),
never as floats; floats appear only in explicitly float payloads such as
emitted witness vectors.  Indices in files are 1-based throughout.

Formats:

* step matrix   {"n": <dimension>, "rows": [["1/2"], ["-1/6", "2/3"], ...]}
* profile       {"n": <horizon>, "q": {"k,j": "p/q", ...}}   (absent = zero)
* verdict       {"status": ..., "residuals": {"m": "p/q"}, "lambda": {"k,j": "p/q"},
                 "negative": [[k, j], ...]}
* witness       {"n": ..., "epsilon": "p/q", "gram": [[...]], "violated_pair": [i, j],
                 "residual_sq": "p/q", "bound_sq": "p/q"}
"""

import re
from fractions import Fraction

from .algebra import HMatrix, QProfile
from .certify import (
    STATUS_INVARIANCE_VIOLATED,
    STATUS_OPTIMAL,
    CertificateSet,
    Verdict,
)
from .worstcase import GramWitness

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a canonical rational string: {text!r}")
    return Fraction(text.strip())


def hmatrix_to_dict(h: HMatrix) -> dict:
    return {
        "n": h.n_minus_1,
        "rows": [[format_rational(x) for x in row] for row in h.rows],
    }


def hmatrix_from_dict(data) -> HMatrix:
    if not isinstance(data, dict) or "rows" not in data:
        raise ValueError("step matrix document must be an object with a 'rows' field")
    rows = data["rows"]
    if not isinstance(rows, list):
        raise ValueError("'rows' must be a list of lists")
    h = HMatrix([[parse_rational(x) for x in row] for row in rows])
    declared = data.get("n")
    if declared is not None and declared != h.n_minus_1:
        raise ValueError(f"declared dimension {declared} does not match {h.n_minus_1} rows")
    return h


def _pair_key(k: int, j: int) -> str:
    return f"{k},{j}"


def _parse_pair_key(key: str):
    parts = key.split(",")
    if len(parts) != 2:
        raise ValueError(f"bad index key {key!r}; expected 'k,j'")
    return int(parts[0]), int(parts[1])


def qprofile_to_dict(q: QProfile) -> dict:
    return {
        "n": q.n,
        "q": {_pair_key(k, j): format_rational(v) for (k, j), v in q.items()},
    }


def qprofile_from_dict(data) -> QProfile:
    if not isinstance(data, dict) or "n" not in data:
        raise ValueError("profile document must be an object with an 'n' field")
    values = {
        _parse_pair_key(key): parse_rational(v)
        for key, v in (data.get("q") or {}).items()
    }
    return QProfile(int(data["n"]), values)


def verdict_to_dict(v: Verdict) -> dict:
    out = {
        "status": v.status,
        "residuals": {
            str(m): format_rational(v.report.residual(m))
            for m in range(1, v.report.n)
        },
        "lambda": {},
        "negative": [list(pair) for pair in v.negative],
    }
    if v.certificates is not None:
        out["lambda"] = {
            _pair_key(k, j): format_rational(value)
            for (k, j), value in v.certificates.items()
        }
    return out


def witness_to_dict(w: GramWitness) -> dict:
    return {
        "n": w.n,
        "epsilon": format_rational(w.epsilon),
        "gram": [[format_rational(x) for x in row] for row in w.gram],
        "violated_pair": list(w.violated_pair),
        "residual_sq": format_rational(w.residual_sq),
        "bound_sq": format_rational(w.bound_sq()),
    }


def certificate_set_to_dict(lam: CertificateSet) -> dict:
    return {_pair_key(k, j): format_rational(v) for (k, j), v in lam.items()}


__all__ = [
    "format_rational",
    "parse_rational",
    "hmatrix_to_dict",
    "hmatrix_from_dict",
    "qprofile_to_dict",
    "qprofile_from_dict",
    "verdict_to_dict",
    "witness_to_dict",
    "certificate_set_to_dict",
    "STATUS_OPTIMAL",
    "STATUS_INVARIANCE_VIOLATED",
]
