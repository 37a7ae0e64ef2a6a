"""Certificates: one verdict per case, serializable and re-checkable from their witnesses."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from ..exact import Poly

SCHEMA = "fano-gap/1"
VERDICTS = ("certified", "refuted", "undecided")
ROUTES = ("exact-S-and-psi", "case-I-bound", "case-II-bound", "case-III-bound",
          "cubic-d-eq-n-minus-1", "singular-deg2")


def fstr(x) -> str:
    return str(Fraction(x))


def fparse(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class Certificate:
    n: int
    d: int
    verdict: str
    route: str
    witnesses: Dict[str, object] = field(default_factory=dict)
    bits: Optional[int] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError("bad verdict %r" % self.verdict)
        if self.route not in ROUTES:
            raise ValueError("bad route %r" % self.route)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "verdict": self.verdict, "route": self.route,
                "bits": self.bits, "witnesses": self.witnesses}

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        return cls(n=doc["n"], d=doc["d"], verdict=doc["verdict"], route=doc["route"],
                   witnesses=doc["witnesses"], bits=doc.get("bits"))

    def recheck(self) -> bool:
        """Re-derive the verdict from the stored witnesses only (cheap checks, no solving)."""
        return recheck(self)


def _cubic(p, q):
    return Poly([q, p, 0, 1])


def recheck(cert: Certificate) -> bool:
    w = cert.witnesses
    n = cert.n
    bound = Fraction(2 * n ** n)
    if fparse(w["bound"]) != bound:
        return False
    if cert.route == "exact-S-and-psi":
        ok = fparse(w["psi_x1"]) < 0 and fparse(w["S"]) < bound
    elif cert.route == "cubic-d-eq-n-minus-1":
        lo, hi = (fparse(s) for s in w["tau"])
        C = fparse(w["C"])
        f = _cubic(-12, -C)
        ok = lo >= 2 and f(lo) <= 0 <= f(hi)
        if w["method"] == "F":
            F_hi = Fraction(n * (n - 1) ** (n - 1), 8) * ((hi + 2) ** 2 + 2 - Fraction(6, n))
            ok = ok and F_hi == fparse(w["F_upper"]) and F_hi < bound
        else:
            tlo, thi = (fparse(s) for s in w["tau_inf"])
            g = _cubic(-12, -30)
            gamma_hi = ((thi + 2) ** 2 + 2) / (16 * (1 + Fraction(1, n - 1)) ** (n - 1))
            ok = (ok and g(tlo) <= 0 <= g(thi) and C < 30 and hi <= thi
                  and gamma_hi == fparse(w["gamma_upper"]) and gamma_hi < 1)
    elif cert.route == "singular-deg2":
        lo, hi = (fparse(s) for s in w["T"])
        from ..blowup import build_singular_deg2, psi_fn
        m = build_singular_deg2(n).phi_model()
        psi = psi_fn(m)
        ok = (psi(lo) <= 0 <= psi(hi) and m.phi(hi) == fparse(w["phi_upper"])
              and m.phi(hi) < bound and fparse(w["handoff"]) < n - 1)
    else:
        return False
    return ok == (cert.verdict == "certified")


def bundle(certs: List[Certificate], extra: Optional[dict] = None) -> dict:
    doc = {"schema": SCHEMA, "count": len(certs),
           "certificates": [c.to_json() for c in certs]}
    if extra:
        doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
