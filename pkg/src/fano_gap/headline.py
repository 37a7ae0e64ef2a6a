"""Collect every implemented candidate volume in dimension n and rank them."""

from fractions import Fraction
from typing import Dict, List

from . import formulas
from .gap import certify_d_n_minus_1, certify_pair, certify_singular_deg2


def candidates(n: int) -> List[Dict[str, object]]:
    """Rows (family, value, kind); kind 'volume' is an actual volume, 'bound' an upper bound."""
    rows = [{"family": "P^n", "value": Fraction((n + 1) ** n), "kind": "volume"}]
    c = formulas.c_sequence(n)
    for r in range(1, n // 2 + 1):
        rows.append({"family": "P^%d x P^%d" % (r, n - r), "value": Fraction(c[r]), "kind": "volume"})
    for b in range(2, n + 1):
        rows.append({"family": "hypersurface b=%d" % b, "value": formulas.vol_hypersurface(n, b),
                     "kind": "volume"})
    if n >= 3:
        for dY in range(2, n + 1):
            rows.append({"family": "blowup dY=%d" % dY,
                         "value": formulas.vol_blowup_hyperplane_subvariety(n, dY), "kind": "volume"})
        cert = certify_singular_deg2(n)
        rows.append({"family": "singular deg-2 bound", "value": Fraction(cert.witnesses["phi_upper"]),
                     "kind": "bound", "certified": cert.certified})
        rows.append({"family": "singular toric bound", "value": Fraction(16, 27) * (n + 1) ** n,
                     "kind": "bound"})
    for d in range(3, n - 1):
        cert = certify_pair(n, d)
        rows.append({"family": "route d=%d" % d, "value": Fraction(cert.witnesses["S"]),
                     "kind": "route", "certified": cert.certified})
    if n >= 4:
        cert = certify_d_n_minus_1(n)
        w = cert.witnesses
        val = Fraction(w["F_upper"]) if w["method"] == "F" else Fraction(w["gamma_upper"]) * 2 * n ** n
        rows.append({"family": "route d=%d" % (n - 1), "value": val, "kind": "route",
                     "certified": cert.certified})
    return rows


def headline(n: int) -> Dict[str, object]:
    """Is 2n^n the second largest value, with every route strictly below it?"""
    rows = candidates(n)
    target = Fraction(2 * n ** n)
    top = Fraction((n + 1) ** n)
    others = [r for r in rows if r["family"] != "P^n"]
    second = max(r["value"] for r in others)
    routes_below = all(r["value"] < target and r.get("certified", True)
                       for r in rows if r["kind"] in ("route", "bound"))
    return {"n": n, "largest": top, "second": second, "second_is_2n^n": second == target and top > target,
            "routes_below": routes_below, "ok": second == target and top > target and routes_below}
