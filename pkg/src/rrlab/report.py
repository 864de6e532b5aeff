"""The full per-instance pipeline and its JSON report."""

from __future__ import annotations

import json
import platform
import random
import time
from dataclasses import dataclass, field

from . import __version__
from .hilbert import InconsistentHilbertData, power_identities
from .ideal import Ideal, krull_dimension
from .instances import GOLDEN_VALUES, STAGES, InstanceSpec
from .monomial import integral_closure, minimalize
from .poly import format_monomial
from .ratliff_rush import (InternalInconsistency, agreement_point, behaves_well,
                           e3_identity_check, rr_closure, agreement_point_known, rr_coefficients_agree, rr_hilbert)
from .reductions import (ReductionError, depth_G_lower_bound, find_minimal_reduction,
                         find_superficial_sequence, hilbert_data)
from .theorems import (Evidence, check_e4, check_lemma46, evaluate, integrally_closed_status,
                       power_ic_status, rr_vn_sum)
from .verdict import Verdict

EXIT_OK, EXIT_INCOMPLETE, EXIT_USAGE, EXIT_FINDING, EXIT_INTERNAL, EXIT_UNVERIFIED = 0, 1, 2, 3, 4, 5

_INTERNAL = (InternalInconsistency, InconsistentHilbertData, AssertionError)


@dataclass
class Report:
    instance: dict
    hilbert: dict = field(default_factory=dict)
    reduction: dict = field(default_factory=dict)
    ratliff_rush: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.meta.setdefault("failures", {})

    @property
    def failures(self) -> dict:
        return self.meta["failures"]

    @property
    def status(self) -> str:
        if any(f["kind"] == "internal" for f in self.failures.values()):
            return "internal"
        if any(v.is_finding for v in self.verdicts):
            return "finding"
        if self.failures:
            return "incomplete"
        if any(v.is_unverified_violation for v in self.verdicts):
            return "unverified"
        return "clean"

    @property
    def exit_code(self) -> int:
        return {"clean": EXIT_OK, "incomplete": EXIT_INCOMPLETE, "finding": EXIT_FINDING,
                "internal": EXIT_INTERNAL, "unverified": EXIT_UNVERIFIED}[self.status]

    def to_dict(self) -> dict:
        meta = dict(self.meta)
        meta["status"] = self.status
        return {"instance": self.instance, "hilbert": self.hilbert,
                "reduction": self.reduction, "ratliff_rush": self.ratliff_rush,
                "verdicts": [v.to_dict() for v in self.verdicts], "meta": meta}

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        meta = dict(data.get("meta", {}))
        meta.pop("status", None)
        return cls(data["instance"], data.get("hilbert", {}), data.get("reduction", {}),
                   data.get("ratliff_rush", {}),
                   [Verdict.from_dict(v) for v in data.get("verdicts", [])], meta)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def mathematical_fields(d: dict) -> dict:
    """The report without wall-clock data, for reproducibility comparisons."""
    out = json.loads(json.dumps(d))
    out.get("meta", {}).pop("timings", None)
    out.get("meta", {}).pop("versions", None)
    return out


class _Stage:
    def __init__(self, report: Report, name: str):
        self.report, self.name = report, name

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, et, ev, tb):
        self.report.meta.setdefault("timings", {})[self.name] = round(time.perf_counter() - self.t, 3)
        if et is None:
            return False
        if issubclass(et, KeyboardInterrupt):
            return False
        kind = "internal" if issubclass(et, _INTERNAL) else "error"
        self.report.failures[self.name] = {"kind": kind, "type": et.__name__,
                                           "message": str(ev)}
        return True


def _rr_block(I: Ideal, d: int, J: Ideal | None, window: int) -> dict:
    n = 1
    while rr_closure(I, n, window=window) and agreement_point_known(I) is None:
        n += 1
    top = agreement_point(I) + 1
    table = []
    for n in range(1, top + 1):
        rec = rr_closure(I, n, window=window)
        table.append({"n": n, "stable_at": rec.stable_at, "colength": rec.ideal.colength(),
                      "colength_power": (I ** n).colength(), "equal_to_power": rec.equal_to_In})
    agree, e_adic, e_rr = rr_coefficients_agree(I, d)
    block = {"agree_from": agreement_point(I), "table": table, "e": e_rr,
             "e_agree": agree, "h_poly": rr_hilbert(I, d).h}
    if not agree:
        raise InternalInconsistency(f"e({{~I^n}}) = {e_rr} differs from e({{I^n}}) = {e_adic}")
    if J is not None:
        vs, terms = rr_vn_sum(I, J, d)
        block["v_sum"] = vs
        block["v_terms"] = {str(k): v for k, v in terms.items()}
    return block


def run_instance(spec: InstanceSpec, *, field_override: str | None = None,
                 seed: int | None = None, horizon: int | None = None,
                 stages: set | None = None) -> Report:
    """hilbert -> reduction -> Ratliff-Rush -> verdicts, isolating stage failures.

    ``stages`` restricts the run to the named stages (the Hilbert stage always runs).
    """
    if seed is not None:
        spec = InstanceSpec.from_dict({**spec.to_dict(), "seed": seed})
    if field_override is not None:
        spec = InstanceSpec.from_dict({**spec.to_dict(), "field": field_override})
    if horizon is not None:
        spec = InstanceSpec.from_dict({**spec.to_dict(), "horizon": horizon})
    report = Report(spec.to_dict())
    report.meta["seed"] = spec.seed
    report.meta["versions"] = {"rrlab": __version__, "python": platform.python_version()}
    skip = set(spec.skip)
    if stages is not None:
        skip |= set(STAGES) - set(stages)
    R, I = spec.build()
    d = spec.dim if spec.dim is not None else krull_dimension(R)
    hkw = {} if spec.horizon is None else {"horizon": spec.horizon}
    data = red = None
    bw_list = None
    depth = None
    x = None

    with _Stage(report, "hilbert"):
        data = hilbert_data(I, d, **hkw)
        report.hilbert = data.to_dict()
        report.hilbert["D"] = data.e[2] - data.e[1] + data.e[0] - data.colength \
            if d >= 2 else None
    if data is None:
        return report

    if "reduction" not in skip:
        with _Stage(report, "reduction"):
            pinned = spec.reduction
            if pinned is not None and len(pinned) != d:
                raise ReductionError(f"a minimal reduction needs {d} generators")
            red = find_minimal_reduction(I, spec.seed, dim=d, e0=data.e[0], pinned=pinned,
                                         horizon=spec.horizon or 16)
            if red.colength_J != data.e[0]:
                raise ReductionError(f"l(R/J) = {red.colength_J} != e0 = {data.e[0]}")
            report.reduction = red.to_dict()
            I.__dict__["_r_hint"] = red.r

    if d >= 2 and not {"superficial", "behaves_well"} & skip:
        with _Stage(report, "superficial"):
            seq = find_superficial_sequence(I, 1, spec.seed + 1, dim=d, pinned=spec.superficial)
            x, cert = seq[0]
            report.reduction["superficial"] = [cert.to_dict()]

    J = red.J if red is not None else None
    if "ratliff_rush" not in skip:
        with _Stage(report, "ratliff_rush"):
            report.ratliff_rush.update(_rr_block(I, d, J, spec.rr_window))

    if x is not None and "behaves_well" not in skip:
        with _Stage(report, "behaves_well"):
            r = red.r if red is not None else None
            bw = behaves_well(I, x, dim=d, r=r)
            report.ratliff_rush["behaves_well"] = bw.to_dict()
            bw_list = [bw.verdict]
            if d == 3:
                ident = e3_identity_check(I, x, dim=d, r=r, seed=spec.seed + 3)
                report.ratliff_rush["e3_identity"] = ident.to_dict()
                report.verdicts.append(ident.verdict)

    if "depth" not in skip and d >= 1:
        with _Stage(report, "depth"):
            db = depth_G_lower_bound(I, spec.seed + 2, dim=d)
            depth = db.value
            report.reduction["depth"] = db.to_dict()

    if d in (3, 4) and "powers" not in skip:
        with _Stage(report, "powers"):
            q = max(data.eta, 1)
            pi = power_identities(I, q, data, d)
            report.hilbert["power_identities"] = pi.to_dict()
            if not pi.agree:
                raise InternalInconsistency("; ".join(pi.notes))
            if d == 3:
                v = Verdict("e3 via e_i(I^q), q = eta", pi.e3_via_power, "=", pi.e_target)
            else:
                v = Verdict("e4 via e_i(I^q), q = eta", pi.e4_via_power, "=", pi.e_target)
            report.verdicts.append(v.hypothesis("q >= eta", "verified", f"q = {q}"))

    if "verdicts" not in skip:
        with _Stage(report, "verdicts"):
            st, detail = integrally_closed_status(I, spec.integrally_closed)
            ev = Evidence.from_data(
                data, r=red.r if red is not None else None, J=J, integrally_closed=st,
                ic_detail=detail, behaves_well=bw_list, depth_lower=depth,
                rr_vsum=report.ratliff_rush.get("v_sum"), I=I)
            report.verdicts += evaluate(ev)
            if d == 2 and J is not None:
                report.verdicts.append(check_lemma46(I, J, ic_mode=spec.integrally_closed))
            if d == 4:
                report.verdicts += check_e4(ev, power_ic=power_ic_status(I, data.eta,
                                                                         spec.integrally_closed))
    return report


# ---------------------------------------------------------------------------
# random instances


# monomial invariants do not see the field; random reductions are far cheaper mod p
BATCH_FIELD = "Fp:32003"


def batch_generate(params: dict, seed: int) -> list:
    """Random m-primary monomial ideals: pure powers plus random monomials."""
    n = int(params.get("variables", 3))
    top = int(params.get("max_degree", 5))
    count = int(params.get("count", 10))
    closure = bool(params.get("closure", True))
    fld = str(params.get("field", BATCH_FIELD))
    if not 1 <= n <= 4:
        raise ValueError("variables must be between 1 and 4")
    if not 1 <= top <= 8:
        raise ValueError("max_degree must be between 1 and 8")
    if not 0 <= count <= 10 ** 4:
        raise ValueError("count must be between 0 and 10000")
    names = ["x", "y", "z", "w"][:n]
    rng = random.Random(seed)
    out = []
    for i in range(count):
        powers = [rng.randint(min(2, top), top) for _ in range(n)]
        gens = [tuple(p if j == k else 0 for j in range(n)) for k, p in enumerate(powers)]
        for _ in range(rng.randint(0, 4)):
            e = tuple(rng.randint(0, p - 1) for p in powers)
            if 0 < sum(e) <= top:
                gens.append(e)
        gens = minimalize(gens)
        if closure:
            gens = integral_closure(gens, n)
        out.append(InstanceSpec(
            f"random-{seed}-{i}", names, [format_monomial(g, names) for g in gens],
            field=fld, integrally_closed="verify", seed=seed * 100003 + i,
            description=f"batch seed {seed}, closure {'on' if closure else 'off'}"))
    return out


# ---------------------------------------------------------------------------
# golden comparison


def golden_observed(report: Report) -> dict:
    """The values of ``report`` that the golden table pins."""
    h = report.hilbert
    out = {}
    if h:
        d = h["d"]
        out["h"] = h["h_poly"]
        out["e"] = h["e"][:4] if d >= 3 else h["e"]
        if d >= 2:
            out["D"] = h["D"]
    if "r" in report.reduction:
        out["r"] = report.reduction["r"]
    if "depth" in report.reduction:
        out["depth"] = report.reduction["depth"]["value"]
    bw = report.ratliff_rush.get("behaves_well")
    if bw is not None:
        out["behaves_well"] = bw["verdict"]
    return out


def golden_comparison(name: str, report: Report) -> list:
    """Rows (key, expected, observed, ok) for every pinned value of ``name``."""
    seen = golden_observed(report)
    rows = []
    for key, want in GOLDEN_VALUES[name].items():
        got = seen.get(key)
        rows.append((key, want, got, got == want))
    return rows
