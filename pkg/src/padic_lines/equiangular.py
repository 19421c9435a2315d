"""Certification of p-adic equiangular line configurations and bound checks.

A configuration is a finite family of vectors in Q_p^d with exact rational
entries.  It is certified as a (gamma, a)-equiangular family when

  (i)   every self pairing <tau_j, tau_j> equals the declared a exactly,
  (ii)  all off-diagonal pairings share one p-adic absolute value gamma,
  (iii) the frame operator S = sum tau_j tau_j^T is diagonalizable over Q_p
        and |Tr S|^2 <= |d| * |Tr S^2| (the eigenvalue form of the
        inequality, since the power sums of the spectrum are the traces).

Condition (iii)'s spectral part is established by an evidence ladder: exact
rational eigenvalues first, then Hensel-witnessed roots in Q_p, then Newton
polygon valuations alone.  Certificates never claim more than the ladder
proved: valuation-only evidence yields a "conditional" verdict, and a
fractional valuation (or an empty admissible residue class) is a proof that
some eigenvalue lies outside Q_p, which rejects the configuration.

Vectors are never normalized; in the non-Archimedean setting division by
the norm is not available, so the common self-product a stays explicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    Polynomial,
    Vector,
    char_poly,
    frame_operator,
    inner_product,
    padic_spectrum,
    poly_eval_matrix,
    squarefree_part,
    trace,
    trace_of_square,
)
from .padic import (
    PadicAbs,
    Prime,
    abs_p,
    padic_expansion,
    parse_abs,
    parse_rational,
    render_abs,
    render_rational,
)

__all__ = [
    "Configuration",
    "Certificate",
    "BoundReport",
    "EigenInfo",
    "ConditionThree",
    "GammaMismatchError",
    "EVIDENCE_RATIONAL",
    "EVIDENCE_HENSEL",
    "EVIDENCE_NEWTON",
    "EVIDENCE_TRACE",
    "EVIDENCE_FAILED",
    "CERTIFYING_EVIDENCE",
    "VERDICT_CERTIFIED",
    "VERDICT_CONDITIONAL",
    "VERDICT_REJECTED",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "check_tight_frame",
    "certify",
    "max_offdiagonal_abs",
    "bound_padic_relative",
    "bound_padic_welch",
    "bound_ga_relative",
    "bound_ga_welch",
    "bound_classical_relative",
    "bound_classical_gerzon",
    "configuration_from_json",
    "configuration_to_json",
]

EVIDENCE_RATIONAL = "rational-spectrum-proved"
EVIDENCE_HENSEL = "hensel-witnessed"
EVIDENCE_NEWTON = "newton-valuations-only"
EVIDENCE_TRACE = "trace-inequality-only"
EVIDENCE_FAILED = "failed"
CERTIFYING_EVIDENCE = frozenset({EVIDENCE_RATIONAL, EVIDENCE_HENSEL})

VERDICT_CERTIFIED = "certified"
VERDICT_CONDITIONAL = "conditional"
VERDICT_REJECTED = "rejected"

HENSEL_PRECISION_DEFAULT = 64
_WITNESS_DISPLAY_DIGITS = 8


class GammaMismatchError(ValueError):
    """Raised when a declared common angle contradicts the measured one."""


@dataclass(frozen=True)
class Configuration:
    """A candidate family of lines: prime, dimension, vectors, parameters.

    `a` is the declared common self-product (default 1); `declared_gamma`,
    when present, is cross-checked against the measured common angle rather
    than trusted.
    """

    p: Prime
    d: int
    vectors: tuple[Vector, ...]
    a: Fraction = Fraction(1)
    declared_gamma: PadicAbs | None = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")
        if not self.vectors:
            raise ValueError("configuration needs at least one vector")
        for i, v in enumerate(self.vectors):
            if len(v) != self.d:
                raise ValueError(
                    f"vectors[{i}] has length {len(v)}, expected d = {self.d}"
                )
        if self.a == 0:
            raise ValueError("a must be nonzero")

    @property
    def n(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: name, exact sides, and whether it holds.

    For the p-adic bounds both sides are PadicAbs values; for the classical
    ones they are exact rationals.  `subcase` records which branch of the
    statement applies at these parameters.
    """

    name: str
    lhs: PadicAbs | Fraction
    rhs: PadicAbs | Fraction
    holds: bool
    subcase: str = ""

    def as_json_dict(self, p: Prime | None) -> dict:
        def side(v):
            if isinstance(v, PadicAbs):
                return render_abs(v, p)
            return render_rational(v)

        return {
            "name": self.name,
            "lhs": side(self.lhs),
            "rhs": side(self.rhs),
            "holds": self.holds,
            "subcase": self.subcase,
        }


@dataclass(frozen=True)
class EigenInfo:
    """One spectrum entry: an eigenvalue, a witness, or only a valuation.

    kind is "rational" (value: the eigenvalue), "hensel" (value: truncated
    p-adic expansion of a witnessed root), "valuation" (value: v_p of roots
    whose Q_p membership stayed unresolved) or "excluded" (value: v_p of
    roots proven to lie outside Q_p).
    """

    kind: str
    value: str
    multiplicity: int

    def as_json_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class ConditionThree:
    evidence: str
    eigen_info: tuple[EigenInfo, ...]
    inequality_holds: bool
    trace_s: Fraction
    trace_s2: Fraction
    characteristic: Polynomial | None
    tight_frame_b: Fraction | None


@dataclass(frozen=True)
class Certificate:
    """Machine-readable certification verdict for one configuration."""

    p: Prime
    d: int
    n: int
    a: Fraction
    verdict: str
    condition_i: bool
    condition_ii: bool
    gamma: PadicAbs | None
    gamma_max: PadicAbs
    condition_iii_evidence: str
    condition_iii_inequality: bool
    trace_s: Fraction
    trace_s2: Fraction
    characteristic: Polynomial | None
    tight_frame_b: Fraction | None
    eigen_info: tuple[EigenInfo, ...]
    bounds: tuple[BoundReport, ...]
    notes: tuple[str, ...] = ()

    @property
    def is_equiangular(self) -> bool:
        return self.verdict == VERDICT_CERTIFIED

    def bound(self, name: str) -> BoundReport | None:
        for report in self.bounds:
            if report.name == name:
                return report
        return None

    def as_json_dict(self) -> dict:
        return {
            "p": str(self.p.value),
            "d": self.d,
            "n": self.n,
            "a": render_rational(self.a),
            "verdict": self.verdict,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "gamma": None if self.gamma is None else render_abs(self.gamma, self.p),
            "gamma_max": render_abs(self.gamma_max, self.p),
            "condition_iii_evidence": self.condition_iii_evidence,
            "condition_iii_inequality": self.condition_iii_inequality,
            "trace_S": render_rational(self.trace_s),
            "trace_S2": render_rational(self.trace_s2),
            "char_poly": None
            if self.characteristic is None
            else [render_rational(c) for c in self.characteristic],
            "tight_frame_b": None
            if self.tight_frame_b is None
            else render_rational(self.tight_frame_b),
            "eigen_info": [e.as_json_dict() for e in self.eigen_info],
            "bounds": [b.as_json_dict(self.p) for b in self.bounds],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# the three conditions
# ---------------------------------------------------------------------------


def check_condition_i(cfg: Configuration) -> bool:
    """All self pairings equal the declared a, exactly."""
    return all(inner_product(v, v) == cfg.a for v in cfg.vectors)


def _offdiagonal_abs(cfg: Configuration) -> list[PadicAbs]:
    out = []
    for j in range(cfg.n):
        for k in range(j + 1, cfg.n):
            out.append(abs_p(inner_product(cfg.vectors[j], cfg.vectors[k]), cfg.p))
    return out


def check_condition_ii(cfg: Configuration) -> tuple[bool, PadicAbs | None]:
    """Measure the off-diagonal absolute values; (True, gamma) iff constant.

    A declared gamma is cross-checked: if a common measured angle exists
    and contradicts the declaration, that is an input error, not a failed
    certification.
    """
    if cfg.n < 2:
        raise ValueError("need at least two lines")
    values = _offdiagonal_abs(cfg)
    common = all(v == values[0] for v in values[1:])
    measured = values[0] if common else None
    if common and cfg.declared_gamma is not None and cfg.declared_gamma != measured:
        raise GammaMismatchError(
            f"gamma: declared {render_abs(cfg.declared_gamma, cfg.p)} but measured "
            f"{render_abs(measured, cfg.p)}"
        )
    return common, measured


def max_offdiagonal_abs(cfg: Configuration) -> PadicAbs:
    """Largest off-diagonal |<tau_j, tau_k>|, the Welch-side angle."""
    if cfg.n < 2:
        raise ValueError("need at least two lines")
    return max(_offdiagonal_abs(cfg))


def check_tight_frame(cfg: Configuration) -> Fraction | None:
    """Return b when S = b * I exactly for some nonzero rational b."""
    return _tight_frame_b(frame_operator(cfg.vectors))


def _tight_frame_b(s: Matrix) -> Fraction | None:
    d = len(s)
    b = s[0][0]
    if b == 0:
        return None
    for i in range(d):
        for j in range(d):
            expected = b if i == j else 0
            if s[i][j] != expected:
                return None
    return b


def check_condition_iii(
    cfg: Configuration,
    precision: int = HENSEL_PRECISION_DEFAULT,
    skip_eigen: bool = False,
) -> ConditionThree:
    """Spectral check: diagonalizability over Q_p plus the trace inequality.

    The inequality |sum lambda_j|^2 <= |d| |sum lambda_j^2| is evaluated
    exactly as |Tr S|^2 <= |d| |Tr S^2|, since the power sums of the
    characteristic roots are the traces regardless of diagonalizability.
    The evidence level records how much of "diagonalizable over Q_p with
    eigenvalues in Q_p" was actually proved.
    """
    s = frame_operator(cfg.vectors)
    tr = trace(s)
    tr2 = trace_of_square(s)
    lhs = abs_p(tr, cfg.p).square()
    rhs = abs_p(cfg.d, cfg.p) * abs_p(tr2, cfg.p)
    inequality = lhs <= rhs

    b = _tight_frame_b(s)
    if b is not None:
        eigen = (EigenInfo("rational", render_rational(b), cfg.d),)
        characteristic = char_poly(s)
        return ConditionThree(EVIDENCE_RATIONAL, eigen, inequality, tr, tr2, characteristic, b)

    if skip_eigen:
        return ConditionThree(EVIDENCE_TRACE, (), inequality, tr, tr2, None, None)

    characteristic = char_poly(s)
    spectrum = padic_spectrum(characteristic, cfg.p, precision)

    eigen: list[EigenInfo] = []
    for root, mult in spectrum.rational:
        eigen.append(EigenInfo("rational", render_rational(root), mult))
    for w in sorted(spectrum.witnessed, key=lambda w: (w.valuation, w.residue)):
        approx = Fraction(w.residue) * Fraction(cfg.p.value) ** w.valuation
        eigen.append(
            EigenInfo(
                "hensel",
                padic_expansion(approx, cfg.p, _WITNESS_DISPLAY_DIGITS),
                w.multiplicity,
            )
        )
    for val, count in sorted(spectrum.unresolved):
        eigen.append(EigenInfo("valuation", render_rational(val), count))
    for val, count in sorted(spectrum.excluded):
        eigen.append(EigenInfo("excluded", render_rational(val), count))

    # squarefree minimal polynomial confirmed by annihilation; together with
    # all roots in Q_p this is diagonalizability over Q_p
    zero = tuple(tuple(Fraction(0) for _ in range(cfg.d)) for _ in range(cfg.d))
    diagonalizable = poly_eval_matrix(squarefree_part(characteristic), s) == zero

    if not diagonalizable or spectrum.proven_outside_qp:
        evidence = EVIDENCE_FAILED
    elif spectrum.fully_rational:
        evidence = EVIDENCE_RATIONAL
    elif spectrum.fully_in_qp:
        evidence = EVIDENCE_HENSEL
    else:
        evidence = EVIDENCE_NEWTON
    return ConditionThree(evidence, tuple(eigen), inequality, tr, tr2, characteristic, None)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def bound_padic_relative(n: int, d: int, gamma: PadicAbs, p: Prime) -> BoundReport:
    """|n|^2 <= |d| * max(|n|, gamma^2)."""
    _require_positive("n", n)
    _require_positive("d", d)
    abs_n = abs_p(n, p)
    abs_d = abs_p(d, p)
    lhs = abs_n.square()
    rhs = abs_d * max(abs_n, gamma.square())
    subcase = _relative_subcase(abs_n, gamma.square(), "|n|", "|n|^2 <= |d|*gamma^2")
    return BoundReport("padic-relative", lhs, rhs, lhs <= rhs, subcase)


def _relative_subcase(
    lhs_abs: PadicAbs, gamma_sq: PadicAbs, label: str, reduced: str
) -> str:
    if lhs_abs == gamma_sq:
        return f"{label} = gamma^2: both reductions apply"
    if lhs_abs < gamma_sq:
        return f"{label} <= gamma^2: implies {reduced}"
    return f"{label} >= gamma^2: implies |n| <= |d|"


def bound_ga_relative(
    n: int, d: int, gamma: PadicAbs, a: Fraction, p: Prime
) -> BoundReport:
    """|n|^2 <= |d| * max(|n|, gamma^2 / |a^2|)."""
    _require_positive("n", n)
    _require_positive("d", d)
    if a == 0:
        raise ValueError("a must be nonzero")
    abs_n = abs_p(n, p)
    abs_d = abs_p(d, p)
    abs_a_sq = abs_p(a, p).square()
    lhs = abs_n.square()
    rhs = abs_d * max(abs_n, gamma.square() / abs_a_sq)
    subcase = _relative_subcase(
        abs_a_sq * abs_n, gamma.square(), "|a^2*n|", "|n|^2 <= |d|*gamma^2/|a^2|"
    )
    return BoundReport("ga-relative", lhs, rhs, lhs <= rhs, subcase)


def bound_padic_welch(cfg: Configuration) -> BoundReport:
    """Relative-style bound with the maximum off-diagonal angle (no equal
    angles required)."""
    gamma_max = max_offdiagonal_abs(cfg)
    report = bound_padic_relative(cfg.n, cfg.d, gamma_max, cfg.p)
    return BoundReport("padic-welch", report.lhs, report.rhs, report.holds, report.subcase)


def bound_ga_welch(cfg: Configuration) -> BoundReport:
    gamma_max = max_offdiagonal_abs(cfg)
    report = bound_ga_relative(cfg.n, cfg.d, gamma_max, cfg.a, cfg.p)
    return BoundReport("ga-welch", report.lhs, report.rhs, report.holds, report.subcase)


def bound_classical_relative(n: int, d: int, gamma_sq: Fraction) -> BoundReport:
    """Classical real-case relative bound n(1 - d g^2) <= d(1 - g^2).

    Takes gamma squared so irrational angles like 1/sqrt(d) stay exact.
    """
    _require_positive("n", n)
    _require_positive("d", d)
    gamma_sq = Fraction(gamma_sq)
    if gamma_sq < 0 or gamma_sq > 1:
        raise ValueError(f"gamma^2 out of range [0, 1]: {gamma_sq}")
    lhs = n * (1 - d * gamma_sq)
    rhs = d * (1 - gamma_sq)
    pivot = 1 - d * gamma_sq
    if pivot > 0:
        cap = d * (1 - gamma_sq) / pivot
        subcase = f"gamma^2 < 1/d: n <= {render_rational(cap)}"
    elif pivot == 0:
        subcase = "gamma^2 = 1/d: bound degenerates to 0 <= d(1 - gamma^2)"
    else:
        subcase = "gamma^2 > 1/d: no finite cap"
    return BoundReport("classical-relative", lhs, rhs, lhs <= rhs, subcase)


def bound_classical_gerzon(n: int, d: int) -> BoundReport:
    """Informational universal cap n <= d(d+1)/2 for real equiangular lines."""
    _require_positive("n", n)
    _require_positive("d", d)
    lhs = Fraction(n)
    rhs = Fraction(d * (d + 1), 2)
    return BoundReport("classical-gerzon", lhs, rhs, lhs <= rhs, f"cap {render_rational(rhs)}")


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


def certify(
    cfg: Configuration,
    precision: int = HENSEL_PRECISION_DEFAULT,
    skip_eigen: bool = False,
) -> Certificate:
    """Run all three conditions, evaluate applicable bounds, emit a verdict.

    "certified" requires eigenvalues witnessed in Q_p (rational spectrum or
    Hensel witnesses); valuation-only or trace-only evidence with everything
    else in order yields "conditional", never "certified".
    """
    if cfg.n < 2:
        raise ValueError("need at least two lines")
    cond_i = check_condition_i(cfg)
    cond_ii, gamma = check_condition_ii(cfg)
    gamma_max = max_offdiagonal_abs(cfg)
    c3 = check_condition_iii(cfg, precision=precision, skip_eigen=skip_eigen)

    notes: list[str] = []
    if cfg.declared_gamma is not None:
        if cond_ii:
            notes.append("declared gamma confirmed by measurement")
        else:
            notes.append(
                "declared gamma not confirmable: off-diagonal absolute values are not constant"
            )
    if c3.tight_frame_b is not None:
        notes.append(
            f"tight frame: S = b*I with b = {render_rational(c3.tight_frame_b)}; "
            "spectral ladder shortcut taken"
        )
    if skip_eigen and c3.evidence == EVIDENCE_TRACE:
        notes.append("eigenvalue analysis skipped on request; evidence is trace-only")

    bounds: list[BoundReport] = []
    if cond_i and cond_ii:
        if cfg.a == 1:
            bounds.append(bound_padic_relative(cfg.n, cfg.d, gamma, cfg.p))
        bounds.append(bound_ga_relative(cfg.n, cfg.d, gamma, cfg.a, cfg.p))
    if cond_i:
        if cfg.a == 1:
            bounds.append(bound_padic_welch(cfg))
        bounds.append(bound_ga_welch(cfg))
        if not cond_ii:
            notes.append(
                "no common angle: bounds use gamma = max off-diagonal absolute value"
            )
    bounds.append(bound_classical_gerzon(cfg.n, cfg.d))

    if cond_i and cond_ii and c3.inequality_holds and c3.evidence in CERTIFYING_EVIDENCE:
        verdict = VERDICT_CERTIFIED
    elif (
        cond_i
        and cond_ii
        and c3.inequality_holds
        and c3.evidence in (EVIDENCE_NEWTON, EVIDENCE_TRACE)
    ):
        verdict = VERDICT_CONDITIONAL
    else:
        verdict = VERDICT_REJECTED

    return Certificate(
        p=cfg.p,
        d=cfg.d,
        n=cfg.n,
        a=cfg.a,
        verdict=verdict,
        condition_i=cond_i,
        condition_ii=cond_ii,
        gamma=gamma,
        gamma_max=gamma_max,
        condition_iii_evidence=c3.evidence,
        condition_iii_inequality=c3.inequality_holds,
        trace_s=c3.trace_s,
        trace_s2=c3.trace_s2,
        characteristic=c3.characteristic,
        tight_frame_b=c3.tight_frame_b,
        eigen_info=c3.eigen_info,
        bounds=tuple(bounds),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# configuration file schema
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {"p", "d", "a", "gamma", "vectors"}


def configuration_from_json(obj) -> Configuration:
    """Parse and strictly validate the Configuration JSON schema.

    Expected shape: {"p": "5", "d": 2, "a": "1", "vectors": [["3/5","4/5"],
    ["1","0"]]} with optional "gamma" in the "0"/"p^e" encoding.  Unknown
    fields are rejected.
    """
    if not isinstance(obj, dict):
        raise ValueError("configuration: expected a JSON object")
    unknown = set(obj) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"configuration: unknown fields {sorted(unknown)}")
    for key in ("p", "d", "vectors"):
        if key not in obj:
            raise ValueError(f"configuration: missing field {key!r}")
    if not isinstance(obj["p"], str):
        raise ValueError("p: expected a string of digits")
    if not obj["p"].isdigit():
        raise ValueError(f"p: malformed integer {obj['p']!r}")
    p = Prime(int(obj["p"]))
    d = obj["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f"d: expected a positive integer, got {d!r}")
    a = Fraction(1)
    if "a" in obj:
        if not isinstance(obj["a"], str):
            raise ValueError("a: expected a rational string")
        try:
            a = parse_rational(obj["a"])
        except ValueError as exc:
            raise ValueError(f"a: {exc}") from None
    gamma = None
    if "gamma" in obj and obj["gamma"] is not None:
        try:
            gamma = parse_abs(obj["gamma"], p)
        except ValueError as exc:
            raise ValueError(f"gamma: {exc}") from None
    raw_vectors = obj["vectors"]
    if not isinstance(raw_vectors, list) or not raw_vectors:
        raise ValueError("vectors: expected a non-empty array")
    vectors = []
    for i, row in enumerate(raw_vectors):
        if not isinstance(row, list):
            raise ValueError(f"vectors[{i}]: expected an array of rational strings")
        entries = []
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise ValueError(f"vectors[{i}][{j}]: expected a rational string")
            try:
                entries.append(parse_rational(cell))
            except ValueError as exc:
                raise ValueError(f"vectors[{i}][{j}]: {exc}") from None
        vectors.append(tuple(entries))
    try:
        return Configuration(p, d, tuple(vectors), a, gamma)
    except ValueError as exc:
        raise ValueError(str(exc)) from None


def configuration_to_json(cfg: Configuration) -> dict:
    out = {
        "p": str(cfg.p.value),
        "d": cfg.d,
        "a": render_rational(cfg.a),
        "vectors": [[render_rational(e) for e in v] for v in cfg.vectors],
    }
    if cfg.declared_gamma is not None:
        out["gamma"] = render_abs(cfg.declared_gamma, cfg.p)
    return out
