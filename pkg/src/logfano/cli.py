"""Command-line entry point: JSON document in, exact report out.

Usage::

    logfano input.json --beta 1/2 --r 2 --format json
    logfano input.json --beta-scan 1/4:3/4:1/4 --verify-toric 60
    logfano input.json --beta 1/2 --emit-bundle bundle.json

Exit codes: 0 success, 2 validation failure, 3 computational failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import lcm
from typing import Any, Optional

from . import __version__
from .exactnum import AlgReal, Poly, as_rat, rat_str
from .lattice import NEFNESS_CAVEAT, IntersectionLattice, LatticeError, SurfaceData, gram_problems
from .stability import (
    R_CAVEAT, VERDICT_TEXT, AlgebraicWallError, Verdict, auto_r, certify_beta_grid,
    destabilizing_betas, df_invariant, eta, eta_beta_polynomial, lemma_vol_sides,
)
from .toric import ToricError, ToricSurface, fit_leading_coeffs, log_divisor, weight_table
from .zariski import (
    GeographyBundle, NotPseudoeffectiveError, ProfileError, Segment, VolumeProfile,
    ZariskiError, bundle_from_profile, build_profile,
)

EXIT_OK, EXIT_VALIDATION, EXIT_COMPUTATION = 0, 2, 3
GEOMETRY_KEYS = ("surface", "toric", "bundle")


class ValidationError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


# --- serialization -----------------------------------------------------------


def ser_alg(a) -> Any:
    if isinstance(a, Fraction):
        return rat_str(a)
    if a.is_rational:
        return rat_str(a.lo)
    return {
        "defining_poly": [rat_str(c) for c in a.poly.coeffs],
        "interval": [rat_str(a.lo), rat_str(a.hi)],
        "decimal_hint": a.decimal_hint(),
    }


def ser_poly(p: Poly) -> list[str]:
    return [rat_str(c) for c in p.coeffs]


def parse_poly(coeffs, path: str) -> Poly:
    if not isinstance(coeffs, list):
        raise ValidationError([f"{path}: expected a list of coefficients, lowest degree first"])
    try:
        return Poly(as_rat(c) for c in coeffs)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError([f"{path}: {exc}"]) from None


def bundle_to_json(B: GeographyBundle) -> dict:
    return {
        "n": B.dimension_n,
        "shift": rat_str(B.shift),
        "segments": [
            {
                "lo": rat_str(s.lo), "hi": rat_str(s.hi), "vol": ser_poly(s.vol), "s": ser_poly(s.s),
                **({"kappa": ser_poly(s.kappa)} if s.kappa is not None else {}),
            }
            for s in B.segments
        ],
    }


# --- parsing and validation -------------------------------------------------


def _rat_field(value, path: str, diags: list[str]):
    try:
        return as_rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        diags.append(f"{path}: {exc}")
        return None


def _rat_list(value, path: str, diags: list[str], length: Optional[int] = None):
    if not isinstance(value, list):
        diags.append(f"{path}: expected a list")
        return None
    out = [_rat_field(v, f"{path}[{i}]", diags) for i, v in enumerate(value)]
    if any(v is None for v in out):
        return None
    if length is not None and len(out) != length:
        diags.append(f"{path}: expected {length} entries, got {len(out)}")
        return None
    return out


def parse_beta_scan(scan) -> list[Fraction]:
    """``"lo:hi:step"``, a list of rationals, or ``{"lo", "hi", "step"}``."""
    if isinstance(scan, str):
        parts = scan.split(":")
        if len(parts) != 3:
            raise ValueError("beta scan must look like lo:hi:step")
        lo, hi, step = (as_rat(p) for p in parts)
    elif isinstance(scan, dict):
        lo, hi, step = as_rat(scan["lo"]), as_rat(scan["hi"]), as_rat(scan["step"])
    elif isinstance(scan, list):
        return [as_rat(b) for b in scan]
    else:
        raise ValueError("unrecognised beta scan")
    if step <= 0:
        raise ValueError("beta scan step must be positive")
    out, b = [], lo
    while b <= hi:
        out.append(b)
        b += step
    return out


def _surface_from_block(block: dict, diags: list[str]) -> Optional[SurfaceData]:
    for key in ("basis", "gram", "canonical", "boundary"):
        if key not in block:
            diags.append(f"surface.{key}: missing")
    if diags:
        return None
    labels = block["basis"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        diags.append("surface.basis: expected a list of labels")
        return None
    n = len(labels)
    gram_raw = block["gram"]
    if not isinstance(gram_raw, list) or len(gram_raw) != n:
        diags.append(f"surface.gram: expected {n} rows")
        return None
    gram = [_rat_list(row, f"surface.gram[{i}]", diags, n) for i, row in enumerate(gram_raw)]
    if diags:
        return None
    for p in gram_problems(labels, gram):
        diags.append(f"surface.gram: {p}")
    K = _rat_list(block["canonical"], "surface.canonical", diags, n)
    D = _rat_list(block["boundary"], "surface.boundary", diags, n)
    curves = [_rat_list(c, f"surface.negative_curves[{i}]", diags, n)
              for i, c in enumerate(block.get("negative_curves", []))]
    extra = [_rat_list(c, f"surface.extra_curves[{i}]", diags, n)
             for i, c in enumerate(block.get("extra_curves", []))]
    ample = _rat_list(block["ample"], "surface.ample", diags, n) if "ample" in block else None
    clabels = block.get("curve_labels") or [f"C{i}" for i in range(len(curves))]
    if len(clabels) != len(curves):
        diags.append("surface.curve_labels: one label per negative curve")
    if diags:
        return None
    if all(d == 0 for d in D):
        diags.append("surface.boundary: D must be a nonzero (reduced Weil) divisor")
        return None
    lattice = IntersectionLattice(tuple(labels), tuple(tuple(r) for r in gram), 2)
    for i, c in enumerate(curves):
        if lattice.square(c) >= 0:
            diags.append(f"surface.negative_curves[{i}]: self-intersection {rat_str(lattice.square(c))} is not negative")
    if diags:
        return None
    return SurfaceData(lattice, K, D, tuple(curves), tuple(clabels), tuple(extra), ample)


def _toric_from_block(block: dict, diags: list[str]):
    rays = block.get("rays")
    if not isinstance(rays, list) or not all(isinstance(v, list) and len(v) == 2 for v in rays):
        diags.append("toric.rays: expected a list of integer pairs")
        return None, None
    try:
        T = ToricSurface(tuple(tuple(int(x) for x in v) for v in rays))
    except (ToricError, ValueError, TypeError) as exc:
        diags.append(f"toric.rays: {exc}")
        return None, None
    key = "boundary_ray_coeffs" if "boundary_ray_coeffs" in block else "boundary_class"
    D = _rat_list(block.get(key), f"toric.{key}", diags, T.n_rays)
    if D is None:
        return None, None
    if all(d == 0 for d in D):
        diags.append(f"toric.{key}: D must be a nonzero (reduced Weil) divisor")
        return None, None
    labels = tuple(f"D{i}" for i in range(T.n_rays))
    M = T.intersection_matrix()
    lattice = IntersectionLattice(labels, tuple(tuple(r) for r in M), 2)
    curves, clabels, extra = [], [], []
    for i in range(T.n_rays):
        e = tuple(1 if j == i else 0 for j in range(T.n_rays))
        if M[i][i] < 0:
            curves.append(e)
            clabels.append(labels[i])
        else:
            extra.append(e)
    S = SurfaceData(lattice, tuple(-1 for _ in labels), tuple(D), tuple(curves), tuple(clabels), tuple(extra))
    return S, T


def _bundle_from_block(block: dict, diags: list[str]) -> Optional[GeographyBundle]:
    n = block.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        diags.append("bundle.n: expected a positive integer")
        return None
    shift = _rat_field(block.get("shift", "0"), "bundle.shift", diags)
    segs_raw = block.get("segments")
    if not isinstance(segs_raw, list) or not segs_raw:
        diags.append("bundle.segments: expected a nonempty list")
        return None
    segs = []
    for i, s in enumerate(segs_raw):
        path = f"bundle.segments[{i}]"
        if not isinstance(s, dict):
            diags.append(f"{path}: expected an object")
            continue
        lo = _rat_field(s.get("lo"), f"{path}.lo", diags)
        hi = _rat_field(s.get("hi"), f"{path}.hi", diags)
        try:
            vol = parse_poly(s.get("vol"), f"{path}.vol")
            sp = parse_poly(s.get("s"), f"{path}.s")
            kap = parse_poly(s["kappa"], f"{path}.kappa") if "kappa" in s else None
        except ValidationError as exc:
            diags.extend(exc.diagnostics)
            continue
        if lo is not None and hi is not None:
            segs.append(Segment(lo, hi, vol, sp, kap))
    if diags:
        return None
    try:
        return GeographyBundle(n, tuple(segs), shift)
    except ValueError as exc:
        diags.append(f"bundle.segments: {exc}")
        return None


def _assumption_checks(S: SurfaceData, betas: list[Fraction], diags: list[str]):
    L = S.lattice
    for b in betas:
        M = S.divisor_ray(1 - b)
        bad = [lab for lab, C in zip(S.curve_labels, S.negative_curves) if L.intersect(M, C) <= 0]
        if bad or L.square(M) <= 0:
            what = f"pairs non-positively with {', '.join(bad)}" if bad else "has non-positive self-intersection"
            diags.append(f"beta: at beta = {rat_str(b)}, -K_X - (1-beta)D {what} (must be ample)")


def options_from(doc: dict, overrides: Optional[dict] = None) -> tuple[dict, list[str]]:
    diags: list[str] = []
    merged = dict(doc)
    overrides = overrides or {}
    if overrides.get("beta") is not None or overrides.get("beta_scan") is not None:
        # command-line cone parameters replace those in the document
        merged.pop("beta", None)
        merged.pop("beta_scan", None)
    for k, v in overrides.items():
        if v is not None:
            merged[k] = v
    betas: list[Fraction] = []
    if "beta" in merged:
        b = _rat_field(merged["beta"], "beta", diags)
        if b is not None:
            betas.append(b)
    if "beta_scan" in merged:
        try:
            betas.extend(parse_beta_scan(merged["beta_scan"]))
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
            diags.append(f"beta_scan: {exc}")
    for b in betas:
        if not 0 <= b <= 1:
            diags.append(f"beta: {rat_str(b)} is outside the range 0 <= beta <= 1")
    seen, uniq = set(), []
    for b in betas:
        if b not in seen:
            seen.add(b)
            uniq.append(b)
    r = merged.get("r", "auto")
    if r != "auto" and (not isinstance(r, int) or isinstance(r, bool) or r < 1):
        try:
            r = int(str(r))
            if r < 1:
                raise ValueError
        except ValueError:
            diags.append(f"r: expected a positive integer or \"auto\", got {r!r}")
    vt = merged.get("verify_toric")
    if vt is not None and (not isinstance(vt, int) or isinstance(vt, bool) or vt < 20):
        diags.append("verify_toric: expected an integer k_max >= 20")
    return {"betas": uniq, "r": r, "verify_toric": vt}, diags


def parse_document(doc: Any, overrides: Optional[dict] = None):
    """Return ``(kind, surface, toric, bundle, options)`` or raise ValidationError."""
    diags: list[str] = []
    if not isinstance(doc, dict):
        raise ValidationError(["document: expected a JSON object"])
    present = [k for k in GEOMETRY_KEYS if k in doc]
    if len(present) != 1:
        raise ValidationError([f"document: exactly one of {', '.join(GEOMETRY_KEYS)} is required, found {present or 'none'}"])
    kind = present[0]
    opts, odiags = options_from(doc, overrides)
    diags.extend(odiags)
    S = T = B = None
    block = doc[kind]
    if not isinstance(block, dict):
        raise ValidationError([f"{kind}: expected an object"])
    gdiags: list[str] = []
    try:
        if kind == "surface":
            S = _surface_from_block(block, gdiags)
        elif kind == "toric":
            S, T = _toric_from_block(block, gdiags)
        else:
            B = _bundle_from_block(block, gdiags)
    except LatticeError as exc:
        gdiags.append(f"{kind}: {exc}")
    diags.extend(gdiags)
    if S is not None and not diags:
        _assumption_checks(S, [b for b in opts["betas"] if 0 <= b <= 1], diags)
    if kind == "bundle" and opts["r"] == "auto":
        diags.append("r: \"auto\" needs lattice data; give an integer for bundle documents")
    if opts["verify_toric"] is not None and kind != "toric":
        diags.append("verify_toric: only available for toric documents")
    if diags:
        raise ValidationError(diags)
    return kind, S, T, B, opts


def validate(doc: Any, overrides: Optional[dict] = None) -> list[str]:
    try:
        parse_document(doc, overrides)
    except ValidationError as exc:
        return exc.diagnostics
    return []


# --- running -----------------------------------------------------------------


def _profile_block(P: VolumeProfile) -> dict:
    chambers = []
    for ch in P.chambers():
        entry = {
            "lo": ser_alg(ch.lo), "hi": ser_alg(ch.hi),
            "volume": ser_poly(ch.volume), "volume_text": ch.volume.pretty("t"),
            "s": ser_poly(ch.s),
            "kappa": ser_poly(ch.kappa) if ch.kappa is not None else None,
        }
        if P.chamber_models is not None:
            entry["contracted"] = sorted(P.curve_labels[i] for i in ch.contracted)
        chambers.append(entry)
    return {
        "variable": "t",
        "breakpoints": [ser_alg(b) for b in P.chamber_breaks],
        "tau": ser_alg(P.tau),
        "chambers": chambers,
    }


def _eta_block(P: VolumeProfile, beta: Fraction) -> dict:
    e = eta(P, beta, symbolic=False)
    from .stability import local_eta_poly

    try:
        local = ser_poly(local_eta_poly(P, beta))
    except AlgebraicWallError:
        local = None
    return {
        "beta": rat_str(beta),
        "value": ser_alg(e.value),
        "eta_plus": ser_alg(e.eta_plus),
        "eta_minus": ser_alg(e.eta_minus),
        "sign": {-1: "negative", 0: "zero", 1: "positive"}[e.sign],
        "verdict": e.verdict.value,
        "verdict_text": VERDICT_TEXT[e.verdict],
        "local_beta_poly": local,
    }


def _df_block(P: VolumeProfile, beta: Fraction, r, S: Optional[SurfaceData]) -> dict:
    if r == "auto":
        r = auto_r(S, beta)
    try:
        B = bundle_from_profile(P, beta)
        rep = df_invariant(B, beta, int(r), S)
    except (ValueError, ArithmeticError) as exc:
        return {"r": r, "error": str(exc)}
    out = {"r": rep.r}
    for name in ("tau_beta", "a0", "a1", "a0_tilde", "b0", "b1", "b0_tilde", "v0", "v1",
                 "df_value", "proportionality_factor"):
        out[name] = rat_str(getattr(rep, name))
    out["proportionality_checked"] = rep.proportionality_checked
    out["sign"] = {-1: "negative", 0: "zero", 1: "positive"}[(rep.df_value > 0) - (rep.df_value < 0)]
    return out


def _per_beta(P: VolumeProfile, beta: Fraction, r, S) -> dict:
    tau = P.tau
    block: dict = {"beta": rat_str(beta), "tau": ser_alg(tau), "tau_beta": ser_alg(tau - (1 - beta))}
    block["eta"] = _eta_block(P, beta)
    block["df"] = _df_block(P, beta, r, S)
    try:
        B = bundle_from_profile(P, beta)
        lhs, rhs = lemma_vol_sides(B, beta)
        block["lemma_vol_check"] = {"passed": lhs == rhs, "integral_form": rat_str(lhs), "derivative_form": rat_str(rhs)}
    except (ValueError, ArithmeticError) as exc:
        block["lemma_vol_check"] = {"passed": None, "error": str(exc)}
    return block


def _toric_block(T: ToricSurface, S: SurfaceData, P: VolumeProfile, beta: Fraction, r, kmax: int) -> dict:
    if r == "auto":
        r = auto_r(S, beta)
    r = int(r)
    tau_b = (P.tau - (1 - beta))
    if not tau_b.is_rational:
        return {"error": "irrational tau_beta"}
    tau_b = tau_b.as_fraction()
    Lb = log_divisor(T, S.boundary, beta, r)
    modulus = 1
    for c in list(Lb) + [r * tau_b]:
        modulus = lcm(modulus, Fraction(c).denominator)
    stride = modulus * max(1, kmax // (8 * modulus))
    ks = sorted(k for k in range(kmax, 0, -stride) if k >= max(4, kmax // 3))
    tables = [weight_table(T, Lb, S.boundary, r * tau_b, k) for k in ks]
    v0, v1 = fit_leading_coeffs(tables, 2, modulus)
    rep = df_invariant(bundle_from_profile(P, beta), beta, r, S)

    def rel(est, exact):
        return rat_str(abs(est - exact) / abs(exact)) if exact else rat_str(abs(est))

    return {
        "beta": rat_str(beta), "r": r, "k_values": ks, "modulus": modulus,
        "v0_fit": rat_str(v0), "v1_fit": rat_str(v1),
        "v0_formula": rat_str(rep.v0), "v1_formula": rat_str(rep.v1),
        "v0_rel_residual": rel(v0, rep.v0), "v1_rel_residual": rel(v1, rep.v1),
    }


def run(doc: Any, overrides: Optional[dict] = None, emit_bundle: Optional[str] = None) -> dict:
    kind, S, T, B, opts = parse_document(doc, overrides)
    if S is not None:
        P = build_profile(S)
    else:
        P = B.to_profile()
    report: dict = {"tool": "logfano", "version": __version__, "input_kind": kind}
    report["profile"] = _profile_block(P)
    betas = opts["betas"]
    with ThreadPoolExecutor(max_workers=4) as pool:
        report["results"] = list(pool.map(lambda b: _per_beta(P, b, opts["r"], S), betas))
    if P.start == 0:
        try:
            sym = eta_beta_polynomial(P)
            report["eta_symbolic"] = {
                "variable": "beta",
                "pieces": [{"lo": ser_alg(sym.breakpoints[i]), "hi": ser_alg(sym.breakpoints[i + 1]),
                            "poly": ser_poly(p), "text": p.pretty("beta")} for i, p in enumerate(sym.pieces)],
            }
            report["destabilizing_betas"] = [
                {"lo": ser_alg(iv.lo), "hi": ser_alg(iv.hi), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}
                for iv in destabilizing_betas(P)
            ]
        except AlgebraicWallError as exc:
            grid = [Fraction(i, 100) for i in range(1, 101)]
            report["eta_symbolic"] = {"error": str(exc)}
            report["destabilizing_betas"] = {
                "grid_certificate": [[rat_str(b), s] for b, s in certify_beta_grid(P, grid)],
            }
    verification: dict = {
        "volume_continuous": P.volume.is_continuous(),
        "derivative_identity": all(
            -P.volume.pieces[i].derivative() == P.derivative_data[i].scale(P.dimension_n)
            for i in range(P.n_chambers)
        ),
        "lemma_vol_check": all(r["lemma_vol_check"]["passed"] is not False for r in report["results"]),
    }
    if T is not None and opts["verify_toric"] is not None:
        verification["toric"] = [
            _toric_block(T, S, P, b, opts["r"], opts["verify_toric"]) for b in betas
        ]
    report["verification"] = verification
    caveats = [R_CAVEAT]
    if S is not None:
        caveats.insert(0, NEFNESS_CAVEAT)
    report["caveats"] = caveats
    if emit_bundle is not None:
        if not betas:
            raise ValidationError(["emit-bundle: needs a beta"])
        beta = betas[0]
        r = opts["r"] if opts["r"] != "auto" else auto_r(S, beta)
        out_doc = {"bundle": bundle_to_json(bundle_from_profile(P, beta)), "beta": rat_str(beta), "r": int(r)}
        with open(emit_bundle, "w", encoding="utf-8") as fh:
            fh.write(dumps(out_doc))
    return report


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt(v) -> str:
    if isinstance(v, dict) and "defining_poly" in v:
        return f"root of [{', '.join(v['defining_poly'])}] in [{v['interval'][0]}, {v['interval'][1]}] ~ {v['decimal_hint']}"
    return str(v)


def render_text(report: dict) -> str:
    lines = [f"logfano {report['version']} ({report['input_kind']} input)", ""]
    prof = report["profile"]
    lines.append(f"volume profile V(t) = vol(-K_X - tD), tau(D) = {_fmt(prof['tau'])}")
    for ch in prof["chambers"]:
        extra = f"   contracted: {{{', '.join(ch['contracted'])}}}" if "contracted" in ch else ""
        lines.append(f"  [{_fmt(ch['lo'])}, {_fmt(ch['hi'])}]  V = {ch['volume_text']}{extra}")
    if "eta_symbolic" in report:
        sym = report["eta_symbolic"]
        lines.append("")
        if "pieces" in sym:
            lines.append("eta as a function of beta:")
            for p in sym["pieces"]:
                lines.append(f"  beta in [{_fmt(p['lo'])}, {_fmt(p['hi'])}]:  {p['text']}")
        else:
            lines.append(f"eta in beta unavailable: {sym['error']}")
        dest = report.get("destabilizing_betas")
        if isinstance(dest, list):
            ivs = [("[" if d["lo_closed"] else "(") + f"{_fmt(d['lo'])}, {_fmt(d['hi'])}" + ("]" if d["hi_closed"] else ")")
                   for d in dest]
            lines.append("destabilizing beta (eta < 0): " + (" U ".join(ivs) if ivs else "none"))
    for res in report["results"]:
        e = res["eta"]
        lines += ["", f"beta = {res['beta']}: tau_beta = {_fmt(res['tau_beta'])}",
                  f"  eta = {_fmt(e['value'])}  (eta_+ = {_fmt(e['eta_plus'])}, eta_- = {_fmt(e['eta_minus'])})",
                  f"  verdict: {e['verdict']}", f"    {e['verdict_text']}"]
        df = res["df"]
        if "error" in df:
            lines.append(f"  DF: unavailable ({df['error']})")
        else:
            lines.append(f"  DF_beta (r = {df['r']}) = {df['df_value']}  = {df['proportionality_factor']} * eta"
                         f"  [{'checked' if df['proportionality_checked'] else 'MISMATCH'}]")
            lines.append("    " + ", ".join(f"{k} = {df[k]}" for k in ("a0", "a1", "a0_tilde", "b0", "b1", "b0_tilde", "v0", "v1")))
        lines.append(f"  integration-by-parts identity: {res['lemma_vol_check'].get('passed')}")
    ver = report["verification"]
    lines += ["", f"checks: continuity {ver['volume_continuous']}, -V' = n*s {ver['derivative_identity']}"]
    for tb in ver.get("toric", []):
        if "error" in tb:
            lines.append(f"toric check: {tb['error']}")
        else:
            lines.append(f"toric check at beta = {tb['beta']}: v0 fit {tb['v0_fit']} vs {tb['v0_formula']}, "
                         f"v1 fit {tb['v1_fit']} vs {tb['v1_formula']}")
    lines += ["", "caveats:"] + [f"  - {c}" for c in report["caveats"]]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logfano", description=__doc__.splitlines()[0])
    ap.add_argument("input", help="JSON input document")
    ap.add_argument("--beta", help="cone parameter as p/q")
    ap.add_argument("--beta-scan", help="lo:hi:step scan of cone parameters")
    ap.add_argument("--r", help="positive integer or 'auto'")
    ap.add_argument("--verify-toric", type=int, metavar="K", help="run the lattice-point check up to k = K")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--emit-bundle", metavar="PATH", help="write the geography bundle as a reusable input document")
    ap.add_argument("--validate-only", action="store_true", help="print diagnostics and exit")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    overrides = {"beta": args.beta, "beta_scan": args.beta_scan, "verify_toric": args.verify_toric}
    if args.r is not None:
        overrides["r"] = args.r if args.r == "auto" else args.r
    if args.validate_only:
        diags = validate(doc, overrides)
        for d in diags:
            print(d)
        return EXIT_VALIDATION if diags else EXIT_OK
    try:
        report = run(doc, overrides, args.emit_bundle)
    except ValidationError as exc:
        for d in exc.diagnostics:
            print(f"invalid input: {d}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ZariskiError, ProfileError, ArithmeticError, ValueError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    sys.stdout.write(dumps(report) if args.format == "json" else render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
