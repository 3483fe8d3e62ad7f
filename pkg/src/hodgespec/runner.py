"""Batch driver behind the command line: one manifest in, one report out.

Reports are plain JSON-ready dicts with floats rounded to nine digits and no
timestamps, so equal manifests give byte-identical output.
"""

from __future__ import annotations

import csv
import io as _io
import itertools
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import bounds, combinatorics, hodge, satake
from .complex import SimplicialComplex, degree_profile, find_disorientation
from .errors import HodgeSpecError, InvalidParamsError, NotApplicableError, PreconditionError, ResourceError
from .generators import RNG_ALGORITHM, GeneratorSpec, generate, parse_spec
from .io import atomic_write, parse_complex

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunManifest:
    """Everything that determines a run; equal manifests give equal outputs."""

    command: str
    input: str = None
    generate: str = None
    options: dict = field(default_factory=dict)
    tolerance: float = None
    output_format: str = "json"
    out: str = None
    seed: int = 0

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class RunResult:
    code: int
    payload: object
    text: str


def _r(x, digits=9):
    if x is None:
        return None
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


def _num(z):
    """Real number, or [re, im] when the imaginary part is not negligible."""
    z = complex(z)
    if abs(z.imag) <= 1e-9 * max(1.0, abs(z.real)):
        return _r(z.real)
    return [_r(z.real), _r(z.imag)]


def parse_sets(text: str) -> list:
    """``"0 3;1,4;2 5"`` -> [{0, 3}, {1, 4}, {2, 5}] (ids separated by spaces or commas)."""
    out = []
    for part in text.split(";"):
        ids = part.replace(",", " ").split()
        try:
            out.append(frozenset(int(v) for v in ids))
        except ValueError:
            raise InvalidParamsError(f"cannot read vertex set {part!r}") from None
    return out


def load_complex(manifest: RunManifest) -> tuple:
    if manifest.input and manifest.generate:
        raise InvalidParamsError("give either --input or --generate, not both")
    if manifest.input:
        return parse_complex(manifest.input), {"input": Path(manifest.input).name}
    if manifest.generate:
        spec = parse_spec(manifest.generate, seed=manifest.seed)
        return generate(spec), {"generate": spec.to_json()}
    raise InvalidParamsError("this command needs --input or --generate")


def _describe(X: SimplicialComplex, source: dict) -> dict:
    return {**source, "n": X.n, "f_vector": list(X.f_vector)}


def _apply_tol(report, tol):
    if tol is not None:
        report.tol = tol
    return report


# --- commands -----------------------------------------------------------------


def cmd_spectrum(m: RunManifest):
    X, src = load_complex(m)
    dims = [m.options["dim"]] if m.options.get("dim") is not None else list(range(X.dim + 1))
    reports = [hodge.spectrum_report(X, i) for i in dims]
    payload = {"complex": _describe(X, src), "spectra": [r.to_json() for r in reports]}
    return payload, True, reports


def _spectrum_csv(reports) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "part", "value", "mult", "colored"])
    for r in reports:
        js = r.to_json()
        for part in ("trivial", "nontrivial"):
            for item in js[part]:
                colored = part == "nontrivial" and r.colored_value is not None and abs(
                    item["value"] - r.colored_value
                ) <= hodge.COLORED_RTOL * r.k
                w.writerow([r.dim, part, item["value"], item["mult"], int(colored)])
    return buf.getvalue()


def cmd_cheeger(m: RunManifest):
    X, src = load_complex(m)
    out = {"complex": _describe(X, src)}
    ok = True
    if m.options.get("sets"):
        rep = _apply_tol(bounds.cheeger_check(X, *parse_sets(m.options["sets"])), m.tolerance)
        out["report"] = rep.to_json()
        ok &= rep.holds
    if m.options.get("all_partitions"):
        audit = bounds.cheeger_audit(X)
        out["audit"] = {
            "partitions": audit.partitions,
            "violations": audit.violations,
            "worst_slack": _r(audit.worst_slack),
            "worst_partition": [sorted(b) for b in audit.worst_partition] if audit.worst_partition else None,
        }
        ok &= audit.all_hold
    if m.options.get("theta") is not None:
        h = bounds.h_theta(X, m.options["theta"])
        out["h_theta"] = {"theta": _r(h.theta), "value": _r(h.value), "partition": [sorted(b) for b in h.partition]}
    if len(out) == 1:
        raise InvalidParamsError("cheeger needs --sets, --all-partitions or --theta")
    return out, ok, None


def cmd_mixing(m: RunManifest):
    X, src = load_complex(m)
    mc = bounds.mixing_constants(X)
    out = {"complex": _describe(X, src), "mu0": _r(mc.mu0), "mu1": _r(mc.mu1)}
    ok = True
    if m.options.get("sets"):
        rep = _apply_tol(bounds.mixing_check(X, *parse_sets(m.options["sets"]), constants=mc), m.tolerance)
        out["report"] = rep.to_json()
        ok &= rep.holds
    if m.options.get("all_partitions"):
        total = failed = 0
        for quad in combinatorics.legal_quadruples(mc.coloring):
            total += 1
            failed += not _apply_tol(bounds.mixing_check(X, *quad, constants=mc), m.tolerance).holds
        out["audit"] = {"placements": total, "violations": failed}
        ok &= failed == 0
    if len(out) == 3:
        raise InvalidParamsError("mixing needs --sets or --all-partitions")
    return out, ok, None


def _run_query(X, q: dict):
    op = q.get("op")
    sets = q.get("sets")
    if isinstance(sets, str):
        sets = parse_sets(sets)
    if not isinstance(sets, list):
        raise InvalidParamsError(f"query {q!r} needs a list of sets")
    if op == "rainbow":
        return combinatorics.count_rainbow(X, sets, q.get("j", len(sets) - 1))
    if op == "paths":
        return combinatorics.count_paths(X, *sets)
    if op == "galleries":
        return combinatorics.count_galleries(X, q.get("j", 2), sets)
    if op == "spectral":
        return _r(combinatorics.spectral_gallery_count(X, *sets))
    raise InvalidParamsError(f"unknown gallery op {op!r}")


def cmd_gallery(m: RunManifest):
    X, src = load_complex(m)
    if m.options.get("queries"):
        try:
            queries = json.loads(Path(m.options["queries"]).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidParamsError(f"query file is not valid JSON: {exc}") from None
    elif m.options.get("sets"):
        query = {"op": m.options.get("op") or "galleries", "sets": m.options["sets"]}
        if m.options.get("j") is not None:
            query["j"] = m.options["j"]
        queries = [query]
    else:
        raise InvalidParamsError("gallery needs --queries or --sets")
    results = []
    for q in queries:
        results.append({"query": {k: (v if not isinstance(v, frozenset) else sorted(v)) for k, v in q.items()},
                        "result": _run_query(X, q)})
    return {"complex": _describe(X, src), "results": results}, True, None


def satake_report(p: satake.SatakeParams) -> dict:
    cf = satake.closed_form_eigenvalues(p)
    rep = satake.classify_type(p)
    mats = satake.build_matrices(p)
    out = {
        "q": p.q,
        "z": [_num(z) for z in p.z],
        "lambdaK": _num(cf.lambdaK),
        "lambdaE_zero": 0.0,
        "lambdaE_plus": _num(cf.lambdaE_plus),
        "lambdaE_minus": _num(cf.lambdaE_minus),
        "nonreal": cf.nonreal,
        "type": rep.kind,
        "type_info": rep.to_json(),
        "type_eigenvalues": {k: [_num(v) for v in vals] for k, vals in satake.type_eigenvalues(p, rep).items()},
        "matrices": {k: [[_num(x) for x in row] for row in v] for k, v in mats.items()},
        "eigenvalues": {
            k: sorted((_num(x) for x in np.linalg.eigvals(mats[k])), key=lambda v: v if isinstance(v, float) else v[0])
            for k in ("up0", "down1", "up1", "down2")
        },
        "intervals": {k: [_r(a) for a in v] if isinstance(v, tuple) else _r(v) for k, v in satake.intervals(p.q).items()},
    }
    if rep.kind in ("a", "c"):
        out["interval_membership"] = satake.verify_interval_membership(p, rep)
    return out


def _parse_z(text: str) -> complex:
    """``"re,im"`` or a complex literal such as ``"0.6+0.8i"``."""
    if "," in text:
        try:
            re_, im_ = (float(x) for x in text.split(","))
        except ValueError:
            raise InvalidParamsError(f"cannot read {text!r} as re,im") from None
        return complex(re_, im_)
    return satake.parse_complex_number(text)


def cmd_satake(m: RunManifest):
    q = m.options.get("q")
    if m.options.get("z"):
        zs = [_parse_z(s) for s in m.options["z"]]
        if len(zs) != 3:
            raise InvalidParamsError("--z needs three values")
        if q is None:
            raise InvalidParamsError("--z needs --q")
        p = satake.SatakeParams(*zs, int(q))
    elif m.options.get("pattern"):
        p = satake.parse_pattern(m.options["pattern"], q)
    else:
        raise InvalidParamsError("satake needs --z or --pattern")
    out = satake_report(p)
    return out, out.get("interval_membership", True), None


def cmd_chromatic(m: RunManifest):
    X, src = load_complex(m)
    wc = bounds.weak_chromatic(X)
    ok = not (wc.tripartite and wc.chi != 2)
    return {
        "complex": _describe(X, src),
        "chi": wc.chi,
        "coloring": list(wc.coloring.colors),
        "tripartite": wc.tripartite,
    }, ok, None


# --- check-all -------------------------------------------------------------------


def default_corpus(seed: int) -> list:
    specs = [GeneratorSpec("named", {"id": name}) for name in (
        "octahedron", "tetrahedron-boundary", "pentachoron-boundary",
        "hollow-triangle", "single-triangle", "csaszar-torus",
    )]
    specs += [
        GeneratorSpec("complete-tripartite", {"m": 3}),
        GeneratorSpec("latin-tripartite", {"m": 4, "r": 2, "seed": seed}),
        GeneratorSpec("linial-meshulam", {"n": 8, "p": 0.5, "seed": seed + 1}),
        GeneratorSpec("clique-gnp", {"n": 9, "p": 0.6, "seed": seed + 2}),
    ]
    return specs


def hodge_battery(X: SimplicialComplex) -> dict:
    """Structural identities every complex must satisfy."""
    res = {}
    d = X.dim
    B = [None] + [hodge.boundary_matrix(X, i) for i in range(1, d + 1)]
    res["chain_complex"] = all(not np.any(B[i] @ B[i + 1]) for i in range(1, d))
    psd = True
    for i in range(d + 1):
        L = hodge.laplacian(X, i, "full")
        norm = float(np.abs(np.linalg.eigvalsh(L)).max(initial=0.0)) if L.size else 0.0
        psd &= L.size == 0 or np.linalg.eigvalsh(L).min() >= -1e-9 * max(1.0, norm)
    res["psd"] = bool(psd)
    match = True
    for i in range(d):
        up = np.linalg.eigvalsh(hodge.laplacian(X, i, "up"))
        down = np.linalg.eigvalsh(hodge.laplacian(X, i + 1, "down"))
        up, down = up[up > 1e-8], down[down > 1e-8]
        match &= up.shape == down.shape and np.allclose(up, down, atol=1e-8)
    res["up_down_match"] = bool(match)
    reports = [hodge.spectrum_report(X, i) for i in range(d + 1)]
    betti = [r.betti for r in reports]
    res["betti"] = betti
    res["euler_poincare"] = sum((-1) ** i * b for i, b in enumerate(betti)) == sum(
        (-1) ** i * c for i, c in enumerate(X.f_vector)
    )
    garland = []
    for j in range(1, d + 1):
        try:
            g = hodge.garland_check(X, j)
        except NotApplicableError:
            continue
        garland.append({"j": j, "interval": [_r(g.lower), _r(g.upper)], "holds": g.holds})
    res["garland"] = garland
    bound = True
    for j in range(d):
        K = degree_profile(X, j).k_max
        top = reports[j].eigenvalues.max(initial=0.0)
        bound &= top <= (j + 2) * K + 1e-9 * max(1.0, K)
    res["top_eigenvalue_bound"] = bool(bound)
    if d >= 1:
        k = degree_profile(X, d - 1).k
        if k:
            has = bool(np.any(np.abs(reports[d - 1].nontrivial - (d + 1) * k) <= 1e-6 * k))
            dis = find_disorientation(X) is not None
            res["disorientation_eigenvalue"] = {"disorientable": dis, "eigenvalue_present": has, "holds": dis == has}
    flags = [res[k] for k in ("chain_complex", "psd", "up_down_match", "euler_poincare", "top_eigenvalue_bound")]
    flags += [g["holds"] for g in garland]
    flags.append(res.get("disorientation_eigenvalue", {}).get("holds", True))
    res["holds"] = all(flags)
    return res


def check_complex(X: SimplicialComplex, seed: int, draws: int = 20) -> dict:
    res = {"hodge": hodge_battery(X)}
    if X.dim >= 1 and X.n <= bounds.EXHAUSTIVE_CAP:
        try:
            audit = bounds.cheeger_audit(X)
            res["cheeger"] = {"partitions": audit.partitions, "worst_slack": _r(audit.worst_slack),
                              "holds": audit.all_hold}
        except PreconditionError as exc:
            res["cheeger"] = {"skipped": str(exc)}
        wc = bounds.weak_chromatic(X)
        res["weak_chromatic"] = {"chi": wc.chi, "tripartite": wc.tripartite,
                                 "holds": not (wc.tripartite and wc.chi != 2)}
    if X.dim == 2:
        try:
            mc = bounds.mixing_constants(X)
        except PreconditionError as exc:
            res["tripartite_checks"] = {"skipped": str(exc)}
        else:
            rng = np.random.default_rng(seed)
            try:
                quads = [combinatorics.random_legal_quadruple(mc.coloring, rng) for _ in range(draws)]
            except PreconditionError as exc:
                res["tripartite_checks"] = {"skipped": str(exc)}
                return res
            gap = max(
                abs(combinatorics.spectral_gallery_count(X, *qd, coloring=mc.coloring)
                    - combinatorics.count_galleries(X, 2, qd))
                for qd in quads
            )
            res["gallery_identity"] = {"draws": draws, "max_gap": _r(gap), "holds": gap <= 1e-6}
            mix = [bounds.mixing_check(X, *qd, constants=mc) for qd in quads]
            res["mixing"] = {"draws": draws, "min_slack": _r(min(-r.slack for r in mix)),
                             "holds": all(r.holds for r in mix)}
            col = []
            for u, v in itertools.combinations(range(X.n), 2):
                if mc.coloring.colors[u] != mc.coloring.colors[v]:
                    col.append(bounds.colored_mixing_check(X, mc.coloring, {u}, {v}).holds)
            res["colored_mixing"] = {"pairs": len(col), "holds": all(col)}
            dev = hodge.deviation_norms(X, mc.coloring)
            res["deviation"] = {"norm_d": _r(dev.norm_d), "norm_d_prime": _r(dev.norm_d_prime),
                                "holds": bool(dev.holds_d and dev.holds_d_prime)}
    return res


def cmd_check_all(m: RunManifest):
    corpus = m.options.get("corpus", "default")
    if corpus != "default":
        raise InvalidParamsError(f"unknown corpus {corpus!r}")
    entries = []
    ok = True
    for k, spec in enumerate(default_corpus(m.seed)):
        X = generate(spec)
        res = check_complex(X, seed=m.seed + 100 + k)
        passed = all(part.get("holds", True) for part in res.values())
        ok &= passed
        entries.append({"complex": spec.to_json(), "f_vector": list(X.f_vector), "passed": passed, "checks": res})
    return {"corpus": corpus, "seed": m.seed, "rng": RNG_ALGORITHM, "passed": ok, "entries": entries}, ok, None


COMMANDS = {
    "spectrum": cmd_spectrum,
    "cheeger": cmd_cheeger,
    "mixing": cmd_mixing,
    "gallery": cmd_gallery,
    "satake": cmd_satake,
    "chromatic": cmd_chromatic,
    "check-all": cmd_check_all,
}


def error_payload(exc: BaseException) -> dict:
    return {"error": type(exc).__name__, "message": str(exc).strip("'\"")}


def run(manifest: RunManifest) -> RunResult:
    """Execute a manifest.  Errors are reported, not raised: the result carries the exit code."""
    try:
        fn = COMMANDS[manifest.command]
    except KeyError:
        exc = InvalidParamsError(f"unknown command {manifest.command!r}")
        return RunResult(EXIT_INPUT, error_payload(exc), json.dumps(error_payload(exc)))
    try:
        payload, ok, extra = fn(manifest)
    except ResourceError as exc:
        return RunResult(EXIT_RESOURCE, error_payload(exc), json.dumps(error_payload(exc)))
    except (HodgeSpecError, OSError, ValueError, KeyError) as exc:
        return RunResult(EXIT_INPUT, error_payload(exc), json.dumps(error_payload(exc)))
    if manifest.output_format == "csv":
        if manifest.command != "spectrum":
            exc = InvalidParamsError("CSV output is available for the spectrum command")
            return RunResult(EXIT_INPUT, error_payload(exc), json.dumps(error_payload(exc)))
        text = _spectrum_csv(extra)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if manifest.out:
        atomic_write(manifest.out, text)
    return RunResult(EXIT_OK if ok else EXIT_VIOLATION, payload, text)
