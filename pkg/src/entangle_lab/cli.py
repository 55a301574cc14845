"""Command-line front end: entangle-lab <group> <command> [args].

Exit codes: 0 success, 2 a verification was computed and failed, 1 usage or
input error. --json switches the report to a JSON object (schema in
data/report.schema.json); --tol overrides the command's default tolerance.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from math import comb
from pathlib import Path

import numpy as np

from . import algebra, dynamics, hypergraph, measures, multiunitary, slocc, states, symmetry
from .linalg import PureState, load_state, state_to_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Report:
    command: str
    inputs: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    runtime_s: float = 0.0
    status: str = "ok"

    def add_input(self, path):
        data = Path(path).read_bytes()
        self.inputs.append({"path": str(path), "sha256": hashlib.sha256(data).hexdigest()})

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"status: {self.status}"]
        for item in self.inputs:
            lines.append(f"input: {item['path']} sha256={item['sha256'][:16]}")
        for k, v in self.tolerances.items():
            lines.append(f"tolerance {k}: {v}")
        for k, v in self.results.items():
            if isinstance(v, (list, dict)):
                v = json.dumps(v)
            lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _fmt_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _fmt_point(p: slocc.ExtendedComplex) -> str:
    return repr(p)


def _fmt_matrix(m) -> list:
    return [[_fmt_complex(z) for z in row] for row in np.asarray(m)]


def _parse_complex(s: str) -> complex:
    return complex(s.replace(" ", "").replace("i", "j"))


def _parse_perm(s: str) -> tuple[int, ...]:
    return symmetry.check_perm(s.replace(",", " ").split())


def _load_graph(path) -> hypergraph.Hypergraph:
    return hypergraph.hypergraph_from_text(Path(path).read_text())


def _graph_arg(args, report) -> hypergraph.Hypergraph:
    if args.family:
        name, *params = args.family
        return hypergraph.family(name, *(int(p) if p.lstrip("-").isdigit() else p for p in params))
    if not args.graph:
        raise UsageError("give a hypergraph file or --family NAME PARAMS")
    report.add_input(args.graph)
    return _load_graph(args.graph)


def _state_input(path, report) -> PureState:
    report.add_input(path)
    return load_state(path)


# ---- state ------------------------------------------------------------------

def _make_state(family: str, params: list[str]) -> PureState:
    p = params
    ints = lambda: [int(x) for x in p]
    if family == "ghz":
        return states.ghz(*ints())
    if family == "dicke":
        return states.dicke(*ints())
    if family == "w":
        return states.w(*ints())
    if family == "psi":
        return states.psi_family(*ints())
    if family in ("state4", "ame4"):
        return states.state4(*ints())
    if family == "ame5":
        return states.ame5_minimal(*ints())
    if family == "ame5-nonminimal":
        return states.ame5_nonminimal(*ints())
    if family == "ame6-4":
        phi = float(p[0]) if p else 0.0
        return states.ame6_4(np.exp(1j * phi))
    if family == "gabcd":
        if len(p) != 4:
            raise UsageError("gabcd needs a b c d")
        return states.gabcd_state([_parse_complex(x) for x in p])
    if family == "m4":
        return states.m4_state()
    if family == "chi3":
        return states.chi3()
    if family == "excitation":
        if not p:
            raise UsageError("excitation needs a graph file or a family name with parameters")
        if Path(p[0]).exists():
            return states.excitation_state(_load_graph(p[0]))
        return states.excitation_state(hypergraph.family(p[0], *(int(x) if x.isdigit() else x for x in p[1:])))
    if family == "oa":
        if len(p) != 1:
            raise UsageError("oa needs an OA file")
        return states.state_from_oa(algebra.oa_from_text(Path(p[0]).read_text()))
    if family == "majorana":
        if not p or len(p) % 2:
            raise UsageError("majorana needs theta phi pairs")
        vals = [float(x) for x in p]
        return states.majorana_state(list(zip(vals[::2], vals[1::2])))
    if family == "dicke-like":
        if len(p) < 3:
            raise UsageError("dicke-like needs N k and at least one generator like '2 3 1'")
        n, k = int(p[0]), int(p[1])
        return symmetry.dicke_like(n, k, symmetry.subgroup_generate(n, [_parse_perm(g) for g in p[2:]]))
    if family == "h-symmetric":
        if len(p) < 2:
            raise UsageError("h-symmetric needs N and at least one generator")
        n = int(p[0])
        return symmetry.canonical_h_symmetric(symmetry.subgroup_generate(n, [_parse_perm(g) for g in p[1:]]))
    raise UsageError(f"unknown state family {family!r}")


STATE_FAMILIES = (
    "ghz", "dicke", "w", "psi", "state4", "ame5", "ame5-nonminimal", "ame6-4", "gabcd", "m4", "chi3",
    "excitation", "oa", "majorana", "dicke-like", "h-symmetric",
)


def cmd_state_make(args, report):
    psi = _make_state(args.family, args.params)
    obj = state_to_json(psi)
    if args.output:
        Path(args.output).write_text(json.dumps(obj))
        report.results.update(path=args.output, sites=psi.n_sites, dims=list(psi.dims), terms=len(psi))
        return 0
    report.results["state"] = obj
    return 0


def cmd_state_analyze(args, report):
    psi = _state_input(args.file, report).normalize()
    tol = args.tol or 1e-9
    report.tolerances["uniformity"] = tol
    k = measures.k_uniformity(psi, tol)
    r = report.results
    r.update(sites=psi.n_sites, dims=list(psi.dims), terms=len(psi), uniformity=k, is_ame=k == psi.n_sites // 2)
    if psi.n_sites >= 2 and psi.dim <= 4096:
        rep = measures.resistance(psi, measures.PPT_TOL)
        report.tolerances["ppt"] = measures.PPT_TOL
        r["resistance_m"] = rep.m
        r["resistance_per_size"] = {str(t): v for t, v in rep.per_size.items()}
        r["resistance_exact"] = rep.exact
    if all(d == 2 for d in psi.dims) and 2 <= psi.n_sites <= 16:
        n = psi.n_sites
        c = [[0.0 if v == w else measures.two_site_concurrence(psi, v, w) for w in range(1, n + 1)] for v in range(1, n + 1)]
        r["concurrence"] = c
        gam = {}
        for v in range(1, n + 1):
            try:
                gam[str(v)] = measures.entanglement_ratio(psi, v)
            except ValueError:
                gam[str(v)] = None
        r["gamma"] = gam
        if n == 3:
            r["three_tangle"] = measures.three_tangle(psi)
    failed = (args.expect_ame and not r["is_ame"]) or (args.expect_uniformity is not None and k < args.expect_uniformity)
    return 2 if failed else 0


# ---- oa ---------------------------------------------------------------------

def _parse_rows(text: str) -> list[list[int]]:
    rows = [ln for ln in text.replace(";", "\n").splitlines() if ln.strip() and not ln.strip().startswith("#")]
    return [[int(x) for x in ln.split()] for ln in rows]


def _oa_summary(oa) -> dict:
    k = algebra.oa_strength(oa)
    out = {"rows": oa.r, "columns": oa.n, "levels": oa.d, "strength": k}
    if k >= 1:
        out["index"] = algebra.oa_index(oa, k)
        out["irredundant"] = algebra.oa_irredundant(oa, k)
    return out


def cmd_oa_expand(args, report):
    ring = algebra.ring_make(args.ring)
    if Path(args.generator).exists():
        report.add_input(args.generator)
        rows = _parse_rows(Path(args.generator).read_text())
    else:
        rows = _parse_rows(args.generator)
    g = algebra.generator_from_integers(ring, rows) if args.integers else algebra.GeneratorMatrix(ring, rows)
    oa = algebra.oa_from_generator(g)
    text = algebra.oa_to_text(oa)
    if args.output:
        Path(args.output).write_text(text)
        report.results["path"] = args.output
    else:
        report.results["oa"] = text
    report.results.update(ring=repr(ring), **_oa_summary(oa))
    return 0


def cmd_oa_check(args, report):
    report.add_input(args.file)
    oa = algebra.oa_from_text(Path(args.file).read_text())
    report.results.update(_oa_summary(oa))
    if args.strength is not None and report.results["strength"] < args.strength:
        return 2
    return 0


# ---- graph ------------------------------------------------------------------

def cmd_graph_concurrence(args, report):
    g = _graph_arg(args, report)
    tol = args.tol or 1e-9
    report.tolerances["prediction"] = tol
    if g.uniformity is None:
        raise UsageError("uniform hypergraph required")
    psi = states.excitation_state(g)
    pairs, worst = [], 0.0
    for v in range(1, g.n + 1):
        for w in range(v + 1, g.n + 1):
            num = measures.two_site_concurrence(psi, v, w)
            pred = hypergraph.predicted_concurrence(g, v, w)
            worst = max(worst, abs(num - pred))
            pairs.append({"v": v, "w": w, "numeric": num, "predicted": pred})
    gammas = {}
    for v in range(1, g.n + 1):
        try:
            gammas[str(v)] = {"numeric": measures.entanglement_ratio(psi, v),
                              "predicted": hypergraph.predicted_ratio(g, v)}
        except ValueError:
            gammas[str(v)] = None
    report.results.update(vertices=g.n, edges=g.n_edges, pairs=pairs, gamma=gammas, max_deviation=worst)
    return 2 if worst > tol else 0


def cmd_graph_factorize(args, report):
    g = _graph_arg(args, report)
    f = hypergraph.factorize(g)
    report.results.update(product=f is not None, factors=[list(x) for x in f] if f else None)
    return 0


# ---- slocc ------------------------------------------------------------------

def cmd_slocc_roots(args, report):
    psi = _state_input(args.file, report)
    rs = slocc.slip_roots(psi, args.site, args.measure)
    report.tolerances["distinct"] = slocc.ROOT_TOL
    report.results.update(site=args.site, measure=args.measure, h=rs.h,
                          roots=[_fmt_point(z) for z in rs.roots],
                          distinct=len(rs.distinct()), multiplicities=rs.multiplicities())
    return 0


def _operator_result(op):
    return None if op is None else [_fmt_matrix(m) for m in op.mats]


def cmd_slocc_discriminate(args, report):
    a = _state_input(args.file_a, report)
    b = _state_input(args.file_b, report)
    tol = args.tol or slocc.PROP_TOL
    report.tolerances["proportionality"] = tol
    report.results["threads"] = slocc._threads()
    op = slocc.slocc_discriminate(a, b, args.measure, tol, prune=not args.no_prune)
    report.results.update(equivalent=op is not None, operator=_operator_result(op))
    return 0


def cmd_slocc_normal_form(args, report):
    psi = _state_input(args.file, report)
    rs = slocc.slip_roots(psi, args.site, args.measure)
    if rs.h != 4:
        raise UsageError("normal form needs four roots (measure tau3)")
    t, z0 = slocc.normal_form_transform(rs.roots)
    report.results.update(
        roots=[_fmt_point(z) for z in rs.roots], z0=_fmt_complex(z0),
        cross_ratio=_fmt_complex(slocc.cross_ratio(*rs.roots)),
        transform=_fmt_matrix(t.matrix), images=[_fmt_point(t(z)) for z in rs.roots],
        site_operator=_fmt_matrix(slocc.operator_from_mobius(t)),
    )
    return 0


def cmd_slocc_lm(args, report):
    a = _state_input(args.file_a, report)
    b = _state_input(args.file_b, report)
    tol = args.tol or 1e-9
    report.tolerances["phase"] = tol
    op = slocc.lm_equivalence(a, b, tol)
    report.results.update(equivalent=op is not None, operator=_operator_result(op))
    return 0


# ---- tensor -----------------------------------------------------------------

def cmd_tensor_verify(args, report):
    report.add_input(args.file)
    t = multiunitary.tensor_from_csv(Path(args.file).read_text())
    tol = args.tol or 1e-9
    report.tolerances["unitarity"] = tol
    defects = {p: multiunitary.unitarity_defect(multiunitary.flatten(t, p)) for p in multiunitary.PAIRINGS}
    ame = measures.is_ame(multiunitary.tensor_state(t), tol)
    ok = all(v <= tol for v in defects.values()) and ame
    report.results.update(d=t.d, defects=defects, perfect=all(v <= tol for v in defects.values()), is_ame=ame)
    return 0 if ok else 2


def cmd_tensor_golden(args, report):
    tol = args.tol or 1e-12
    report.tolerances["relations"] = tol
    a, b, c, w = multiunitary.golden_constants()
    rel = multiunitary.verify_orthogonality_relations(tol)
    checks = {"a^2+b^2-1/2": abs(a * a + b * b - 0.5), "c^2-1/2": abs(c * c - 0.5)}
    report.results.update(constants={"a": a, "b": b, "c": c, "omega": _fmt_complex(w)},
                          constant_relations=checks, relations={k: v[0] for k, v in rel.items()})
    ok = all(v <= tol for v in checks.values()) and all(v[1] for v in rel.values())
    return 0 if ok else 2


# ---- ham / circuit ----------------------------------------------------------

def cmd_ham_check(args, report):
    g = _graph_arg(args, report)
    tol = args.tol or 1e-9
    report.tolerances["eigenvector"] = tol
    if args.kind == "exchange":
        h = dynamics.hamiltonian_2exc(g)
        claimed = g.n_edges**2
    else:
        h = dynamics.hamiltonian_3body(g)
        d = hypergraph.is_regular(g)
        claimed = comb(d, 2) * g.n if d is not None else None
    chk = dynamics.top_eigenpair_check(h, g)
    matches = claimed is not None and abs(chk.top - claimed) <= 1e-9 * max(1, claimed)
    report.results.update(kind=args.kind, dimension=len(h), top=chk.top, gap=chk.gap, overlap=chk.overlap,
                          claimed_top=claimed, claimed_top_matches=matches)
    ok = abs(chk.overlap - 1) <= tol and chk.gap > tol
    if args.strict:
        ok = ok and matches
    return 0 if ok else 2


def cmd_circuit_synth(args, report):
    g = _graph_arg(args, report)
    gl = dynamics.synthesize_circuit(g)
    if args.output:
        dynamics.save_gates(gl, args.output)
        report.results["path"] = args.output
    else:
        report.results["circuit"] = dynamics.gates_to_json(gl)
    labels = {}
    for gt in gl.gates:
        labels[gt.label] = labels.get(gt.label, 0) + 1
    report.results.update(qubits=gl.n, gates=len(gl), labels=labels)
    return 0


def cmd_circuit_sim(args, report):
    report.add_input(args.file)
    gl = dynamics.load_gates(args.file)
    out = dynamics.simulate_circuit(gl, dynamics.zero_state(gl.n))
    report.results.update(qubits=gl.n, gates=len(gl), norm=out.norm())
    if args.output:
        Path(args.output).write_text(json.dumps(state_to_json(out)))
        report.results["path"] = args.output
    else:
        report.results["state"] = state_to_json(out)
    if args.expect:
        report.add_input(args.expect)
        target = states.excitation_state(_load_graph(args.expect))
        tol = args.tol or 1e-9
        report.tolerances["fidelity"] = tol
        fid = out.fidelity(target)
        report.results["fidelity"] = fid
        return 0 if fid >= 1 - tol else 2
    return 0


# ---- symmetry ---------------------------------------------------------------

def cmd_symmetry_group(args, report):
    psi = _state_input(args.file, report)
    tol = args.tol or 1e-9
    report.tolerances["stabilizer"] = tol
    grp = symmetry.symmetry_group(psi, projective=args.projective, tol=tol)
    report.results.update(projective=args.projective, order=grp.order,
                          elements=[" ".join(map(str, p)) for p in sorted(grp.elements)])
    return 0


# ---- parser -----------------------------------------------------------------

def _graph_source(p):
    p.add_argument("graph", nargs="?", help="hypergraph file")
    p.add_argument("--family", nargs="+", metavar="ARG", help="named family and integer parameters instead of a file")


def build_parser() -> _Parser:
    ap = _Parser(prog="entangle-lab", description="Construct, verify and classify multipartite entangled states.")
    ap.add_argument("--json", action="store_true", help="print the report as JSON")
    ap.add_argument("--tol", type=float, default=None, help="override the command's default tolerance")
    groups = ap.add_subparsers(dest="group", required=True, parser_class=_Parser)

    st = groups.add_parser("state").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = st.add_parser("make", help=f"families: {', '.join(STATE_FAMILIES)}")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_state_make)
    p = st.add_parser("analyze")
    p.add_argument("file")
    p.add_argument("--expect-ame", action="store_true")
    p.add_argument("--expect-uniformity", type=int)
    p.set_defaults(fn=cmd_state_analyze)

    oa = groups.add_parser("oa").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = oa.add_parser("expand")
    p.add_argument("--ring", required=True, help="Z9, GF4, GF9:1,0,1, Z3+Z3")
    p.add_argument("--generator", required=True, help="file or inline rows '1 0 1 2; 0 1 1 1'")
    p.add_argument("--integers", action="store_true", help="read entries as k*1 rather than element codes")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_oa_expand)
    p = oa.add_parser("check")
    p.add_argument("file")
    p.add_argument("--strength", type=int)
    p.set_defaults(fn=cmd_oa_check)

    gr = groups.add_parser("graph").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = gr.add_parser("concurrence")
    _graph_source(p)
    p.set_defaults(fn=cmd_graph_concurrence)
    p = gr.add_parser("factorize")
    _graph_source(p)
    p.set_defaults(fn=cmd_graph_factorize)

    sl = groups.add_parser("slocc").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sl.add_parser("roots")
    p.add_argument("file")
    p.add_argument("--site", type=int, default=1)
    p.add_argument("--measure", default="tau3", choices=sorted(slocc.MEASURES))
    p.set_defaults(fn=cmd_slocc_roots)
    p = sl.add_parser("discriminate")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--measure", default="tau3", choices=sorted(slocc.MEASURES))
    p.add_argument("--no-prune", action="store_true", help="test every triplet candidate combination")
    p.set_defaults(fn=cmd_slocc_discriminate)
    p = sl.add_parser("normal-form")
    p.add_argument("file")
    p.add_argument("--site", type=int, default=1)
    p.add_argument("--measure", default="tau3", choices=sorted(slocc.MEASURES))
    p.set_defaults(fn=cmd_slocc_normal_form)
    p = sl.add_parser("lm")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(fn=cmd_slocc_lm)

    te = groups.add_parser("tensor").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = te.add_parser("verify-2unitary")
    p.add_argument("file")
    p.set_defaults(fn=cmd_tensor_verify)
    p = te.add_parser("golden")
    p.set_defaults(fn=cmd_tensor_golden)

    ha = groups.add_parser("ham").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = ha.add_parser("check")
    _graph_source(p)
    p.add_argument("--kind", choices=("exchange", "3body"), default="exchange")
    p.add_argument("--strict", action="store_true", help="also fail when the top eigenvalue differs from the closed form")
    p.set_defaults(fn=cmd_ham_check)

    ci = groups.add_parser("circuit").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = ci.add_parser("synth")
    _graph_source(p)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_circuit_synth)
    p = ci.add_parser("sim")
    p.add_argument("file")
    p.add_argument("--expect", help="graph file whose excitation state the circuit should prepare")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_circuit_sim)

    sy = groups.add_parser("symmetry").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sy.add_parser("group")
    p.add_argument("file")
    p.add_argument("--projective", action="store_true")
    p.set_defaults(fn=cmd_symmetry_group)
    return ap


def run(argv=None) -> tuple[int, Report | None]:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1, None
    report = Report(command=f"{args.group} {args.cmd}")
    if args.tol is not None:
        report.tolerances["override"] = args.tol
    try:
        code = args.fn(args, report)
    except (UsageError, ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1, None
    report.status = "ok" if code == 0 else "fail"
    report.runtime_s = time.perf_counter() - t0
    if args.json:
        print(json.dumps(asdict(report), default=_json_default))
    elif args.group == "state" and args.cmd == "make" and "state" in report.results:
        print(json.dumps(report.results["state"]))
    else:
        print(report.to_text())
    return code, report


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (complex, np.complexfloating)):
        return _fmt_complex(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
