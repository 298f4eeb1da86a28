"""Command-line interface: parse instance files, dispatch the solvers,
verify results against the brute-force oracles, and emit result files,
run manifests, and rendered figures.

Instance format (line oriented, ``#`` starts a comment):

    graph <directed|undirected> <n> <m>
    edge <u> <v> [mult]              (m lines)
    terminals <t1> <t2> ...          (multiway cut)  |  st <s> <t>
    special <labels...>              (optional extra Q vertices)
    matroid <p> <r> <ncols>          (optional; identity matroid if absent)
    <r rows of residues> <one row of column labels>
    budget <k> [q]

Exit codes: 0 solved/verified, 1 no solution, 2 error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

from . import ffmatrix as ff
from .cyclehit import ifvs_solve, ioct_solve
from .errors import ParseError, SepsolveError, ValidationError
from .graph import MultiDiGraph, MultiGraph
from .instances import HittingInstance, MwcInstance, StCutInstance
from .matroid import LinearMatroid
from .mwc import imwcut
from .oracle import (ProblemKind, brute_family, brute_hitting_feasible,
                     exhaustive_strategy, gen_gpq, query_count_probe,
                     random_instance)
from .repfam import ORACLE_GROUND_CAP, SetFamily, verify_rep
from .stcut import givc_solve

Instance = StCutInstance | MwcInstance | HittingInstance


# --------------------------------------------------------------------------
# Parsing and rendering
# --------------------------------------------------------------------------

def _tokens(path: str | Path) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def parse_instance(path: str | Path) -> Instance:
    """Parse an instance file into the matching instance dataclass."""
    lines = _tokens(path)
    if not lines:
        raise ParseError("empty instance file")
    pos = 0

    def need(what: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}",
                             lines[-1][0])
        item = lines[pos]
        pos += 1
        return item

    no, head = need("graph header")
    if head[0] != "graph" or len(head) != 4 or \
            head[1] not in ("directed", "undirected"):
        raise ParseError("expected 'graph <directed|undirected> <n> <m>'",
                         no)
    directed = head[1] == "directed"
    try:
        n, m = int(head[2]), int(head[3])
    except ValueError:
        raise ParseError("graph sizes must be integers", no)

    pairs: list[tuple[str, str]] = []
    vertices: set[str] = set()
    for _ in range(m):
        no, tok = need("edge line")
        if tok[0] != "edge" or len(tok) not in (3, 4):
            raise ParseError("expected 'edge <u> <v> [mult]'", no)
        mult = 1
        if len(tok) == 4:
            try:
                mult = int(tok[3])
            except ValueError:
                raise ParseError("edge multiplicity must be an integer", no)
            if mult < 1:
                raise ParseError("edge multiplicity must be positive", no)
        pairs.extend([(tok[1], tok[2])] * mult)
        vertices |= {tok[1], tok[2]}

    terminals: list[str] | None = None
    st: tuple[str, str] | None = None
    special: set[str] = set()
    matroid_spec = None
    budget: tuple[int, int | None] | None = None

    while pos < len(lines):
        no, tok = need("section")
        key = tok[0]
        if key == "terminals":
            if len(tok) < 3:
                raise ParseError("need at least two terminals", no)
            terminals = tok[1:]
        elif key == "st":
            if len(tok) != 3:
                raise ParseError("expected 'st <s> <t>'", no)
            st = (tok[1], tok[2])
        elif key == "special":
            special |= set(tok[1:])
        elif key == "matroid":
            if len(tok) != 4:
                raise ParseError("expected 'matroid <p> <r> <ncols>'", no)
            try:
                prime, r, ncols = int(tok[1]), int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("matroid dimensions must be integers", no)
            rows = []
            for _ in range(r):
                rno, row = need("matroid residue row")
                try:
                    vals = [int(x) % prime for x in row]
                except ValueError:
                    raise ParseError("matroid entries must be integers", rno)
                if len(vals) != ncols:
                    raise ParseError(
                        f"expected {ncols} residues, found {len(vals)}", rno)
                rows.append(vals)
            lno, labels = need("matroid label row")
            if len(labels) != ncols:
                raise ParseError(
                    f"expected {ncols} labels, found {len(labels)}", lno)
            matroid_spec = (prime, rows, labels, ncols, no)
        elif key == "budget":
            if len(tok) not in (2, 3):
                raise ParseError("expected 'budget <k> [q]'", no)
            try:
                budget = (int(tok[1]),
                          int(tok[2]) if len(tok) == 3 else None)
            except ValueError:
                raise ParseError("budget values must be integers", no)
        else:
            raise ParseError(f"unknown section {key!r}", no)

    if len(vertices) > n:
        raise ValidationError(
            f"header declares {n} vertices but edges mention "
            f"{len(vertices)}")
    # Headers may declare isolated vertices vN-style only via edges; pad
    # silently is not possible, so require exact match when larger.
    graph: MultiGraph | MultiDiGraph
    if directed:
        graph = MultiDiGraph.from_pairs(pairs, vertices)
    else:
        graph = MultiGraph.from_pairs(pairs, vertices)
    if len(graph.vertices) != n:
        raise ValidationError(
            f"header declares {n} vertices, edges span "
            f"{len(graph.vertices)}")

    if budget is None:
        raise ValidationError("missing 'budget' line")
    if terminals is not None and st is not None:
        raise ValidationError("both 'terminals' and 'st' present")

    Q = set(special)
    if st is not None:
        Q |= set(st)
    if terminals is not None:
        Q |= set(terminals)
    for v in Q:
        if v not in graph.vertices:
            raise ValidationError(f"special/terminal vertex {v!r} is not "
                                  f"in the graph")

    if matroid_spec is not None:
        prime, rows, labels, ncols, mno = matroid_spec
        try:
            M = LinearMatroid(ff.FFMatrix(rows, prime, cols=ncols), labels)
        except SepsolveError as exc:
            raise ValidationError(str(exc))
    else:
        free = sorted(graph.vertices - Q)
        eye = [[1 if i == j else 0 for j in range(len(free))]
               for i in range(len(free))]
        M = LinearMatroid(
            ff.FFMatrix(eye, ff.DEFAULT_PRIME, cols=len(free)), free)

    expected_ground = graph.vertices - Q if (st or terminals) \
        else set(graph.vertices)
    if M.ground != frozenset(expected_ground):
        raise ValidationError(
            "matroid ground set must equal the graph vertices minus the "
            "special/terminal vertices")

    k, q = budget
    r = M.rank()
    if k > r:
        raise ValidationError(f"budget k={k} exceeds matroid rank {r}")
    if q is None:
        q = r - k
    if k + q > r:
        raise ValidationError(f"k+q = {k + q} exceeds matroid rank {r}")

    if st is not None:
        s, t = st
        return StCutInstance(graph, M, s, t, frozenset(Q), k, q)
    if terminals is not None:
        if directed:
            raise ValidationError("multiway cut requires an undirected "
                                  "graph")
        return MwcInstance(graph, M, frozenset(terminals), frozenset(Q),
                           k, q)
    if directed:
        raise ValidationError("cycle hitting requires an undirected graph")
    return HittingInstance(graph, M, k)


def render_instance(inst: Instance) -> str:
    """Serialize an instance in the file format parse_instance reads."""
    G = inst.graph
    directed = isinstance(G, MultiDiGraph)
    links = G.arcs if directed else G.edges
    out = [f"graph {'directed' if directed else 'undirected'} "
           f"{len(G.vertices)} {len(links)}"]
    for lid in sorted(links):
        u, v = links[lid]
        out.append(f"edge {u} {v}")
    if isinstance(inst, StCutInstance):
        out.append(f"st {inst.s} {inst.t}")
        extra = sorted(inst.Q - {inst.s, inst.t})
    elif isinstance(inst, MwcInstance):
        out.append("terminals " + " ".join(sorted(inst.T)))
        extra = sorted(inst.Q - inst.T)
    else:
        extra = []
    if extra:
        out.append("special " + " ".join(extra))
    M = inst.matroid
    mat = M.matrix
    out.append(f"matroid {mat.p} {mat.rows} {mat.cols}")
    for row in mat.data:
        out.append(" ".join(str(x) for x in row))
    out.append(" ".join(M.labels))
    if isinstance(inst, HittingInstance):
        out.append(f"budget {inst.k}")
    else:
        out.append(f"budget {inst.k} {inst.q}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Result files, figures, manifests
# --------------------------------------------------------------------------

def _family_text(fam: SetFamily) -> str:
    return "".join(" ".join(sorted(S)) + "\n" for S in fam.sorted_sets())


def _parse_family(path: Path) -> list[frozenset[str]]:
    sets = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        sets.append(frozenset(line.split()) if line else frozenset())
    return sets


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def render_figure(inst: Instance, family: SetFamily, path: Path) -> None:
    """Draw the instance graph with the first solution highlighted."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    G = inst.graph
    directed = isinstance(G, MultiDiGraph)
    links = G.arcs if directed else G.edges
    order = sorted(G.vertices)
    npts = max(len(order), 1)
    pos = {v: (math.cos(2 * math.pi * i / npts),
               math.sin(2 * math.pi * i / npts))
           for i, v in enumerate(order)}
    chosen = family.sorted_sets()[0] if family.sets else frozenset()
    marked = set()
    if isinstance(inst, StCutInstance):
        marked = {inst.s, inst.t}
    elif isinstance(inst, MwcInstance):
        marked = set(inst.T)

    fig, ax = plt.subplots(figsize=(5, 5))
    for lid in sorted(links):
        u, v = links[lid]
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="0.6", zorder=1, linewidth=1)
    for v in order:
        x, y = pos[v]
        if v in chosen:
            color, shape = "tab:red", "s"
        elif v in marked:
            color, shape = "tab:green", "D"
        else:
            color, shape = "tab:blue", "o"
        ax.scatter([x], [y], c=color, marker=shape, s=120, zorder=2)
        ax.annotate(v, (x, y), textcoords="offset points", xytext=(6, 6),
                    fontsize=8)
    ax.set_axis_off()
    ax.set_title(f"{len(family.sets)} solution set(s); "
                 f"first highlighted" if family.sets else "no solution")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _write_manifest(path: Path, command: str, seed: int, inputs: dict,
                    params: dict, wall: float, out_digest: str) -> None:
    manifest = {
        "command": command,
        "seed": seed,
        "input_digests": inputs,
        "solver_params": params,
        "wall_time_seconds": round(wall, 6),
        "output_digest": out_digest,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

_SOLVE_KINDS = {
    "solve-stcut": (ProblemKind.StCut, StCutInstance),
    "solve-mwc": (ProblemKind.MultiwayCut, MwcInstance),
    "solve-fvs": (ProblemKind.FVS, HittingInstance),
    "solve-oct": (ProblemKind.OCT, HittingInstance),
}


def _solve(args) -> int:
    kind, expected = _SOLVE_KINDS[args.command]
    inst = parse_instance(args.instance)
    if not isinstance(inst, expected):
        raise ValidationError(
            f"{args.command} expects a {expected.__name__} instance file")
    start = time.monotonic()
    if kind is ProblemKind.StCut:
        fam = givc_solve(inst, max_n=args.max_n, seed=args.seed)
    elif kind is ProblemKind.MultiwayCut:
        fam = imwcut(inst, seed=args.seed)
    elif kind is ProblemKind.FVS:
        sol = ifvs_solve(inst.graph, inst.matroid, inst.k)
        fam = SetFamily(len(sol), [sol]) if sol is not None \
            else SetFamily(inst.k)
    else:
        sol = ioct_solve(inst.graph, inst.matroid, inst.k, seed=args.seed)
        fam = SetFamily(len(sol), [sol]) if sol is not None \
            else SetFamily(inst.k)
    wall = time.monotonic() - start

    if args.oracle_verify:
        _oracle_check(kind, inst, fam)

    out = Path(args.output) if args.output else \
        Path(args.instance).with_suffix(".result.txt")
    text = _family_text(fam)
    out.write_text(text)
    render_figure(inst, fam, out.with_suffix(".png"))
    if args.emit_manifest:
        params = {"k": inst.k, "max_n": args.max_n}
        if not isinstance(inst, HittingInstance):
            params["q"] = inst.q
        _write_manifest(
            out.with_suffix(".manifest.json"), args.command, args.seed,
            {"instance": _digest(Path(args.instance).read_bytes())},
            params, wall, _digest(text.encode()))
    print(f"{len(fam.sets)} solution set(s) -> {out}")
    return 0 if fam.sets else 1


def _oracle_check(kind: ProblemKind, inst: Instance,
                  fam: SetFamily) -> None:
    if kind in (ProblemKind.StCut, ProblemKind.MultiwayCut):
        brute = brute_family(kind, inst)
        if not set(fam.sets) <= set(brute.sets):
            raise ValidationError("oracle check failed: solver emitted a "
                                  "non-solution set")
        if len(inst.matroid.ground) <= ORACLE_GROUND_CAP and \
                not verify_rep(inst.matroid, fam, brute, inst.q):
            raise ValidationError("oracle check failed: output is not a "
                                  "representative subfamily")
        if brute.sets and not fam.sets:
            raise ValidationError("oracle check failed: solutions exist "
                                  "but none were found")
    else:
        want = brute_hitting_feasible(inst, kind is ProblemKind.OCT)
        if want != bool(fam.sets):
            raise ValidationError("oracle check failed: feasibility "
                                  "mismatch with brute force")


def _gen(args) -> int:
    if args.kind == "gpq":
        # The adversarial matroid is an oracle; the emitted file carries
        # the graph only, so parsing falls back to the free matroid.
        lb = gen_gpq(args.p, args.q)
        G = lb.graph
        lines = [f"graph undirected {len(G.vertices)} {len(G.edges)}"]
        for eid in sorted(G.edges):
            u, v = G.edges[eid]
            lines.append(f"edge {u} {v}")
        lines.append("st s t")
        lines.append(f"budget {2 * args.p}")
        text = "\n".join(lines) + "\n"
    else:
        kind = {"stcut": ProblemKind.StCut, "mwc": ProblemKind.MultiwayCut,
                "fvs": ProblemKind.FVS, "oct": ProblemKind.OCT}[args.kind]
        inst = random_instance(kind, args.seed, n=args.n, m=args.m,
                               r=args.r, k=args.k,
                               n_terminals=args.terminals)
        text = render_instance(inst)
    out = Path(args.output) if args.output else Path(f"{args.kind}.inst")
    out.write_text(text)
    print(f"wrote {out}")
    return 0


def _verify(args) -> int:
    inst = parse_instance(args.instance)
    sets = _parse_family(Path(args.result))
    if isinstance(inst, HittingInstance):
        odd = args.odd
        ok = True
        for S in sets:
            ok &= len(S) <= inst.k
            ok &= S <= inst.matroid.ground and \
                inst.matroid.is_independent(S)
            H = inst.graph.remove_vertices(S)
            ok &= H.is_bipartite() if odd else H.is_acyclic()
        want = brute_hitting_feasible(inst, odd)
        ok &= want == bool(sets)
    else:
        kind = ProblemKind.StCut if isinstance(inst, StCutInstance) \
            else ProblemKind.MultiwayCut
        brute = brute_family(kind, inst)
        fam_sets = [S for S in sets if S]
        ok = all(S in set(brute.sets) for S in fam_sets)
        if ok and (fam_sets or brute.sets):
            fam = SetFamily(inst.k, fam_sets) if fam_sets \
                else SetFamily(inst.k)
            if len(inst.matroid.ground) <= ORACLE_GROUND_CAP:
                ok = verify_rep(inst.matroid, fam, brute, inst.q)
            else:
                ok = bool(fam_sets) == bool(brute.sets)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 2


def _probe(args) -> int:
    worst = query_count_probe(exhaustive_strategy, args.p, args.q)
    bound = args.q ** args.p - 1
    print(f"worst-case oracle queries: {worst} "
          f"(information-theoretic bound: {bound})")
    return 0


# --------------------------------------------------------------------------
# Argument plumbing
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sepsolve",
        description="Exact solvers for matroid-constrained graph "
                    "separation problems")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-n", type=int, default=20,
                       help="vertex cap for the cut-enumeration stage")
        p.add_argument("--oracle-verify", action="store_true",
                       help="cross-check the output against brute force")
        p.add_argument("--emit-manifest", action="store_true")
        p.add_argument("-o", "--output")

    for cmd in _SOLVE_KINDS:
        p = sub.add_parser(cmd)
        p.add_argument("instance")
        common(p)

    g = sub.add_parser("gen")
    g.add_argument("--kind", required=True,
                   choices=["stcut", "mwc", "fvs", "oct", "gpq"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=7)
    g.add_argument("--m", type=int, default=10)
    g.add_argument("--r", type=int, default=3)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--terminals", type=int, default=3)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--q", type=int, default=3)
    g.add_argument("-o", "--output")

    v = sub.add_parser("verify")
    v.add_argument("instance")
    v.add_argument("result")
    v.add_argument("--odd", action="store_true",
                   help="verify against odd cycles (OCT) instead of all "
                        "cycles for hitting instances")

    pr = sub.add_parser("probe-lb")
    pr.add_argument("--p", type=int, default=1)
    pr.add_argument("--q", type=int, default=3)
    return top


def run(argv: list[str]) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in _SOLVE_KINDS:
            return _solve(args)
        if args.command == "gen":
            return _gen(args)
        if args.command == "verify":
            return _verify(args)
        if args.command == "probe-lb":
            return _probe(args)
        raise ValidationError(f"unknown command {args.command}")
    except (SepsolveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
