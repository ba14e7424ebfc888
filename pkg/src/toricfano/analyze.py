"""Per-polytope invariants, class-list statistics and the theorem-check suite."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .canon import normal_form
from .classify import circuit_relations
from .classlist import ClassList
from .errors import DegeneracyError, DomainError, InvariantError
from .intlin import IntVector, determinant, dot, vector_gcd
from .polytope import LatticePolytope, project_along_vertex

CSV_COLUMNS = ("key", "dim", "vertices", "facets", "picard", "degree", "h0", "max_edge", "index", "ewald")


@dataclass(frozen=True)
class PolytopeReport:
    key: str
    dim: int
    vertices: int
    facets: int
    picard: int
    degree: int
    h0: int
    max_edge: int
    index: int
    ewald: bool

    def row(self) -> dict:
        return asdict(self)


def fano_index(p: LatticePolytope) -> int:
    """Largest r with all dual vertices congruent modulo r."""
    dual = [f.normal for f in p.facets()]
    u0 = dual[0]
    return vector_gcd([a - b for u in dual[1:] for a, b in zip(u, u0)])


def ewald_basis(p: LatticePolytope) -> list[IntVector] | None:
    """d centrally symmetric pairs +-u of dual lattice points with the u forming a basis."""
    pts = set(p.dual().lattice_points())
    sym = sorted(u for u in pts if any(u) and tuple(-x for x in u) in pts
                 and next(x for x in u if x) > 0)
    for combo in combinations(sym, p.dim):
        if determinant(combo) in (1, -1):
            return list(combo)
    return None


def report(p: LatticePolytope) -> PolytopeReport:
    if not p.is_fano():
        raise DomainError("report expects a Fano polytope")
    dual = p.dual()
    d = p.dim
    return PolytopeReport(
        key=normal_form(p).key,
        dim=d,
        vertices=p.n_vertices,
        facets=len(p.facets()),
        picard=p.n_vertices - d,
        degree=dual.normalized_volume(),
        h0=len(dual.lattice_points()),
        max_edge=max(p.dual_edge_lengths()),
        index=fano_index(p),
        ewald=ewald_basis(p) is not None,
    )


@dataclass
class SuiteReport:
    """Pass/fail tallies per check; every failure carries its witness."""

    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    polytopes: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, label: str, check: str, ok: bool, witness: str = "") -> None:
        if ok:
            self.passed[check] += 1
        else:
            self.failed[check] += 1
            self.failures.append((label, check, witness))

    def merge(self, other: "SuiteReport") -> None:
        self.passed.update(other.passed)
        self.failed.update(other.failed)
        self.failures.extend(other.failures)
        self.polytopes += other.polytopes

    def format(self) -> str:
        checks = sorted(set(self.passed) | set(self.failed))
        lines = [f"{self.polytopes} polytope(s) checked"]
        for c in checks:
            lines.append(f"  {c:<16} pass {self.passed[c]:>5}  fail {self.failed[c]:>5}")
        for label, check, witness in self.failures:
            lines.append(f"FAIL {check} [{label}]: {witness}")
        return "\n".join(lines)


def _facet_sum(pairings: Sequence[int]) -> int:
    return sum(x for x in pairings if x >= 1)


def _check_projection(p: LatticePolytope, idx: int, label: str, rep: SuiteReport) -> None:
    d = p.dim
    v = p.vertices[idx]
    try:
        proj = project_along_vertex(p, idx)
    except InvariantError as exc:
        rep.record(label, "projection", False, f"vertex {v}: {exc}")
        return
    rep.record(label, "projection", True)
    image = proj.image
    zero = (0,) * (d - 1)
    doubles = proj.double_points()
    nonzero = [x for x in doubles if x != zero]
    n_points = len(image.lattice_points())
    rep.record(label, "fiber_count", p.n_vertices == n_points + len(doubles),
               f"vertex {v}: {p.n_vertices} vertices, {n_points} points, {len(doubles)} double")

    ok = len(nonzero) <= 2
    witness = f"vertex {v}: double points {nonzero}"
    if ok and len(nonzero) == 2:
        x, y = nonzero
        ok = tuple(-a for a in x) == y
        if ok:
            # the preimage sharing a facet with v, over each double point
            near = []
            for pt in (x, y):
                near.extend(w for w in proj.fiber_map[pt]
                            if any(idx in f.vertex_indices and p.vertex_index(w) in f.vertex_indices
                                   for f in p.facets()))
            ok = len(near) == 2 and tuple(a + b for a, b in zip(*near)) == v
            witness += f", near preimages {near}"
    rep.record(label, "double_points", ok, witness)

    d_img = d  # facets of the image carry d-1 or d lattice points
    ok, witness = True, ""
    dset = set(doubles)
    for f in image.facets():
        pts = image.facet_points(f)
        on_facet = dset.intersection(pts)
        if len(pts) == d_img - 1:
            good = determinant(pts) in (1, -1) and len(on_facet) <= 1
        elif len(pts) == d_img:
            try:
                rels = circuit_relations(pts)
            except DegeneracyError:
                rels = []
            good = bool(rels) and not on_facet
            if good and zero in dset:
                good = any(r.all_ones for r in rels)
        else:
            good = False
        if not good:
            ok, witness = False, f"vertex {v}: image facet {f.normal} with points {pts}"
            break
    rep.record(label, "image_facets", ok, witness)


def verify(p: LatticePolytope, label: str | None = None) -> SuiteReport:
    """Evaluate every checkable vertex, facet and projection statement on p."""
    rep = SuiteReport(polytopes=1)
    if not (p.is_reflexive() and p.is_simplicial()):
        raise DomainError("verify expects a simplicial reflexive polytope")
    d = p.dim
    n = p.n_vertices
    label = label or normal_form(p).key
    fano = p.is_fano()
    facets = p.facets()
    pairings = [[dot(f.normal, v) for v in p.vertices] for f in facets]

    sums = [_facet_sum(row) for row in pairings]
    good = [i for i, s in enumerate(sums) if s <= d]
    rep.record(label, "facet_sum", bool(good), f"smallest facet sum {min(sums)} > {d}")

    a = [sum(1 - x for x in row) for row in pairings]
    ok = min(a) <= n <= max(a) and (min(a) < n < max(a) or min(a) == max(a) == n)
    rep.record(label, "a_F", ok, f"#V = {n}, a_F in [{min(a)}, {max(a)}]")

    if fano and not p.is_simplex():
        chosen = [i for i in good if max(pairings[i]) + 1 <= d]
        rep.record(label, "facet_distance", bool(chosen),
                   f"no facet with sum <= {d} and all distances <= {d}")
        if chosen:
            f = facets[chosen[0]]
            fs = set(f.vertex_indices)
            lengths = [vector_gcd([x - y for x, y in zip(f.normal, g.normal)])
                       for g in facets if len(fs & set(g.vertex_indices)) == d - 1]
            rep.record(label, "curves", len(lengths) == d and max(lengths) <= d,
                       f"dual edge lengths at {f.normal}: {lengths}")
    else:
        ok = all(max(pairings[i]) + 1 <= d + 1 for i in good)
        rep.record(label, "facet_distance", bool(good) and ok, "distance above d+1")

    zeros = [row.count(0) for row in pairings]
    rep.record(label, "zero_pairing", max(zeros) <= d, f"facet with {max(zeros)} zero pairings")

    cap = 3 * d if d % 2 == 0 else 3 * d - 1
    rep.record(label, "casagrande", n <= cap, f"{n} vertices > {cap}")

    bad = [(facets[i].normal, max(pairings[i]) + 1) for i in good
           if n > 3 * d + 2 - (max(pairings[i]) + 1)]
    rep.record(label, "vertex_bound", not bad, f"facet/w pairs violating 3d+2-w: {bad}")

    if fano:
        if d >= 2:
            for idx in range(n):
                _check_projection(p, idx, label, rep)
        rep.record(label, "ewald", ewald_basis(p) is not None, "no symmetric dual basis")
    return rep


def verify_all(polytopes: Iterable[LatticePolytope]) -> SuiteReport:
    total = SuiteReport()
    for p in polytopes:
        total.merge(verify(p))
    return total


@dataclass
class Summary:
    dim: int
    count: int
    max_degree: tuple[int, int]
    max_h0: tuple[int, int]
    max_picard: tuple[int, int]
    max_euler: tuple[int, int]
    w: int
    picard_histogram: dict[int, int]
    euler_histogram: dict[int, int]
    max_degree_keys: tuple[str, ...] = ()
    max_h0_keys: tuple[str, ...] = ()
    max_picard_keys: tuple[str, ...] = ()

    def format(self) -> str:
        rows = [
            f"dimension        {self.dim}",
            f"classes          {self.count}",
            f"max degree       {self.max_degree[0]} ({self.max_degree[1]} class(es))",
            f"max h0           {self.max_h0[0]} ({self.max_h0[1]} class(es))",
            f"max picard       {self.max_picard[0]} ({self.max_picard[1]} class(es))",
            f"max euler        {self.max_euler[0]} ({self.max_euler[1]} class(es))",
            f"max curve degree {self.w}",
            "picard histogram " + " ".join(f"{k}:{v}" for k, v in sorted(self.picard_histogram.items())),
            "euler histogram  " + " ".join(f"{k}:{v}" for k, v in sorted(self.euler_histogram.items())),
        ]
        return "\n".join(rows)


def _maximum(reports, attr):
    best = max(getattr(r, attr) for r in reports)
    keys = tuple(r.key for r in reports if getattr(r, attr) == best)
    return (best, len(keys)), keys


def summarize(classes: ClassList, reports: Sequence[PolytopeReport] | None = None) -> Summary:
    if reports is None:
        reports = [report(p) for p in classes]
    if not reports:
        raise DomainError("cannot summarize an empty class list")
    deg, deg_keys = _maximum(reports, "degree")
    h0, h0_keys = _maximum(reports, "h0")
    pic, pic_keys = _maximum(reports, "picard")
    eul, _ = _maximum(reports, "facets")
    return Summary(
        dim=classes.dim,
        count=len(reports),
        max_degree=deg,
        max_h0=h0,
        max_picard=pic,
        max_euler=eul,
        w=max(r.max_edge for r in reports),
        picard_histogram=dict(Counter(r.picard for r in reports)),
        euler_histogram=dict(Counter(r.facets for r in reports)),
        max_degree_keys=deg_keys,
        max_h0_keys=h0_keys,
        max_picard_keys=pic_keys,
    )


def reports_csv(reports: Iterable[PolytopeReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.row())
    return buf.getvalue()
