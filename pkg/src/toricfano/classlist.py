"""Isomorphism-class lists and the plain-text vertex-block file format.

A file is a sequence of blocks. Each block starts with a header line ``d n``
followed by ``n`` lines of ``d`` integers (one vertex per line), or, when
read with ``transpose=True``, ``d`` lines of ``n`` integers (one coordinate
per line, the layout PALP prints). ``#`` starts a comment and blank lines
separate blocks. Extra tokens after ``d n`` on a header line are ignored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .canon import normal_form
from .errors import FanoError, ParseError, ValidationError
from .intlin import IntVector
from .polytope import LatticePolytope, from_points

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassList:
    """One representative per lattice-isomorphism class, sorted by normal-form key.

    Representatives are the polytopes spanned by the normal-form columns, so
    the list does not depend on the order classes were discovered in.
    """

    dim: int
    entries: tuple[LatticePolytope, ...]
    keys: tuple[str, ...]
    duplicates: int = field(default=0, compare=False)

    @classmethod
    def from_polytopes(cls, dim: int, polytopes: Iterable[LatticePolytope]) -> "ClassList":
        seen: dict[str, LatticePolytope] = {}
        dups = 0
        for p in polytopes:
            if p.dim != dim:
                raise ValidationError(f"polytope of dimension {p.dim} in a dimension-{dim} list")
            nf = normal_form(p)
            if nf.key in seen:
                dups += 1
            else:
                seen[nf.key] = nf.polytope()
        return cls.from_keyed(dim, seen, dups)

    @classmethod
    def from_keyed(cls, dim: int, by_key: dict, duplicates: int = 0) -> "ClassList":
        keys = tuple(sorted(by_key))
        return cls(dim, tuple(by_key[k] for k in keys), keys, duplicates)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LatticePolytope]:
        return iter(self.entries)

    def key_set(self) -> frozenset[str]:
        return frozenset(self.keys)

    def items(self):
        return zip(self.keys, self.entries)


@dataclass(frozen=True)
class Block:
    dim: int
    points: tuple[IntVector, ...]
    line: int
    key: str | None = None


def _tokens(line: str) -> list[str]:
    return line.split("#", 1)[0].split()


def iter_blocks(stream: TextIO, transpose: bool = False) -> Iterator[Block]:
    """Parse raw blocks without any geometric validation."""
    lines = iter(enumerate(stream, start=1))
    pending_key = None
    for lineno, line in lines:
        stripped = line.strip()
        if stripped.startswith("# key:"):
            pending_key = stripped[len("# key:"):].strip()
        tok = _tokens(line)
        if not tok:
            continue
        try:
            d, n = int(tok[0]), int(tok[1])
        except (ValueError, IndexError):
            raise ParseError(f"expected a header 'd n', got {line.strip()!r}", lineno) from None
        if d < 1 or n < 1:
            raise ParseError(f"bad block size {d} x {n}", lineno)
        rows, width = (d, n) if transpose else (n, d)
        data = []
        while len(data) < rows:
            try:
                rlineno, rline = next(lines)
            except StopIteration:
                raise ParseError(f"block starting at line {lineno} ends early", lineno) from None
            rtok = _tokens(rline)
            if not rtok:
                if rline.strip():
                    continue  # comment line inside a block
                raise ParseError("blank line inside a block", rlineno)
            if len(rtok) != width:
                raise ParseError(f"expected {width} integers, got {len(rtok)}", rlineno)
            try:
                data.append(tuple(int(x) for x in rtok))
            except ValueError:
                raise ParseError(f"non-integer entry in {rline.strip()!r}", rlineno) from None
        points = tuple(zip(*data)) if transpose else tuple(data)
        yield Block(d, points, lineno, pending_key)
        pending_key = None


def block_polytope(block: Block, reflexive: bool = True) -> LatticePolytope:
    try:
        p = from_points(block.dim, block.points)
    except FanoError as exc:
        raise ValidationError(f"block at line {block.line}: {exc}") from exc
    if reflexive and not p.is_reflexive():
        raise ValidationError(f"block at line {block.line}: polytope is not reflexive")
    return p


def iter_polytopes(path, dim: int | None = None, transpose: bool = False) -> Iterator[LatticePolytope]:
    with open(path, encoding="utf-8") as fh:
        for block in iter_blocks(fh, transpose):
            if dim is not None and block.dim != dim:
                raise ValidationError(
                    f"block at line {block.line} has dimension {block.dim}, expected {dim}")
            yield block_polytope(block)


def import_classes(path, dim: int | None = None, transpose: bool = False) -> ClassList:
    """Read, validate and deduplicate a vertex-block file."""
    polys = list(iter_polytopes(path, dim, transpose))
    if dim is None:
        if not polys:
            raise ValidationError(f"{path}: no blocks and no dimension given")
        dim = polys[0].dim
    classes = ClassList.from_polytopes(dim, polys)
    if classes.duplicates:
        log.warning("%s: %d duplicate block(s) removed", path, classes.duplicates)
    return classes


def format_classes(classes: ClassList, header: str | None = None) -> str:
    out = []
    if header:
        out.extend(f"# {line}" for line in header.splitlines())
    out.append(f"# dim {classes.dim}, {len(classes)} classes")
    for key, p in classes.items():
        out.append("")
        out.append(f"# key: {key}")
        out.append(f"{p.dim} {p.n_vertices}")
        out.extend(" ".join(str(x) for x in v) for v in p.vertices)
    return "\n".join(out) + "\n"


def export_classes(classes: ClassList, path, header: str | None = None) -> None:
    Path(path).write_text(format_classes(classes, header), encoding="utf-8")
