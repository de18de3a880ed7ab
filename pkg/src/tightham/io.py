"""Text formats: edge lists and Hamilton certificates.

Edge list::

    # comments start with '#'
    n 9
    0 1 2
    1 2 3

Certificate (line oriented, ``key value`` pairs, JSON for nested values)::

    tightham-certificate 1
    n 9
    param d 0.45
    stage shave {"removed_edges": 0, ...}
    order 0 1 2 3 4 5 6 7 8
    digest <sha256 of the cyclic windows>
    graph
    n 9
    0 1 2
    ...
    end

The embedded ``graph`` section lets ``verify`` work at the end of a pipe;
an explicit edge-list file can replace it.
"""
from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Sequence
from typing import TextIO

from .errors import FormatError
from .hypergraph import ThreeGraph, canonical
from .pipeline import HamiltonCertificate

CERT_MAGIC = "tightham-certificate"
CERT_VERSION = 1


# -- edge lists -----------------------------------------------------------------
def parse_edge_list(lines: Iterable[str]) -> ThreeGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise FormatError(f"line {lineno}: expected header 'n <count>', got {line!r}")
            n = _int(parts[1], lineno)
            if n < 0:
                raise FormatError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: an edge needs 3 vertices, got {line!r}")
        t = tuple(_int(p, lineno) for p in parts)
        if len(set(t)) != 3 or not all(0 <= v < n for v in t):
            raise FormatError(f"line {lineno}: invalid edge {line!r} for n={n}")
        edges.append(t)
    if n is None:
        raise FormatError("missing 'n <count>' header")
    return ThreeGraph(n, edges)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: {tok!r} is not an integer") from None


def format_edge_list(g: ThreeGraph) -> str:
    out = [f"n {g.n}"]
    out += [f"{a} {b} {c}" for a, b, c in g.edge_list()]
    return "\n".join(out) + "\n"


def read_edge_list(path: str) -> ThreeGraph:
    with open(path) as fh:
        return parse_edge_list(fh)


def write_edge_list(g: ThreeGraph, fh: TextIO) -> None:
    fh.write(format_edge_list(g))


# -- certificates -----------------------------------------------------------------
def window_digest(order: Sequence[int]) -> str:
    """sha256 over the canonical cyclic windows, one ``a b c`` line each."""
    m = len(order)
    h = hashlib.sha256()
    for i in range(m):
        a, b, c = canonical((order[i], order[(i + 1) % m], order[(i + 2) % m]))
        h.update(f"{a} {b} {c}\n".encode())
    return h.hexdigest()


def _dump(v) -> str:
    return json.dumps(v, sort_keys=True, separators=(", ", ": "))


def format_certificate(cert: HamiltonCertificate, g: ThreeGraph | None = None) -> str:
    out = [f"{CERT_MAGIC} {CERT_VERSION}", f"n {cert.n}"]
    for k in sorted(cert.params):
        out.append(f"param {k} {_dump(cert.params[k])}")
    for k in cert.stages:
        out.append(f"stage {k} {_dump(cert.stages[k])}")
    out.append("order " + " ".join(map(str, cert.order)))
    out.append(f"digest {window_digest(cert.order)}")
    text = "\n".join(out) + "\n"
    if g is not None:
        text += "graph\n" + format_edge_list(g) + "end\n"
    return text


def parse_certificate(text: str) -> tuple[HamiltonCertificate, ThreeGraph | None, str]:
    """Returns (certificate, embedded graph or None, recorded digest)."""
    lines = text.splitlines()
    if not lines or lines[0].split() != [CERT_MAGIC, str(CERT_VERSION)]:
        raise FormatError("not a tightham certificate (bad first line)")
    n = None
    order = None
    digest = None
    params: dict = {}
    stages: dict = {}
    graph = None
    i = 1
    while i < len(lines):
        line = lines[i]
        i += 1
        if not line.strip():
            continue
        if line == "graph":
            try:
                j = lines.index("end", i)
            except ValueError:
                raise FormatError("graph section without 'end'") from None
            graph = parse_edge_list(lines[i:j])
            i = j + 1
            continue
        key, _, rest = line.partition(" ")
        try:
            if key == "n":
                n = int(rest)
            elif key == "param":
                name, _, val = rest.partition(" ")
                params[name] = json.loads(val)
            elif key == "stage":
                name, _, val = rest.partition(" ")
                stages[name] = json.loads(val)
            elif key == "order":
                order = tuple(int(t) for t in rest.split())
            elif key == "digest":
                digest = rest.strip()
            else:
                raise FormatError(f"unknown certificate key {key!r}")
        except (ValueError, json.JSONDecodeError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad value for {key!r}: {exc}") from None
    if n is None or order is None or digest is None:
        raise FormatError("certificate lacks n, order or digest")
    return HamiltonCertificate(n, order, params, stages), graph, digest


def check_certificate(cert: HamiltonCertificate, g: ThreeGraph) -> list[str]:
    """Problems found when re-checking ``cert`` against ``g`` (empty if valid).

    Uses only the graph and the order; the digest is not consulted.
    """
    problems = []
    order = cert.order
    if g.n != cert.n:
        problems.append(f"certificate is for n={cert.n}, graph has n={g.n}")
    if sorted(order) != list(range(g.n)):
        problems.append("order is not a permutation of the vertices")
    if len(order) < 5:
        problems.append("a tight cycle needs at least 5 vertices")
    m = len(order)
    for i in range(m):
        a, b, c = order[i], order[(i + 1) % m], order[(i + 2) % m]
        ok = all(0 <= v < g.n for v in (a, b, c)) and len({a, b, c}) == 3 and g.has_edge(a, b, c)
        if not ok:
            problems.append(f"window {i}: {{{a}, {b}, {c}}} is not an edge")
    return problems
