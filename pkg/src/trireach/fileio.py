"""Line-oriented text interchange for graphs, witnesses and oracle output.

Layout (order fixed by the writer; the reader tolerates blank lines):

    sizes <a> <b> <c>
    weights_a <p/q> ... (a entries)
    weights_b ...
    weights_c ...
    ab <i> <j>          (one line per A-B edge)
    bc <j> <k>          (one line per B-C edge)
    claim <phi|psi> <x> <y> <z> <strict|nonstrict>     (optional trailer)
    provenance <name and parameters, free form>        (optional trailer)
    oracle <exhaustive|randomized>                     (optional trailer)

Rationals use the canonical "p/q" form everywhere. Indices are 0-based and
the writer emits edges sorted, so output is byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .graphs import Fn, Tripartition, WeightedTripartite
from .rationals import format_rational, parse_rational


class FileFormatError(ValueError):
    """Malformed graph/witness file."""


@dataclass(frozen=True)
class Claim:
    function: Fn
    x: Fraction
    y: Fraction
    z: Fraction
    strict: bool


@dataclass(frozen=True)
class ParsedGraphFile:
    graph: WeightedTripartite
    claim: Claim | None
    provenance: str | None
    oracle: str | None


def render_graph_file(
    graph: WeightedTripartite,
    claim: Claim | None = None,
    provenance: str | None = None,
    oracle: str | None = None,
) -> str:
    s = graph.structure
    lines = [f"sizes {s.a_size} {s.b_size} {s.c_size}"]
    for name, weights in (
        ("weights_a", graph.weights_a),
        ("weights_b", graph.weights_b),
        ("weights_c", graph.weights_c),
    ):
        lines.append(f"{name} " + " ".join(format_rational(w) for w in weights))
    for i, j in sorted(s.ab_edges()):
        lines.append(f"ab {i} {j}")
    for j, k in sorted(s.bc_edges()):
        lines.append(f"bc {j} {k}")
    if claim is not None:
        kind = "strict" if claim.strict else "nonstrict"
        lines.append(
            f"claim {claim.function.value} {format_rational(claim.x)} "
            f"{format_rational(claim.y)} {format_rational(claim.z)} {kind}"
        )
    if provenance is not None:
        lines.append(f"provenance {provenance}")
    if oracle is not None:
        lines.append(f"oracle {oracle}")
    return "\n".join(lines) + "\n"


def write_graph_file(
    path: str | Path,
    graph: WeightedTripartite,
    claim: Claim | None = None,
    provenance: str | None = None,
    oracle: str | None = None,
) -> None:
    Path(path).write_text(render_graph_file(graph, claim, provenance, oracle))


def _parse_weights(tokens: list[str], size: int, line_no: int) -> tuple[Fraction, ...]:
    if len(tokens) != size:
        raise FileFormatError(f"line {line_no}: expected {size} weights, got {len(tokens)}")
    return tuple(parse_rational(t) for t in tokens)


def parse_graph_text(text: str) -> ParsedGraphFile:
    sizes: tuple[int, int, int] | None = None
    weights: dict[str, tuple[Fraction, ...]] = {}
    ab_edges: list[tuple[int, int]] = []
    bc_edges: list[tuple[int, int]] = []
    claim: Claim | None = None
    provenance: str | None = None
    oracle: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        key, rest = tokens[0], tokens[1:]
        try:
            if key == "sizes":
                if len(rest) != 3:
                    raise FileFormatError(f"line {line_no}: sizes needs 3 integers")
                sizes = (int(rest[0]), int(rest[1]), int(rest[2]))
            elif key in ("weights_a", "weights_b", "weights_c"):
                if sizes is None:
                    raise FileFormatError(f"line {line_no}: {key} before sizes")
                size = sizes[("weights_a", "weights_b", "weights_c").index(key)]
                weights[key] = _parse_weights(rest, size, line_no)
            elif key == "ab":
                ab_edges.append((int(rest[0]), int(rest[1])))
            elif key == "bc":
                bc_edges.append((int(rest[0]), int(rest[1])))
            elif key == "claim":
                if len(rest) != 5 or rest[0] not in ("phi", "psi") or rest[4] not in ("strict", "nonstrict"):
                    raise FileFormatError(f"line {line_no}: malformed claim")
                claim = Claim(
                    Fn(rest[0]),
                    parse_rational(rest[1]),
                    parse_rational(rest[2]),
                    parse_rational(rest[3]),
                    rest[4] == "strict",
                )
            elif key == "provenance":
                provenance = " ".join(rest)
            elif key == "oracle":
                if rest not in (["exhaustive"], ["randomized"]):
                    raise FileFormatError(f"line {line_no}: malformed oracle trailer")
                oracle = rest[0]
            else:
                raise FileFormatError(f"line {line_no}: unknown directive {key!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, FileFormatError):
                raise
            raise FileFormatError(f"line {line_no}: {exc}") from exc
    if sizes is None:
        raise FileFormatError("missing sizes line")
    for key in ("weights_a", "weights_b", "weights_c"):
        if key not in weights:
            raise FileFormatError(f"missing {key} line")
    try:
        structure = Tripartition.from_edges(sizes[0], sizes[1], sizes[2], ab_edges, bc_edges)
        graph = WeightedTripartite(
            structure, weights["weights_a"], weights["weights_b"], weights["weights_c"]
        )
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc
    return ParsedGraphFile(graph, claim, provenance, oracle)


def read_graph_file(path: str | Path) -> ParsedGraphFile:
    return parse_graph_text(Path(path).read_text())
