"""Certified witness graphs bounding the reach functions from above.

A witness is a weighted tripartite graph G together with a claim
"phi(x,y) < z" or "psi(x,y) <= z" (phi for the one-sided constraint family,
psi for the two-sided one). The certificate logic is direct: if G verifies at
(x, y) in the claim's mode and every C-vertex reaches at most (resp. strictly
less than) weight m of A, then blowing G up to an unweighted graph exhibits a
member of the family on which no C-vertex beats m, so the family's guaranteed
reach is at most m. Certification is therefore a recomputation, never an
algebraic argument: every constructor re-runs verify and max_reach on its
output and refuses to emit an uncertified graph.

Constructors:

* interval_witness  -- cyclic window graph; meets the k-minimized ceiling
  bound with equality, reach = min(1, (p+q-1)/N).
* circulant_witness -- two-component circulant gadget certifying
  psi(x, y) < a/b whenever b*x/a + y <= 1, x + b*y/a <= 1 and a*y <= x (or
  the mirrored a*x <= y variant), for a/b <= 1/2.
* extend_phi        -- one-sided lifting gadget: from a base with reach
  m' < (2z-1)/z at ((2x-1)/x, y/(1-y)), produce phi(x, y) < z.
* extend_psi_top / extend_psi_bottom -- two-sided lifting gadgets adding one
  vertex per part, with the feasible (p, q) weight window computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import fileio
from .graphs import (
    ConstraintParams,
    Fn,
    Mode,
    Tripartition,
    WeightedTripartite,
    cyclic_window_mask,
    max_reach,
    verify,
)
from .rationals import check_unit_interval


class ConstructionError(ValueError):
    """Target parameters violate a construction's entry conditions."""


class CertificationError(AssertionError):
    """A built graph failed its own certificate; indicates a bug, not a bad
    input, because every entry condition was checked before building."""


@dataclass(frozen=True)
class Witness:
    graph: WeightedTripartite
    function: Fn
    x: Fraction
    y: Fraction
    z: Fraction
    mode: Mode
    strict: bool
    reach: Fraction  # measured max reach of `graph`, the actual bound shown
    provenance: str

    @property
    def claim(self) -> fileio.Claim:
        return fileio.Claim(self.function, self.x, self.y, self.z, self.strict)


def certify(
    graph: WeightedTripartite,
    function: Fn,
    x: Fraction,
    y: Fraction,
    z: Fraction,
    provenance: str,
) -> Witness:
    """Recompute the full certificate and wrap the graph as a Witness.

    Runs verify in the claim's mode, measures max reach, and checks it
    against z (strict flag reflects what was measured). In two-sided mode it
    also asserts reach >= x, which every verified graph must satisfy: some
    B-neighbor of any C-vertex already carries A-weight >= x. No cap against
    the ceiling bound is asserted: a single certificate may reach more than
    the best known bound on the function (it is then merely a weak
    certificate, not an inconsistent one).
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    mode = function.mode
    report = verify(graph, ConstraintParams(x, y, mode))
    if not report.ok:
        raise CertificationError(f"constructed graph does not verify: {report.violation}")
    reach, _ = max_reach(graph)
    if reach > z:
        raise CertificationError(f"constructed graph reaches {reach} > claimed {z}")
    if mode is Mode.BICONSTRAINED and reach < x:
        raise CertificationError(f"two-sided reach {reach} below x = {x}")
    return Witness(graph, function, x, y, z, mode, reach < z, reach, provenance)


# ---------------------------------------------------------------------------
# interval witness
# ---------------------------------------------------------------------------


def interval_structure(n: int, p: int, q: int) -> Tripartition:
    """|A|=|B|=|C|=n with a_i ~ b_i..b_{i+p-1} and b_i ~ c_i..c_{i+q-1},
    indices cyclic modulo n."""
    ab = tuple(cyclic_window_mask(i, p, n) for i in range(n))
    bc = tuple(cyclic_window_mask(i, q, n) for i in range(n))
    return Tripartition(n, n, n, ab, bc)


def interval_witness(n: int, p: int, q: int) -> Witness:
    """Uniform-weight cyclic witness: psi(p/n, q/n) <= min(1, (p+q-1)/n).

    Every vertex has degree exactly p (A-B layer) or q (B-C layer) in both
    directions, and a C-vertex reaches the window of p+q-1 consecutive
    A-vertices behind it.
    """
    if not (1 <= p <= n and 1 <= q <= n):
        raise ConstructionError(f"need 1 <= p,q <= n, got n={n}, p={p}, q={q}")
    graph = WeightedTripartite.uniform(interval_structure(n, p, q))
    z = min(Fraction(1), Fraction(p + q - 1, n))
    return certify(graph, Fn.PSI, Fraction(p, n), Fraction(q, n), z, f"interval n={n} p={p} q={q}")


# ---------------------------------------------------------------------------
# circulant two-component witness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProofCondition:
    index: int
    description: str
    holds: bool


def _circulant_branch(x: Fraction, y: Fraction, a: int, b: int) -> int:
    """1 if a*y <= x (primary branch), 2 if a*x <= y, else raises."""
    if a * y <= x:
        return 1
    if a * x <= y:
        return 2
    raise ConstructionError(f"need a*y <= x or a*x <= y, got a*y={a * y}, a*x={a * x}")


def circulant_proof_conditions(x: Fraction, y: Fraction, a: int, b: int) -> list[ProofCondition]:
    """The displayed condition list guaranteeing the circulant certificate.

    Evaluated independently of the final verify/max_reach pass: a failure
    here is a bug trap (the entry hypotheses should imply every line), not an
    expected outcome.
    """
    branch = _circulant_branch(x, y, a, b)
    k = Fraction(b, a) - 1
    inv = Fraction(a, b)  # 1/(k+1)
    if branch == 1:
        den = 1 - k * x
    else:
        den = 1 - k * y
    n = math.lcm((x / den).denominator, (y / den).denominator)
    p = int(x * n / den)
    q = int(y * n / den)
    if branch == 1:
        r = (inv - x) / ((k + 1) * n)
    else:
        r = min((inv - x) / ((k + 1) * n), inv - y) / 2
    conds: list[tuple[str, bool]]
    if branch == 1:
        conds = [
            ("a*y <= x", a * y <= x),
            ("x <= p(1-kx)/N", x <= p * (1 - k * x) / n),
            ("y <= q(1-kx)/N", y <= q * (1 - k * x) / n),
            ("y <= q(1-kay)/N", y <= q * (1 - k * a * y) / n),
            ("x <= 1/(k+1) - r", x <= inv - r),
            ("x <= p*k*r(N+1)/N + 1/(k+1) - N*k*r", x <= p * k * r * (n + 1) / n + inv - n * k * r),
            (
                "1/(k+1) > 1/(k+1) - N*k*r + (p+q-1)k*r(N+1)/N",
                inv > inv - n * k * r + (p + q - 1) * k * r * (n + 1) / n,
            ),
        ]
    else:
        conds = [
            ("a*x <= y", a * x <= y),
            ("x <= p(1-ky)/N", x <= p * (1 - k * y) / n),
            ("y <= q(1-ky)/N", y <= q * (1 - k * y) / n),
            ("x <= 1/b - r/a", x <= Fraction(1, b) - r / a),
            ("x <= p*k*r(N+1)/N + 1/(k+1) - N*k*r", x <= p * k * r * (n + 1) / n + inv - n * k * r),
            (
                "1/(k+1) > 1/(k+1) - N*k*r + (p+q-1)k*r(N+1)/N",
                inv > inv - n * k * r + (p + q - 1) * k * r * (n + 1) / n,
            ),
        ]
    return [ProofCondition(i, desc, ok) for i, (desc, ok) in enumerate(conds, start=1)]


def circulant_witness(x: Fraction, y: Fraction, a: int, b: int) -> Witness:
    """Strict witness for psi(x, y) < a/b from the two-component circulant.

    Entry conditions: a/b <= 1/2, b*x/a + y <= 1, x + b*y/a <= 1, and
    a*y <= x or a*x <= y. The ratio k+1 = b/a need not be an integer; every
    formula below works with rational k.

    Component one has cyclic parts of size N (chosen as the least N making
    p = xN/(1-kx) and q = yN/(1-kx) integral; the 1-ky variants in the
    mirrored branch) plus a hub A-vertex complete to its B-part. Component
    two has m = b-a cyclic triples. Weights follow the two fixed tables; the
    displayed condition list is asserted first, then the result is certified
    by direct recomputation.
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    if a < 1 or b < 1:
        raise ConstructionError(f"a, b must be positive integers, got a={a}, b={b}")
    if Fraction(a, b) > Fraction(1, 2):
        raise ConstructionError(f"need a/b <= 1/2, got {a}/{b}")
    if Fraction(b, a) * x + y > 1:
        raise ConstructionError(f"need b*x/a + y <= 1, got {Fraction(b, a) * x + y}")
    if x + Fraction(b, a) * y > 1:
        raise ConstructionError(f"need x + b*y/a <= 1, got {x + Fraction(b, a) * y}")
    branch = _circulant_branch(x, y, a, b)

    failed = [c for c in circulant_proof_conditions(x, y, a, b) if not c.holds]
    if failed:
        detail = "; ".join(f"condition {c.index}: {c.description}" for c in failed)
        raise ConstructionError(f"circulant proof conditions failed ({detail})")

    k = Fraction(b, a) - 1
    inv = Fraction(a, b)
    den = 1 - k * x if branch == 1 else 1 - k * y
    n = math.lcm((x / den).denominator, (y / den).denominator)
    p = int(x * n / den)
    q = int(y * n / den)
    m = b - a
    if not (1 <= p and 1 <= q and p + q <= n):
        raise ConstructionError(f"window sizes out of range: p={p}, q={q}, N={n}")
    if branch == 1:
        r = (inv - x) / ((k + 1) * n)
    else:
        r = min((inv - x) / ((k + 1) * n), inv - y) / 2

    # Part layout: A = a_0..a_{n-1}, a*, a'_0..a'_{m-1}; B = b_0..b_{n-1},
    # b'_0..b'_{m-1}; C likewise. The hub a* is complete to b_0..b_{n-1}.
    ab_rows = [cyclic_window_mask(i, p, n) for i in range(n)]
    ab_rows.append((1 << n) - 1)
    if branch == 1:
        side = a  # a'_i ~ b'_i..b'_{i+a-1}
    else:
        side = 1  # a'_i ~ b'_i
    ab_rows.extend(cyclic_window_mask(i, side, m) << n for i in range(m))
    bc_rows = [cyclic_window_mask(i, q, n) for i in range(n)]
    if branch == 1:
        bc_rows.extend((1 << (n + i)) for i in range(m))  # b'_i ~ c'_i
    else:
        bc_rows.extend(cyclic_window_mask(i, a, m) << n for i in range(m))
    structure = Tripartition(n + 1 + m, n + m, n + m, tuple(ab_rows), tuple(bc_rows))

    w_a1 = k * r * (n + 1) / n
    w_hub = inv - n * k * r
    w_a2 = Fraction(1, b) - r / a
    if branch == 1:
        w_b1, w_b2 = (1 - k * x) / n, x / Fraction(a)
        w_c1, w_c2 = (1 - k * a * y) / n, y
    else:
        w_b1, w_b2 = (1 - k * y) / n, y / Fraction(a)
        w_c1, w_c2 = (1 - k * y) / n, y / Fraction(a)
    weights_a = (w_a1,) * n + (w_hub,) + (w_a2,) * m
    weights_b = (w_b1,) * n + (w_b2,) * m
    weights_c = (w_c1,) * n + (w_c2,) * m
    graph = WeightedTripartite(structure, weights_a, weights_b, weights_c)

    witness = certify(
        graph,
        Fn.PSI,
        x,
        y,
        Fraction(a, b),
        f"circulant x={x} y={y} a={a} b={b} branch={branch} N={n} p={p} q={q}",
    )
    if not witness.strict:
        raise CertificationError(f"circulant witness not strict: reach {witness.reach} = {a}/{b}")
    return witness


# ---------------------------------------------------------------------------
# lifting gadgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetInterval:
    """Feasible window for a gadget weight, as the max of named lower bounds
    against the min of named upper bounds. Infeasibility is a first-class
    outcome carrying the violated pairings."""

    lowers: tuple[tuple[str, Fraction], ...]
    uppers: tuple[tuple[str, Fraction], ...]

    @property
    def lower(self) -> Fraction:
        return max(v for _, v in self.lowers)

    @property
    def upper(self) -> Fraction:
        return min(v for _, v in self.uppers)

    @property
    def feasible(self) -> bool:
        return self.lower <= self.upper

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def failures(self) -> list[str]:
        return [
            f"{ln} = {lv} > {un} = {uv}"
            for ln, lv in self.lowers
            for un, uv in self.uppers
            if lv > uv
        ]


def _require_feasible(name: str, interval: GadgetInterval) -> None:
    if not interval.feasible:
        raise ConstructionError(
            f"empty {name}-interval: " + "; ".join(interval.failures())
        )


def _pick(name: str, interval: GadgetInterval, explicit: Fraction | None) -> Fraction:
    if explicit is None:
        return interval.midpoint
    if not (interval.lower <= explicit <= interval.upper):
        raise ConstructionError(
            f"{name} = {explicit} outside [{interval.lower}, {interval.upper}]"
        )
    return explicit


def _scaled(weights: tuple[Fraction, ...], factor: Fraction) -> tuple[Fraction, ...]:
    if factor <= 0:
        raise ConstructionError(f"scale factor {factor} would zero out a part")
    return tuple(w * factor for w in weights)


def _psi_base(base: Witness) -> tuple[Fraction, Fraction, Fraction]:
    """Base parameters for the two-sided gadgets; the reach bound used is the
    measured one, which can only widen the feasible windows."""
    if base.function is not Fn.PSI:
        raise ConstructionError("two-sided gadgets need a psi (biconstrained) base")
    if base.reach >= 1:
        raise ConstructionError("base reach must be < 1")
    return base.x, base.y, base.reach


def extend_psi_top(
    base: Witness,
    x: Fraction,
    y: Fraction,
    z: Fraction,
    pq: tuple[Fraction, Fraction] | None = None,
    expected_base_point: tuple[Fraction, Fraction] | None = None,
) -> Witness:
    """Lift a psi-base to psi(x, y) <= z by adding a, b, c on top.

    New vertices: a complete to the old B-part, b complete to the old A-part,
    and the edge b-c. Weights: w(a) = p with the old A scaled by 1-p,
    w(b) = q with B scaled by 1-q, w(c) = y with C scaled by 1-y. The
    feasible windows (z' is the base's measured reach) are

        p in [max(1-z, (x-x')/(1-x')), min(1-x, (z-z')/(1-z'))]
        q in [max(y,   (x-x')/(1-x')), min(1-x, 1-y/y')]

    each guaranteeing one constraint row of the lifted graph; an empty window
    is reported with every violated lower/upper pairing. Default choice is
    the midpoint, which maximizes the margin to both failure boundaries.
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    check_unit_interval("z", z)
    xp, yp, zp = _psi_base(base)
    if expected_base_point is not None and (xp, yp) != expected_base_point:
        raise ConstructionError(
            f"base mismatch: expected (x', y') = {expected_base_point}, base has ({xp}, {yp})"
        )
    p_lowers = [("1-z", 1 - z)]
    q_lowers = [("y", y)]
    if xp < 1:
        shared = ("(x-x')/(1-x')", (x - xp) / (1 - xp))
        p_lowers.append(shared)
        q_lowers.append(shared)
    p_int = GadgetInterval(
        tuple(p_lowers),
        (("1-x", 1 - x), ("(z-z')/(1-z')", (z - zp) / (1 - zp))),
    )
    q_int = GadgetInterval(
        tuple(q_lowers),
        (("1-x", 1 - x), ("1-y/y'", 1 - y / yp)),
    )
    _require_feasible("p", p_int)
    _require_feasible("q", q_int)
    p = _pick("p", p_int, pq[0] if pq else None)
    q = _pick("q", q_int, pq[1] if pq else None)

    s = base.graph.structure
    na, nb, nc = s.a_size, s.b_size, s.c_size
    ab_rows = [row | (1 << nb) for row in s.ab_rows]  # b complete to old A
    ab_rows.append((1 << nb) - 1)  # a complete to old B
    bc_rows = list(s.bc_rows)
    bc_rows.append(1 << nc)  # b ~ c
    structure = Tripartition(na + 1, nb + 1, nc + 1, tuple(ab_rows), tuple(bc_rows))
    graph = WeightedTripartite(
        structure,
        _scaled(base.graph.weights_a, 1 - p) + (p,),
        _scaled(base.graph.weights_b, 1 - q) + (q,),
        _scaled(base.graph.weights_c, 1 - y) + (y,),
    )
    return certify(
        graph,
        Fn.PSI,
        x,
        y,
        z,
        f"extend-psi-top base=({base.provenance}) x={x} y={y} z={z} p={p} q={q}",
    )


def extend_psi_bottom(
    base: Witness,
    x: Fraction,
    y: Fraction,
    z: Fraction,
    pq: tuple[Fraction, Fraction] | None = None,
    expected_base_point: tuple[Fraction, Fraction] | None = None,
) -> Witness:
    """Mirror of extend_psi_top with the gadget hanging below.

    New vertices: edge a-b, b complete to the old C-part, c complete to the
    old B-part. Weights: w(a) = p, A scaled by 1-p; w(b) = q, B scaled by
    1-q; w(c) = 1-y, C scaled by y. Windows:

        p in [max(x, 1-z),             min(1-x/x', (z-z')/(1-z'))]
        q in [max(x, (y-y')/(1-y')),   min(1-y,    1-x/x')]
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    check_unit_interval("z", z)
    xp, yp, zp = _psi_base(base)
    if expected_base_point is not None and (xp, yp) != expected_base_point:
        raise ConstructionError(
            f"base mismatch: expected (x', y') = {expected_base_point}, base has ({xp}, {yp})"
        )
    q_lowers = [("x", x)]
    if yp < 1:
        q_lowers.append(("(y-y')/(1-y')", (y - yp) / (1 - yp)))
    p_int = GadgetInterval(
        (("x", x), ("1-z", 1 - z)),
        (("1-x/x'", 1 - x / xp), ("(z-z')/(1-z')", (z - zp) / (1 - zp))),
    )
    q_int = GadgetInterval(
        tuple(q_lowers),
        (("1-y", 1 - y), ("1-x/x'", 1 - x / xp)),
    )
    _require_feasible("p", p_int)
    _require_feasible("q", q_int)
    p = _pick("p", p_int, pq[0] if pq else None)
    q = _pick("q", q_int, pq[1] if pq else None)

    s = base.graph.structure
    na, nb, nc = s.a_size, s.b_size, s.c_size
    ab_rows = list(s.ab_rows)
    ab_rows.append(1 << nb)  # a ~ b
    bc_rows = [row | (1 << nc) for row in s.bc_rows]  # c complete to old B
    bc_rows.append((1 << nc) - 1)  # b complete to old C
    structure = Tripartition(na + 1, nb + 1, nc + 1, tuple(ab_rows), tuple(bc_rows))
    graph = WeightedTripartite(
        structure,
        _scaled(base.graph.weights_a, 1 - p) + (p,),
        _scaled(base.graph.weights_b, 1 - q) + (q,),
        _scaled(base.graph.weights_c, y) + (1 - y,),
    )
    return certify(
        graph,
        Fn.PSI,
        x,
        y,
        z,
        f"extend-psi-bottom base=({base.provenance}) x={x} y={y} z={z} p={p} q={q}",
    )


def extend_phi(base: Witness, x: Fraction, y: Fraction, z: Fraction) -> Witness:
    """Lift a one-sided base at ((2x-1)/x, y/(1-y)) to phi(x, y) < z.

    Requires x > 1/2, y <= 1/2, the base point to match those derived
    parameters exactly, and the base's measured reach m' to satisfy
    m' < (2z-1)/z.

    The gadget adds a (complete to the old B), b (complete to the old A) and
    c (adjacent to b), with the old A scaled by an interior level t chosen in
    (1/(2-m'), z): the midpoint. Scaling by z itself would make the new
    C-vertex reach exactly weight z through b, which certifies only <= z;
    any t in that open window keeps every constraint row tight-or-better and
    yields measured reach t < z, i.e. a strict witness. Weights: w(a) = 1-t,
    A scaled by t; w(b) = 1-x, B scaled by x; w(c) = y, C scaled by 1-y.

    The base may be any witness whose graph verifies in the one-sided mode at
    the derived point (a two-sided base qualifies a fortiori).
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    check_unit_interval("z", z)
    if not (x > Fraction(1, 2)):
        raise ConstructionError(f"need x > 1/2 (x' = (2x-1)/x must be positive), got x={x}")
    if y > Fraction(1, 2):
        raise ConstructionError(f"need y <= 1/2, got y={y}")
    xp = (2 * x - 1) / x
    yp = y / (1 - y)
    check_unit_interval("derived x'", xp)
    check_unit_interval("derived y'", yp)
    if (base.x, base.y) != (xp, yp):
        raise ConstructionError(
            f"base mismatch: need base at (x', y') = ({xp}, {yp}), got ({base.x}, {base.y})"
        )
    base_report = verify(base.graph, ConstraintParams(xp, yp, Mode.CONSTRAINED))
    if not base_report.ok:
        raise ConstructionError(f"base graph fails one-sided verify: {base_report.violation}")
    mp, _ = max_reach(base.graph)
    bound = (2 * z - 1) / z
    if mp >= bound:
        raise ConstructionError(f"need base reach < (2z-1)/z = {bound}, got {mp}")
    t = (1 / (2 - mp) + z) / 2  # interior level; any value in the window works

    s = base.graph.structure
    na, nb, nc = s.a_size, s.b_size, s.c_size
    ab_rows = [row | (1 << nb) for row in s.ab_rows]  # b complete to old A
    ab_rows.append((1 << nb) - 1)  # a complete to old B
    bc_rows = list(s.bc_rows)
    bc_rows.append(1 << nc)  # b ~ c
    structure = Tripartition(na + 1, nb + 1, nc + 1, tuple(ab_rows), tuple(bc_rows))
    graph = WeightedTripartite(
        structure,
        _scaled(base.graph.weights_a, t) + (1 - t,),
        _scaled(base.graph.weights_b, x) + (1 - x,),
        _scaled(base.graph.weights_c, 1 - y) + (y,),
    )
    witness = certify(
        graph,
        Fn.PHI,
        x,
        y,
        z,
        f"extend-phi base=({base.provenance}) x={x} y={y} z={z} t={t}",
    )
    if not witness.strict:
        raise CertificationError(f"phi gadget not strict: reach {witness.reach} vs z = {z}")
    return witness


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def save_witness(witness: Witness, path: str | Path) -> None:
    fileio.write_graph_file(path, witness.graph, witness.claim, witness.provenance)


def load_witness(path: str | Path) -> Witness:
    """Read a witness file and re-certify it from scratch."""
    parsed = fileio.read_graph_file(path)
    if parsed.claim is None:
        raise fileio.FileFormatError(f"{path}: no claim line, not a witness file")
    c = parsed.claim
    witness = certify(parsed.graph, c.function, c.x, c.y, c.z, parsed.provenance or "file")
    if c.strict and not witness.strict:
        raise CertificationError(
            f"{path}: claim says strict but measured reach {witness.reach} is not below {c.z}"
        )
    return witness
