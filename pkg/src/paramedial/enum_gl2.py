"""Isomorphism-class representatives of paramedial quasigroups over Z_p x Z_p.

Aut(Z_p^2) = GL(2,p), so the classification walks the conjugacy classes:

  * X: class representatives phi (scalar, distinct-diagonal, Jordan, and
    companion matrices of irreducible quadratics), with their centralizers;
  * S_phi: all square roots psi of phi^2, from the Cayley-Hamilton trick;
  * Y_phi: orbit representatives of the centralizer conjugating S_phi;
  * G_{phi,psi}: a transversal of the joint-centralizer action on
    Z_p^2 / Im(1 - phi - psi), which has 1 or 2 elements here.

Each emitted triple (phi, psi, c) with phi in X, psi in Y_phi and c in
G_{phi,psi} is one isomorphism class, 4p^2 - 2 in total for odd p.  The
only case without a closed-form list of Y_phi is phi = ((0,1),(a,0)) with
a a non-square: there the orbit partition is computed directly and
cross-checked against Burnside's lemma, and the count of matrices psi
admitting two constants comes down to counting points on a conic.

p = 2 degenerates (no 2^-1, no pairs 0 < a < b) and is routed through
the generic orbit oracle instead; it yields 7 classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .affine import AffineForm, ClassRecord, ElemAbelian2Group
from .modring import (
    Mat2,
    Vec2,
    gl2,
    is_prime,
    is_square_mod,
    sqrt_mod_prime,
    vector_outside_line,
)

CASE_SCALAR_PLUS = "scalar.psi-plus"
CASE_SCALAR_MINUS = "scalar.psi-minus"
CASE_SCALAR_SPLIT = "scalar.psi-split"
CASE_DIAG_PLUS = "diag.psi-plus"
CASE_DIAG_MINUS = "diag.psi-minus"
CASE_DIAG_MIXED_A = "diag.psi-mixed-a"
CASE_DIAG_MIXED_B = "diag.psi-mixed-b"
CASE_DIAG0_LOWER_PLUS = "diag0.psi-lower-plus"
CASE_DIAG0_LOWER_MINUS = "diag0.psi-lower-minus"
CASE_DIAG0_FAMILY = "diag0.psi-family"
CASE_JORDAN_PLUS = "jordan.psi-plus"
CASE_JORDAN_MINUS = "jordan.psi-minus"
CASE_IRRED_PLUS = "irred.psi-plus"
CASE_IRRED_MINUS = "irred.psi-minus"
CASE_IRRED0_ROOT = "irred0.psi-root"
CASE_IRRED0_CONIC = "irred0.psi-conic"
CASE_P2_ORACLE = "p2-oracle"


def _require_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError(f"p={p} must be an odd prime (p = 2 runs through the oracle path)")


def nonsquares(p: int) -> list[int]:
    return [a for a in range(1, p) if not is_square_mod(a, p)]


# -- conjugacy classes of GL(2,p) and their centralizers -----------------------


@dataclass(frozen=True)
class Centralizer:
    """The subgroup commuting with a fixed matrix: order, membership, elements."""

    order: int
    contains: Callable[[Mat2], bool]
    _generate: Callable[[], list[Mat2]]

    def elements(self) -> list[Mat2]:
        return self._generate()


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class of GL(2,p), keyed by its representative shape.

    kind 'scalar': aI; 'diag': diag(a, b) with 0 < a < b; 'jordan':
    ((a,1),(0,a)); 'irreducible': the companion matrix ((0,1),(a,b)) of
    an irreducible x^2 - b x - a.
    """

    kind: str
    a: int
    b: Optional[int]
    rep: Mat2
    centralizer: Centralizer


def _scalar_centralizer(p: int) -> Centralizer:
    return Centralizer(
        order=(p * p - 1) * (p * p - p),
        contains=lambda m: m.det() != 0,
        _generate=lambda: gl2(p),
    )


def _diag_centralizer(p: int) -> Centralizer:
    return Centralizer(
        order=(p - 1) ** 2,
        contains=lambda m: m.b == 0 and m.c == 0 and m.a != 0 and m.d != 0,
        _generate=lambda: [
            Mat2.diag(u, v, p) for u in range(1, p) for v in range(1, p)
        ],
    )


def _jordan_centralizer(p: int) -> Centralizer:
    return Centralizer(
        order=p * (p - 1),
        contains=lambda m: m.c == 0 and m.a == m.d and m.a != 0,
        _generate=lambda: [
            Mat2(u, v, 0, u, p) for u in range(1, p) for v in range(p)
        ],
    )


def _irreducible_centralizer(p: int, a: int, b: int) -> Centralizer:
    return Centralizer(
        order=p * p - 1,
        contains=lambda m: m.c == a * m.b % p and m.d == (m.a + b * m.b) % p
        and (m.a != 0 or m.b != 0),
        _generate=lambda: [
            Mat2(u, v, a * v, u + b * v, p)
            for u in range(p)
            for v in range(p)
            if u != 0 or v != 0
        ],
    )


def conjugacy_classes(p: int) -> list[ConjClass]:
    """Representatives of all p^2 - 1 conjugacy classes of GL(2,p), p odd.

    Irreducibility of x^2 - b x - a is certified by the discriminant
    b^2 + 4a being a non-square.
    """
    _require_odd_prime(p)
    classes: list[ConjClass] = []
    for a in range(1, p):
        classes.append(ConjClass("scalar", a, None, Mat2.scalar(a, p), _scalar_centralizer(p)))
    for a in range(1, p):
        for b in range(a + 1, p):
            classes.append(ConjClass("diag", a, b, Mat2.diag(a, b, p), _diag_centralizer(p)))
    for a in range(1, p):
        classes.append(ConjClass("jordan", a, None, Mat2(a, 1, 0, a, p), _jordan_centralizer(p)))
    for a in range(1, p):
        for b in range(p):
            if not is_square_mod(b * b + 4 * a, p):
                classes.append(
                    ConjClass("irreducible", a, b, Mat2(0, 1, a, b, p), _irreducible_centralizer(p, a, b))
                )
    return classes


# -- square roots of 2x2 matrices ----------------------------------------------


def sqrt_set(a_mat: Mat2) -> list[Mat2]:
    """All X with X^2 = A over Z_p, p odd, in lexicographic order.

    Non-scalar A: Cayley-Hamilton forces X = (A + delta I) / tau with
    delta^2 = det(A) and tau^2 = tr(A) + 2 delta, tau != 0; every such
    candidate is a root, giving at most four.  Scalar A = cI: besides
    +-sqrt(c) I (when c is a square) the trace-zero matrices
    ((k,l),(m,-k)) with k^2 + lm = c all square to cI.
    """
    p = a_mat.p
    if p == 2:
        raise ValueError("square-root formulas need an odd prime")
    roots: set[Mat2] = set()
    if a_mat.is_scalar():
        c = a_mat.a
        for r in sqrt_mod_prime(c, p):
            roots.add(Mat2.scalar(r, p))
            roots.add(Mat2.scalar(-r, p))
        for k in range(p):
            need = (c - k * k) % p
            if need == 0:
                roots.update(Mat2(k, 0, m, -k, p) for m in range(p))
                roots.update(Mat2(k, l, 0, -k, p) for l in range(p))
            else:
                roots.update(
                    Mat2(k, l, need * pow(l, -1, p) % p, -k, p) for l in range(1, p)
                )
    else:
        t = a_mat.tr()
        for delta in sqrt_mod_prime(a_mat.det(), p) or ():
            for sign in (1, -1):
                d = sign * delta % p
                for tau in sqrt_mod_prime(t + 2 * d, p):
                    if tau == 0:
                        continue
                    ti = pow(tau, -1, p)
                    x = (a_mat + Mat2.scalar(d, p)).smul(ti)
                    roots.add(x)
                    roots.add(-x)
    for x in roots:
        assert x.square() == a_mat
    return sorted(roots)


# -- counting points on the relevant conic --------------------------------------


def conic_solutions(p: int, a: int) -> list[tuple[int, int]]:
    """All (k, l) in Z_p^2 with k^2 - a l^2 + (1 - 2a) l - a = 0, for a
    a non-square mod p.  Exhaustive by construction."""
    _require_odd_prime(p)
    if is_square_mod(a, p):
        raise ValueError(f"a={a} is a square mod {p}")
    return [
        (k, l)
        for k in range(p)
        for l in range(p)
        if (k * k - a * l * l + (1 - 2 * a) * l - a) % p == 0
    ]


def conic_count(p: int, a: int) -> int:
    """Point count of the conic above; always p + 1, and every solution
    has l != 0 and differs from (0, +-1)."""
    sols = conic_solutions(p, a)
    if len(sols) != p + 1:
        raise AssertionError(f"conic over Z_{p} with a={a} has {len(sols)} points, expected {p + 1}")
    for (k, l) in sols:
        if l == 0 or (k == 0 and l in (1, p - 1)):
            raise AssertionError(f"degenerate conic solution {(k, l)}")
    return len(sols)


# -- orbit representatives Y_phi -------------------------------------------------


def _centralizer_orbits(cls: ConjClass, points: list[Mat2]):
    from .oracle import ActionSpec, orbits

    elements = cls.centralizer.elements()
    inverses = {g: g.inv() for g in elements}
    spec = ActionSpec(
        points=points,
        act=lambda g, m: g @ m @ inverses[g],
        compose=lambda g, h: g @ h,
        identity=Mat2.identity(cls.rep.p),
        elements=elements,
        order=cls.centralizer.order,
        name=f"centralizer-conjugation-{cls.kind}",
    )
    return orbits(spec)


def y_phi(cls: ConjClass) -> list[Mat2]:
    """Orbit representatives of the centralizer conjugation on S_phi.

    Closed-form lists exist for every kind except the trace-zero
    irreducible representative ((0,1),(a,0)), where the p - 2
    non-central orbits have no canonical description; those are computed
    directly and represented by the least matrix of each orbit.
    """
    p = cls.rep.p
    a = cls.a
    phi = cls.rep
    if cls.kind == "scalar":
        return [Mat2.scalar(a, p), Mat2.scalar(-a, p), Mat2.diag(a, -a, p)]
    if cls.kind == "diag":
        b = cls.b
        reps = [Mat2.diag(a, b, p), Mat2.diag(-a, -b, p), Mat2.diag(-a, b, p), Mat2.diag(a, -b, p)]
        if b == p - a:
            reps += [Mat2(a, 0, 1, -a, p), Mat2(-a, 0, 1, a, p)]
            reps += [Mat2(k, 1, a * a - k * k, -k, p) for k in range(p)]
        return reps
    if cls.kind == "jordan":
        return [phi, -phi]
    if cls.b != 0:
        return [phi, -phi]
    # Trace-zero irreducible case: compute the orbit partition of S_phi.
    part = _centralizer_orbits(cls, sqrt_set(phi.square()))
    singles = [orb[0] for orb in part.orbits if len(orb) == 1]
    if sorted(singles) != sorted([phi, -phi]):
        raise AssertionError("singleton orbits are not exactly {phi, -phi}")
    extras = [orb[0] for orb in part.orbits if len(orb) > 1]
    if len(extras) != p - 2:
        raise AssertionError(f"expected {p - 2} non-central orbits, found {len(extras)}")
    return [phi, -phi] + extras


def burnside_orbit_count(cls: ConjClass) -> tuple[int, tuple[int, ...]]:
    """Orbit count and size multiset for the trace-zero irreducible case,
    computed both by fixed-point averaging and by direct partition.

    Both routes must agree; the result is exactly p orbits with sizes
    {1, 1, (p+1) x (p-2)}.
    """
    p = cls.rep.p
    if cls.kind != "irreducible" or cls.b != 0:
        raise ValueError("Burnside counting applies to the ((0,1),(a,0)) representative")
    s_phi = sqrt_set(cls.rep.square())
    elements = cls.centralizer.elements()
    fixed_total = 0
    for g in elements:
        fixed_total += sum(1 for m in s_phi if g @ m == m @ g)
    if fixed_total % cls.centralizer.order != 0:
        raise AssertionError("fixed-point total not divisible by the centralizer order")
    by_average = fixed_total // cls.centralizer.order

    part = _centralizer_orbits(cls, s_phi)
    sizes = tuple(sorted(len(orb) for orb in part.orbits))
    if by_average != len(part.orbits):
        raise AssertionError(
            f"Burnside average {by_average} disagrees with direct partition {len(part.orbits)}"
        )
    return by_average, sizes


# -- coset representatives G_{phi,psi} -------------------------------------------


def coset_reps_for(phi: Mat2, psi: Mat2) -> list[Vec2]:
    """Transversal of the joint-centralizer action on Z_p^2 / Im(1-phi-psi).

    Full rank leaves only the zero coset.  Rank one gives {0, w} for any
    w outside the image, because every centralizer contains the scalar
    matrices, which act transitively on the non-zero cosets; w is the
    least such vector.  Rank zero happens only for phi = psi = 2^-1 I,
    where the joint centralizer is all of GL(2,p) and any non-zero
    vector serves: {0, (1,0)}.
    """
    if phi.square() != psi.square():
        raise ValueError("phi^2 != psi^2")
    p = phi.p
    m = Mat2.identity(p) - phi - psi
    zero = Vec2(0, 0, p)
    rank = m.rank()
    if rank == 2:
        return [zero]
    if rank == 0:
        return [zero, Vec2(1, 0, p)]
    col1 = Vec2(m.a, m.c, p)
    direction = col1 if not col1.is_zero() else Vec2(m.b, m.d, p)
    return [zero, vector_outside_line(direction)]


# -- the full classification ------------------------------------------------------


@dataclass(frozen=True)
class Gl2Row:
    """One (phi, psi) pair with its admissible constants."""

    phi: Mat2
    psi: Mat2
    case: str
    coset_reps: tuple[Vec2, ...]
    simple: bool

    @property
    def count(self) -> int:
        return len(self.coset_reps)


@dataclass(frozen=True)
class Gl2Classification:
    p: int
    rows: tuple[Gl2Row, ...]

    @property
    def total(self) -> int:
        return sum(r.count for r in self.rows)

    def records(self) -> list[ClassRecord]:
        group = ElemAbelian2Group(self.p)
        out = []
        for row in self.rows:
            for c in row.coset_reps:
                out.append(
                    ClassRecord(AffineForm(group, row.phi, row.psi, c), row.case, row.simple)
                )
        return out

    def forms(self) -> list[AffineForm]:
        return [rec.form for rec in self.records()]


def _row(phi: Mat2, psi: Mat2, case: str, simple: bool) -> Gl2Row:
    return Gl2Row(phi, psi, case, tuple(coset_reps_for(phi, psi)), simple)


def _enumerate_odd(p: int) -> list[Gl2Row]:
    rows: list[Gl2Row] = []
    for a in range(1, p):
        phi = Mat2.scalar(a, p)
        rows.append(_row(phi, phi, CASE_SCALAR_PLUS, False))
        rows.append(_row(phi, -phi, CASE_SCALAR_MINUS, False))
        rows.append(_row(phi, Mat2.diag(a, -a, p), CASE_SCALAR_SPLIT, False))
    for a in range(1, p):
        for b in range(a + 1, p):
            phi = Mat2.diag(a, b, p)
            rows.append(_row(phi, phi, CASE_DIAG_PLUS, False))
            rows.append(_row(phi, -phi, CASE_DIAG_MINUS, False))
            rows.append(_row(phi, Mat2.diag(-a, b, p), CASE_DIAG_MIXED_A, False))
            rows.append(_row(phi, Mat2.diag(a, -b, p), CASE_DIAG_MIXED_B, False))
            if b == p - a:
                rows.append(_row(phi, Mat2(a, 0, 1, -a, p), CASE_DIAG0_LOWER_PLUS, False))
                rows.append(_row(phi, Mat2(-a, 0, 1, a, p), CASE_DIAG0_LOWER_MINUS, False))
                for k in range(p):
                    psi = Mat2(k, 1, a * a - k * k, -k, p)
                    simple = k != a and k != p - a
                    rows.append(_row(phi, psi, CASE_DIAG0_FAMILY, simple))
    for a in range(1, p):
        phi = Mat2(a, 1, 0, a, p)
        rows.append(_row(phi, phi, CASE_JORDAN_PLUS, False))
        rows.append(_row(phi, -phi, CASE_JORDAN_MINUS, False))
    for cls in conjugacy_classes(p):
        if cls.kind != "irreducible":
            continue
        phi = cls.rep
        rows.append(_row(phi, phi, CASE_IRRED_PLUS, True))
        rows.append(_row(phi, -phi, CASE_IRRED_MINUS, True))
        if cls.b == 0:
            identity = Mat2.identity(p)
            for psi in y_phi(cls)[2:]:
                conic = (identity - phi - psi).det() == 0
                case = CASE_IRRED0_CONIC if conic else CASE_IRRED0_ROOT
                rows.append(_row(phi, psi, case, True))
    return rows


def _enumerate_p2() -> list[Gl2Row]:
    from .affine import is_simple
    from .oracle import classify_triples

    group = ElemAbelian2Group(2)
    cls = classify_triples(group)
    grouped: dict[tuple, list] = {}
    order: list[tuple] = []
    flags: dict[tuple, bool] = {}
    for form in cls.representatives:
        key = (form.phi, form.psi)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
            flags[key] = is_simple(form)
        grouped[key].append(form.c)
    return [
        Gl2Row(phi, psi, CASE_P2_ORACLE, tuple(grouped[(phi, psi)]), flags[(phi, psi)])
        for phi, psi in order
    ]


def enumerate_gl2(p: int) -> Gl2Classification:
    """All classes over Z_p x Z_p: 4p^2 - 2 for odd p, 7 for p = 2."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    rows = _enumerate_p2() if p == 2 else _enumerate_odd(p)
    return Gl2Classification(p=p, rows=tuple(rows))


def simple_subset(cls: Gl2Classification) -> Gl2Classification:
    """The rows whose quasigroups are simple (no common eigenvector)."""
    return Gl2Classification(p=cls.p, rows=tuple(r for r in cls.rows if r.simple))
