"""Isomorphism-class representatives of paramedial quasigroups over Z_{p^k}.

Aut(Z_{p^k}) is the unit group, which is abelian, so the classification
reduces to picking every pair of units (phi, psi) with phi^2 = psi^2 and
then a transversal of the unit action on Z_{p^k} / Im(1 - phi - psi).

For odd p the pairs are exactly psi = +-phi and the constants depend on
i = v_p(1 - 2 phi): the transversal is {0, 1, p, ..., p^(i-1)}.  For
p = 2 every valid pair forces Im(1 - phi - psi) to be everything (the
sum phi + psi is even), so c = 0 throughout; with k <= 2 the
representative list is taken from the generic orbit oracle and the
counts 1 and 4 are hard-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affine import AffineForm, CyclicGroup
from .modring import Modulus, Residue, Unit, unit_group


class UnsupportedOrder(ValueError):
    """An order whose abelian-group shapes fall outside the classification."""


@dataclass(frozen=True)
class CyclicClassification:
    modulus: Modulus
    forms: tuple[AffineForm, ...]

    @property
    def count(self) -> int:
        return len(self.forms)


def closed_form_count(m: Modulus) -> int:
    """Number of classes over Z_{p^k}: 2p^k - p^(k-1) + sum_{i<=k-2} p^i
    for odd p, and 1, 4, 2^(k+1) for p = 2 with k = 1, 2, > 2."""
    p, k = m.p, m.k
    if p == 2:
        if k == 1:
            return 1
        if k == 2:
            return 4
        return 2 ** (k + 1)
    return 2 * p**k - p ** (k - 1) + sum(p**i for i in range(k - 1))


def _coset_transversal(phi: int, m: Modulus) -> list[int]:
    """Constants for psi = phi: zero plus the powers p^0..p^(i-1), where
    p^i = gcd(1 - 2 phi, p^k)."""
    v = (1 - 2 * phi) % m.n
    if v == 0:
        i = m.k
    else:
        i = 0
        while v % m.p == 0:
            v //= m.p
            i += 1
    return [0] + [m.p**j for j in range(i)]


def enumerate_cyclic(m: Modulus) -> CyclicClassification:
    """All classes over Z_{p^k}, ordered by (phi, psi, c) ascending."""
    group = CyclicGroup(m)
    n = m.n
    triples: list[tuple[int, int, int]] = []
    if m.p == 2 and m.k <= 2:
        from .oracle import classify_triples

        cls = classify_triples(group)
        expected = {1: 1, 2: 4}[m.k]
        if cls.count != expected:
            raise AssertionError(f"oracle found {cls.count} classes over Z_{n}, expected {expected}")
        triples = [(f.phi.value, f.psi.value, f.c.value) for f in cls.representatives]
    elif m.p == 2:
        units = [u.value for u in unit_group(m)]
        for phi in units:
            matches = [psi for psi in units if (phi * phi - psi * psi) % n == 0]
            if len(matches) != 4:
                raise AssertionError(f"unit {phi} mod {n} has {len(matches)} square-matches, expected 4")
            triples.extend((phi, psi, 0) for psi in matches)
    else:
        for u in unit_group(m):
            phi = u.value
            triples.append((phi, n - phi, 0))
            triples.extend((phi, phi, c) for c in _coset_transversal(phi, m))
    triples.sort()
    forms = tuple(
        AffineForm(group, Unit(Residue(phi, m)), Unit(Residue(psi, m)), Residue(c, m))
        for phi, psi, c in triples
    )
    return CyclicClassification(modulus=m, forms=forms)


def case_label(form: AffineForm) -> str:
    """Classification row label of a cyclic form."""
    m = form.group.modulus
    if m.p == 2:
        return "cyclic.p2"
    if form.psi.value == (-form.phi.value) % m.n:
        return "cyclic.psi-minus"
    i = len(_coset_transversal(form.phi.value, m)) - 1
    return f"cyclic.psi-plus.i{i}"


def gl2_closed_count(p: int) -> int:
    """Number of classes over Z_p x Z_p: 4p^2 - 2 for odd p, 7 for p = 2."""
    return 7 if p == 2 else 4 * p * p - 2


def _abelian_count_for_prime_power(p: int, e: int) -> int:
    if e == 1:
        return closed_form_count(Modulus(p, 1))
    if e == 2:
        return closed_form_count(Modulus(p, 2)) + gl2_closed_count(p)
    raise UnsupportedOrder(
        f"order {p}^{e} needs paramedial counts over abelian groups beyond "
        f"Z_{p**e} and Z_{p}^2 (mixed shapes like Z_{p} x Z_{p**(e-1)} and "
        f"elementary abelian groups of rank >= 3 are not classified here)"
    )


def pq_total(n: int) -> int:
    """Total number of paramedial quasigroups of order n, up to isomorphism.

    Multiplicative over coprime factors; each prime power p^e contributes
    the sum over the abelian groups of that order, which this library
    covers for e <= 2.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return 1
    total = 1
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            total *= _abelian_count_for_prime_power(d, e)
        d += 1
    if rest > 1:
        total *= _abelian_count_for_prime_power(rest, 1)
    return total
