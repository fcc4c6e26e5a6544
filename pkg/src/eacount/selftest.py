"""Oracle-equivalence suites shared by ``eacount selftest`` and the tests."""
from __future__ import annotations

from dataclasses import dataclass

from .burnside import count_classes_conjugacy, count_classes_exhaustive
from .collision import orbit_partition
from .ea import enumerate_gamma, fixed_points_affine, orbits_affine
from .fixcount import fix_count_bruteforce, fix_count_exact, fix_count_upper
from .gf import enumerate_agl

ORACLE_SIZES = ((2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1))
LEMMA_GROUPS = ((1, 2), (2, 2), (3, 2), (1, 3), (2, 3))


@dataclass
class SuiteResult:
    name: str
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures{extra}"


def fix_oracle_suite(sizes=ORACLE_SIZES) -> SuiteResult:
    """fix_count_exact against brute force for every element of Gamma."""
    failures, checked = [], 0
    for dims in sizes:
        for g in enumerate_gamma(*dims):
            checked += 1
            exact, brute = fix_count_exact(g).total, fix_count_bruteforce(g)
            if exact != brute:
                failures.append((dims, g.to_dict(), exact, brute))
    return SuiteResult("fix-count oracle equivalence", checked, failures)


def fix_bound_suite(sizes=ORACLE_SIZES) -> SuiteResult:
    failures, checked = [], 0
    for dims in sizes:
        for g in enumerate_gamma(*dims):
            if g.is_identity():
                continue
            checked += 1
            total = fix_count_exact(g).total
            if not total <= fix_count_upper(g):
                failures.append((dims, g.to_dict(), total))
    return SuiteResult("fixed-count upper bound", checked, failures)


def class_count_suite(sizes=ORACLE_SIZES) -> SuiteResult:
    """Burnside (exhaustive and conjugacy) against the orbit partition."""
    failures = []
    for dims in sizes:
        ex = count_classes_exhaustive(*dims)
        cj = count_classes_conjugacy(*dims)
        census = orbit_partition(*dims).count
        literal = sum(fix_count_exact(g).total for g in enumerate_gamma(*dims))
        if not (ex.class_count == cj.class_count == census) or literal != ex.burnside_sum:
            failures.append((dims, ex.class_count, cj.class_count, census))
        if ex.burnside_sum % ex.gamma_order or cj.burnside_sum % cj.gamma_order:
            failures.append((dims, "Burnside sum not divisible by |Gamma|"))
    return SuiteResult("class count triple agreement", len(sizes), failures)


def affine_lemma_suite(groups=LEMMA_GROUPS) -> SuiteResult:
    """Fixed points <= q^(n-1) and orbit counts <= (q^n + f)/2 <= (q+1)/(2q) q^n."""
    failures, checked = [], 0
    for n, q in groups:
        N = q**n
        for P, a in enumerate_agl(n, q):
            if P.is_identity() and not any(a):
                continue
            checked += 1
            f = fixed_points_affine(P, a).size
            dec = orbits_affine(P, a)
            s = dec.count
            if f != dec.fixed_count or f > q ** (n - 1) or 2 * s > N + f or 2 * q * s > (q + 1) * N:
                failures.append(((n, q), P.rows, a, f, s))
    return SuiteResult("affine permutation lemmas", checked, failures)


def run_all() -> list:
    return [fix_oracle_suite(), fix_bound_suite(), class_count_suite(), affine_lemma_suite()]

