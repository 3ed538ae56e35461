"""
Subgroups of finite abelian groups: a brute-force census and the closed-form
counts c_{m,n}(d, e) of subgroups of type C_d x C_(m/d) in C_e x C_(mn/e).
"""

from collections import Counter, deque
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Tuple
import logging
import time

import numpy as np
import pandas as pd

from ..exceptions import InputError, ResourceLimitError
from ..models.abelian import AbelianType, SubgroupRecord
from ..models.reports import CheckReport
from .arith import dedekind_psi, divisors, euler_phi, factorize, sigma_k

logger = logging.getLogger(__name__)

DEFAULT_CENSUS_BOUND = 5000


class SubgroupCensus:
    """
    Every subgroup of a finite abelian group, found by closure.

    Elements are coordinate vectors in the cyclic factors of the ambient type
    and are indexed in row-major order. Starting from the trivial subgroup, each
    subgroup H found is extended by one representative of every coset of H; a
    subgroup is identified by its sorted element indices.
    """

    def __init__(self, ambient: AbelianType, bound: int = DEFAULT_CENSUS_BOUND):
        if ambient.order > bound:
            raise ResourceLimitError(f"Census of {ambient} (order {ambient.order}) exceeds bound {bound}")
        self.ambient = ambient
        self.order = ambient.order
        self.moduli = np.array(ambient.invariant_factors or (1,), dtype=np.int64)
        self.coords = np.array(list(np.ndindex(*self.moduli)), dtype=np.int64).reshape(self.order, -1)
        strides = np.ones(len(self.moduli), dtype=np.int64)
        for axis in range(len(self.moduli) - 2, -1, -1):
            strides[axis] = strides[axis + 1] * self.moduli[axis + 1]
        self.strides = strides
        self._records: Optional[List[SubgroupRecord]] = None

    def _index(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self.moduli) @ self.strides

    def _extend(self, members: np.ndarray, generator: int) -> np.ndarray:
        """Elements of the subgroup generated by ``members`` and one more element."""
        inside = np.zeros(self.order, dtype=bool)
        inside[members] = True
        step = self.coords[generator]
        multiple = 1
        while not inside[self._index(multiple * step)]:
            multiple += 1
        shifts = np.arange(multiple, dtype=np.int64)[:, None, None] * step
        grown = self._index(self.coords[members][None, :, :] + shifts).ravel()
        return np.sort(grown)

    def _element_orders(self, members: np.ndarray) -> np.ndarray:
        coords = self.coords[members]
        return np.lcm.reduce(self.moduli // np.gcd(coords, self.moduli), axis=1)

    def _record(self, members: np.ndarray, generators: Tuple[int, ...]) -> SubgroupRecord:
        orders = Counter(int(o) for o in self._element_orders(members))
        return SubgroupRecord(
            ambient=self.ambient,
            generators=tuple(tuple(int(x) for x in self.coords[g]) for g in generators),
            type=AbelianType.from_order_counts(orders),
            order=len(members),
            elements=tuple(tuple(int(x) for x in self.coords[i]) for i in members),
        )

    def subgroups(self) -> List[SubgroupRecord]:
        """All subgroups, each exactly once, in discovery order."""
        if self._records is not None:
            return self._records

        started = time.perf_counter()
        trivial = np.zeros(1, dtype=np.int64)
        seen: Dict[bytes, Tuple[np.ndarray, Tuple[int, ...]]] = {trivial.tobytes(): (trivial, ())}
        queue = deque([(trivial, ())])
        while queue:
            members, generators = queue.popleft()
            covered = np.zeros(self.order, dtype=bool)
            covered[members] = True
            member_coords = self.coords[members]
            for candidate in range(self.order):
                if covered[candidate]:
                    continue
                covered[self._index(member_coords + self.coords[candidate])] = True
                grown = self._extend(members, candidate)
                key = grown.tobytes()
                if key not in seen:
                    entry = (grown, generators + (candidate,))
                    seen[key] = entry
                    queue.append(entry)

        self._records = [self._record(members, generators) for members, generators in seen.values()]
        logger.debug(f"Census of {self.ambient}: {len(self._records)} subgroups in "
                     f"{(time.perf_counter() - started) * 1000:.1f} ms")
        return self._records


@lru_cache(maxsize=256)
def _census(ambient: AbelianType, bound: int) -> Tuple[SubgroupRecord, ...]:
    return tuple(SubgroupCensus(ambient, bound).subgroups())


def enumerate_subgroups(group: AbelianType, bound: int = DEFAULT_CENSUS_BOUND) -> List[SubgroupRecord]:
    """Every subgroup of ``group`` with its type."""
    return list(_census(group, bound))


def count_by_type(group: AbelianType, subgroup_type: AbelianType,
                  bound: int = DEFAULT_CENSUS_BOUND) -> int:
    """Number of subgroups of ``group`` isomorphic to ``subgroup_type``."""
    return sum(1 for record in _census(group, bound) if record.type == subgroup_type)


def _prime_exponents(*values: int) -> Dict[int, Tuple[int, ...]]:
    primes = sorted({p for v in values for p in factorize(v).primes})
    return {p: tuple(factorize(v).exponent(p) for v in values) for p in primes}


def c_prime_power(m: int, n: int, d: int, e: int, prime: int) -> int:
    """
    c_{l^m, l^n}(l^d, l^e) for exponents m, n, d, e at the prime l.

    Sum of phi(l^(a+b-m)) over 0 <= a <= e, 0 <= b <= m+n-e with a + b >= m
    and max(a, b) = m - d.
    """
    if 2 * d > m or 2 * e > m + n or min(m, n, d, e) < 0:
        raise InputError(f"Exponents (m, n, d, e) = {(m, n, d, e)} violate 2d <= m, 2e <= m + n")
    total = 0
    for a in range(e + 1):
        for b in range(m + n - e + 1):
            if a + b >= m and max(a, b) == m - d:
                total += euler_phi(prime ** (a + b - m))
    return total


def c_formula(m: int, n: int, d: int, e: int) -> int:
    """
    Number of subgroups of type C_d x C_(m/d) in C_e x C_(mn/e).

    Args:
        m, n, d, e: Positive integers with d^2 | m and e^2 | mn

    Returns:
        The product over primes of the prime-power counts
    """
    if min(m, n, d, e) < 1:
        raise InputError("c_formula takes positive integers")
    if m % (d * d) or (m * n) % (e * e):
        raise InputError(f"c_formula needs d^2 | m and e^2 | mn, got (m, n, d, e) = {(m, n, d, e)}")
    result = 1
    for prime, (em, en, ed, ee) in _prime_exponents(m, n, d, e).items():
        result *= c_prime_power(em, en, ed, ee, prime)
        if result == 0:
            break
    return result


def fibre_product_index(m: int, n: int, d: int, e: int) -> bool:
    """Whether (d, e) indexes a summand: d | e and (m | de or e | dn)."""
    return e % d == 0 and ((d * e) % m == 0 or (d * n) % e == 0)


def _local_regime(m: int, n: int, d: int, e: int) -> str:
    if d > e or (m > d + e and e > d + n):
        return "zero"
    if m <= d + e:
        # psi(l^0) = l^0: both closed forms give 1
        return "neutral" if (m == 2 * d and e == d) else "psi"
    return "e/d"


def c_regime(m: int, n: int, d: int, e: int) -> str:
    """
    Which closed form describes c_{m,n}(d, e).

    Returns 'zero', 'e/d' or 'psi(m/d^2)' when every prime sits in that regime,
    and 'mixed' when primes disagree (the value is then only the product of
    prime-power counts).
    """
    regimes = {_local_regime(*exponents) for exponents in _prime_exponents(m, n, d, e).values()}
    regimes.discard("neutral")
    if "zero" in regimes:
        return "zero"
    if regimes == {"e/d"}:
        return "e/d"
    if regimes <= {"psi"}:
        return "psi(m/d^2)"
    return "mixed"


def admissible_pairs(m: int, n: int) -> List[Tuple[int, int]]:
    """All (d, e) with d^2 | m and e^2 | mn."""
    ds = [d for d in divisors(m) if m % (d * d) == 0]
    es = [e for e in divisors(m * n) if (m * n) % (e * e) == 0]
    return [(d, e) for d in ds for e in es]


def c_polynomial_identity(m: int, n: int) -> CheckReport:
    """
    Compare sum c_{m,n}(d, e) X^e with sum over b | gcd(m, n), a^2 | mn/b^2 of b X^(ab).

    Returns:
        CheckReport whose failures are the monomials with differing coefficients
    """
    lhs: Dict[int, int] = {}
    for d, e in admissible_pairs(m, n):
        value = c_formula(m, n, d, e)
        if value:
            lhs[e] = lhs.get(e, 0) + value

    rhs: Dict[int, int] = {}
    for b in divisors(gcd(m, n)):
        rest = m * n // (b * b)
        for a in divisors(rest):
            if rest % (a * a) == 0:
                rhs[a * b] = rhs.get(a * b, 0) + b

    report = CheckReport(family="subgroup-polynomial", params={"m": m, "n": n})
    for exponent in sorted(set(lhs) | set(rhs)):
        report.checked += 1
        if lhs.get(exponent, 0) != rhs.get(exponent, 0):
            report.record_failure(exponent=exponent, lhs=lhs.get(exponent, 0), rhs=rhs.get(exponent, 0))
    report.details["lhs"] = {str(k): v for k, v in sorted(lhs.items())}
    report.details["rhs"] = {str(k): v for k, v in sorted(rhs.items())}
    return report


def census_identities(n: int, m: Optional[int] = None, bound: int = DEFAULT_CENSUS_BOUND) -> CheckReport:
    """
    Census checks in C_n x C_n and the index set of c_{m,n}.

    (a) subgroups of order n number sigma(n); (b) cyclic ones number psi(n);
    (c) c_{m,n}(d, e) > 0 exactly on the fibre-product index set, and agrees with
    the census wherever the ambient group is within the bound.

    Args:
        n: Order parameter
        m: First parameter of c_{m,n} for (c) (default n)
        bound: Census bound
    """
    m = n if m is None else m
    ambient = AbelianType.from_cyclic_factors([n, n])
    records = _census(ambient, bound)

    order_n = sum(1 for r in records if r.order == n)
    cyclic_n = sum(1 for r in records if r.order == n and r.type.rank <= 1)

    report = CheckReport(family="subgroup-census", params={"n": n, "m": m, "bound": bound})
    report.details.update({"order_n_subgroups": order_n, "sigma": sigma_k(n),
                           "cyclic_order_n_subgroups": cyclic_n, "psi": dedekind_psi(n)})
    report.checked += 2
    if order_n != sigma_k(n):
        report.record_failure(identity="order-n count", lhs=order_n, rhs=sigma_k(n))
    if cyclic_n != dedekind_psi(n):
        report.record_failure(identity="cyclic count", lhs=cyclic_n, rhs=dedekind_psi(n))

    for d, e in admissible_pairs(m, n):
        value = c_formula(m, n, d, e)
        report.checked += 1
        if (value > 0) != fibre_product_index(m, n, d, e):
            report.record_failure(identity="index set", d=d, e=e, lhs=value,
                                  rhs=fibre_product_index(m, n, d, e))
        if m * n <= bound:
            counted = count_by_type(AbelianType.from_cyclic_factors([e, m * n // e]),
                                    AbelianType.from_cyclic_factors([d, m // d]), bound)
            report.checked += 1
            if counted != value:
                report.record_failure(identity="census", d=d, e=e, lhs=counted, rhs=value)
    return report


def _exponent_expression(m: int, n: int, d: int, e: int) -> str:
    if d > e or (m > d + e and e > d + n):
        return ""
    if m <= d + e:
        top = m - 2 * d
        return "0" if top == 0 else f"{top}+{top - 1}"
    return str(e - d)


def c_exponent_table(m: int, n: int) -> List[List[str]]:
    """
    Prime-power counts c_{l^m, l^n}(l^d, l^e) as exponent expressions.

    'x' stands for l^x, 'x+y' for l^x + l^y, and '' for 0. Rows run over
    e = floor((m+n)/2) down to 0, columns over d = 0 .. floor(m/2).
    """
    if m < 0 or n < 0:
        raise InputError("Exponents must be nonnegative")
    return [[_exponent_expression(m, n, d, e) for d in range(m // 2 + 1)]
            for e in range((m + n) // 2, -1, -1)]


def evaluate_exponent_expression(expression: str, prime: int) -> int:
    """Value of a table entry at the prime l."""
    if not expression:
        return 0
    return sum(prime ** int(part) for part in expression.split("+"))


def exponent_table_frame(m: int, n: int):
    """The exponent table as a DataFrame indexed by e, with one column per d."""
    rows = c_exponent_table(m, n)
    frame = pd.DataFrame(rows, columns=[f"d={d}" for d in range(m // 2 + 1)])
    frame.index = [f"e={e}" for e in range((m + n) // 2, -1, -1)]
    return frame
