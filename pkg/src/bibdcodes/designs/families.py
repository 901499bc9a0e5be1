"""Difference-family constructions over prime fields.

Netto's triple systems (k=3), Buratti's power-coset families (k=4,5),
and a backtracking search for radical families (odd k, base blocks are
cosets of the k-th roots of unity).
"""

from __future__ import annotations

from ..algebra import PrimeField, discrete_log, is_prime, kth_roots_of_unity
from ..errors import BadModulus, NotFound, OutOfRange, SearchExhausted
from .types import Block, DifferenceFamily, block_differences, validate_difference_family


def netto_cdf(p: int) -> DifferenceFamily:
    """Netto triple family: blocks omega^i * U3 for i = 1..t, p = 6t+1.

    U3 is the cube-root subgroup, so every block is a coset of the third
    roots of unity scaled by successive powers of the primitive root.
    """
    if not is_prime(p) or p % 6 != 1:
        raise BadModulus(f"Netto construction needs a prime p = 1 (mod 6), got {p}")
    field = PrimeField(p)
    t = (p - 1) // 6
    u3 = sorted(kth_roots_of_unity(field, 3))
    blocks = []
    m = 1
    for _ in range(t):
        m = m * field.omega % p
        blocks.append(tuple(sorted(m * u % p for u in u3)))
    fam = DifferenceFamily(v=p, k=3, base_blocks=tuple(blocks))
    validate_difference_family(fam)
    return fam


def buratti_cdf(p: int, k: int) -> DifferenceFamily:
    """Buratti family for k=4 (p = 1 mod 12) or k=5 (p = 1 mod 20).

    The base block B must contain 0 and 1 and have its k(k-1)/2 positive
    differences hit each coset of the index-k(k-1)/2 power subgroup
    exactly once; the family is then B scaled by omega^(k(k-1)i),
    i = 1..t. The search tries the power chain {0, 1, b, b^2(, b^3)}
    with the smallest b first. For k=5 small primes admit no such chain
    at all and the search widens to the lexicographically smallest
    {0, 1, x, y, z} with the same coset property, which the same
    product argument covers. Raises SearchExhausted when nothing works;
    nothing is ever fabricated.
    """
    if k not in (4, 5):
        raise BadModulus(f"Buratti construction covers k = 4 or 5, got k={k}")
    modulus = 12 if k == 4 else 20
    if not is_prime(p) or p % modulus != 1:
        raise BadModulus(f"k={k} needs a prime p = 1 (mod {modulus}), got {p}")
    field = PrimeField(p)
    t = (p - 1) // modulus
    index = k * (k - 1) // 2  # 6 cosets for k=4, 10 for k=5
    exponent = (p - 1) // index

    base = _chain_base(p, k, index, exponent)
    if base is None and k == 5:
        base = _lex_base5(p, exponent)
    if base is None:
        raise SearchExhausted(f"no representative-system base block found for p={p}, k={k}")

    mult = pow(field.omega, index, p)  # omega^6 for k=4, omega^10 for k=5
    blocks = []
    m = 1
    for _ in range(t):
        m = m * mult % p
        blocks.append(tuple(sorted(m * x % p for x in base)))
    fam = DifferenceFamily(v=p, k=k, base_blocks=tuple(blocks))
    validate_difference_family(fam)
    return fam


def _chain_base(p: int, k: int, index: int, exponent: int):
    """Smallest b >= 2 with {0, 1, b, .., b^(k-2)} a representative system."""
    for b in range(2, p):
        blk = [0, 1]
        x = b
        for _ in range(k - 2):
            blk.append(x)
            x = x * b % p
        if len(set(blk)) != k:
            continue
        plus = [(blk[i] - blk[j]) % p for i in range(k) for j in range(i)]
        labels = {pow(d, exponent, p) for d in plus}
        if len(labels) == index:
            return tuple(blk)
    return None


def _lex_base5(p: int, exponent: int):
    """Lexicographically smallest {0, 1, x, y, z} representative system."""
    lab = [0] * p
    for d in range(1, p):
        lab[d] = pow(d, exponent, p)
    first = {lab[1]}
    for x in range(2, p):
        s1 = {lab[x], lab[x - 1]}
        if len(s1) != 2 or s1 & first:
            continue
        s1 |= first
        for y in range(x + 1, p):
            add = {lab[y], lab[y - 1], lab[y - x]}
            if len(add) != 3 or add & s1:
                continue
            s2 = s1 | add
            for z in range(y + 1, p):
                add2 = {lab[z], lab[z - 1], lab[z - x], lab[z - y]}
                if len(add2) == 4 and not (add2 & s2):
                    return (0, 1, x, y, z)
    return None


def _coset_representatives(field: PrimeField, subgroup: list[int]) -> list[int]:
    """Smallest element of each coset of the subgroup, ascending."""
    p = field.p
    seen = [False] * p
    reps = []
    for m in range(1, p):
        if seen[m]:
            continue
        reps.append(m)
        for u in subgroup:
            seen[m * u % p] = True
    return reps


def radical_df_search(p: int, k: int) -> DifferenceFamily:
    """First radical family in ascending multiplier order, or NotFound.

    Candidate blocks are the cosets m * U_k (one multiplier per coset,
    smallest first); backtracking selects n = (p-1)/(k(k-1)) of them
    whose differences tile Z_p \\ {0}. The returned family is the
    lexicographically smallest multiplier tuple that works.
    """
    if k < 3 or k % 2 == 0:
        raise BadModulus(f"radical families need odd k >= 3, got {k}")
    kk = k * (k - 1)
    if not is_prime(p) or p % kk != 1:
        raise BadModulus(f"need a prime p = 1 (mod {kk}), got {p}")
    field = PrimeField(p)
    uk = sorted(kth_roots_of_unity(field, k))
    n = (p - 1) // kk

    candidates = []  # (multiplier, block, difference bitmask)
    for m in _coset_representatives(field, uk):
        blk = tuple(sorted(m * u % p for u in uk))
        diffs = block_differences(blk, p)
        if len(set(diffs)) != len(diffs):
            continue  # repeated internal difference, unusable at lambda = 1
        mask = 0
        for d in diffs:
            mask |= 1 << d
        candidates.append((m, blk, mask))

    full = (1 << p) - 2  # bits 1..p-1
    chosen: list[Block] = []

    def extend(start: int, covered: int) -> bool:
        if covered == full:
            return True
        if len(chosen) == n:
            return False
        for idx in range(start, len(candidates)):
            _, blk, mask = candidates[idx]
            if covered & mask:
                continue
            chosen.append(blk)
            if extend(idx + 1, covered | mask):
                return True
            chosen.pop()
        return False

    if not extend(0, 0):
        raise NotFound(f"no radical difference family for p={p}, k={k}")
    fam = DifferenceFamily(v=p, k=k, base_blocks=tuple(chosen), kind="rdf")
    validate_difference_family(fam)
    return fam


def find_base_block_with_difference(f: DifferenceFamily, d: int) -> int:
    """Smallest 1-based index s with d in the differences of B_s.

    d must be a nonzero residue; raises NotFound when only the short
    orbit (or nothing) produces the difference.
    """
    d %= f.v
    if d == 0:
        raise OutOfRange("difference must be nonzero mod v")
    for i, blk in enumerate(f.base_blocks, start=1):
        if d in block_differences(blk, f.v):
            return i
    raise NotFound(f"difference {d} not generated by any full-orbit base block")


# --- Netto block index <-> discrete log -------------------------------------
#
# For p = 6t+1 the differences of the Netto family arrange into a 6 x t
# grid of consecutive powers of omega starting at omega^c with
# omega^c = omega * (omega^(2t) - 1). Column s (0-based) holds the
# differences of base block B_(s+1), which turns locating the block
# containing a target difference into a discrete-log computation.


def _netto_t(p: int) -> int:
    if not is_prime(p) or p % 6 != 1:
        raise BadModulus(f"need a prime p = 1 (mod 6), got {p}")
    return (p - 1) // 6


def netto_dlog_to_index(p: int, c: int) -> tuple[int, int]:
    """Map an exponent c to grid coordinates (s, r): s = t - c (mod t).

    s in 0..t-1 is the column (base block B_(s+1)); r in 0..5 is the row
    recovered from c = 6t - rt - s (mod 6t).
    """
    t = _netto_t(p)
    if not 0 <= c <= p - 2:
        raise OutOfRange(f"exponent {c} outside 0..{p - 2}")
    s = (t - c) % t
    r = ((6 * t - s - c) // t) % 6
    return s, r


def netto_index_to_dlog(p: int, r: int, s: int) -> int:
    """Inverse grid map: c = 6t - rt - s (mod 6t) for r in 0..5, s in 0..t-1."""
    t = _netto_t(p)
    if not 0 <= r <= 5:
        raise OutOfRange(f"row index {r} outside 0..5")
    if not 0 <= s <= t - 1:
        raise OutOfRange(f"column index {s} outside 0..{t - 1}")
    return (6 * t - r * t - s) % (p - 1)


def netto_block_index_of_difference(p: int, d: int) -> int:
    """1-based Netto block index containing difference d, via discrete log.

    Independent of the linear scan in find_base_block_with_difference;
    the two must agree on every Netto family.
    """
    field = PrimeField(p)
    t = _netto_t(p)
    anchor = field.omega * (pow(field.omega, 2 * t, p) - 1) % p  # omega^c
    c_anchor = discrete_log(field, anchor)
    c_d = discrete_log(field, d % p)
    s = (c_d - c_anchor) % t
    return s + 1
