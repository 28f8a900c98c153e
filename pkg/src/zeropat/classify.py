"""Census of strict maximal zero patterns under relabeling and transposition.

Enumerates the strict patterns of size mu(n) inside the n x n grid, computes
canonical forms for the group generated by simultaneous row/column relabeling
and transposition, the coarser flip-equivalence encoding, and classifies every
orbit as nonsingular, defective or exceptional from its pairing against the
Vandermonde expansion and its exact stabilizer dimension.

The enumeration is a single deterministic vectorized pass: patterns become
rows of a bit matrix, each group element acts as a column permutation, and
the canonical form of a pattern is the minimum of its orbit's integer
encodings.  Output is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass

import numpy as np

from .patterns import Pattern, mu, ne, transposition
from .polynomials import (
    chi,
    in_coinvariant_ideal,
    norm_squared,
    pair_with_vandermonde,
)
from .stabdim import stabilizer_dim

MAX_ENUM_N = 5

STATUS_NONSINGULAR = "nonsingular"
STATUS_DEFECTIVE = "defective"
STATUS_EXCEPTIONAL = "exceptional"

# Canonical representatives of the seven exceptional classes for n = 4.
EXCEPTIONAL_4 = tuple(
    Pattern(p)
    for p in [
        [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)],
        [(1, 2), (2, 1), (1, 3), (1, 4), (2, 4), (3, 2)],
        [(1, 2), (1, 3), (1, 4), (2, 1), (3, 4), (4, 3)],
        [(1, 2), (2, 1), (1, 3), (3, 1), (2, 4), (4, 3)],
        [(1, 2), (2, 1), (1, 3), (2, 3), (4, 1), (4, 2)],
        [(1, 2), (2, 1), (1, 4), (2, 3), (3, 1), (4, 2)],
        [(1, 2), (2, 1), (1, 4), (3, 1), (3, 4), (4, 3)],
    ]
)


@dataclass(frozen=True)
class ClassRecord:
    """One equivalence class: canonical representative plus its invariants."""

    canonical: Pattern
    orbit_size: int
    pairing: int
    stab_dim: int
    complexity: int
    status: str

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical.to_json(),
            "orbit_size": self.orbit_size,
            "pairing": self.pairing,
            "stab_dim": self.stab_dim,
            "complexity": self.complexity,
            "status": self.status,
        }


@dataclass(frozen=True)
class ClassCensus:
    """Aggregate counts for one matrix size."""

    n: int
    total_patterns: int
    num_classes: int
    num_nonsingular: int
    num_defective: int
    num_exceptional: int
    num_weak_classes: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total_patterns": self.total_patterns,
            "num_classes": self.num_classes,
            "num_nonsingular": self.num_nonsingular,
            "num_defective": self.num_defective,
            "num_exceptional": self.num_exceptional,
            "num_weak_classes": self.num_weak_classes,
        }


def offdiag_cells(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def enumerate_strict(n: int):
    """Yield every strict pattern of size mu(n) in the n x n grid exactly once."""
    if not 2 <= n <= MAX_ENUM_N:
        raise ValueError(
            f"full enumeration is budgeted for 2 <= n <= {MAX_ENUM_N}, got {n}"
        )
    cells = offdiag_cells(n)
    for combo in itertools.combinations(range(len(cells)), mu(n)):
        yield Pattern(cells[k] for k in combo)


def strict_count(n: int) -> int:
    """Binomial count of strict patterns of size mu(n)."""
    import math

    return math.comb(2 * mu(n), mu(n))


def _enumerate_bits(n: int) -> np.ndarray:
    """Bit matrix of all strict size-mu(n) patterns, one row per pattern,
    columns indexed by offdiag_cells(n)."""
    cells = offdiag_cells(n)
    combos = np.array(
        list(itertools.combinations(range(len(cells)), mu(n))), dtype=np.int64
    )
    bits = np.zeros((combos.shape[0], len(cells)), dtype=np.uint8)
    rows = np.repeat(np.arange(combos.shape[0]), mu(n))
    bits[rows, combos.ravel()] = 1
    return bits


def _group_cell_maps(n: int) -> list[np.ndarray]:
    """For each group element (relabeling, optionally composed with
    transposition) the array q with image_bits[:, c] = bits[:, q[c]]."""
    cells = offdiag_cells(n)
    index = {c: k for k, c in enumerate(cells)}
    maps = []
    for sigma in itertools.permutations(range(1, n + 1)):
        for flip in (False, True):
            q = np.empty(len(cells), dtype=np.int64)
            for k, (i, j) in enumerate(cells):
                a, b = sigma[i - 1], sigma[j - 1]
                if flip:
                    a, b = b, a
                q[index[(a, b)]] = k
            maps.append(q)
    return maps


def _pair_slots(n: int):
    """Unordered pairs {i < j} and, per relabeling, the slot permutation."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    index = {p: k for k, p in enumerate(pairs)}
    maps = []
    for sigma in itertools.permutations(range(1, n + 1)):
        q = np.empty(len(pairs), dtype=np.int64)
        for k, (i, j) in enumerate(pairs):
            a, b = sigma[i - 1], sigma[j - 1]
            if a > b:
                a, b = b, a
            q[index[(a, b)]] = k
        maps.append(q)
    return pairs, maps


def _canonical_values(bits: np.ndarray, n: int) -> np.ndarray:
    weights = (np.uint64(1) << np.arange(bits.shape[1], dtype=np.uint64))
    bits64 = bits.astype(np.uint64)
    best = None
    for q in _group_cell_maps(n):
        v = bits64[:, q] @ weights
        best = v if best is None else np.minimum(best, v)
    return best


def _weak_values(bits: np.ndarray, n: int) -> np.ndarray:
    cells = offdiag_cells(n)
    index = {c: k for k, c in enumerate(cells)}
    pairs, maps = _pair_slots(n)
    mult = np.empty((bits.shape[0], len(pairs)), dtype=np.uint64)
    for k, (i, j) in enumerate(pairs):
        mult[:, k] = bits[:, index[(i, j)]].astype(np.uint64) + bits[
            :, index[(j, i)]
        ].astype(np.uint64)
    weights = np.array([3**k for k in range(len(pairs))], dtype=np.uint64)
    best = None
    for q in maps:
        v = mult[:, q] @ weights
        best = v if best is None else np.minimum(best, v)
    return best


def _pattern_from_cell_value(value: int, n: int) -> Pattern:
    cells = offdiag_cells(n)
    pos = [cells[k] for k in range(len(cells)) if (int(value) >> k) & 1]
    return Pattern(pos)


def canonical_form(I: Pattern, n: int) -> Pattern:
    """Minimum occupancy mask over the orbit of I under relabeling and
    transposition; constant on orbits and distinct across them."""
    best = None
    best_pat = None
    for sigma in itertools.permutations(range(1, n + 1)):
        J = I.apply_perm(sigma)
        for K in (J, J.transpose()):
            m = K.mask(n)
            if best is None or m < best:
                best = m
                best_pat = K
    return best_pat


def weak_canonical_form(I: Pattern, n: int) -> tuple[int, ...]:
    """Canonicalized multiplicity vector of unordered pairs: the class
    invariant of flip equivalence combined with relabeling."""
    I.check_within(n)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    best = None
    for sigma in itertools.permutations(range(1, n + 1)):
        J = I.apply_perm(sigma)
        v = tuple(
            (1 if (i, j) in J else 0) + (1 if (j, i) in J else 0)
            for (i, j) in pairs
        )
        if best is None or v < best:
            best = v
    return best


def classify_all(n: int, progress: bool = False) -> tuple[ClassCensus, list[ClassRecord]]:
    """Full census for one size: every orbit with pairing, stabilizer
    dimension and status, plus aggregate counts."""
    if not 2 <= n <= MAX_ENUM_N:
        raise ValueError(
            f"full classification is budgeted for 2 <= n <= {MAX_ENUM_N}, got {n}"
        )
    log = (lambda msg: print(msg, file=sys.stderr)) if progress else (lambda msg: None)
    log(f"enumerating {strict_count(n)} patterns for n={n}")
    bits = _enumerate_bits(n)
    log("canonicalizing orbits")
    canon = _canonical_values(bits, n)
    log("computing flip-equivalence keys")
    weak = _weak_values(bits, n)

    uniq, counts = np.unique(canon, return_counts=True)

    # equivalence refines flip equivalence: the weak key is constant on orbits
    order = np.argsort(canon, kind="stable")
    c_sorted = canon[order]
    w_sorted = weak[order]
    same_block = c_sorted[1:] == c_sorted[:-1]
    if not np.all(w_sorted[1:][same_block] == w_sorted[:-1][same_block]):
        raise AssertionError("flip-equivalence key not constant on an orbit")

    records = []
    tally = {STATUS_NONSINGULAR: 0, STATUS_DEFECTIVE: 0, STATUS_EXCEPTIONAL: 0}
    for k, (val, cnt) in enumerate(zip(uniq, counts)):
        rep = _pattern_from_cell_value(int(val), n)
        pairing = pair_with_vandermonde(rep, n)
        sd = stabilizer_dim(rep, n)
        if pairing != 0:
            status = STATUS_NONSINGULAR
            if sd > n:
                raise AssertionError(
                    f"nonsingular class with stabilizer dimension {sd} > {n}"
                )
        elif sd > n:
            status = STATUS_DEFECTIVE
        else:
            status = STATUS_EXCEPTIONAL
        tally[status] += 1
        records.append(
            ClassRecord(
                canonical=rep,
                orbit_size=int(cnt),
                pairing=pairing,
                stab_dim=sd,
                complexity=rep.complexity(),
                status=status,
            )
        )
        if progress and (k + 1) % 100 == 0:
            log(f"  classified {k + 1}/{len(uniq)} orbits")

    total = int(bits.shape[0])
    assert total == strict_count(n)
    assert sum(r.orbit_size for r in records) == total
    census = ClassCensus(
        n=n,
        total_patterns=total,
        num_classes=len(records),
        num_nonsingular=tally[STATUS_NONSINGULAR],
        num_defective=tally[STATUS_DEFECTIVE],
        num_exceptional=tally[STATUS_EXCEPTIONAL],
        num_weak_classes=int(np.unique(weak).size),
    )
    return census, records


# -- flip-equivalence cross-check ----------------------------------------------


def weak_classes_by_flip_bfs(n: int) -> dict[int, int]:
    """Partition of the strict size-mu(n) patterns by closure under flips and
    adjacent relabelings, computed by exhaustive union-find.  Independent
    cross-check of the multiplicity-vector encoding; budgeted for n <= 4."""
    if not 2 <= n <= 4:
        raise ValueError("exhaustive flip closure is budgeted for n <= 4")
    masks = []
    mask_index = {}
    for I in enumerate_strict(n):
        m = I.mask(n)
        mask_index[m] = len(masks)
        masks.append((m, I))
    parent = list(range(len(masks)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    gens = [transposition(n, i, i + 1) for i in range(1, n)]
    for idx, (m, I) in enumerate(masks):
        for g in gens:
            union(idx, mask_index[I.apply_perm(g).mask(n)])
        for (i, j) in I:
            if (j, i) not in I:
                union(idx, mask_index[I.flip((i, j)).mask(n)])
    out = {}
    for idx, (m, _) in enumerate(masks):
        out[m] = find(idx)
    return out


# -- reports over specific slices ------------------------------------------------


def audit_exceptional4() -> dict:
    """Audit of the seven exceptional classes for n = 4: each is singular,
    not defective, the classes are pairwise distinct, and together they are
    exactly the exceptional classes of the full census."""
    n = 4
    per_pattern = []
    canon_forms = set()
    for I in EXCEPTIONAL_4:
        pairing = pair_with_vandermonde(I, n)
        sd = stabilizer_dim(I, n)
        canon = canonical_form(I, n)
        canon_forms.add(canon.mask(n))
        per_pattern.append(
            {
                "pattern": I.to_json(),
                "pairing": pairing,
                "stab_dim": sd,
                "singular": pairing == 0,
                "non_defective": sd <= n,
            }
        )
    census, records = classify_all(n)
    census_exceptional = {
        r.canonical.mask(n) for r in records if r.status == STATUS_EXCEPTIONAL
    }
    report = {
        "patterns": per_pattern,
        "all_singular": all(p["singular"] for p in per_pattern),
        "all_non_defective": all(p["non_defective"] for p in per_pattern),
        "num_distinct_classes": len(canon_forms),
        "exhausts_exceptional_classes": canon_forms == census_exceptional,
        "passed": False,
    }
    report["passed"] = (
        report["all_singular"]
        and report["all_non_defective"]
        and report["num_distinct_classes"] == 7
        and report["exhausts_exceptional_classes"]
    )
    return report


def complexity_one_case_a(n: int) -> Pattern:
    """Representative with the doubled pair and the missing pair sharing an
    index: upper triangle minus (1,2) plus (3,1)."""
    return Pattern([p for p in ne(n) if p != (1, 2)] + [(3, 1)])


def complexity_one_case_b(n: int) -> Pattern:
    """Representative with the doubled pair and the missing pair disjoint:
    upper triangle minus (1,2) plus (4,3)."""
    return Pattern([p for p in ne(n) if p != (1, 2)] + [(4, 3)])


def check_complexity_one(n: int) -> dict:
    """Complexity-1 patterns fall into two flip-equivalence classes; the class
    of case (a) has pairing of magnitude n!/2, the class of case (b) is
    singular and defective."""
    import math

    if n < 4:
        raise ValueError("the two-class split needs n >= 4")
    a = complexity_one_case_a(n)
    b = complexity_one_case_b(n)
    pa = pair_with_vandermonde(a, n)
    pb = pair_with_vandermonde(b, n)
    report = {
        "n": n,
        "case_a_pairing": pa,
        "case_b_pairing": pb,
        "case_a_magnitude_ok": abs(pa) == math.factorial(n) // 2,
        "case_b_singular": pb == 0,
        "case_b_defective": stabilizer_dim(b, n) > n,
    }
    keys = {weak_canonical_form(a, n), weak_canonical_form(b, n)}
    report["distinct_weak_classes"] = len(keys)
    if n <= MAX_ENUM_N:
        bits = _enumerate_bits(n)
        cells = offdiag_cells(n)
        index = {c: k for k, c in enumerate(cells)}
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        nu = np.zeros(bits.shape[0], dtype=np.int64)
        for (i, j) in pairs:
            nu += (bits[:, index[(i, j)]] & bits[:, index[(j, i)]]).astype(np.int64)
        sel = nu == 1
        weak = _weak_values(bits[sel], n)
        report["num_complexity_one_patterns"] = int(sel.sum())
        report["num_weak_classes"] = int(np.unique(weak).size)
    else:
        report["num_weak_classes"] = None
    report["passed"] = (
        report["case_a_magnitude_ok"]
        and report["case_b_singular"]
        and report["case_b_defective"]
        and report["distinct_weak_classes"] == 2
        and (report["num_weak_classes"] in (None, 2))
    )
    return report


def verify_hessenberg(max_n: int = 7, min_n: int = 3) -> dict:
    """Pairings of the Hessenberg-band family against the closed form
    (-1)^(n-1) C(n,k) C(n-2,k-1) for all 1 <= k <= n-1."""
    import math

    rows = []
    ok = True
    for n in range(min_n, max_n + 1):
        for k in range(1, n):
            got = pair_with_vandermonde(j_hessenberg_cached(k, n), n)
            expect = (-1) ** (n - 1) * math.comb(n, k) * math.comb(n - 2, k - 1)
            rows.append({"n": n, "k": k, "pairing": got, "expected": expect})
            ok = ok and got == expect
    return {"rows": rows, "passed": ok}


def j_hessenberg_cached(k: int, n: int) -> Pattern:
    from .patterns import j_hessenberg

    return j_hessenberg(k, n)


def scan_extremal(n: int, sample: int | None = None, seed: int = 0) -> dict:
    """Extremes of the pairing and of the squared norm over strict patterns of
    size mu(n).

    Exhaustive for n <= 4; for larger n a seeded random sample is scanned.
    Reports the maximum |pairing|, the minimum norm, the patterns attaining
    them, and whether the extremes agree with the expected bound n! attained
    exactly at the patterns whose difference product is the Vandermonde
    expansion up to sign (the full simple patterns).
    """
    import math
    import random

    nfact = math.factorial(n)
    max_pair = None
    min_norm = None
    argmax: list[Pattern] = []
    argmin: list[Pattern] = []
    counterexample = None
    scanned = 0

    def consider(I: Pattern):
        nonlocal max_pair, min_norm, argmax, argmin, counterexample, scanned
        scanned += 1
        p = abs(pair_with_vandermonde(I, n))
        q = norm_squared(I, n)
        if p > nfact or q < nfact:
            counterexample = I
        if max_pair is None or p > max_pair:
            max_pair, argmax = p, [I]
        elif p == max_pair:
            argmax.append(I)
        if min_norm is None or q < min_norm:
            min_norm, argmin = q, [I]
        elif q == min_norm:
            argmin.append(I)

    if sample is None:
        for I in enumerate_strict(n):
            consider(I)
    else:
        rng = random.Random(seed)
        cells = offdiag_cells(n)
        seen = set()
        while len(seen) < sample:
            combo = frozenset(rng.sample(range(len(cells)), mu(n)))
            if combo in seen:
                continue
            seen.add(combo)
            consider(Pattern(cells[k] for k in combo))

    extremes_simple = all(I.is_simple() for I in argmax) and all(
        I.is_simple() for I in argmin
    )
    report = {
        "n": n,
        "scanned": scanned,
        "max_abs_pairing": max_pair,
        "min_norm": min_norm,
        "num_argmax": len(argmax),
        "num_argmin": len(argmin),
        "counterexample": counterexample.to_json() if counterexample else None,
        "extremes_attained_only_at_signed_vandermonde": extremes_simple,
    }
    if sample is None:
        # exhaustively, the attaining sets must be exactly the full simple patterns
        expected = 2 ** mu(n)
        report["passed"] = (
            counterexample is None
            and max_pair == nfact
            and min_norm == nfact
            and len(argmax) == expected
            and len(argmin) == expected
            and extremes_simple
        )
    else:
        report["passed"] = counterexample is None and extremes_simple
    return report


def search_nonsingular_extension(I: Pattern, n: int) -> Pattern:
    """Extend a nonsingular pattern to a nonsingular strict pattern of size
    mu(n) by depth-first search that only walks through nonsingular partial
    patterns.  Exhaustion would contradict the extension theorem and raises.
    """
    I.check_within(n)
    if not I.is_strict():
        raise ValueError("only strict patterns are nonsingular")
    if in_coinvariant_ideal(chi(I, n), n):
        raise ValueError("pattern is singular; nothing to extend")
    start = sorted(I)
    remaining = [c for c in offdiag_cells(n) if c not in I]

    def dfs2(extra: list, lo: int) -> Pattern | None:
        cand = start + extra
        if len(cand) == mu(n):
            return Pattern(cand)
        for k in range(lo, len(remaining)):
            c = remaining[k]
            trial = cand + [c]
            if in_coinvariant_ideal(chi(Pattern(trial), n), n):
                continue
            found = dfs2(extra + [c], k + 1)
            if found is not None:
                return found
        return None

    found = dfs2([], 0)
    if found is None:
        raise RuntimeError(
            "search exhausted without a nonsingular completion; this "
            "contradicts the extension theorem and should be reported"
        )
    return found


def j_family_class_report(n: int) -> dict:
    """Number of equivalence classes met by the staircase family J(sigma, i)."""
    from .patterns import j_family

    if not 2 <= n <= 5:
        raise ValueError("budgeted for 2 <= n <= 5")
    seen_patterns = set()
    for sigma in itertools.permutations(range(1, n + 1)):
        stack = [((), ())]
        while stack:
            ivec, used = stack.pop()
            k = len(ivec) + 1
            if k == n:
                seen_patterns.add(j_family(sigma, ivec))
                continue
            for v in sigma[:k]:
                for s in (v, -v):
                    if s not in used:
                        stack.append((ivec + (s,), used + (s,)))
    classes = {canonical_form(I, n).mask(n) for I in seen_patterns}
    return {
        "n": n,
        "num_patterns": len(seen_patterns),
        "num_classes": len(classes),
    }
