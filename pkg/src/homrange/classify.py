"""Representation-type probes for minimal complexes of projectives.

Over a finite coefficient field the sweep is exhaustive within explicit
bounds: every radical differential assignment is enumerated, filtered for
exact d after d = 0, and deduplicated up to chain isomorphism.  Over an
infinite field no exhaustive sweep is attempted; a parametrized family of
complexes is probed sample by sample instead.  A two-sided summary compares
an algebra with its scalar extension through the same probes.
"""

import itertools
from math import prod

from .algebras import is_local_raw
from .complexes import (
    ProjComplex,
    canonical_key,
    cohomology,
    decompose_complex,
    hom_space,
    is_homotopy_minimal,
    is_isomorphic,
    radical_hom_basis,
    range_stats,
    _combine_entries,
    _diff_solution_space,
    _EndData,
    _entry_bases,
    _indecomposable_iso,
    _slots,
)
from .complexes import HomMat
from .errors import InternalCheckError, SearchCapError, UserInputError
from .functors import range_bound_report, tensor_complex
from .linalg import vec_add, vec_is_zero, vec_scale

DEFAULT_CAP = 1 << 24

# Slot permutations come for free as isomorphisms, so each processed
# candidate marks its whole permutation orbit as seen.  Shapes with more
# permutations than this skip the closure (correct, just slower).
_PERM_CAP = 4096


class Bounds:
    """Finite search window for an enumeration sweep.

    max_mult caps the multiplicity of every projective in every degree,
    max_dim (optional) caps the total dimension of a candidate complex, and
    cap refuses sweeps whose candidate-differential estimate is too large.
    """

    __slots__ = ("max_mult", "max_dim", "cap")

    def __init__(self, max_mult=1, max_dim=None, cap=DEFAULT_CAP):
        if max_mult < 1:
            raise UserInputError("max_mult must be at least 1")
        if max_dim is not None and max_dim < 1:
            raise UserInputError("max_dim must be positive when given")
        if cap < 1:
            raise UserInputError("cap must be positive")
        self.max_mult = max_mult
        self.max_dim = max_dim
        self.cap = cap

    def describe(self):
        dim = "none" if self.max_dim is None else str(self.max_dim)
        return f"mult<={self.max_mult} dim<={dim} cap={self.cap}"

    def __repr__(self):
        return f"Bounds({self.describe()})"


class Representative:
    """One indecomposable isomorphism class found by a sweep."""

    __slots__ = ("complex", "key", "mult", "dims", "coh", "hr", "at_boundary")

    def __init__(self, complex, key, mult, dims, coh, hr, at_boundary):
        self.complex = complex
        self.key = key
        self.mult = mult
        self.dims = dims
        self.coh = coh
        self.hr = hr
        self.at_boundary = at_boundary

    def line(self, index):
        mult = ";".join(f"{n}:{','.join(str(c) for c in self.mult[n])}"
                        for n in sorted(self.mult))
        dims = ",".join(str(d) for d in self.dims)
        coh = ",".join(str(d) for d in self.coh)
        flag = "yes" if self.at_boundary else "no"
        return (f"rep index={index} mult={mult} dims={dims} coh={coh} "
                f"hr={self.hr} boundary={flag}")


class ClassificationReport:
    """Outcome of an exhaustive sweep for indecomposable minimal complexes."""

    __slots__ = ("algebra", "label", "m", "bounds", "representatives",
                 "by_dims", "by_cohomology", "histogram", "range_values",
                 "candidates")

    def __init__(self, algebra, m, bounds, representatives, candidates):
        self.algebra = algebra
        self.label = repr(algebra)
        self.m = m
        self.bounds = bounds
        self.representatives = list(representatives)
        self.candidates = candidates
        self.by_dims = {}
        self.by_cohomology = {}
        self.histogram = {}
        for r in self.representatives:
            self.by_dims[r.dims] = self.by_dims.get(r.dims, 0) + 1
            self.by_cohomology[r.coh] = self.by_cohomology.get(r.coh, 0) + 1
            self.histogram[r.hr] = self.histogram.get(r.hr, 0) + 1
        self.range_values = sorted(self.histogram)
        if sum(self.histogram.values()) != len(self.representatives):
            raise InternalCheckError(
                "histogram mass differs from the representative count")

    def summary(self):
        return (f"{len(self.representatives)} indecomposables in degrees "
                f"0..{self.m} ({self.candidates} candidates, "
                f"{self.bounds.describe()})")

    def records(self):
        out = [f"report algebra={self.label} m={self.m} "
               f"bounds={self.bounds.describe()} "
               f"representatives={len(self.representatives)} "
               f"candidates={self.candidates}"]
        for dims in sorted(self.by_dims):
            out.append(f"dims {','.join(str(d) for d in dims)} "
                       f"count={self.by_dims[dims]}")
        for coh in sorted(self.by_cohomology):
            out.append(f"coh {','.join(str(d) for d in coh)} "
                       f"count={self.by_cohomology[coh]}")
        for hr in self.range_values:
            out.append(f"hr {hr} count={self.histogram[hr]}")
        for i, r in enumerate(self.representatives):
            out.append(r.line(i))
        return out

    def table(self):
        lines = [
            f"algebra: {self.label}",
            f"window: degrees 0..{self.m}",
            f"bounds: {self.bounds.describe()}",
            f"representatives: {len(self.representatives)} "
            f"(from {self.candidates} candidates)",
            "by component dimensions:",
        ]
        for dims in sorted(self.by_dims):
            lines.append(f"  {dims}: {self.by_dims[dims]}")
        lines.append("by cohomology dimensions:")
        for coh in sorted(self.by_cohomology):
            lines.append(f"  {coh}: {self.by_cohomology[coh]}")
        lines.append("by cohomological range:")
        for hr in self.range_values:
            lines.append(f"  hr={hr}: {self.histogram[hr]}")
        return "\n".join(lines)


def _finite_field(A):
    F = A.field
    if getattr(F, "size", None) is None:
        raise UserInputError(
            "exhaustive enumeration needs a finite coefficient field; "
            "probe a parametrized family instead")
    return F


def _shapes(A, m, bounds):
    """Multiplicity assignments for degrees 0..m, in a fixed lex order."""
    t = A.num_projectives
    per_degree = list(itertools.product(range(bounds.max_mult + 1), repeat=t))
    shapes = []
    for combo in itertools.product(per_degree, repeat=m + 1):
        mult = {n: combo[n] for n in range(m + 1) if any(combo[n])}
        if not mult:
            continue
        if bounds.max_dim is not None:
            total = sum(c * A.proj_dim(i)
                        for v in mult.values() for i, c in enumerate(v))
            if total > bounds.max_dim:
                continue
        shapes.append(mult)
    return shapes


def _has_dead_slot(A, mult):
    """True when some occupied slot has no radical homs in or out.

    Such a slot splits off as a stalk, so every candidate with this shape
    is decomposable unless the shape is a single stalk.
    """
    total = sum(sum(v) for v in mult.values())
    if total == 1:
        return False
    for n, vec in mult.items():
        prev = mult.get(n - 1)
        nxt = mult.get(n + 1)
        for i, mi in enumerate(vec):
            if not mi:
                continue
            incoming = prev is not None and any(
                pj and radical_hom_basis(A, j, i)
                for j, pj in enumerate(prev))
            outgoing = nxt is not None and any(
                nj and radical_hom_basis(A, i, j)
                for j, nj in enumerate(nxt))
            if not incoming and not outgoing:
                return True
    return False


def _coefficient_count(A, mult, m):
    """Radical entry coordinates across all transitions of the shape."""
    t = A.num_projectives
    count = 0
    for n in range(m + 1):
        src = mult.get(n)
        tgt = mult.get(n + 1)
        if not src or not tgt:
            continue
        for i, si in enumerate(src):
            for j, tj in enumerate(tgt):
                if si and tj:
                    count += si * tj * len(radical_hom_basis(A, i, j))
    return count


def _degree_perms(mult_vec):
    """Permutations of equal-projective slots at one degree, new -> old."""
    groups = []
    off = 0
    for c in mult_vec:
        groups.append(tuple(range(off, off + c)))
        off += c
    per_group = [list(itertools.permutations(g)) for g in groups]
    out = []
    for combo in itertools.product(*per_group):
        perm = []
        for g in combo:
            perm.extend(g)
        out.append(tuple(perm))
    return out


def _assignments(A, mult, lo, hi, slotmap):
    """All exact radical differentials for the shape, degree by degree."""
    F = A.field
    elements = list(F.elements())

    def rec(n, prev, acc):
        if n > hi:
            yield acc
            return
        src = slotmap[n]
        tgt = slotmap[n + 1]
        if not src or not tgt:
            yield from rec(n + 1, None, acc)
            return
        entry_basis = _entry_bases(A, tgt, src, True)
        unconstrained = prev is None or prev.is_zero()
        if unconstrained:
            space = None
            width = len(entry_basis)
        else:
            space = _diff_solution_space(A, tgt, src, prev, entry_basis)
            width = len(space)
        if width == 0:
            M = HomMat(A, tgt, src)
            yield from rec(n + 1, M, acc)
            return
        for pick in itertools.product(elements, repeat=width):
            if space is None:
                coeffs = list(pick)
            else:
                coeffs = [F.zero] * len(entry_basis)
                for c, v in zip(pick, space):
                    if c != F.zero:
                        coeffs = vec_add(F, coeffs, vec_scale(F, c, v))
            M = _combine_entries(A, tgt, src, coeffs, entry_basis)
            step = dict(acc)
            if not M.is_zero():
                step[n] = M
            yield from rec(n + 1, M, step)

    yield from rec(lo, None, {})


def _is_dead_candidate(A, diffs, lo, hi, slotmap, total):
    """True when some slot has zero differential in and out entrywise."""
    if total == 1:
        return False
    F = A.field
    for n in range(lo, hi + 1):
        din = diffs.get(n - 1)
        dout = diffs.get(n)
        for s in range(len(slotmap[n])):
            alive = (din is not None and
                     any(not vec_is_zero(F, v) for v in din.entries[s]))
            if not alive and dout is not None:
                alive = any(not vec_is_zero(F, row[s])
                            for row in dout.entries)
            if not alive:
                return True
    return False


def _key_rows(A, mult, diffs, lo, hi, slotmap, memo):
    """Per-degree key pieces mirroring the canonical complex key."""
    zero = [A.field.zero] * A.dim
    rows = []
    for n in range(lo, hi + 1):
        src = slotmap[n]
        tgt = slotmap[n + 1]
        D = diffs.get(n)
        coords = []
        for t, it in enumerate(tgt):
            for s, js in enumerate(src):
                entry = D.entries[t][s] if D is not None else zero
                ck = (js, it, tuple(entry))
                c = memo.get(ck)
                if c is None:
                    c = tuple(A.hom_coords(js, it, entry))
                    memo[ck] = c
                coords.append(c)
        rows.append((n, mult.get(n, (0,) * A.num_projectives),
                     tuple(coords), len(src), len(tgt)))
    return rows


def _pack_rows(rows, small):
    """Flatten the coordinate part of key rows; shape data is constant."""
    flat = []
    for (_, _, coords, _, _) in rows:
        for c in coords:
            flat.extend(c)
    if small:
        return bytes(bytearray(flat))
    return tuple(flat)


def _permuted_rows(rows, sigma):
    out = []
    for (n, mv, coords, S, T) in rows:
        sp = sigma[n]
        tp = sigma[n + 1]
        newc = tuple(coords[tp[t] * S + sp[s]]
                     for t in range(T) for s in range(S))
        out.append((n, mv, newc, S, T))
    return out


def _rows_to_key(rows):
    return tuple((n, mv, coords) for (n, mv, coords, _, _) in rows)


def _apply_sigma(A, mult, diffs, sigma, slotmap):
    """The differentials of the slot-permuted complex."""
    out = {}
    for n, D in diffs.items():
        src = slotmap[n]
        tgt = slotmap[n + 1]
        sp = sigma[n]
        tp = sigma[n + 1]
        M = HomMat(A, tgt, src,
                   [[D.entries[tp[t]][sp[s]] for s in range(len(src))]
                    for t in range(len(tgt))])
        out[n] = M
    return out


def _rep_boundary(A, mult, bounds):
    if any(c == bounds.max_mult for v in mult.values() for c in v):
        return True
    if bounds.max_dim is not None:
        total = sum(c * A.proj_dim(i)
                    for v in mult.values() for i, c in enumerate(v))
        least = min(A.proj_dim(i) for i in range(A.num_projectives))
        if total + least > bounds.max_dim:
            return True
    return False


def _sweep_indecomposable(X):
    """Locality of the chain endomorphism ring, the sweep's cheap filter.

    A minimal complex is indecomposable exactly when its endomorphisms form
    a local ring; a one-dimensional endomorphism space settles that without
    building the multiplication table.  Kept representatives are re-verified
    by the full splitting machinery afterwards.
    """
    hs = hom_space(X, X)
    if len(hs.chain_basis) == 1:
        return True
    local, _ = is_local_raw(_EndData(X, hs).raw)
    return local


def _sweep_shape(A, mult, m, bounds):
    """Indecomposable iso classes with this multiplicity shape.

    Returns (candidate count, list of (packed key, sigma-min mult, diffs)).
    Deduplication is complete inside a shape because isomorphic minimal
    complexes share their multiplicity vectors.
    """
    F = A.field
    small = F.size <= 256
    t = A.num_projectives
    zero = (0,) * t
    lo = min(mult)
    hi = max(mult)
    total = sum(sum(v) for v in mult.values())
    slotmap = {n: _slots(mult.get(n, zero)) for n in range(lo, hi + 2)}

    perm_lists = {n: _degree_perms(mult.get(n, zero))
                  for n in range(lo, hi + 2)}
    group_size = prod(len(p) for p in perm_lists.values())
    if group_size > _PERM_CAP:
        perm_lists = {n: [p[0]] for n, p in perm_lists.items()}
        group_size = 1
    perm_degrees = sorted(perm_lists)

    seen = set()
    buckets = {}
    memo = {}
    candidates = 0
    for diffs in _assignments(A, mult, lo, hi, slotmap):
        candidates += 1
        if _is_dead_candidate(A, diffs, lo, hi, slotmap, total):
            continue
        rows = _key_rows(A, mult, diffs, lo, hi, slotmap, memo)
        packed = _pack_rows(rows, small)
        if packed in seen:
            continue
        best_packed = packed
        best_sigma = None
        if group_size > 1:
            for combo in itertools.product(
                    *[perm_lists[n] for n in perm_degrees]):
                sigma = dict(zip(perm_degrees, combo))
                p = _pack_rows(_permuted_rows(rows, sigma), small)
                seen.add(p)
                if p < best_packed:
                    best_packed = p
                    best_sigma = sigma
        else:
            seen.add(packed)

        X = ProjComplex(A, mult, diffs, check=False)
        coh = cohomology(X)
        if not _sweep_indecomposable(X):
            continue
        coh_key = tuple(sorted(coh.items()))
        bucket = buckets.setdefault(coh_key, [])
        placed = False
        for idx, (rep_packed, _, _, R) in enumerate(bucket):
            if _indecomposable_iso(X, R) is not None:
                if best_packed < rep_packed:
                    bucket[idx] = (best_packed, best_sigma, diffs, R)
                placed = True
                break
        if not placed:
            bucket.append((best_packed, best_sigma, diffs, X))

    found = []
    for coh_key in buckets:
        for (packed, sigma, diffs, _) in buckets[coh_key]:
            if sigma is not None:
                diffs = _apply_sigma(A, mult, diffs, sigma, slotmap)
            found.append((packed, diffs))
    found.sort(key=lambda e: e[0])
    return candidates, [(mult, diffs) for _, diffs in found]


_WORKER_STATE = {}


def _shape_worker(idx):
    A, shapes, m, bounds = _WORKER_STATE["args"]
    count, reps = _sweep_shape(A, shapes[idx], m, bounds)
    plain = []
    for mult, diffs in reps:
        plain.append((sorted(mult.items()),
                      {n: [[list(v) for v in row] for row in D.entries]
                       for n, D in diffs.items()}))
    return count, plain


def _plain_to_rep(A, mult_items, diff_rows):
    mult = dict(mult_items)
    t = A.num_projectives
    zero = (0,) * t
    diffs = {}
    for n, rows in diff_rows.items():
        src = _slots(mult.get(n, zero))
        tgt = _slots(mult.get(n + 1, zero))
        diffs[n] = HomMat(A, tgt, src, rows)
    return mult, diffs


def _finalize_rep(A, m, bounds, mult, diffs):
    """Re-verify a kept representative with full checks on."""
    X = ProjComplex(A, mult, diffs, check=True)
    if not is_homotopy_minimal(X):
        raise InternalCheckError("a kept representative is not minimal")
    if len(decompose_complex(X)) != 1:
        raise InternalCheckError("a kept representative is decomposable")
    key = canonical_key(X)
    coh = cohomology(X)
    stats = range_stats(X)
    dims = tuple(X.component_dim(n) for n in range(m + 1))
    coh_vec = tuple(coh.get(n, 0) for n in range(m + 1))
    return Representative(X, key, dict(X.mult), dims, coh_vec, stats.hr,
                          _rep_boundary(A, X.mult, bounds))


def enumerate_indecomposables(A, m, bounds=None, jobs=1):
    """Every indecomposable minimal complex in degrees 0..m, within bounds.

    Sweeps all radical differential assignments over the finite coefficient
    field (exact d after d = 0 by construction), discards decomposables, and
    deduplicates by chain isomorphism.  Representatives carry the smallest
    canonical key in their class, so the report is stable under reordering
    of the candidate sweep.  Sweeps whose candidate estimate exceeds the
    bound cap are refused up front.
    """
    F = _finite_field(A)
    if m < 0:
        raise UserInputError("the concentration bound m must be nonnegative")
    if bounds is None:
        bounds = Bounds()
    shapes = [s for s in _shapes(A, m, bounds) if not _has_dead_slot(A, s)]
    estimate = sum(F.size ** _coefficient_count(A, s, m) for s in shapes)
    if estimate > bounds.cap:
        raise SearchCapError(
            f"enumeration would examine about {estimate} candidate "
            f"differentials (cap {bounds.cap})",
            estimate=estimate, cap=bounds.cap)

    candidates = 0
    kept = []
    if jobs > 1:
        import multiprocessing

        _WORKER_STATE["args"] = (A, shapes, m, bounds)
        try:
            with multiprocessing.get_context("fork").Pool(jobs) as pool:
                results = pool.map(_shape_worker, range(len(shapes)))
        finally:
            _WORKER_STATE.clear()
        for count, plain in results:
            candidates += count
            for mult_items, diff_rows in plain:
                kept.append(_plain_to_rep(A, mult_items, diff_rows))
    else:
        for shape in shapes:
            count, reps = _sweep_shape(A, shape, m, bounds)
            candidates += count
            kept.extend(reps)

    representatives = [_finalize_rep(A, m, bounds, mult, diffs)
                       for mult, diffs in kept]
    representatives.sort(key=lambda r: r.key)
    return ClassificationReport(A, m, bounds, representatives, candidates)


class DiscretenessTable:
    """Iso-class counts per cohomology dimension vector, two countings.

    Indecomposables and plain objects (direct sums included) are reported
    separately for each vector; the object counting closes the enumerated
    representatives under direct sums within the same bounds.
    """

    __slots__ = ("report", "coh_bound", "rows")

    def __init__(self, report, coh_bound, rows):
        self.report = report
        self.coh_bound = coh_bound
        self.rows = rows

    def records(self):
        out = []
        for vec in sorted(self.rows):
            ind, obj = self.rows[vec]
            out.append(f"coh {','.join(str(d) for d in vec)} "
                       f"indecomposables={ind} objects={obj}")
        return out

    def table(self):
        head = (f"discreteness of {self.report.label} in degrees "
                f"0..{self.report.m} ({self.report.bounds.describe()})")
        return "\n".join([head] + self.records())


def discreteness_probe(A, m, coh_bound, bounds=None, jobs=1):
    """Counts of minimal complexes realizing each small cohomology vector.

    coh_bound caps every component of the vectors tabulated, either as one
    integer or as a per-degree sequence.  Object counts close the sweep's
    indecomposables under direct sums within the same bounds, so both of
    the natural countings are reported instead of picking one.
    """
    report = enumerate_indecomposables(A, m, bounds, jobs=jobs)
    if isinstance(coh_bound, int):
        per_degree = (coh_bound,) * (m + 1)
    else:
        per_degree = tuple(coh_bound)
        if len(per_degree) != m + 1:
            raise UserInputError(
                f"expected {m + 1} cohomology bounds, got {len(per_degree)}")
    if any(b < 0 for b in per_degree):
        raise UserInputError("cohomology bounds must be nonnegative")

    reps = report.representatives
    rows = {}
    for vec in itertools.product(*[range(b + 1) for b in per_degree]):
        ind = sum(1 for r in reps if r.coh == vec)
        rows[vec] = (ind, _object_count(A, reps, vec, report.bounds, m))
    return DiscretenessTable(report, per_degree, rows)


def _object_count(A, reps, vec, bounds, m):
    """Multisets of representatives with prescribed total cohomology."""
    t = A.num_projectives

    def fits(used_mult, used_dim, r):
        for n, v in r.mult.items():
            base = used_mult.get(n, (0,) * t)
            for i, c in enumerate(v):
                if base[i] + c > bounds.max_mult:
                    return False
        if bounds.max_dim is not None:
            if used_dim + sum(r.dims) > bounds.max_dim:
                return False
        return True

    def add(used_mult, r):
        out = dict(used_mult)
        for n, v in r.mult.items():
            base = out.get(n, (0,) * t)
            out[n] = tuple(base[i] + c for i, c in enumerate(v))
        return out

    def rec(idx, remaining, used_mult, used_dim):
        if idx == len(reps):
            return 1 if not any(remaining) else 0
        total = rec(idx + 1, remaining, used_mult, used_dim)
        r = reps[idx]
        cur_rem = remaining
        cur_mult = used_mult
        cur_dim = used_dim
        while True:
            if any(c > rem for c, rem in zip(r.coh, cur_rem)):
                break
            if not fits(cur_mult, cur_dim, r):
                break
            cur_rem = tuple(rem - c for c, rem in zip(r.coh, cur_rem))
            cur_mult = add(cur_mult, r)
            cur_dim = cur_dim + sum(r.dims)
            total += rec(idx + 1, cur_rem, cur_mult, cur_dim)
        return total

    return rec(0, vec, {}, 0)


class RangeHistogram:
    """Indecomposable counts per cohomological range value.

    A value is flagged "boundary" when some representative with that range
    touches the search bounds, so its count could keep growing under larger
    bounds; "interior" counts cannot.
    """

    __slots__ = ("report", "slices", "boundary")

    def __init__(self, report):
        self.report = report
        self.slices = dict(report.histogram)
        self.boundary = {hr: any(r.at_boundary for r in report.representatives
                                 if r.hr == hr)
                         for hr in self.slices}
        if sum(self.slices.values()) != len(report.representatives):
            raise InternalCheckError(
                "histogram mass differs from the representative count")

    def records(self):
        out = []
        for hr in sorted(self.slices):
            flag = "boundary" if self.boundary[hr] else "interior"
            out.append(f"hr={hr} count={self.slices[hr]} {flag}")
        return out

    def table(self):
        head = (f"range histogram of {self.report.label} in degrees "
                f"0..{self.report.m} ({self.report.bounds.describe()})")
        return "\n".join([head] + self.records())


def range_histogram(report):
    """Histogram of indecomposable counts per hr, with growth flags."""
    return RangeHistogram(report)


class FamilyWitness:
    """Per-sample probe results for a parametrized family of complexes."""

    __slots__ = ("algebra", "samples", "statuses", "instances",
                 "witness_count", "hr_values")

    def __init__(self, algebra, samples, statuses, instances):
        self.algebra = algebra
        self.samples = list(samples)
        self.statuses = statuses
        self.instances = instances
        self.witness_count = sum(1 for s, _ in statuses if s == "ok")
        self.hr_values = sorted({hr for (s, _), hr
                                 in zip(statuses, self._hrs())
                                 if s == "ok" and hr is not None})

    def _hrs(self):
        return [None if X is None else range_stats(X).hr
                for X in self.instances]

    @property
    def ok(self):
        return (self.witness_count == len(self.samples) > 0
                and len(self.hr_values) == 1)

    def summary(self):
        n = len(self.samples)
        if not n:
            return "no samples"
        parts = [f"{self.witness_count}/{n} pairwise non-isomorphic"]
        if self.witness_count:
            if len(self.hr_values) == 1:
                parts.append("hr constant")
            else:
                values = ",".join(str(v) for v in self.hr_values)
                parts.append(f"hr varies ({values})")
        degenerate = n - self.witness_count
        if degenerate:
            parts.append(f"{degenerate} degenerate")
        return ", ".join(parts)

    def lines(self):
        out = []
        hrs = self._hrs()
        for i, ((status, extra), hr) in enumerate(zip(self.statuses, hrs)):
            line = f"sample index={i} param={self.samples[i]} status={status}"
            if extra is not None:
                line += f" match={extra}"
            if hr is not None:
                line += f" hr={hr}"
            out.append(line)
        return out


def family_probe(A, family, samples):
    """Probe a parametrized family of complexes over an infinite field.

    Each sample is instantiated and checked to be a minimal indecomposable
    complex, pairwise non-isomorphic from the earlier samples, with one
    shared hr value.  Degenerate samples (zero, non-minimal, decomposable,
    or isomorphic to an earlier instance) are recorded per sample rather
    than raised.
    """
    if getattr(A.field, "size", None) is not None:
        raise UserInputError(
            "family probes target infinite coefficient fields; use the "
            "exhaustive enumeration over a finite field")
    statuses = []
    instances = []
    good = []
    for idx, param in enumerate(samples):
        X = family(param)
        if not (X.algebra is A or X.algebra.same_algebra(A)):
            raise UserInputError(
                f"sample {idx} produced a complex over a different algebra")
        if X.is_zero():
            statuses.append(("zero", None))
            instances.append(None)
            continue
        if not is_homotopy_minimal(X):
            statuses.append(("not-minimal", None))
            instances.append(None)
            continue
        if len(decompose_complex(X)) != 1:
            statuses.append(("decomposable", None))
            instances.append(None)
            continue
        collision = None
        for j in good:
            if is_isomorphic(X, instances[j])[0]:
                collision = j
                break
        if collision is not None:
            statuses.append(("iso-collision", collision))
            instances.append(X)
            continue
        statuses.append(("ok", None))
        instances.append(X)
        good.append(idx)
    return FamilyWitness(A, samples, statuses, instances)


class DichotomyReport:
    """Two-sided summary of representation-type probes across windows.

    Over a finite field the summary enumerates each window, checks that
    every representative reappears unchanged in the next window, and (with
    an extension context) that every summand of a tensored representative
    shows up in the extension sweep with its range in the exact interval.
    Over an infinite field the summary probes a parametrized family on both
    sides of the extension and compares the verdicts.
    """

    __slots__ = ("mode", "m_values", "base_counts", "ext_counts",
                 "coherence", "base_witness", "ext_witness", "bound_lines",
                 "ok")

    def __init__(self, mode, m_values=(), base_counts=None, ext_counts=None,
                 coherence=None, base_witness=None, ext_witness=None,
                 bound_lines=None, ok=True):
        self.mode = mode
        self.m_values = tuple(m_values)
        self.base_counts = base_counts
        self.ext_counts = ext_counts
        self.coherence = coherence or []
        self.base_witness = base_witness
        self.ext_witness = ext_witness
        self.bound_lines = bound_lines or []
        self.ok = ok

    def summary(self):
        if self.mode == "enumerated":
            windows = ",".join(str(m) for m in self.m_values)
            counts = ",".join(str(self.base_counts[m]) for m in self.m_values)
            line = (f"windows 0..{{{windows}}}: counts {counts}; "
                    f"monotone embedding verified")
            if self.ext_counts is not None:
                ext = ",".join(str(self.ext_counts[m])
                               for m in self.m_values)
                line += f"; extension counts {ext}; coherence verified"
            return line
        base = self.base_witness.summary()
        if self.ext_witness is None:
            return f"base {base}"
        ext = self.ext_witness.summary()
        ranges = "ok" if self.ok else "VIOLATION"
        return (f"base {base}; extension {ext}; "
                f"range containments {ranges}")

    def lines(self):
        out = [self.summary()]
        out.extend(self.coherence)
        if self.base_witness is not None:
            out.extend("base " + s for s in self.base_witness.lines())
        if self.ext_witness is not None:
            out.extend("extension " + s for s in self.ext_witness.lines())
        out.extend(self.bound_lines)
        return out


def c_dichotomy_report(A, m_values=(1, 2), bounds=None, ctx=None,
                       family=None, samples=None, jobs=1):
    """Window-monotonicity and extension-coherence summary for an algebra.

    Finite coefficient field: enumerate every window in m_values, check
    that representatives persist with unchanged hr as the window widens
    (violations raise, they indicate a bug), and, given an extension
    context, match every summand of every tensored representative against
    the extension-side sweep with its hr inside [ceil(r/l), r].  Infinite
    field: probe the given family and samples on the base side, transport
    the good instances through the tensor functor, probe them again over
    the extension, and record the exact range containments.
    """
    ms = sorted(set(m_values))
    if not ms or ms[0] < 0:
        raise UserInputError("m_values must be nonnegative window bounds")
    if ctx is not None and not (ctx.base_algebra is A
                                or ctx.base_algebra.same_algebra(A)):
        raise UserInputError("the extension context does not extend this "
                             "algebra")
    finite = getattr(A.field, "size", None) is not None
    if finite:
        if family is not None or samples is not None:
            raise UserInputError(
                "parametrized families apply over infinite fields only")
        reports = {m: enumerate_indecomposables(A, m, bounds, jobs=jobs)
                   for m in ms}
        for m1, m2 in zip(ms, ms[1:]):
            bigger = {r.key: r.hr for r in reports[m2].representatives}
            for r in reports[m1].representatives:
                if r.key not in bigger:
                    raise InternalCheckError(
                        f"a degrees-0..{m1} representative vanished from "
                        f"the 0..{m2} sweep")
                if bigger[r.key] != r.hr:
                    raise InternalCheckError(
                        "a representative changed its range between windows")
        base_counts = {m: len(reports[m].representatives) for m in ms}
        ext_counts = None
        coherence = []
        if ctx is not None and not ctx.trivial:
            ext_reports = {m: enumerate_indecomposables(ctx.ext_algebra, m,
                                                        bounds, jobs=jobs)
                           for m in ms}
            ext_counts = {m: len(ext_reports[m].representatives) for m in ms}
            l = ctx.degree
            eff = bounds if bounds is not None else Bounds()
            for m in ms:
                ext_reps = ext_reports[m].representatives
                for i, r in enumerate(reports[m].representatives):
                    parts = decompose_complex(tensor_complex(r.complex, ctx))
                    lower = -(-r.hr // l)
                    part_hrs = []
                    status = "ok"
                    for part in parts:
                        Y = part.complex
                        hr = range_stats(Y).hr
                        part_hrs.append(hr)
                        if not lower <= hr <= r.hr:
                            raise InternalCheckError(
                                "an extension summand leaves the interval "
                                f"[{lower},{r.hr}]")
                        if any(c > eff.max_mult for v in Y.mult.values()
                               for c in v):
                            status = "summand-outside-bounds"
                            continue
                        if not any(is_isomorphic(Y, er.complex)[0]
                                   for er in ext_reps):
                            raise InternalCheckError(
                                "an extension summand escaped the "
                                "extension-side sweep")
                    hrs = ",".join(str(h) for h in part_hrs)
                    coherence.append(
                        f"m={m} rep={i} hr={r.hr} parts={len(parts)} "
                        f"part_hr={hrs} status={status}")
        return DichotomyReport("enumerated", ms, base_counts=base_counts,
                               ext_counts=ext_counts, coherence=coherence,
                               ok=True)

    if family is None or samples is None:
        raise UserInputError(
            "an infinite-field summary needs a parametrized family and its "
            "samples")
    base_wit = family_probe(A, family, samples)
    if ctx is None or ctx.trivial:
        return DichotomyReport("family", ms, base_witness=base_wit,
                               ok=base_wit.ok)
    good = [X for (s, _), X in zip(base_wit.statuses, base_wit.instances)
            if s == "ok"]
    transported = [tensor_complex(X, ctx) for X in good]
    ext_wit = family_probe(ctx.ext_algebra,
                           lambda i: transported[i],
                           list(range(len(transported))))
    bound_lines = []
    all_ok = base_wit.ok and ext_wit.ok
    for i, X in enumerate(good):
        rep = range_bound_report(X, ctx, "up")
        bound_lines.append(f"sample index={i} {rep.line()}")
        all_ok = all_ok and rep.ok
    return DichotomyReport("family", ms, base_witness=base_wit,
                           ext_witness=ext_wit, bound_lines=bound_lines,
                           ok=all_ok)
