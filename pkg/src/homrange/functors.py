"""Scalar extension and restriction of complexes along a field extension.

An ExtensionContext pairs an algebra presented over k with the same
presentation over a simple separable extension K of degree l.
tensor_complex extends scalars of a complex degreewise; restrict_complex
reads a complex over the extended algebra as a complex of projectives over
the base, expanding each extension scalar into its l x l coordinate matrix.
Both directions carry every projective to a projective and are exact, so
homotopy minimality is preserved and per-degree cohomology transfers
(equal dimensions upward, multiplied by l downward).  unit_iso certifies
restrict(tensor(X)) = X^{+l} with an explicit pair of mutually inverse
chain maps, and the witness searches exhibit the summand round trips that
the range transfer arguments rest on.
"""

from .algebras import SpanBasis
from .complexes import (
    ChainMap,
    IsoCertificate,
    ProjComplex,
    _slots,
    _sum_slot_maps,
    cohomology,
    decompose_complex,
    direct_sum_complexes,
    hom_mat_from_field,
    is_homotopy_minimal,
    is_isomorphic,
    range_stats,
)
from .errors import InternalCheckError, UserInputError
from .linalg import Matrix, inverse
from .modules import ActionModule, projective_cover


def _embed_vec(K, v):
    return [K.embed_base(c) for c in v]


def _embed_matrix(K, M):
    rows = [[K.embed_base(c) for c in row] for row in M.rows]
    return Matrix(K, rows, ncols=M.ncols)


def _span_module(B, vecs):
    """Left module structure on an independent left-stable span inside B."""
    F = B.field
    sb = SpanBasis(F, B.dim, vecs)
    mats = []
    for r in range(B.dim):
        br = B.basis_vec(r)
        cols = []
        for v in vecs:
            c = sb.coords(B.product(br, v))
            if c is None:
                raise InternalCheckError("span is not stable under the left action")
            cols.append(c)
        n = len(vecs)
        mats.append(Matrix(F, [[cols[c][q] for c in range(n)] for q in range(n)],
                           ncols=n))
    return ActionModule(B, mats)


class ExtensionContext:
    """An algebra over k together with its scalar extension to K.

    degree is l = [K : k]; ext_algebra carries the same presentation with
    coefficients embedded, cross-checked against the embedded structure
    constants.  The trivial context (K equal to the base field) is allowed
    and makes both functors the identity.
    """

    def __init__(self, algebra, ext_field):
        self.base_algebra = algebra
        k = algebra.field
        K = ext_field
        self.ext_field = K
        self.base_field = k
        self.trivial = K == k
        if self.trivial:
            self.degree = 1
            self.ext_algebra = algebra
        else:
            if not getattr(K, "is_extension", False):
                raise UserInputError(
                    "the extension field must be a simple extension built over "
                    "the algebra's coefficient field")
            if K.base != k:
                raise UserInputError(
                    f"extension of {K.base!r} cannot extend an algebra over {k!r}")
            self.degree = K.degree_over_base
            self.ext_algebra = self._rebuild()
        self._up = None
        self._down = None

    # scalar plumbing that also covers the trivial tower
    def embed(self, c):
        return c if self.trivial else self.ext_field.embed_base(c)

    def scalar_coords(self, lam):
        return [lam] if self.trivial else list(self.ext_field.coordinates_raw(lam))

    def mult_block(self, lam):
        if self.trivial:
            return [[lam]]
        return self.ext_field.mult_matrix_raw(lam)

    def _rebuild(self):
        from .algebras import build_path_algebra, build_table_algebra

        A = self.base_algebra
        K = self.ext_field
        pres = getattr(A, "presentation", None)
        if pres is None:
            raise UserInputError(
                "the algebra does not carry a presentation; build it with "
                "build_path_algebra or build_table_algebra")
        if pres[0] == "path":
            _, quiver, rels = pres
            B = build_path_algebra(K, quiver, rels)
        else:
            _, table, unit, labels = pres
            etable = [[_embed_vec(K, v) for v in row] for row in table]
            B = build_table_algebra(K, etable, labels=labels,
                                    unit=_embed_vec(K, unit))
        if B.dim != A.dim or B.labels != A.labels:
            raise InternalCheckError("scalar extension changed the algebra basis")
        for i in range(A.dim):
            for j in range(A.dim):
                if list(B.table[i][j]) != _embed_vec(K, A.table[i][j]):
                    raise InternalCheckError(
                        "extended structure constants are not the embedded ones")
        return B

    def up_transfer(self):
        """Per base projective: its image decomposed over the extension.

        Entry i is (mult vector over ext_algebra, C, C^{-1}) where C maps
        stacked ext-projective coordinates isomorphically onto the
        coordinates of the embedded projective.
        """
        if self._up is None:
            A, B, K = self.base_algebra, self.ext_algebra, self.ext_field
            out = []
            for i in range(A.num_projectives):
                vecs = [_embed_vec(K, v) for v in A.proj_basis(i)]
                cover = projective_cover(_span_module(B, vecs))
                if cover.kernel.dim != 0:
                    raise InternalCheckError(
                        "scalar extension of a projective is not projective")
                mult = [0] * B.num_projectives
                for j in cover.proj_indices:
                    mult[j] += 1
                C = cover.cover_map
                out.append((tuple(mult), C, inverse(C)))
            self._up = out
        return self._up

    def down_transfer(self):
        """Per extension projective: its restriction decomposed over the base.

        Restricted coordinates run over the K-basis of the projective with
        the l extension coordinates innermost.
        """
        if self._down is None:
            A, B = self.base_algebra, self.ext_algebra
            out = []
            for j in range(B.num_projectives):
                mats = [_expand_matrix(self, B.act_on_proj(j, _embed_vec(
                    self.ext_field, A.basis_vec(r))) if not self.trivial
                    else B.act_on_proj(j, A.basis_vec(r)))
                    for r in range(A.dim)]
                cover = projective_cover(ActionModule(A, mats))
                if cover.kernel.dim != 0:
                    raise InternalCheckError(
                        "restriction of a projective is not projective")
                mult = [0] * A.num_projectives
                for i in cover.proj_indices:
                    mult[i] += 1
                C = cover.cover_map
                out.append((tuple(mult), C, inverse(C)))
            self._down = out
        return self._down

    def __repr__(self):
        return (f"ExtensionContext(degree {self.degree}, "
                f"{self.base_field!r} -> {self.ext_field!r})")


def _expand_matrix(ctx, M):
    """Blow up a matrix over K into base-field blocks, l coordinates inner."""
    grid = [[Matrix(ctx.base_field, ctx.mult_block(M.rows[q][r]),
                    ncols=ctx.degree)
             for r in range(M.ncols)] for q in range(M.nrows)]
    if not grid or not grid[0]:
        return Matrix.zeros(ctx.base_field, M.nrows * ctx.degree,
                            M.ncols * ctx.degree)
    return Matrix.block(ctx.base_field, grid)


def _check_complex_over(X, A, what):
    if not (X.algebra is A or X.algebra.same_algebra(A)):
        raise UserInputError(f"complex is not over the context's {what} algebra")


def _slot_frames(algebra, slots, transfer):
    """Layout of a degree after applying a transfer to each slot.

    Returns (new mult vector, per-slot global positions, frame matrix G)
    where G maps stacked new coordinates to the concatenation of the
    per-original-slot transferred coordinates.
    """
    F = transfer[0][1].field if slots else algebra.field
    parts = [transfer[i][0] for i in slots]
    t = algebra.num_projectives
    new_mult = tuple(sum(p[i] for p in parts) for i in range(t)) if parts \
        else (0,) * t
    maps = _sum_slot_maps(algebra, parts) if parts else []
    new_slots = _slots(new_mult)
    offs = [0]
    for i in new_slots:
        offs.append(offs[-1] + algebra.proj_dim(i))
    total = offs[-1]
    rows = [[F.zero] * total for _ in range(total)]
    ro = 0
    for s, i in enumerate(slots):
        C = transfer[i][1]
        co = 0
        for q in maps[s]:
            w = algebra.proj_dim(new_slots[q])
            for r in range(C.nrows):
                for c in range(w):
                    rows[ro + r][offs[q] + c] = C.rows[r][co + c]
            co += w
        ro += C.nrows
    G = Matrix(F, rows, ncols=total)
    return new_mult, maps, G


def _tensor_data(X, ctx):
    A = ctx.base_algebra
    B = ctx.ext_algebra
    K = ctx.ext_field
    _check_complex_over(X, A, "base")
    up = ctx.up_transfer()
    frames = {n: _slot_frames(B, X.slots(n), up) for n in X.mult}
    comps = {n: frames[n][0] for n in X.mult}
    diffs = {}
    for n, D in X.diff.items():
        E = _embed_matrix(K, D.realize())
        G_src = frames[n][2]
        G_tgt = frames[n + 1][2]
        T = inverse(G_tgt) * E * G_src
        diffs[n] = hom_mat_from_field(B, _slots(comps[n + 1]), _slots(comps[n]), T)
    out = ProjComplex(B, comps, diffs, check=True, complete=X.complete)
    return out, frames


def tensor_complex(X, ctx):
    """Extend scalars: same shape, coefficients embedded into the extension.

    Minimality and per-degree cohomology dimensions are preserved; both are
    re-checked on the result.
    """
    if ctx.trivial:
        _check_complex_over(X, ctx.base_algebra, "base")
        return X
    out, _ = _tensor_data(X, ctx)
    if cohomology(out) != cohomology(X):
        raise InternalCheckError("scalar extension changed cohomology dimensions")
    if is_homotopy_minimal(X) and not is_homotopy_minimal(out):
        raise InternalCheckError("scalar extension destroyed minimality")
    return out


def _restrict_data(Y, ctx):
    A = ctx.base_algebra
    B = ctx.ext_algebra
    _check_complex_over(Y, B, "extended")
    down = ctx.down_transfer()
    frames = {n: _slot_frames(A, Y.slots(n), down) for n in Y.mult}
    comps = {n: frames[n][0] for n in Y.mult}
    diffs = {}
    for n, D in Y.diff.items():
        R = _expand_matrix(ctx, D.realize())
        G_src = frames[n][2]
        G_tgt = frames[n + 1][2]
        T = inverse(G_tgt) * R * G_src
        diffs[n] = hom_mat_from_field(A, _slots(comps[n + 1]), _slots(comps[n]), T)
    out = ProjComplex(A, comps, diffs, check=True, complete=Y.complete)
    return out, frames


def restrict_complex(Y, ctx):
    """Restrict scalars: every projective becomes an l-fold stack over the base.

    Per-degree cohomology dimensions multiply by l; minimality is preserved.
    Both facts are re-checked on the result.
    """
    if ctx.trivial:
        _check_complex_over(Y, ctx.base_algebra, "base")
        return Y
    out, _ = _restrict_data(Y, ctx)
    hy = cohomology(Y)
    if cohomology(out) != {n: ctx.degree * d for n, d in hy.items()}:
        raise InternalCheckError(
            "restriction did not multiply cohomology dimensions by the degree")
    if is_homotopy_minimal(Y) and not is_homotopy_minimal(out):
        raise InternalCheckError("restriction destroyed minimality")
    return out


def unit_iso(X, ctx):
    """Certify restrict(tensor(X)) = X^{+l} by the explicit coordinate map.

    The forward map sends the t-th copy of x to x tensor alpha_t read in
    restricted coordinates.  Returns an IsoCertificate whose maps run from
    the l-fold direct sum to the restricted extension; verification failure
    raises InternalCheckError since the map is an isomorphism whenever the
    arithmetic underneath is sound.
    """
    A = ctx.base_algebra
    _check_complex_over(X, A, "base")
    if X.is_zero():
        Z = ProjComplex(A, {})
        return IsoCertificate(ChainMap.zero(Z, Z), ChainMap.zero(Z, Z))
    if ctx.trivial:
        total, _, _ = direct_sum_complexes([X])
        if total != X:
            raise InternalCheckError("single-summand direct sum changed the complex")
        ident = ChainMap.identity(X)
        return IsoCertificate(ident, ident)
    K = ctx.ext_field
    l = ctx.degree
    XT, tframes = _tensor_data(X, ctx)
    FXK, rframes = _restrict_data(XT, ctx)
    XL, _, _ = direct_sum_complexes([X] * l)
    F = ctx.base_field
    fwd_blocks = {}
    bwd_blocks = {}
    for n in X.mult:
        slots = X.slots(n)
        lmaps = _sum_slot_maps(A, [X.mult_at(n)] * l)
        xl_slots = XL.slots(n)
        xl_offs = [0]
        for i in xl_slots:
            xl_offs.append(xl_offs[-1] + A.proj_dim(i))
        total = xl_offs[-1]
        # restricted view of the tensor frame: G over K expands blockwise
        W = _expand_matrix(ctx, tframes[n][2]) * rframes[n][2]
        # permutation: copy t of slot s, coordinate r -> slot s, (r, t) inner
        rows = [[F.zero] * total for _ in range(total)]
        ro = 0
        for s, i in enumerate(slots):
            p = A.proj_dim(i)
            for r in range(p):
                for t in range(l):
                    col = xl_offs[lmaps[t][s]] + r
                    rows[ro + r * l + t][col] = F.one
            ro += p * l
        P = Matrix(F, rows, ncols=total)
        U = inverse(W) * P
        fwd_blocks[n] = hom_mat_from_field(A, FXK.slots(n), XL.slots(n), U)
        bwd_blocks[n] = hom_mat_from_field(A, XL.slots(n), FXK.slots(n),
                                           inverse(U))
    fwd = ChainMap(XL, FXK, fwd_blocks, check=True)
    bwd = ChainMap(FXK, XL, bwd_blocks, check=True)
    cert = IsoCertificate(fwd, bwd)
    cert.verify()
    return cert


def _require_minimal_indecomposable(Z, what):
    if not is_homotopy_minimal(Z):
        raise UserInputError(f"{what} must be homotopy minimal; apply minimize first")
    if Z.is_zero():
        raise UserInputError(f"{what} must be nonzero")
    parts = decompose_complex(Z)
    if len(parts) != 1:
        raise UserInputError(
            f"{what} splits into {len(parts)} summands; pass one summand")


class SummandWitness:
    """Round trip data: a summand on the far side that carries the input back.

    witness is the chosen indecomposable summand (with inclusion and
    projection) of the functored input; match is the summand of the return
    journey isomorphic to the input, certified by certificate.
    """

    __slots__ = ("direction", "degree", "input_complex", "far_parts",
                 "chosen", "witness", "return_parts", "match_index",
                 "match", "certificate")

    def __init__(self, direction, degree, input_complex, far_parts, chosen,
                 witness, return_parts, match_index, match, certificate):
        self.direction = direction
        self.degree = degree
        self.input_complex = input_complex
        self.far_parts = far_parts
        self.chosen = chosen
        self.witness = witness
        self.return_parts = return_parts
        self.match_index = match_index
        self.match = match
        self.certificate = certificate

    def verify(self):
        self.witness.verify()
        self.match.verify()
        self.certificate.verify()
        return True

    def line(self):
        return (f"direction={self.direction} l={self.degree} "
                f"far_summands={self.far_parts} chosen={self.chosen} "
                f"return_summands={self.return_parts} match={self.match_index} "
                f"certificates=ok")


def summand_witness_up(X, ctx):
    """Pick a summand Y of the scalar extension of X that restricts back to X.

    Returns (Y, SummandWitness).  X must be minimal, nonzero and
    indecomposable.  Every indecomposable input has such a summand; failing
    to find one indicates an internal arithmetic fault.
    """
    _check_complex_over(X, ctx.base_algebra, "base")
    _require_minimal_indecomposable(X, "the input complex")
    XT = tensor_complex(X, ctx)
    parts = decompose_complex(XT)
    if len(parts) > ctx.degree:
        raise InternalCheckError(
            f"scalar extension split into {len(parts)} > l = {ctx.degree} summands")
    for idx, part in enumerate(parts):
        back = restrict_complex(part.complex, ctx)
        back_parts = decompose_complex(back)
        if len(back_parts) > ctx.degree:
            raise InternalCheckError(
                f"restriction split into {len(back_parts)} > l = {ctx.degree} summands")
        for mi, bp in enumerate(back_parts):
            ok, cert = is_isomorphic(bp.complex, X)
            if ok:
                w = SummandWitness("up", ctx.degree, X, len(parts), idx, part,
                                   len(back_parts), mi, bp, cert)
                return part.complex, w
    raise InternalCheckError(
        "no summand of the scalar extension restricts back to the input")


def summand_witness_down(Y, ctx):
    """Pick a summand X of the restriction of Y whose extension contains Y.

    Returns (X, SummandWitness).  Y must be minimal, nonzero and
    indecomposable over the extended algebra.
    """
    _check_complex_over(Y, ctx.ext_algebra, "extended")
    _require_minimal_indecomposable(Y, "the input complex")
    FY = restrict_complex(Y, ctx)
    parts = decompose_complex(FY)
    if len(parts) > ctx.degree:
        raise InternalCheckError(
            f"restriction split into {len(parts)} > l = {ctx.degree} summands")
    for idx, part in enumerate(parts):
        forth = tensor_complex(part.complex, ctx)
        forth_parts = decompose_complex(forth)
        if len(forth_parts) > ctx.degree:
            raise InternalCheckError(
                f"scalar extension split into {len(forth_parts)} > l = "
                f"{ctx.degree} summands")
        for mi, fp in enumerate(forth_parts):
            ok, cert = is_isomorphic(fp.complex, Y)
            if ok:
                w = SummandWitness("down", ctx.degree, Y, len(parts), idx,
                                   part, len(forth_parts), mi, fp, cert)
                return part.complex, w
    raise InternalCheckError(
        "no summand of the restriction extends back to the input")


class RangeBoundReport:
    """Summand ranges of a functored indecomposable against the exact bounds."""

    __slots__ = ("direction", "degree", "r", "summand_ranges", "lower", "upper")

    def __init__(self, direction, degree, r, summand_ranges, lower, upper):
        self.direction = direction
        self.degree = degree
        self.r = r
        self.summand_ranges = list(summand_ranges)
        self.lower = lower
        self.upper = upper

    @property
    def ok(self):
        return all(self.lower <= v <= self.upper for v in self.summand_ranges)

    def summary(self):
        lo = min(self.summand_ranges)
        hi = max(self.summand_ranges)
        verdict = "ok" if self.ok else "VIOLATION"
        return (f"summand ranges [{lo},{hi}] ⊆ [{self.lower},{self.upper}]: "
                f"{verdict}")

    def line(self):
        ranges = ",".join(str(v) for v in self.summand_ranges)
        return (f"direction={self.direction} l={self.degree} r={self.r} "
                f"summand_ranges={ranges} bounds_ok={'yes' if self.ok else 'NO'}")


def range_bound_report(Z, ctx, direction=None):
    """Check every summand range of the functored complex against the bounds.

    Upward (input over the base): summand ranges lie in [r/l, r].  Downward
    (input over the extension): they lie in [r, l*r].  A violation raises
    InternalCheckError since the containments hold whenever the functor
    arithmetic is correct.
    """
    if direction is None:
        if Z.algebra is ctx.base_algebra or Z.algebra.same_algebra(
                ctx.base_algebra):
            direction = "up"
        else:
            direction = "down"
    if direction not in ("up", "down"):
        raise UserInputError("direction must be 'up' or 'down'")
    if direction == "down" and ctx.trivial:
        direction = "up"
    l = ctx.degree
    if direction == "up":
        _check_complex_over(Z, ctx.base_algebra, "base")
        _require_minimal_indecomposable(Z, "the input complex")
        r = range_stats(Z).hr
        image = tensor_complex(Z, ctx)
        lower, upper = -(-r // l), r
    else:
        _check_complex_over(Z, ctx.ext_algebra, "extended")
        _require_minimal_indecomposable(Z, "the input complex")
        r = range_stats(Z).hr
        image = restrict_complex(Z, ctx)
        lower, upper = r, l * r
    parts = decompose_complex(image)
    if len(parts) > l:
        raise InternalCheckError(
            f"functored complex split into {len(parts)} > l = {l} summands")
    ranges = [range_stats(p.complex).hr for p in parts]
    report = RangeBoundReport(direction, l, r, ranges, lower, upper)
    if not report.ok:
        raise InternalCheckError("summand range outside the exact bounds: "
                                 + report.summary())
    return report
