"""Structure checks on matrix realizations: involution, eigenspaces, centralizers,
restricted roots, embedding forms and admissibility.

All spans are computed exactly.  Real spans use :meth:`Mat.realvec` coordinates
over Q; complex spans (root spaces of the complexification) use entry dicts
over Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from ..errors import NotMaximalAbelian, RealizationBug
from ..exact import ONE, ZERO, Echelon, GaussRat, dependencies, fmt_frac, inverse, solve_dense
from ..rootsys import KINDS, MIN_RANK, build_system
from ..table import DEFAULT_P, get_row
from .matrices import Mat, bracket, combine
from .realizations import MatrixRealization, e_sigma, realize

_I = GaussRat(0, 1)

CLAIMED_FORM = {"5_2": "FormOne", "6_2": "FormOne", "7_2": "FormOne", "9": "FormThree"}


def claimed_form(row: str) -> str:
    return CLAIMED_FORM.get(str(row), "FormTwo")


# --- spans ----------------------------------------------------------------------


def real_span(mats) -> Echelon:
    e = Echelon(track=True)
    for m in mats:
        e.insert(m.realvec())
    return e


def _independent(mats) -> list[Mat]:
    e = Echelon()
    return [m for m in mats if e.insert(m.realvec())]


def _stacked(mat_lists) -> dict:
    """Concatenate the real coordinates of several matrices into one vector."""
    out = {}
    for j, m in enumerate(mat_lists):
        off = j * 2 * m.n * m.n
        for k, v in m.realvec().items():
            out[off + k] = v
    return out


def centralizer(elements, basis) -> list[Mat]:
    """Basis of {X in span(basis) : [E, X] = 0 for every E in elements} (real span)."""
    basis = list(basis)
    if not basis:
        return []
    n = basis[0].n
    if not elements:
        return _independent(basis)
    vecs = [_stacked([bracket(e, x) for e in elements]) for x in basis]
    out = [combine([d.get(i, ZERO) for i in range(len(basis))], basis, n) for d in dependencies(vecs)]
    return _independent(out)


# --- the involution -------------------------------------------------------------


@dataclass(frozen=True)
class ThetaReport:
    involutive: bool
    preserves_u: bool
    automorphism: bool
    closed: bool
    witness: tuple = ()

    @property
    def ok(self) -> bool:
        return self.involutive and self.preserves_u and self.automorphism and self.closed


@lru_cache(maxsize=None)
def check_theta(real: MatrixRealization) -> ThetaReport:
    basis = real.basis_u
    span = real_span(basis)
    images = [real.theta(x) for x in basis]
    involutive = all(real.theta(t) == x for x, t in zip(basis, images))
    preserves = all(span.contains(t.realvec()) for t in images)
    auto = closed = True
    witness = ()
    for i, j in combinations_with_replacement(range(len(basis)), 2):
        if i == j:
            continue
        z = bracket(basis[i], basis[j])
        if closed and not span.contains(z.realvec()):
            closed = False
            witness = witness or ("bracket leaves u", i, j)
        if auto and real.theta(z) != bracket(images[i], images[j]):
            auto = False
            witness = witness or ("theta is not a homomorphism", i, j)
        if not (auto or closed):
            break
    return ThetaReport(involutive, preserves, auto, closed, witness)


@dataclass(frozen=True)
class Eigensplit:
    k: tuple
    p: tuple
    brackets_ok: bool
    witness: tuple = ()


@lru_cache(maxsize=None)
def eigensplit(real: MatrixRealization) -> Eigensplit:
    """The +1 (k) and -1 (p tilde) eigenspaces of theta on u."""
    rep = check_theta(real)
    if not (rep.involutive and rep.preserves_u):
        raise RealizationBug(f"theta is not an involution of u for row {real.row} at level {real.level}")
    k_part, p_part = [], []
    for x in real.basis_u:
        t = real.theta(x)
        k_part.append(x + t)
        p_part.append(x - t)
    k = _independent([m for m in k_part if m])
    p = _independent([m for m in p_part if m])
    if len(k) + len(p) != len(_independent(real.basis_u)):
        raise RealizationBug("eigenspace dimensions do not add up to dim u")
    ok, witness = _bracket_relations(real, k, p)
    return Eigensplit(tuple(k), tuple(p), ok, witness)


def _bracket_relations(real, k, p):
    def sign_ok(z, sign):
        return real.theta(z) == (z if sign > 0 else -z)

    for name, left, right, sign in (("[k,k]", k, k, 1), ("[k,p]", k, p, -1), ("[p,p]", p, p, 1)):
        for i, x in enumerate(left):
            for j, y in enumerate(right):
                if left is right and j <= i:
                    continue
                if not sign_ok(bracket(x, y), sign):
                    return False, (name, i, j)
    return True, ()


@lru_cache(maxsize=None)
def centralizer_m(real: MatrixRealization) -> tuple:
    """m = Z_k(a), with a spanned by the basis Y_k (the factor i does not matter)."""
    return tuple(centralizer(real.basis_a, eigensplit(real).k))


@dataclass(frozen=True)
class MaximalAbelianVerdict:
    maximal: bool
    in_p: bool
    commuting: bool
    dim_a: int
    dim_centralizer: int
    witness: Mat | None = None


def check_maximal_abelian(real: MatrixRealization, basis_a=None) -> MaximalAbelianVerdict:
    a = list(real.basis_a if basis_a is None else basis_a)
    split = eigensplit(real)
    pspan = real_span(split.p)
    in_p = all(real.theta(y) == -y and pspan.contains(y.realvec()) for y in a)
    commuting = all(not bracket(x, y) for i, x in enumerate(a) for y in a[i + 1 :])
    cent = centralizer(a, split.p)
    aspan = real_span(a)
    witness = next((z for z in cent if not aspan.contains(z.realvec())), None)
    dim_a = aspan.rank
    ok = in_p and commuting and witness is None and len(cent) == dim_a
    return MaximalAbelianVerdict(ok, in_p, commuting, dim_a, len(cent), witness)


# --- restricted roots -----------------------------------------------------------


def _apply(m: Mat, v: dict) -> dict:
    out: dict = {}
    for (i, j), x in m.entries.items():
        c = v.get(j)
        if c:
            t = out.get(i)
            out[i] = x * c if t is None else t + x * c
    return {k: x for k, x in out.items() if x}


def _gershgorin(m: Mat) -> int:
    rows: dict = {}
    for (i, _j), v in m.entries.items():
        rows[i] = rows.get(i, ZERO) + abs(v.re) + abs(v.im)
    return int(max(rows.values(), default=ZERO)) + 1


def joint_eigenbasis(hs, n: int):
    """Common eigenvectors of commuting diagonalizable matrices with half-integral spectrum.

    Returns (vectors, weights) with weights[p][k] the eigenvalue of hs[k] on vectors[p].
    """
    spaces = [([{i: ONE} for i in range(n)], ())]
    for h in hs:
        bound = _gershgorin(h)
        candidates = [Fraction(t, 2) for t in range(-2 * bound, 2 * bound + 1)]
        refined = []
        for vecs, w in spaces:
            found = 0
            for lam in candidates:
                images = []
                for v in vecs:
                    hv = _apply(h, v)
                    for key, x in v.items():
                        t = hv.get(key, ZERO) - lam * x
                        if t:
                            hv[key] = t
                        else:
                            hv.pop(key, None)
                    images.append(hv)
                deps = dependencies(images)
                if not deps:
                    continue
                found += len(deps)
                sub = []
                for d in deps:
                    acc: dict = {}
                    for j, c in d.items():
                        for key, x in vecs[j].items():
                            t = acc.get(key, ZERO) + c * x
                            if t:
                                acc[key] = t
                            else:
                                acc.pop(key, None)
                    sub.append(acc)
                refined.append((sub, w + (lam,)))
            if found != len(vecs):
                raise NotMaximalAbelian(
                    "ad(a) is not diagonalizable over the half-integers; the chosen a is not a Cartan-type subspace"
                )
        spaces = refined
    vectors, weights = [], []
    for vecs, w in spaces:
        for v in vecs:
            vectors.append(v)
            weights.append(w)
    return vectors, weights


@dataclass(frozen=True)
class Frame:
    P: Mat
    P_inv: Mat
    weights: tuple

    def to_frame(self, x: Mat) -> Mat:
        return self.P_inv @ x @ self.P

    def from_frame(self, x: Mat) -> Mat:
        return self.P @ x @ self.P_inv


@lru_cache(maxsize=None)
def eigenframe(real: MatrixRealization) -> Frame:
    hs = [y.scale(-_I) for y in real.basis_a]
    vectors, weights = joint_eigenbasis(hs, real.size)
    n = real.size
    P = Mat(n, {(i, p): x for p, v in enumerate(vectors) for i, x in v.items()})
    P_inv = Mat.from_dense(inverse(P.dense()))
    return Frame(P, P_inv, tuple(weights))


def _ecoords(real: MatrixRealization, values: tuple) -> tuple:
    """e-coordinates c with <c, x_k> = values[k] (plus sum 0 for A-type)."""
    rows = [list(x) for x in real.ecoords]
    rhs = list(values)
    if real.kind == "A":
        rows.append([ONE] * real.e_dim)
        rhs.append(ZERO)
    sol = solve_dense(rows, rhs)
    if sol is None:
        raise RealizationBug(f"root values {values} are not linear in the e-basis")
    return tuple(Fraction(x.re) if isinstance(x, GaussRat) else Fraction(x) for x in sol)


def is_positive(c: tuple) -> bool:
    for x in reversed(c):
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class RootDecomposition:
    row: str
    level: int
    rank: int
    # e-coordinates -> multiplicity, zero root excluded
    multiplicities: dict
    dim_g0: int
    dim_m: int
    dim_a: int
    indivisible: frozenset
    expected_kind: str
    found_kind: str | None
    # value tuples on H_1..H_r -> e-coordinates, for every weight difference seen
    frame_roots: dict = field(repr=False, default_factory=dict)

    @property
    def g0_ok(self) -> bool:
        return self.dim_g0 == self.dim_m + self.dim_a

    @property
    def type_ok(self) -> bool:
        return self.found_kind == self.expected_kind

    def positive_roots(self) -> list:
        return sorted((c for c in self.multiplicities if is_positive(c)), key=_root_key)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "dim_g0": self.dim_g0,
            "dim_m": self.dim_m,
            "dim_a": self.dim_a,
            "expected_type": f"{self.expected_kind}{self.rank}",
            "found_type": None if self.found_kind is None else f"{self.found_kind}{self.rank}",
            "roots": [
                {"root": [fmt_frac(x) for x in c], "multiplicity": self.multiplicities[c]}
                for c in sorted(self.multiplicities, key=_root_key)
            ],
        }


def _root_key(c):
    return (not is_positive(c), tuple(-x if is_positive(c) else x for x in reversed(c)))


def root_components(real: MatrixRealization, mats) -> dict:
    """Split each matrix (given in the original frame) by weight; returns weight -> list of entry dicts."""
    fr = eigenframe(real)
    out: dict = {}
    for idx, x in enumerate(mats):
        y = fr.to_frame(x)
        parts: dict = {}
        for (p, q), v in y.entries.items():
            alpha = tuple(a - b for a, b in zip(fr.weights[p], fr.weights[q]))
            parts.setdefault(alpha, {})[(p, q)] = v
        for alpha, comp in parts.items():
            out.setdefault(alpha, []).append((idx, comp))
    return out


def _complex_rank(vecs) -> int:
    e = Echelon()
    for comp in vecs:
        e.insert(comp)
    return e.rank


def identify_type(roots: set, rank: int, e_dim: int) -> str | None:
    """The classical type whose full root set equals ``roots`` in these coordinates."""
    for kind in KINDS:
        if rank < MIN_RANK[kind]:
            continue
        if (rank + 1 if kind == "A" else rank) != e_dim:
            continue
        sys_ = build_system(kind, rank, warn=False)
        if {r.coords for r in sys_.all_roots()} == roots:
            return kind
    return None


@lru_cache(maxsize=None)
def restricted_root_decomposition(real: MatrixRealization) -> RootDecomposition:
    comps = root_components(real, real.basis_u)
    zero = tuple(ZERO for _ in real.basis_a)
    mult, frame_roots = {}, {}
    dim_g0 = 0
    for alpha, items in comps.items():
        r = _complex_rank([c for _, c in items])
        if alpha == zero:
            dim_g0 = r
            continue
        if r:
            c = _ecoords(real, alpha)
            frame_roots[alpha] = c
            mult[c] = mult.get(c, 0) + r
    roots = set(mult)
    indivisible = frozenset(c for c in roots if tuple(2 * x for x in c) not in roots)
    found = identify_type(set(indivisible), real.rank, real.e_dim)
    return RootDecomposition(
        real.row,
        real.level,
        real.rank,
        mult,
        dim_g0,
        len(centralizer_m(real)),
        len(real.basis_a),
        indivisible,
        get_row(real.row).kind,
        found,
        frame_roots,
    )


# --- embedding forms ------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingVerdict:
    row: str
    level: int
    form: str
    claimed: str
    witness: Mat | None = None

    @property
    def matches_claim(self) -> bool:
        return self.form == self.claimed

    def to_json(self) -> dict:
        out = {"row": self.row, "level": self.level, "form": self.form, "claimed": self.claimed}
        if self.witness is not None:
            out["witness"] = _mat_json(self.witness)
        return out


def _mat_json(m: Mat) -> list:
    return [[i, j, repr(v)] for (i, j), v in sorted(m.entries.items())]


def _central(real: MatrixRealization) -> list[Mat]:
    n = real.size
    if real.layout == "pair":
        h = n // 2
        return [Mat(n, {(i, i): 1 for i in range(h)}), Mat(n, {(h + i, h + i): 1 for i in range(h)})]
    return [Mat.identity(n)]


def _complex_span(mats) -> Echelon:
    e = Echelon()
    for m in mats:
        e.insert({i * m.n + j: v for (i, j), v in m.entries.items()})
    return e


def check_embedding_form(row, n: int, p: int = DEFAULT_P, picture: str = "theta") -> EmbeddingVerdict:
    lo = realize(row, n, p, picture)
    hi = realize(row, n + 1, p, picture)
    base = "FormOne" if lo.layout == "center" else "FormTwo"
    slots = lo.slots(hi.size)
    inside = set(slots)
    exact = real_span(lo.basis_a)
    shifted = _complex_span(list(lo.basis_a) + _central(lo))
    form = base
    for y in hi.basis_a:
        cross = any((i in inside) != (j in inside) for (i, j) in y.entries)
        if cross:
            return EmbeddingVerdict(lo.row, n, "Fail", claimed_form(lo.row), y)
        blk = y.block(slots)
        if exact.contains(blk.realvec()):
            continue
        if shifted.contains({i * blk.n + j: v for (i, j), v in blk.entries.items()}):
            form = "FormThree"
            continue
        return EmbeddingVerdict(lo.row, n, "Fail", claimed_form(lo.row), y)
    return EmbeddingVerdict(lo.row, n, form, claimed_form(lo.row))


# --- admissibility --------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleVerdict:
    row: str
    k: int
    m: int
    admissible: bool
    certificate: dict
    witness: tuple = ()

    def to_json(self) -> dict:
        out = {
            "row": self.row,
            "k": self.k,
            "m": self.m,
            "verdict": "admissible" if self.admissible else "not admissible",
            "certificate": self.certificate,
        }
        if self.witness:
            name, mat = self.witness
            out["witness"] = {"check": name, "matrix": _mat_json(mat)}
        return out


def _positive_root_vectors(real: MatrixRealization) -> list[Mat]:
    """Complex root vectors spanning n_C, expressed in the original frame."""
    fr = eigenframe(real)
    dec = restricted_root_decomposition(real)
    out = []
    for alpha, items in root_components(real, real.basis_u).items():
        c = dec.frame_roots.get(alpha)
        if c is None or not is_positive(c):
            continue
        e = Echelon()
        for _, comp in items:
            if e.insert(comp):
                out.append(fr.from_frame(Mat(real.size, comp)))
    return out


def _in_positive_part(real: MatrixRealization, x: Mat) -> bool:
    fr = eigenframe(real)
    dec = restricted_root_decomposition(real)
    for (p, q), _v in fr.to_frame(x).entries.items():
        alpha = tuple(a - b for a, b in zip(fr.weights[p], fr.weights[q]))
        c = dec.frame_roots.get(alpha)
        if c is None or not is_positive(c):
            return False
    return True


def check_admissible(row, k: int, m: int, p: int = DEFAULT_P, picture: str = "theta") -> AdmissibleVerdict:
    if k > m:
        raise ValueError(f"need k <= m, got k={k}, m={m}")
    lo = realize(row, k, p, picture)
    hi = realize(row, m, p, picture)
    slots = lo.slots(hi.size)

    def inc(x):
        return x.embed(hi.size, slots)

    checks = {}
    witness = ()
    u_hi = real_span(hi.basis_u)
    bad = next((x for x in lo.basis_u if not u_hi.contains(inc(x).realvec())), None)
    checks["u_k in u_m"] = bad is None
    if bad is not None and not witness:
        witness = ("u_k in u_m", bad)

    bad = next((x for x in lo.basis_u if inc(lo.theta(x)) != hi.theta(inc(x))), None)
    checks["theta compatible"] = bad is None
    if bad is not None and not witness:
        witness = ("theta compatible", bad)

    m_lo, m_hi = centralizer_m(lo), centralizer_m(hi)
    m_span = real_span(m_hi)
    bad = next((x for x in m_lo if not m_span.contains(inc(x).realvec())), None)
    checks["m_k in m_m"] = bad is None
    if bad is not None and not witness:
        witness = ("m_k in m_m", bad)

    a_span = real_span(hi.basis_a)
    bad = next((x for x in lo.basis_a if not a_span.contains(inc(x).realvec())), None)
    checks["a_k in a_m"] = bad is None
    if bad is not None and not witness:
        witness = ("a_k in a_m", bad)

    bad = next((x for x in _positive_root_vectors(lo) if not _in_positive_part(hi, inc(x))), None)
    checks["n_k in n_m"] = bad is None
    if bad is not None and not witness:
        witness = ("n_k in n_m", bad)

    cert = {"dim_m_k": len(m_lo), "dim_m_m": len(m_hi), "layout": lo.layout, **checks}
    return AdmissibleVerdict(lo.row, k, m, all(checks.values()), cert, witness)


# --- the two pictures -----------------------------------------------------------


@dataclass(frozen=True)
class PictureComparison:
    row: str
    level: int
    conjugation_ok: bool
    roots_agree: bool

    @property
    def ok(self) -> bool:
        return self.conjugation_ok and self.roots_agree


def compare_pictures(row, n: int) -> PictureComparison:
    """J = E J~ E^-1 and equal root data for rows with a second involution picture."""
    theta = realize(row, n)
    tilde = realize(row, n, picture="tilde")
    E = e_sigma(row, n)
    E_inv = E.transpose()
    a_span = real_span(theta.basis_a)
    conj_ok = theta.J == E @ tilde.J @ E_inv
    conj_ok = conj_ok and all(a_span.contains((E @ y @ E_inv).realvec()) for y in tilde.basis_a)
    r1 = restricted_root_decomposition(theta).multiplicities
    r2 = restricted_root_decomposition(tilde).multiplicities
    return PictureComparison(str(row), n, conj_ok, r1 == r2)


# --- per-row report -------------------------------------------------------------


def default_levels(row, p: int = DEFAULT_P, top: int | None = None) -> list[int]:
    meta = get_row(row)
    first = meta.first_level(p)
    if top is None:
        top = first + 1 if meta.rank_stable else max(3, first + 1)
    return list(range(first, top + 1))


def level_report(row, n: int, p: int = DEFAULT_P) -> dict:
    real = realize(row, n, p)
    th = check_theta(real)
    split = eigensplit(real)
    ma = check_maximal_abelian(real)
    dec = restricted_root_decomposition(real)
    return {
        "level": n,
        "size": real.size,
        "dim_u": len(split.k) + len(split.p),
        "dim_k": len(split.k),
        "dim_p": len(split.p),
        "dim_a": ma.dim_a,
        "dim_m": dec.dim_m,
        "theta_ok": th.ok,
        "brackets_ok": split.brackets_ok,
        "maximal_abelian": ma.maximal,
        "g0_ok": dec.g0_ok,
        "type_ok": dec.type_ok,
        **dec.to_json(),
    }


def verify_row(row, levels=None, p: int = DEFAULT_P) -> dict:
    row = str(row)
    levels = default_levels(row, p) if levels is None else sorted(levels)
    out = {"row": row, "group": get_row(row).group, "levels": [level_report(row, n, p) for n in levels]}
    out["embedding"] = [check_embedding_form(row, n, p).to_json() for n in levels[:-1]]
    out["admissibility"] = [
        check_admissible(row, k, m, p).to_json() for i, k in enumerate(levels) for m in levels[i + 1 :]
    ]
    if row in ("9", "10_1", "10_2"):
        out["pictures"] = [
            {"level": n, "ok": compare_pictures(row, n).ok} for n in levels
        ]
    return out
