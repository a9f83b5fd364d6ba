"""Mapping-class data for surfaces and handlebodies.

Homology of the genus-g surface uses the interleaved basis
[a1], [b1], ..., [ag], [bg] with intersection pairing <ai, bi> = +1.
A right-handed Dehn twist along a curve of class c acts on homology by the
transvection x -> x + <x, c> c.  pi1-level twist actions are carried as
curated payloads (free-group automorphisms with inverse witnesses), never
derived from curve diagrams.

The handlebody convention: the inclusion of the boundary surface kills the
b-classes and sends [ai] to the i-th handlebody generator, so the standard
Lagrangian is span{[b1], ..., [bg]}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import (CatalogError, MalformedInputError, MissingPayloadError,
                     RankMismatchError)
from .matrices import IntMatrix, block_diag, in_row_span, smith_diagonal
from .words import FreeGroupMap, abelianize, compose


def symplectic_form(genus: int) -> IntMatrix:
    """Block-diagonal J with one [[0, 1], [-1, 0]] block per handle."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix.from_rows(rows) if n else IntMatrix.identity(0)


def is_symplectic(a: IntMatrix) -> bool:
    if a.rows != a.cols or a.rows % 2 != 0:
        return False
    j = symplectic_form(a.rows // 2)
    return a.transpose().mul(j).mul(a) == j


def intersection(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y) or len(x) % 2 != 0:
        raise RankMismatchError("intersection needs two vectors of equal even length")
    total = 0
    for i in range(len(x) // 2):
        total += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]
    return total


def standard_lagrangian(genus: int) -> IntMatrix:
    """Rows are the classes [b1], ..., [bg]."""
    rows = []
    for i in range(genus):
        v = [0] * (2 * genus)
        v[2 * i + 1] = 1
        rows.append(v)
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, 0)


def standard_quotient_basis(genus: int) -> IntMatrix:
    """Rows are the classes [a1], ..., [ag]; a basis of H1(surface)/Lagrangian."""
    rows = []
    for i in range(genus):
        v = [0] * (2 * genus)
        v[2 * i] = 1
        rows.append(v)
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, 0)


@dataclass(frozen=True)
class CurveSpec:
    genus: int
    homology_class: tuple[int, ...]
    pi1_payload: FreeGroupMap | None = None
    bounds_disk_in_handlebody: bool = False
    unknotted_in_ambient: bool = False
    fiber_framing_zero: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        vec = tuple(int(x) for x in self.homology_class)
        if len(vec) != 2 * self.genus:
            raise MalformedInputError("homology class must have length 2*genus")
        object.__setattr__(self, "homology_class", vec)
        if self.bounds_disk_in_handlebody and any(vec[2 * i] for i in range(self.genus)):
            raise MalformedInputError(
                "a curve bounding a disk in the handlebody must lie in span{[b_i]}")
        if self.pi1_payload is not None:
            if self.pi1_payload.rank != 2 * self.genus:
                raise RankMismatchError("pi1 payload must have rank 2*genus")
            if abelianize(self.pi1_payload) != transvection(self):
                raise MalformedInputError(
                    "pi1 payload must abelianize to the transvection of the class")

    def extend(self, new_genus: int, handle_offset: int = 0) -> "CurveSpec":
        """The same curve viewed on a larger surface (handles shifted up)."""
        if new_genus == self.genus and handle_offset == 0:
            return self
        if handle_offset < 0 or handle_offset + self.genus > new_genus:
            raise RankMismatchError("curve does not fit in the target surface")
        vec = [0] * (2 * new_genus)
        for k, x in enumerate(self.homology_class):
            vec[2 * handle_offset + k] = x
        payload = None
        if self.pi1_payload is not None:
            payload = self.pi1_payload.extend(2 * new_genus, 2 * handle_offset)
        name = self.name
        if name is not None and handle_offset:
            name = f"{name}+{handle_offset}"
        return CurveSpec(new_genus, tuple(vec), payload,
                         self.bounds_disk_in_handlebody, self.unknotted_in_ambient,
                         self.fiber_framing_zero, name)


def transvection(curve: "CurveSpec | Sequence[int]", multiplier: int = 1) -> IntMatrix:
    """Homological action of the m-th power of a right-handed Dehn twist:
    x -> x + m <x, c> c.  Computed as I - m (c c^T J); the closed form holds
    because c c^T J is square-zero."""
    vec = tuple(curve.homology_class) if isinstance(curve, CurveSpec) else tuple(curve)
    n = len(vec)
    if n % 2 != 0:
        raise MalformedInputError("homology class must have even length")
    j = symplectic_form(n // 2)
    jc = j.mul_vec(vec)  # column J c; (c c^T J)_{ik} = c_i (c^T J)_k = -c_i (J c)_k
    rows = [[(1 if i == k else 0) + multiplier * vec[i] * jc[k] for k in range(n)]
            for i in range(n)]
    return IntMatrix.from_rows(rows) if n else IntMatrix.identity(0)


@dataclass(frozen=True)
class SurfaceMonodromy:
    genus: int
    action: IntMatrix
    pi1_action: FreeGroupMap | None = None
    provenance: tuple[tuple[CurveSpec, int], ...] = ()

    def __post_init__(self):
        n = 2 * self.genus
        if (self.action.rows, self.action.cols) != (n, n):
            raise RankMismatchError("homological action must be 2g x 2g")
        if not is_symplectic(self.action):
            raise MalformedInputError("homological action must be symplectic")
        if self.pi1_action is not None:
            if self.pi1_action.rank != n:
                raise RankMismatchError("pi1 action must have rank 2g")
            if abelianize(self.pi1_action) != self.action:
                raise MalformedInputError("pi1 action must abelianize to the homological action")
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @classmethod
    def identity(cls, genus: int) -> "SurfaceMonodromy":
        return cls(genus, IntMatrix.identity(2 * genus), FreeGroupMap.identity(2 * genus))

    @classmethod
    def from_twist_word(cls, genus: int,
                        word: Sequence[tuple[CurveSpec, int]]) -> "SurfaceMonodromy":
        out = cls.identity(genus)
        for curve, m in word:
            out = compose_monodromy(out, twist_monodromy(curve, m))
        return out

    @property
    def has_pi1(self) -> bool:
        return self.pi1_action is not None


def _merge_twist_words(*words):
    stack: list[tuple[CurveSpec, int]] = []
    for word in words:
        for curve, m in word:
            if m == 0:
                continue
            if stack and stack[-1][0] == curve:
                total = stack[-1][1] + m
                stack.pop()
                if total:
                    stack.append((curve, total))
            else:
                stack.append((curve, m))
    return tuple(stack)


def twist_monodromy(curve: CurveSpec, multiplier: int = 1) -> SurfaceMonodromy:
    payload = None
    if curve.pi1_payload is not None:
        payload = curve.pi1_payload.power(multiplier)
    return SurfaceMonodromy(curve.genus, transvection(curve, multiplier), payload,
                            ((curve, multiplier),) if multiplier else ())


def compose_monodromy(m1: SurfaceMonodromy, m2: SurfaceMonodromy) -> SurfaceMonodromy:
    """m1 after m2: homological actions multiply, pi1 payloads compose when
    both are present."""
    if m1.genus != m2.genus:
        raise RankMismatchError("monodromies must share a genus")
    payload = None
    if m1.pi1_action is not None and m2.pi1_action is not None:
        payload = compose(m1.pi1_action, m2.pi1_action)
    return SurfaceMonodromy(m1.genus, m1.action.mul(m2.action), payload,
                            _merge_twist_words(m1.provenance, m2.provenance))


def mirror(m: SurfaceMonodromy) -> SurfaceMonodromy:
    """Invert the monodromy (the induced data of the reversed knot)."""
    payload = None
    if m.pi1_action is not None:
        if not m.pi1_action.has_witness:
            raise MissingPayloadError("mirror needs an inverse witness on the pi1 payload")
        payload = m.pi1_action.inverse()
    prov = tuple((c, -k) for c, k in reversed(m.provenance))
    return SurfaceMonodromy(m.genus, m.action.inverse_unimodular(), payload, prov)


def boundary_connected_sum(m1: SurfaceMonodromy, m2: SurfaceMonodromy) -> SurfaceMonodromy:
    genus = m1.genus + m2.genus
    action = block_diag(m1.action, m2.action)
    payload = None
    if m1.pi1_action is not None and m2.pi1_action is not None:
        n = 2 * genus
        images = tuple(w.shift(n, 0) for w in m1.pi1_action.images) + \
            tuple(w.shift(n, 2 * m1.genus) for w in m2.pi1_action.images)
        invs = None
        if m1.pi1_action.has_witness and m2.pi1_action.has_witness:
            invs = tuple(w.shift(n, 0) for w in m1.pi1_action.inverse_images) + \
                tuple(w.shift(n, 2 * m1.genus) for w in m2.pi1_action.inverse_images)
        payload = FreeGroupMap(n, images, invs)
    prov = _merge_twist_words(
        tuple((c.extend(genus, 0), k) for c, k in m1.provenance),
        tuple((c.extend(genus, m1.genus), k) for c, k in m2.provenance))
    return SurfaceMonodromy(genus, action, payload, prov)


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def cg_compatibility(action: IntMatrix, lagrangian: IntMatrix, quotient_action: IntMatrix,
                     quotient_basis: IntMatrix | None = None) -> CompatibilityReport:
    """Necessary homological condition for a surface monodromy to extend over
    a handlebody: the rows of `lagrangian` span a rank-g isotropic primitive
    direct summand, the action preserves that span, and the induced map on
    the quotient equals `quotient_action` under the supplied identification
    (rows of `quotient_basis`, defaulting to the standard [a_i] classes)."""
    if action.rows != action.cols or action.rows % 2 != 0:
        raise RankMismatchError("action must be a square 2g x 2g matrix")
    genus = action.rows // 2
    if not is_symplectic(action):
        raise MalformedInputError("action must be symplectic")
    if (lagrangian.rows, lagrangian.cols) != (genus, 2 * genus):
        raise RankMismatchError("lagrangian must be given by g rows of length 2g")
    if (quotient_action.rows, quotient_action.cols) != (genus, genus):
        raise RankMismatchError("quotient action must be g x g")
    if quotient_basis is None:
        quotient_basis = standard_quotient_basis(genus)
    if (quotient_basis.rows, quotient_basis.cols) != (genus, 2 * genus):
        raise RankMismatchError("quotient basis must be given by g rows of length 2g")

    failures: list[str] = []
    diag = smith_diagonal(lagrangian)
    if len([d for d in diag if d != 0]) != genus or any(d not in (0, 1) for d in diag):
        failures.append("rows do not span a rank-g primitive direct summand")
    j = symplectic_form(genus)
    if lagrangian.mul(j).mul(lagrangian.transpose()) != IntMatrix.zeros(genus, genus):
        failures.append("span is not isotropic")
    stacked = IntMatrix.from_rows(list(quotient_basis.entries) + list(lagrangian.entries))
    if abs(stacked.det()) != 1:
        failures.append("quotient basis and lagrangian do not form a basis")
    if not failures:
        for i in range(genus):
            image = action.mul_vec(lagrangian.row(i))
            if not in_row_span(lagrangian, image):
                failures.append(f"action moves lagrangian row {i + 1} out of the span")
        for jcol in range(genus):
            image = list(action.mul_vec(quotient_basis.row(jcol)))
            for i in range(genus):
                coeff = quotient_action.entries[i][jcol]
                for k in range(2 * genus):
                    image[k] -= coeff * quotient_basis.entries[i][k]
            if not in_row_span(lagrangian, tuple(image)):
                failures.append(f"induced quotient map differs from the given one "
                                f"on basis vector {jcol + 1}")
    return CompatibilityReport(not failures, tuple(failures))


@dataclass(frozen=True)
class HandlebodyMonodromy:
    genus: int
    pi1_action: FreeGroupMap
    boundary: SurfaceMonodromy

    def __post_init__(self):
        if self.pi1_action.rank != self.genus:
            raise RankMismatchError("handlebody pi1 action must have rank g")
        if not self.pi1_action.has_witness:
            raise MissingPayloadError("handlebody monodromy needs an inverse witness")
        if self.boundary.genus != self.genus:
            raise RankMismatchError("boundary monodromy genus must equal the handlebody genus")
        report = cg_compatibility(self.boundary.action, standard_lagrangian(self.genus),
                                  abelianize(self.pi1_action))
        if not report:
            raise MalformedInputError(
                "boundary is not compatible with the handlebody action: "
                + "; ".join(report.failures))


# --------------------------------------------------------------------------
# Curated catalog
# --------------------------------------------------------------------------

def _standard_curve(genus: int, kind: str, index: int, **flags) -> CurveSpec:
    """The core curves of the standard handles.  Payloads are the usual
    Nielsen transformations: twisting along a_i sends b_i to b_i a_i^-1,
    twisting along b_i sends a_i to a_i b_i."""
    if not 1 <= index <= genus:
        raise CatalogError(f"no handle {index} at genus {genus}")
    n = 2 * genus
    a, b = 2 * index - 1, 2 * index
    vec = [0] * n
    images = [[i + 1] for i in range(n)]
    invs = [[i + 1] for i in range(n)]
    if kind == "a":
        vec[a - 1] = 1
        images[b - 1] = [b, -a]
        invs[b - 1] = [b, a]
    elif kind == "b":
        vec[b - 1] = 1
        images[a - 1] = [a, b]
        invs[a - 1] = [a, -b]
    else:
        raise CatalogError(f"unknown curve kind {kind!r}")
    payload = FreeGroupMap.from_letters(n, images, invs)
    return CurveSpec(genus, tuple(vec), payload,
                     name=flags.pop("name", f"g{genus}_{kind}{index}"), **flags)


def _stallings_curve(which: int, sign: int) -> CurveSpec:
    """Stallings curves on the square-knot fiber (the boundary of the
    half-spun trefoil).  They arise as doubles of the two band-core arcs of
    the trefoil fiber, so their classes are [b1] and -[b2]; both bound disks
    in the genus-2 handlebody and have fiber framing zero."""
    n = 4
    images = [[1], [2], [3], [4]]
    invs = [[1], [2], [3], [4]]
    if which == 1:
        vec = (0, sign, 0, 0)
        images[0] = [1, 2]
        invs[0] = [1, -2]
    else:
        vec = (0, 0, 0, -sign)
        images[2] = [3, 4]
        invs[2] = [3, -4]
    payload = FreeGroupMap.from_letters(n, images, invs)
    suffix = "" if sign == 1 else "_neg"
    return CurveSpec(2, vec, payload, bounds_disk_in_handlebody=True,
                     unknotted_in_ambient=True, fiber_framing_zero=True,
                     name=f"square_knot_stallings_c{which}{suffix}")


def _trefoil_r() -> SurfaceMonodromy:
    return SurfaceMonodromy.from_twist_word(
        1, [(_standard_curve(1, "a", 1), 1), (_standard_curve(1, "b", 1), 1)])


_CATALOG_BUILDERS = {
    "unknot": lambda: SurfaceMonodromy.identity(0),
    "trefoil_R": _trefoil_r,
    "trefoil_L": lambda: mirror(_trefoil_r()),
    "figure8": lambda: SurfaceMonodromy.from_twist_word(
        1, [(_standard_curve(1, "a", 1), 1), (_standard_curve(1, "b", 1), -1)]),
    "square_knot": lambda: boundary_connected_sum(_trefoil_r(), mirror(_trefoil_r())),
    "granny_knot": lambda: boundary_connected_sum(_trefoil_r(), _trefoil_r()),
    "g1_a1": lambda: _standard_curve(1, "a", 1),
    "g1_b1": lambda: _standard_curve(1, "b", 1),
    "g2_a1": lambda: _standard_curve(2, "a", 1),
    "g2_b1": lambda: _standard_curve(2, "b", 1),
    "g2_a2": lambda: _standard_curve(2, "a", 2),
    "g2_b2": lambda: _standard_curve(2, "b", 2),
    "square_knot_stallings_c1": lambda: _stallings_curve(1, 1),
    "square_knot_stallings_c1_neg": lambda: _stallings_curve(1, -1),
    "square_knot_stallings_c2": lambda: _stallings_curve(2, 1),
    "square_knot_stallings_c2_neg": lambda: _stallings_curve(2, -1),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(_CATALOG_BUILDERS))


@lru_cache(maxsize=None)
def curated_payload(name: str) -> "CurveSpec | SurfaceMonodromy":
    try:
        builder = _CATALOG_BUILDERS[name]
    except KeyError:
        raise CatalogError(f"unknown catalog name {name!r}") from None
    return builder()
