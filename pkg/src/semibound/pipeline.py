"""End-to-end verification of the size bound for one generating set."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import arithmetic, irreducibility, semigroup, structure
from .errors import CapExceeded, Inconclusive, InternalContradiction, NotIrreducible
from .irreducibility import IrreducibilityVerdict, Verdict
from .linalg import QMatrix, format_rational, parse_rational
from .semigroup import DEFAULT_CAP
from .structure import GGMReport


# --- wire format ----------------------------------------------------------


def matrix_to_json(m):
    if hasattr(m, "p"):
        return [list(row) for row in m.rows]
    return [[format_rational(a) for a in row] for row in m.rows]


def vector_to_json(v):
    return [format_rational(a) for a in v]


def parse_matrix(rows) -> QMatrix:
    return QMatrix([[parse_rational(a) for a in row] for row in rows])


def load_generators(data) -> list:
    """Generators from the input schema ``{"dimension": n, "generators": [...]}``."""
    if "generators" not in data:
        raise ValueError("input must have a 'generators' list")
    gens = [parse_matrix(g) for g in data["generators"]]
    if not gens:
        raise ValueError("at least one generator is required")
    n = data.get("dimension", gens[0].n)
    if any(g.n != n for g in gens):
        raise ValueError(f"every generator must be {n}x{n}")
    return gens


def dump_generators(gens) -> dict:
    return {"dimension": gens[0].n, "generators": [matrix_to_json(g) for g in gens]}


def verdict_to_json(v: IrreducibilityVerdict) -> dict:
    out = {"verdict": v.verdict.value, "certificate_kind": v.certificate_kind}
    if v.subspace is not None:
        out["subspace"] = [vector_to_json(w) for w in v.subspace]
    if v.element is not None:
        out["element"] = matrix_to_json(v.element)
        out["factor"] = vector_to_json(v.factor)
        out["vectors"] = {k: vector_to_json(w) for k, w in v.vectors.items()}
    return out


def ggm_to_json(g: GGMReport) -> dict:
    return {
        "ideal": list(g.ideal.element_indices),
        "left_faithful": g.left_faithful,
        "right_faithful": g.right_faithful,
        "left_witness": list(g.left_witness) if g.left_witness else None,
        "right_witness": list(g.right_witness) if g.right_witness else None,
        "unique_ideal": g.unique_ideal,
    }


# --- report ----------------------------------------------------------------


@dataclass
class BoundReport:
    n: int
    size: int
    irreducibility: IrreducibilityVerdict
    ggm: GGMReport
    ideal_size: int
    group_order: int
    aperiodic: bool
    p: int
    prescribed_prime: int
    bound: int
    image_count: int
    injective_mod_p: bool
    zero_separated: bool
    injectivity_criterion: bool
    torsion_violations: int
    bound_holds: bool
    stage_log: list = field(default_factory=list)

    @property
    def prime_overridden(self) -> bool:
        return self.p != self.prescribed_prime

    def to_dict(self) -> dict:
        return {
            "status": "bound_holds" if self.bound_holds else "bound_fails",
            "n": self.n,
            "size": self.size,
            "irreducibility": verdict_to_json(self.irreducibility),
            "ggm": ggm_to_json(self.ggm),
            "ideal_size": self.ideal_size,
            "group_order": self.group_order,
            "aperiodic": self.aperiodic,
            "p": self.p,
            "prescribed_prime": self.prescribed_prime,
            "prime_overridden": self.prime_overridden,
            "bound": str(self.bound),
            "image_count": self.image_count,
            "injective_mod_p": self.injective_mod_p,
            "zero_separated": self.zero_separated,
            "injectivity_criterion": self.injectivity_criterion,
            "torsion_violations": self.torsion_violations,
            "bound_holds": self.bound_holds,
            "stage_log": self.stage_log,
        }


def verify_bound(generators, cap: int = DEFAULT_CAP, prime_override: Optional[int] = None) -> BoundReport:
    """Run every step of the size-bound argument on the semigroup generated by ``generators``.

    Raises CapExceeded, NotIrreducible or Inconclusive for inputs outside the
    hypotheses, and InternalContradiction if a step the theory guarantees
    fails.  Each exception carries the partial report in ``.report``.
    """
    gens = [g if isinstance(g, QMatrix) else QMatrix(g) for g in generators]
    n = gens[0].n
    log = []
    partial = {"n": n, "stage_log": log}

    try:
        table = semigroup.closure(gens, cap)
    except CapExceeded as exc:
        partial["status"] = "cap_exceeded"
        partial["cap"] = cap
        raise CapExceeded(cap, partial) from exc
    S = semigroup.adjoin_zero(table)
    partial["size"] = len(S)
    log.append({
        "stage": "closure",
        "closure_size": len(table),
        "size_with_zero": len(S),
        "zero_adjoined": table.zero_index is None,
        "generator_indices": list(S.generator_indices),
        "zero_index": S.zero_index,
    })

    verdict = irreducibility.is_irreducible(S)
    partial["irreducibility"] = verdict_to_json(verdict)
    log.append({"stage": "irreducibility", **verdict_to_json(verdict)})
    if verdict.verdict is Verdict.REDUCIBLE:
        partial["status"] = "reducible"
        raise NotIrreducible(verdict, partial)
    if verdict.verdict is Verdict.INCONCLUSIVE:
        partial["status"] = "inconclusive"
        raise Inconclusive(verdict, partial)

    def contradiction(msg):
        partial["status"] = "internal_contradiction"
        partial["error"] = msg
        return InternalContradiction(msg, partial)

    conj = arithmetic.integralize(S)
    S_int = conj.table(S)
    log.append({
        "stage": "integralize",
        "basis_matrix": matrix_to_json(conj.basis_matrix),
        "inverse": matrix_to_json(conj.inverse),
        "lattice_basis": [list(map(str, c)) for c in conj.lattice.basis],
        "lattice_scale": conj.scale,
    })

    green = semigroup.green_relations(S)
    stab = semigroup.check_stability(S, green)
    if not stab.ok:
        raise contradiction(f"stability fails at {stab.witness}")
    ideal = structure.zero_minimal_ideal(S, green)
    ggm = structure.verify_ggm(S, green)
    log.append({"stage": "ggm", **ggm_to_json(ggm)})
    if not ggm.is_ggm:
        raise contradiction("irreducible semigroup is not generalized group mapping")
    if not ggm.unique_ideal:
        raise contradiction("generalized group mapping semigroup has several 0-minimal ideals")

    span = structure.span_contains_identity(S, ideal)
    if span is None:
        raise contradiction("identity is not in the span of the 0-minimal ideal")
    log.append({
        "stage": "span_identity",
        "support": list(span.support),
        "coefficients": [format_rational(c) for c in span.coefficients],
    })

    z = S.zero_index
    e = next(i for i in sorted(ideal) if i != z and S.product[i][i] == i)
    G = semigroup.maximal_subgroup_at(S, e, green)
    log.append({
        "stage": "maximal_subgroup",
        "identity_index": e,
        "elements": list(G.element_indices),
        "order": G.order,
    })

    prescribed = arithmetic.choose_prime(G)
    p = prime_override if prime_override is not None else prescribed
    log.append({"stage": "prime", "p": p, "prescribed": prescribed, "overridden": p != prescribed})

    adapted = arithmetic.adapt_idempotent_basis(S_int.elements[e])
    S_adapted = S_int.relabel([adapted.conjugate(m) for m in S_int.elements])
    log.append({
        "stage": "adapted_basis",
        "U": matrix_to_json(adapted.U),
        "r": adapted.r,
    })

    image = arithmetic.mod_p(S_adapted, p, ideal)
    e_image_nonzero = not image.images[e].is_zero()
    criterion = structure.injectivity_criterion(S, ideal, G, image.images, green)
    log.append({
        "stage": "mod_p",
        "p": p,
        "images": [matrix_to_json(m) for m in image.images],
        "distinct": image.distinct,
        "injective": image.injective,
        "zero_separated": image.zero_separated,
        "idempotent_image_nonzero": e_image_nonzero,
        "criterion": criterion,
    })

    blocks = arithmetic.group_block(adapted, S_int, G)
    torsion = arithmetic.minkowski_check(blocks, p)
    log.append({
        "stage": "minkowski",
        "p": p,
        "blocks": [matrix_to_json(b) for b in blocks],
        "violations": [matrix_to_json(v) for v in torsion.violations],
    })
    if not torsion.ok:
        raise contradiction("congruence kernel contains forbidden torsion")

    bound = p ** (n * n)
    size = len(S)
    if p == prescribed:
        if not e_image_nonzero:
            raise contradiction("reduction kills the idempotent")
        if not image.zero_separated:
            raise contradiction("reduction does not separate 0 from the ideal")
        if not image.injective:
            raise contradiction("reduction with the prescribed prime is not injective")
    if image.injective and not (image.distinct == size <= bound):
        raise contradiction("injective reduction but the image count exceeds the bound")

    return BoundReport(
        n=n,
        size=size,
        irreducibility=verdict,
        ggm=ggm,
        ideal_size=len(ideal),
        group_order=G.order,
        aperiodic=semigroup.is_aperiodic(S, green),
        p=p,
        prescribed_prime=prescribed,
        bound=bound,
        image_count=image.distinct,
        injective_mod_p=image.injective,
        zero_separated=image.zero_separated,
        injectivity_criterion=criterion,
        torsion_violations=len(torsion.violations),
        bound_holds=size <= bound,
        stage_log=log,
    )


# --- corpus ----------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    dimension: int
    generators: tuple
    expected_size: Optional[int]
    expected_irreducible: bool
    notes: str = ""
    cap: Optional[int] = None

    @property
    def expected_outcome(self) -> str:
        if self.expected_size is None:
            return "cap_exceeded"
        return "bound_holds" if self.expected_irreducible else "reducible"


def _q(rows):
    return QMatrix(rows)


def standard_representation(m: int) -> list:
    """Generators of the symmetric group on m letters acting on the sum-zero
    hyperplane, in the basis e_i - e_m (i < m): a transposition and an m-cycle.
    """

    def matrix(perm):
        # perm maps letter i to perm[i]; f_i = e_i - e_m and f_m = 0
        k = m - 1
        cols = []
        for i in range(k):
            col = [0] * k
            if perm[i] < k:
                col[perm[i]] += 1
            if perm[m - 1] < k:
                col[perm[m - 1]] -= 1
            cols.append(col)
        return QMatrix.from_columns(cols)

    swap = list(range(m))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % m for i in range(m)]
    return [matrix(swap), matrix(cycle)]


def corpus() -> list:
    E = lambda i, j: QMatrix.unit(2, i, j)  # noqa: E731
    return [
        CorpusEntry("sign", 1, (_q([[-1]]),), 3, True, "{1, -1, 0}; attains 3^(n^2) at n = 1"),
        CorpusEntry("brandt_b2", 2, (E(0, 1), E(1, 0)), 5, True, "matrix units; aperiodic"),
        CorpusEntry(
            "sym3_standard",
            2,
            (_q([[0, -1], [1, -1]]), _q([[0, -1], [-1, 0]])),
            7,
            True,
            "2-dimensional representation of S_3 with 0 adjoined",
        ),
        CorpusEntry(
            "sym3_rational",
            2,
            (_q([[0, "-1/2"], [2, -1]]), _q([[0, "-1/2"], [-2, 0]])),
            7,
            True,
            "sym3_standard conjugated by diag(2, 1); needs a non-trivial lattice",
        ),
        CorpusEntry(
            "sym4_standard", 3, tuple(standard_representation(4)), 25, True,
            "3-dimensional representation of S_4 with 0 adjoined",
        ),
        CorpusEntry(
            "signed_perm_2",
            2,
            (_q([[0, 1], [1, 0]]), _q([[-1, 0], [0, 1]])),
            9,
            True,
            "dihedral group of order 8 with 0 adjoined",
        ),
        CorpusEntry(
            "rook_monoid_2",
            2,
            (_q([[0, 1], [1, 0]]), E(0, 0)),
            7,
            True,
            "partial permutation matrices; span is all of M_2",
        ),
        CorpusEntry(
            "cyclic3_rotation",
            2,
            (_q([[0, -1], [1, -1]]),),
            4,
            True,
            "irreducible over Q but not absolutely; needs the Norton certificate",
        ),
        CorpusEntry("reducible_demo", 2, (QMatrix.identity(2), E(0, 0)), 3, False, "e_1 spans an invariant line"),
        CorpusEntry(
            "half_integer_involution",
            2,
            (_q([[0, "1/2"], [2, 0]]),),
            3,
            False,
            "non-integral involution; fixes (1, 2)",
        ),
        CorpusEntry("doubling", 1, (_q([[2]]),), None, True, "powers of 2; infinite", cap=64),
    ]


def corpus_entry(name: str) -> CorpusEntry:
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def run_entry(entry: CorpusEntry, cap: int = DEFAULT_CAP, prime_override: Optional[int] = None) -> dict:
    """Outcome of verify_bound on one corpus entry as a JSON-ready dict."""
    cap = min(cap, entry.cap) if entry.cap else cap
    out = {
        "name": entry.name,
        "dimension": entry.dimension,
        "expected_size": entry.expected_size,
        "expected_irreducible": entry.expected_irreducible,
        "expected_outcome": entry.expected_outcome,
    }
    try:
        report = verify_bound(entry.generators, cap=cap, prime_override=prime_override).to_dict()
    except (CapExceeded, NotIrreducible, Inconclusive, InternalContradiction) as exc:
        report = exc.report
    out["outcome"] = report["status"]
    out["matches_expectation"] = out["outcome"] == entry.expected_outcome and (
        entry.expected_size is None or report.get("size") == entry.expected_size
    )
    out["report"] = report
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
