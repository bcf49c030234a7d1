"""Twist-product classification of congruences and the prime spectrum.

Congruences are classified both elementwise (radical, strongly prime,
T-cancellative, proper) and against the enumerated lattice (semiprime,
prime, irreducible).  Reports assemble the prime spectrum, the positive
e-type part, and the explicit order-isomorphisms onto the idempotent image
and the quotient by the least one~e congruence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .congruences import (
    Congruence,
    CongruenceLattice,
    _components,
    diag_e,
    enumerate_congruences,
    is_congruence,
    meet,
)
from .constructions import quotient_pair
from .core import FiniteStructure, Pair, classify_pair, positive_e_type, validate_structure
from .errors import HypothesisFails, LatticeRequired, NoDisjointCongruence


# ---------------------------------------------------------------------------
# twist products of relations
# ---------------------------------------------------------------------------

def twist(pair: Pair, b: tuple[int, int], c: tuple[int, int]) -> tuple[int, int]:
    add, mul = pair.add, pair.mul
    b1, b2 = b
    c1, c2 = c
    return (
        int(add[mul[b1, c1], mul[b2, c2]]),
        int(add[mul[b1, c2], mul[b2, c1]]),
    )


def _members_of(rel) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(rel, Congruence):
        return rel.members
    if isinstance(rel, tuple) and len(rel) == 2:
        xs, ys = rel
        return (np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
    xs, ys = np.nonzero(np.asarray(rel, dtype=bool))
    return xs.astype(np.int64), ys.astype(np.int64)


def twist_set_product(pair: Pair, rel1, rel2) -> np.ndarray:
    """Elementwise twist products of two pair-sets, as a boolean matrix."""
    xs1, ys1 = _members_of(rel1)
    xs2, ys2 = _members_of(rel2)
    return _kernels.twist_fill(pair.add, pair.mul, xs1, ys1, xs2, ys2)


def twist_subset(pair: Pair, rel1, rel2, target) -> bool:
    """Whether every twist product of rel1 x rel2 lands inside target."""
    xs1, ys1 = _members_of(rel1)
    xs2, ys2 = _members_of(rel2)
    tgt = target.matrix if isinstance(target, Congruence) else np.asarray(target, dtype=bool)
    i, _ = _kernels.twist_subset_violation(pair.add, pair.mul, xs1, ys1, xs2, ys2, tgt)
    return i < 0


# ---------------------------------------------------------------------------
# radical
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqrtResult:
    """Union of the twist-square preimage chain; need not be a congruence."""

    matrix: np.ndarray
    depth: int
    is_equivalence: bool
    is_congruence: bool
    congruence: Optional[Congruence]

    def contains(self, x: int, y: int) -> bool:
        return bool(self.matrix[x, y])


def sqrt_phi(pair: Pair, cong: Congruence) -> SqrtResult:
    """Iterate S1 = Phi, S_{i+1} = preimage of S_i under twist squaring,
    until stable; the chain ascends so the fixpoint is the union."""
    cur = cong.matrix.copy()
    depth = 1
    while True:
        nxt = _kernels.sqrt_step(pair.add, pair.mul, cur)
        nxt = nxt | cur
        if (nxt == cur).all():
            break
        cur = nxt
        depth += 1
    trans = (cur[:, :, None] & cur[None, :, :]).any(axis=1)
    is_eq = not (trans & ~cur).any()
    cong_out = None
    is_cong = False
    if is_eq:
        blocks = _components(cur)
        ok, _ = is_congruence(pair, blocks)
        if ok:
            cong_out = Congruence(pair=pair, block_of=tuple(blocks))
            is_cong = True
    return SqrtResult(matrix=cur, depth=depth, is_equivalence=is_eq,
                      is_congruence=is_cong, congruence=cong_out)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceClassification:
    radical: bool
    strongly_prime: bool
    t_cancellative: bool
    proper: bool
    weakly_proper: bool
    contains_1e: Optional[bool]
    e_type: Optional[int]
    prime: Optional[bool]
    semiprime: Optional[bool]
    irreducible: Optional[bool]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def congruence_e_type(pair: Pair, cong: Congruence) -> Optional[int]:
    """Smallest k > 0 relating 1 + k*e and k*e, None without one (or without
    a Property-N witness)."""
    if pair.property_n is None:
        return None
    e = pair.property_n.e
    cur = e
    for k in range(1, pair.n + 1):
        if cong.related(int(pair.add[pair.one, cur]), cur):
            return k
        cur = int(pair.add[cur, e])
    return None


def improper_members(pair: Pair, cong: Congruence) -> list[tuple[int, int, bool]]:
    """All related (a, b) in T x A0, flagged very improper when a + b = a."""
    out = []
    for a in sorted(pair.tangible):
        for b in sorted(pair.a_zero):
            if cong.related(a, b):
                out.append((a, b, int(pair.add[a, b]) == a))
    return out


@dataclass(frozen=True)
class ImproperElement:
    a: int
    b: int
    very_improper: bool


def improper_scan(pair: Pair, cong: Congruence) -> list[ImproperElement]:
    return [ImproperElement(a, b, v) for a, b, v in improper_members(pair, cong)]


def classify_congruence_elementwise(pair: Pair, cong: Congruence) -> CongruenceClassification:
    add, mul = pair.add, pair.mul
    member = cong.matrix

    radical = _kernels.radical_violation(add, mul, member)[0] < 0
    if cong.is_all():
        strongly_prime = True
    else:
        nxs, nys = np.nonzero(~member)
        strongly_prime = _kernels.strongly_prime_violation(
            add, mul, member, nxs.astype(np.int64), nys.astype(np.int64)
        )[0] < 0
    t_cancellative = _kernels.t_cancel_violation(mul, member, pair.t_sorted)[0] < 0
    improper = improper_members(pair, cong)
    proper = not improper
    weakly_proper = not any(v for _, _, v in improper)
    w = pair.property_n
    contains_1e = cong.related(pair.one, w.e) if w is not None else None
    return CongruenceClassification(
        radical=radical, strongly_prime=strongly_prime, t_cancellative=t_cancellative,
        proper=proper, weakly_proper=weakly_proper, contains_1e=contains_1e,
        e_type=congruence_e_type(pair, cong),
        prime=None, semiprime=None, irreducible=None,
    )


def classify_congruence(pair: Pair, cong: Congruence,
                        lattice: Optional[CongruenceLattice]) -> CongruenceClassification:
    """Full classification; the lattice-quantified flags stay None when the
    enumeration was capped, and a missing lattice is an error."""
    base = classify_congruence_elementwise(pair, cong)
    if lattice is None:
        raise LatticeRequired("prime/semiprime/irreducible need the congruence lattice")
    if lattice.capped:
        return base

    i = lattice.find(cong)
    above = lattice.strictly_above(i)
    target = cong.matrix

    semiprime = True
    for j in above:
        if twist_subset(pair, lattice[j], lattice[j], target):
            semiprime = False
            break

    prime = True
    for j in above:
        for k in above:
            if twist_subset(pair, lattice[j], lattice[k], target):
                prime = False
                break
        if not prime:
            break

    irreducible = True
    for j in above:
        for k in above:
            if meet(lattice[j], lattice[k]).block_of == cong.block_of:
                irreducible = False
                break
        if not irreducible:
            break

    return CongruenceClassification(
        radical=base.radical, strongly_prime=base.strongly_prime,
        t_cancellative=base.t_cancellative, proper=base.proper,
        weakly_proper=base.weakly_proper, contains_1e=base.contains_1e,
        e_type=base.e_type, prime=prime, semiprime=semiprime, irreducible=irreducible,
    )


# ---------------------------------------------------------------------------
# the idempotent image A*e
# ---------------------------------------------------------------------------

def bare_pair(structure: FiniteStructure, tangible, a_zero, name: str = "") -> Pair:
    """Pair object without pair-level validation; congruence machinery only
    needs the tables, so images like A*e can be analyzed even when the
    designated one is not a unit."""
    return Pair(structure=structure, tangible=frozenset(tangible),
                a_zero=frozenset(a_zero), property_n=None, name=name)


def ae_pair(pair: Pair) -> tuple[Pair, np.ndarray]:
    """The multiplicative image A*e with inherited operations, plus the
    projection map from carrier indices to A*e indices (-1 off the image)."""
    e = pair.require_property_n().e
    img = pair.mul[:, e]
    elems = sorted(set(int(x) for x in img))
    pos = {x: i for i, x in enumerate(elems)}
    m = len(elems)
    add = np.zeros((m, m), dtype=np.int64)
    mul = np.zeros((m, m), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            sx = int(pair.add[x, y])
            px = int(pair.mul[x, y])
            if sx not in pos or px not in pos:
                raise HypothesisFails("A*e is not closed under the operations",
                                      witness=(pair.names[x], pair.names[y]))
            add[i, j] = pos[sx]
            mul[i, j] = pos[px]
    names = [pair.names[x] for x in elems]
    st = validate_structure(names, zero=pos[pair.zero], one=pos[int(img[pair.one])],
                            add=add, mul=mul)
    a0 = {pos[x] for x in elems if x in pair.a_zero}
    proj = np.array([pos[int(img[b])] for b in range(pair.n)], dtype=np.int64)
    return bare_pair(st, {pos[e]}, a0 | {pos[pair.zero]}, name=f"{pair.name}*e"), proj


def push_congruence(cong: Congruence, proj: np.ndarray, target: Pair) -> Optional[Congruence]:
    """Image of a congruence along a surjection; None when the image relation
    is not a congruence of the target."""
    m = target.n
    rel = np.zeros((m, m), dtype=bool)
    xs, ys = cong.members
    rel[proj[xs], proj[ys]] = True
    trans = (rel[:, :, None] & rel[None, :, :]).any(axis=1)
    if (trans & ~rel).any():
        return None
    blocks = _components(rel)
    ok, _ = is_congruence(target, blocks)
    if not ok:
        return None
    return Congruence(pair=target, block_of=tuple(blocks))


# ---------------------------------------------------------------------------
# spectrum report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoVerdict:
    applicable: bool
    holds: Optional[bool] = None
    detail: str = ""
    mapping: tuple = ()

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class SpectrumReport:
    """Primes come in two strengths and the engine tracks both: ``hspec``
    collects the lattice-quantified primes, ``strongly_prime_set`` the
    elementwise ones.  The two need not agree even on commutative semiring
    pairs of positive e-type (the engine finds counterexamples), so the
    isomorphism verdicts are computed for the strongly prime spectra, with
    the weak-prime verdicts reported alongside for comparison."""

    pair_name: str
    lattice: CongruenceLattice = field(repr=False)
    classifications: tuple[CongruenceClassification, ...]
    hspec: tuple[int, ...]
    spec_e: tuple[int, ...]
    radical_set: tuple[int, ...]
    strongly_prime_set: tuple[int, ...]
    strong_spec_e: tuple[int, ...]
    maximal_proper: tuple[int, ...]
    maximal_weakly_proper: tuple[int, ...]
    rd1: IsoVerdict
    rd2: IsoVerdict
    sp2i: IsoVerdict
    rd2_weak: IsoVerdict
    sp2i_weak: IsoVerdict

    def to_dict(self) -> dict:
        return {
            "pair": self.pair_name,
            "lattice_size": len(self.lattice),
            "congruences": [
                {"blocks": c.block_labels(), **self.classifications[i].to_dict()}
                for i, c in enumerate(self.lattice)
            ],
            "hspec": list(self.hspec),
            "spec_e": list(self.spec_e),
            "radical": list(self.radical_set),
            "strongly_prime": list(self.strongly_prime_set),
            "strong_spec_e": list(self.strong_spec_e),
            "maximal_proper": list(self.maximal_proper),
            "maximal_weakly_proper": list(self.maximal_weakly_proper),
            "verdict_radical_contains_1e": self.rd1.to_dict(),
            "verdict_spec_iso_ae": self.rd2.to_dict(),
            "verdict_spec_e_iso_quotient": self.sp2i.to_dict(),
            "verdict_spec_iso_ae_weak_primes": self.rd2_weak.to_dict(),
            "verdict_spec_e_iso_quotient_weak_primes": self.sp2i_weak.to_dict(),
        }


def _maximal(lattice: CongruenceLattice, idxs: list[int]) -> tuple[int, ...]:
    out = []
    for i in idxs:
        if not any(j != i and lattice.leq[i, j] for j in idxs):
            out.append(i)
    return tuple(out)


def _order_iso(leq_a: np.ndarray, idx_a: list[int], leq_b: np.ndarray,
               idx_b: list[int], mapping: dict[int, int]) -> bool:
    if sorted(mapping.values()) != sorted(idx_b):
        return False
    for i in idx_a:
        for j in idx_a:
            if bool(leq_a[i, j]) != bool(leq_b[mapping[i], mapping[j]]):
                return False
    return True


def _verdict_rd2(pair: Pair, lattice: CongruenceLattice, src: list[int],
                 strong: bool) -> IsoVerdict:
    cls = classify_pair(pair)
    if not (cls.has_property_n and cls.e_central and cls.positive_e_type):
        return IsoVerdict(applicable=False, detail="needs an e-central pair of positive e-type")
    try:
        ae, proj = ae_pair(pair)
    except HypothesisFails as exc:
        return IsoVerdict(applicable=True, holds=False, detail=str(exc))
    ae_lat = enumerate_congruences(ae)
    ae_cls = [classify_congruence(ae, c, ae_lat) for c in ae_lat]
    if strong:
        ae_spec = [i for i, c in enumerate(ae_cls) if c.strongly_prime]
    else:
        ae_spec = [i for i, c in enumerate(ae_cls) if c.prime]
    mapping = {}
    for i in src:
        image = push_congruence(lattice[i], proj, ae)
        if image is None:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} is not a congruence of A*e")
        try:
            mapping[i] = ae_lat.find(image)
        except KeyError:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} missing from the A*e lattice")
        if mapping[i] not in ae_spec:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} is not prime in A*e")
    ok = _order_iso(lattice.leq, src, ae_lat.leq, ae_spec, mapping)
    return IsoVerdict(
        applicable=True, holds=ok,
        detail=f"|spec(A)|={len(src)}, |spec(A*e)|={len(ae_spec)}",
        mapping=tuple(sorted(mapping.items())),
    )


def _verdict_sp2i(pair: Pair, lattice: CongruenceLattice, src: list[int],
                  strong: bool) -> IsoVerdict:
    cls = classify_pair(pair)
    if not (cls.has_property_n and cls.e_central):
        return IsoVerdict(applicable=False, detail="needs an e-central pair with a witness")
    de = diag_e(pair)
    qp = quotient_pair(pair, de, name=f"{pair.name}/diag_e")
    proj = np.asarray(de.block_of, dtype=np.int64)
    q_lat = enumerate_congruences(qp)
    q_cls = [classify_congruence(qp, c, q_lat) for c in q_lat]
    if strong:
        q_spec = [i for i, c in enumerate(q_cls) if c.strongly_prime]
    else:
        q_spec = [i for i, c in enumerate(q_cls) if c.prime]
    mapping = {}
    for i in src:
        if not de.refines(lattice[i]):
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"positive-e-type prime #{i} does not contain diag_e")
        image = push_congruence(lattice[i], proj, qp)
        if image is None:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} is not a congruence of the quotient")
        try:
            mapping[i] = q_lat.find(image)
        except KeyError:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} missing from the quotient lattice")
        if mapping[i] not in q_spec:
            return IsoVerdict(applicable=True, holds=False,
                              detail=f"image of prime #{i} is not prime in the quotient")
    ok = _order_iso(lattice.leq, src, q_lat.leq, q_spec, mapping)
    return IsoVerdict(
        applicable=True, holds=ok,
        detail=f"|spec_e(A)|={len(src)}, |spec(A/diag_e)|={len(q_spec)}",
        mapping=tuple(sorted(mapping.items())),
    )


def spectrum_report(pair: Pair, cap: Optional[int] = None) -> SpectrumReport:
    """Classify the whole lattice and assemble the spectrum verdicts."""
    lattice = enumerate_congruences(pair, cap)
    cls = tuple(classify_congruence(pair, c, lattice) for c in lattice)
    hspec = [i for i, c in enumerate(cls) if c.prime]
    spec_e = [i for i in hspec if cls[i].e_type is not None]
    radical_set = tuple(i for i, c in enumerate(cls) if c.radical)
    strongly = tuple(i for i, c in enumerate(cls) if c.strongly_prime)
    maximal_proper = _maximal(lattice, [i for i, c in enumerate(cls) if c.proper])
    maximal_weakly = _maximal(lattice, [i for i, c in enumerate(cls) if c.weakly_proper])

    strong = [i for i, c in enumerate(cls) if c.strongly_prime]
    strong_spec_e = [i for i in strong if cls[i].e_type is not None]

    pet = positive_e_type(pair)
    if pet is None:
        rd1 = IsoVerdict(applicable=False, detail="pair does not have positive e-type")
    else:
        bad = [i for i in radical_set if not cls[i].contains_1e]
        rd1 = IsoVerdict(applicable=True, holds=not bad,
                         detail="" if not bad else f"radical congruences missing (1,e): {bad}")

    rd2 = _verdict_rd2(pair, lattice, strong, strong=True)
    sp2i = _verdict_sp2i(pair, lattice, strong_spec_e, strong=True)
    rd2_weak = _verdict_rd2(pair, lattice, hspec, strong=False)
    sp2i_weak = _verdict_sp2i(pair, lattice, spec_e, strong=False)
    return SpectrumReport(
        pair_name=pair.name, lattice=lattice, classifications=cls,
        hspec=tuple(hspec), spec_e=tuple(spec_e), radical_set=radical_set,
        strongly_prime_set=tuple(strong), strong_spec_e=tuple(strong_spec_e),
        maximal_proper=maximal_proper, maximal_weakly_proper=maximal_weakly,
        rd1=rd1, rd2=rd2, sp2i=sp2i, rd2_weak=rd2_weak, sp2i_weak=sp2i_weak,
    )


# ---------------------------------------------------------------------------
# maximal congruences disjoint from a set
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaximalDisjointResult:
    congruences: tuple[Congruence, ...]
    prime: tuple[bool, ...]
    hypothesis_held: bool


def maximal_disjoint_congruence(pair: Pair, s_pairs,
                                lattice: Optional[CongruenceLattice] = None) -> MaximalDisjointResult:
    """Maximal lattice members disjoint from a set of doubled elements,
    with their prime verdicts; the multiplicativity hypothesis on the set is
    checked exhaustively over lattice pairs first."""
    s = [(int(x), int(y)) for x, y in s_pairs]
    if any(x == y for x, y in s):
        raise NoDisjointCongruence("the avoided set meets the diagonal")
    if lattice is None:
        lattice = enumerate_congruences(pair)

    def meets(i: int) -> bool:
        m = lattice[i].matrix
        return any(m[x, y] for x, y in s)

    meeting = [i for i in range(len(lattice)) if meets(i)]
    for i in meeting:
        for j in meeting:
            prod = twist_set_product(pair, lattice[i], lattice[j])
            if not any(prod[x, y] for x, y in s):
                raise HypothesisFails(
                    "product of two congruences meeting the set avoids it",
                    witness=(lattice[i].block_labels(), lattice[j].block_labels()),
                )

    disjoint = [i for i in range(len(lattice)) if not meets(i)]
    maximal = _maximal(lattice, disjoint)
    verdicts = tuple(
        bool(classify_congruence(pair, lattice[i], lattice).prime) for i in maximal
    )
    return MaximalDisjointResult(
        congruences=tuple(lattice[i] for i in maximal),
        prime=verdicts,
        hypothesis_held=True,
    )


@dataclass(frozen=True)
class ProperCongruenceReport:
    maximal_proper: tuple[Congruence, ...]
    maximal_weakly_proper: tuple[Congruence, ...]
    weakly_prime_proper: tuple[bool, ...]


def maximal_proper_congruences(pair: Pair, lattice: CongruenceLattice) -> ProperCongruenceReport:
    """Maximal proper and maximal weakly proper congruences; each of the
    latter is tested against twist products of congruences containing very
    improper elements."""
    cls = [classify_congruence_elementwise(pair, c) for c in lattice]
    proper_idx = [i for i, c in enumerate(cls) if c.proper]
    weakly_idx = [i for i, c in enumerate(cls) if c.weakly_proper]
    max_proper = _maximal(lattice, proper_idx)
    max_weakly = _maximal(lattice, weakly_idx)

    very = [i for i, c in enumerate(cls) if not c.weakly_proper]
    verdicts = []
    for i in max_weakly:
        target = lattice[i].matrix
        ok = True
        for j in very:
            for k in very:
                if twist_subset(pair, lattice[j], lattice[k], target):
                    ok = False
                    break
            if not ok:
                break
        verdicts.append(ok)
    return ProperCongruenceReport(
        maximal_proper=tuple(lattice[i] for i in max_proper),
        maximal_weakly_proper=tuple(lattice[i] for i in max_weakly),
        weakly_prime_proper=tuple(verdicts),
    )
