"""Quivers, path rewriting, bounded Knuth-Bendix completion, basis
enumeration, and the gentle / skew-gentle validators.

Convention: paths compose left to right, so "a*b" means "a then b" and a
product p*q is nonzero only when target(p) = source(q).  The rewriting
order is length-first, then lexicographic on the declared arrow order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field
from .algebra import FdAlgebra, make_algebra, validate_algebra, _check_radical_span, RadicalError


class QuiverError(ValueError):
    pass


class RewritingError(ValueError):
    pass


class InconclusiveConfluenceError(RewritingError):
    """Completion did not stabilize within the degree cap."""


class NotFiniteWithinCapError(RewritingError):
    """An irreducible path of maximal allowed length exists."""


@dataclass(frozen=True)
class Arrow:
    id: str
    source: object
    target: object

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise QuiverError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.id} has undeclared endpoint")

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise QuiverError(f"unknown arrow {aid!r}")


def make_quiver(vertices: Sequence, arrows: Sequence[Tuple]) -> Quiver:
    return Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))


# A path is (source_vertex, tuple_of_arrow_ids); length-0 paths are lazy
# vertex idempotents.
Path = Tuple[object, Tuple[str, ...]]


def path_target(q: Quiver, p: Path):
    src, arrows = p
    return q.arrow(arrows[-1]).target if arrows else src


def path_concat(q: Quiver, p: Path, r: Path) -> Optional[Path]:
    if path_target(q, p) != r[0]:
        return None
    return (p[0], p[1] + r[1])


@dataclass(frozen=True)
class Rule:
    lhs: Tuple[str, ...]
    rhs: Tuple[Tuple[Path, object], ...]  # pairs (path, coefficient)


@dataclass(frozen=True)
class RewritingSystem:
    quiver: Quiver
    field: Field
    rules: Tuple[Rule, ...]

    def __post_init__(self):
        rank = {a.id: i for i, a in enumerate(self.quiver.arrows)}
        for rule in self.rules:
            if len(rule.lhs) < 1:
                raise RewritingError("rule lhs must have length >= 1")
            src = self._check_composable(rule.lhs)
            tgt = path_target(self.quiver, (src, rule.lhs))
            lhs_key = _order_key(rank, rule.lhs)
            for path, coeff in rule.rhs:
                if self.field.is_zero(coeff):
                    raise RewritingError("zero coefficient in rule rhs")
                if path[0] != src or path_target(self.quiver, path) != tgt:
                    raise RewritingError(
                        f"rhs path {path} not parallel to lhs {rule.lhs}")
                if _order_key(rank, path[1]) >= lhs_key:
                    raise RewritingError(
                        f"rhs path {path} not smaller than lhs {rule.lhs}")

    def _check_composable(self, arrows: Tuple[str, ...]):
        src = self.quiver.arrow(arrows[0]).source
        cur = src
        for aid in arrows:
            a = self.quiver.arrow(aid)
            if a.source != cur:
                raise RewritingError(f"arrows {arrows} are not composable")
            cur = a.target
        return src

    def arrow_rank(self) -> Dict[str, int]:
        return {a.id: i for i, a in enumerate(self.quiver.arrows)}


def _order_key(rank: Dict[str, int], arrows: Tuple[str, ...]):
    return (len(arrows), tuple(rank[a] for a in arrows))


def make_rewriting_system(
    quiver: Quiver, field: Field, rules: Sequence
) -> RewritingSystem:
    """rules: sequence of (lhs_arrow_ids, rhs) with rhs a list of
    (coefficient, arrow_id_list) pairs (empty list = the path is zero)."""
    built = []
    for lhs, rhs in rules:
        lhs = tuple(lhs)
        src = quiver.arrow(lhs[0]).source
        rhs_terms = []
        for coeff, arrows in rhs:
            coeff = field.parse(coeff) if isinstance(coeff, (int, str)) else coeff
            arrows = tuple(arrows)
            rsrc = quiver.arrow(arrows[0]).source if arrows else src
            rhs_terms.append(((rsrc, arrows), coeff))
        built.append(Rule(lhs, tuple(rhs_terms)))
    return RewritingSystem(quiver, field, tuple(built))


def is_monomial(rs: RewritingSystem) -> bool:
    return all(not rule.rhs for rule in rs.rules)


# -- rewriting ---------------------------------------------------------------

def _reduce_once(rs: RewritingSystem, path: Path) -> Optional[Dict[Path, object]]:
    """One leftmost rewrite step, or None if the path is irreducible."""
    src, arrows = path
    n = len(arrows)
    for pos in range(n):
        for rule in rs.rules:
            L = len(rule.lhs)
            if pos + L <= n and arrows[pos:pos + L] == rule.lhs:
                out: Dict[Path, object] = {}
                for (rp_src, rp_arrows), coeff in rule.rhs:
                    new = (src, arrows[:pos] + rp_arrows + arrows[pos + L:])
                    cur = out.get(new, rs.field.zero)
                    out[new] = rs.field.add(cur, coeff)
                return {p: c for p, c in out.items() if not rs.field.is_zero(c)}
    return None


def normal_form(rs: RewritingSystem, poly: Dict[Path, object]) -> Dict[Path, object]:
    F = rs.field
    out: Dict[Path, object] = {}
    work = [(p, c) for p, c in poly.items() if not F.is_zero(c)]
    while work:
        path, coeff = work.pop()
        red = _reduce_once(rs, path)
        if red is None:
            cur = out.get(path, F.zero)
            nv = F.add(cur, coeff)
            if F.is_zero(nv):
                out.pop(path, None)
            else:
                out[path] = nv
        else:
            for p2, c2 in red.items():
                work.append((p2, F.mul(coeff, c2)))
    return out


def is_irreducible(rs: RewritingSystem, arrows: Tuple[str, ...]) -> bool:
    for pos in range(len(arrows)):
        for rule in rs.rules:
            L = len(rule.lhs)
            if pos + L <= len(arrows) and arrows[pos:pos + L] == rule.lhs:
                return False
    return True


# -- completion --------------------------------------------------------------

MAX_COMPLETION_RULES = 1000


def default_degree_cap(rs: RewritingSystem) -> int:
    total_rel_len = sum(len(rule.lhs) for rule in rs.rules)
    return 2 * (len(rs.quiver.arrows) + total_rel_len)


def complete(rs: RewritingSystem, degree_cap: Optional[int] = None) -> RewritingSystem:
    """Resolve all overlap ambiguities up to the degree cap.

    Every added rule comes from an unresolved overlap difference; raises
    InconclusiveConfluenceError when completion does not stabilize.
    """
    if degree_cap is None:
        degree_cap = default_degree_cap(rs)
    F = rs.field
    rank = rs.arrow_rank()
    rules: List[Rule] = list(rs.rules)

    def current() -> RewritingSystem:
        return RewritingSystem(rs.quiver, F, tuple(rules))

    def poly_from_arrows(src, arrows) -> Dict[Path, object]:
        return {(src, tuple(arrows)): F.one}

    def rule_from_difference(diff: Dict[Path, object], overlap) -> Rule:
        lead = max(diff, key=lambda p: _order_key(rank, p[1]))
        if not lead[1]:
            raise InconclusiveConfluenceError(
                f"overlap {overlap} forces a vertex relation")
        c_lead = diff[lead]
        rhs = tuple(
            (p, F.neg(F.div(c, c_lead))) for p, c in diff.items() if p != lead
        )
        return Rule(lead[1], rhs)

    pairs = [(i, j) for i in range(len(rules)) for j in range(len(rules))]
    while pairs:
        i, j = pairs.pop(0)
        r1, r2 = rules[i], rules[j]
        l1, l2 = r1.lhs, r2.lhs
        sys_now = current()
        ambiguities = []
        # proper overlaps: suffix of l1 equals prefix of l2
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                word = l1 + l2[k:]
                if len(word) > degree_cap:
                    continue
                src = sys_now.quiver.arrow(word[0]).source
                red1: Dict[Path, object] = {}
                for (rp_src, rp_arrows), c in r1.rhs:
                    p = (src, rp_arrows + l2[k:])
                    red1[p] = F.add(red1.get(p, F.zero), c)
                red2: Dict[Path, object] = {}
                pre = l1[:len(l1) - k]
                for (rp_src, rp_arrows), c in r2.rhs:
                    psrc = src
                    p = (psrc, pre + rp_arrows)
                    red2[p] = F.add(red2.get(p, F.zero), c)
                ambiguities.append((word, red1, red2))
        # containment: l2 strictly inside l1
        if len(l2) < len(l1):
            for pos in range(len(l1) - len(l2) + 1):
                if l1[pos:pos + len(l2)] == l2:
                    src = sys_now.quiver.arrow(l1[0]).source
                    red1 = {}
                    for (rp_src, rp_arrows), c in r1.rhs:
                        p = (src, rp_arrows)
                        red1[p] = F.add(red1.get(p, F.zero), c)
                    red2 = {}
                    for (rp_src, rp_arrows), c in r2.rhs:
                        p = (src, l1[:pos] + rp_arrows + l1[pos + len(l2):])
                        red2[p] = F.add(red2.get(p, F.zero), c)
                    ambiguities.append((l1, red1, red2))
        for word, red1, red2 in ambiguities:
            nf1 = normal_form(sys_now, red1)
            nf2 = normal_form(sys_now, red2)
            diff: Dict[Path, object] = dict(nf1)
            for p, c in nf2.items():
                cur = diff.get(p, F.zero)
                nv = F.sub(cur, c)
                if F.is_zero(nv):
                    diff.pop(p, None)
                else:
                    diff[p] = nv
            if not diff:
                continue
            new_rule = rule_from_difference(diff, word)
            if len(new_rule.lhs) > degree_cap:
                raise InconclusiveConfluenceError(
                    f"unresolved overlap {word} needs a rule beyond the cap "
                    f"{degree_cap}")
            idx = len(rules)
            rules.append(new_rule)
            if len(rules) > MAX_COMPLETION_RULES:
                raise InconclusiveConfluenceError(
                    f"completion generated more than {MAX_COMPLETION_RULES} rules"
                )
            pairs.extend((idx, t) for t in range(len(rules)))
            pairs.extend((t, idx) for t in range(len(rules) - 1))
            sys_now = current()
    return current()


# -- basis enumeration -------------------------------------------------------

def enumerate_basis(rs: RewritingSystem, length_cap: Optional[int] = None) -> FdAlgebra:
    """Realize the quotient algebra with basis the irreducible paths.

    Fails when an irreducible path of length length_cap exists (dimension
    not certified finite).  Vertex paths become designated idempotents; the
    arrow-ideal span is designated as the radical only when it is actually
    nilpotent (it is not for relations like e*e -> e).
    """
    if length_cap is None:
        length_cap = default_degree_cap(rs)
    F = rs.field
    q = rs.quiver
    paths: List[Path] = [(v, ()) for v in q.vertices]
    frontier = list(paths)
    for length in range(1, length_cap + 1):
        new: List[Path] = []
        for p in frontier:
            tgt = path_target(q, p)
            for a in q.arrows:
                if a.source == tgt:
                    cand = (p[0], p[1] + (a.id,))
                    if is_irreducible(rs, cand[1]):
                        new.append(cand)
        if new and length == length_cap:
            raise NotFiniteWithinCapError(
                f"irreducible path of length {length_cap} exists "
                f"(e.g. {'*'.join(new[0][1])}); dimension not certified finite")
        if not new:
            break
        paths.extend(new)
        frontier = new

    index = {p: i for i, p in enumerate(paths)}
    dim = len(paths)

    def label(p: Path) -> str:
        return f"e_{p[0]}" if not p[1] else "*".join(p[1])

    structure = []
    for p in paths:
        row = []
        for r in paths:
            vec = [F.zero] * dim
            concat = path_concat(q, p, r)
            if concat is not None:
                for mono, c in normal_form(rs, {concat: F.one}).items():
                    if mono not in index:
                        raise RewritingError(
                            f"normal form left the enumerated basis at {mono}; "
                            "system not confluent below the cap")
                    vec[index[mono]] = c
            row.append(tuple(vec))
        structure.append(tuple(row))

    unit = [F.zero] * dim
    idempotents = []
    for v in q.vertices:
        i = index[(v, ())]
        unit[i] = F.one
        e = [F.zero] * dim
        e[i] = F.one
        idempotents.append(tuple(e))
    arrow_ideal = []
    for p in paths:
        if p[1]:
            e = [F.zero] * dim
            e[index[p]] = F.one
            arrow_ideal.append(tuple(e))

    alg = FdAlgebra(F, dim, tuple(label(p) for p in paths), tuple(structure),
                    tuple(unit), tuple(idempotents), None)
    validate_algebra(alg)
    if arrow_ideal:
        try:
            _check_radical_span(alg, arrow_ideal)
            alg = FdAlgebra(F, dim, alg.basis_labels, alg.structure, alg.unit,
                            alg.idempotents, tuple(arrow_ideal))
        except RadicalError:
            pass  # e.g. a special-loop relation e*e -> e: arrow ideal not nilpotent
    return alg


# -- validation reports ------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class ValidationReport:
    conditions: Tuple[ConditionResult, ...]
    extra: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


# -- gentle and skew-gentle --------------------------------------------------

def validate_gentle(q: Quiver, rels: Sequence[Tuple[str, str]]) -> ValidationReport:
    """GP1-GP4 with witnesses; failures are report rows, not exceptions."""
    rels = {tuple(r) for r in rels}
    for a, b in rels:
        if q.arrow(a).target != q.arrow(b).source:
            raise QuiverError(f"relation {a}*{b} is not a composable length-2 path")
    conditions: List[ConditionResult] = []

    gp1_witness = None
    for v in q.vertices:
        outs = [a for a in q.arrows if a.source == v]
        ins = [a for a in q.arrows if a.target == v]
        if len(outs) > 2 or len(ins) > 2:
            gp1_witness = f"vertex {v}"
            break
    conditions.append(ConditionResult("GP1", gp1_witness is None, gp1_witness))

    gp2_witness = None
    gp3_witness = None
    for a in q.arrows:
        succ_out = [b for b in q.arrows
                    if a.target == b.source and (a.id, b.id) not in rels]
        pred_out = [g for g in q.arrows
                    if g.target == a.source and (g.id, a.id) not in rels]
        if gp2_witness is None and (len(succ_out) > 1 or len(pred_out) > 1):
            gp2_witness = f"arrow {a.id}"
        succ_in = [b for b in q.arrows
                   if a.target == b.source and (a.id, b.id) in rels]
        pred_in = [g for g in q.arrows
                   if g.target == a.source and (g.id, a.id) in rels]
        if gp3_witness is None and (len(succ_in) > 1 or len(pred_in) > 1):
            gp3_witness = f"arrow {a.id}"
    conditions.append(ConditionResult("GP2", gp2_witness is None, gp2_witness))
    conditions.append(ConditionResult("GP3", gp3_witness is None, gp3_witness))

    # GP4: finite dimensionality, by running the enumeration with the
    # monomial rules and confirming termination
    from .fields import QQ
    rs = make_rewriting_system(q, QQ, [(list(r), []) for r in sorted(rels)])
    try:
        alg = enumerate_basis(rs)
        conditions.append(ConditionResult("GP4", True, None))
        dim = alg.dim
    except NotFiniteWithinCapError as exc:
        conditions.append(ConditionResult("GP4", False, str(exc)))
        dim = None
    return ValidationReport(tuple(conditions), {"dimension": dim})


@dataclass(frozen=True)
class SkewGentleTriple:
    quiver: Quiver
    relations: Tuple[Tuple[str, str], ...]
    special_loops: Tuple[Tuple[str, object], ...]  # (new arrow id, vertex)


def adjoined_quiver(t: SkewGentleTriple) -> Quiver:
    existing = {a.id for a in t.quiver.arrows}
    new_arrows = list(t.quiver.arrows)
    for aid, v in t.special_loops:
        if aid in existing:
            raise QuiverError(f"special loop id {aid!r} already used in the quiver")
        if v not in t.quiver.vertices:
            raise QuiverError(f"special loop {aid!r} sits at unknown vertex {v!r}")
        new_arrows.append(Arrow(aid, v, v))
    return Quiver(t.quiver.vertices, tuple(new_arrows))


def validate_skew_gentle(t: SkewGentleTriple) -> ValidationReport:
    """Valid iff (Q', I + {loop^2}) is a gentle pair, Q' = Q + special loops."""
    qprime = adjoined_quiver(t)
    rels = list(t.relations) + [(aid, aid) for aid, _ in t.special_loops]
    report = validate_gentle(qprime, rels)
    extra = dict(report.extra)
    extra["qprime"] = qprime
    return ValidationReport(report.conditions, extra)


def skew_gentle_algebra(t: SkewGentleTriple, field: Field,
                        length_cap: Optional[int] = None) -> FdAlgebra:
    """kQ'/(I + {loop^2 - loop}) for a valid skew-gentle triple."""
    report = validate_skew_gentle(t)
    if not report.passed:
        failed = [c.name for c in report.conditions if not c.passed]
        raise QuiverError(f"not a skew-gentle triple: {', '.join(failed)} failed")
    qprime = report.extra["qprime"]
    rules = [(list(r), []) for r in t.relations]
    for aid, _ in t.special_loops:
        rules.append(([aid, aid], [(1, [aid])]))
    rs = make_rewriting_system(qprime, field, rules)
    rs = complete(rs, degree_cap=length_cap)
    return enumerate_basis(rs, length_cap)
