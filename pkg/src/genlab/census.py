"""Counting experiments: classification tallies, thick-set membership,
letter-block replacement maps with fiber censuses, and genericity curves.

Free-group threshold counts use an exact transfer-matrix closed form
(cross-checked against brute enumeration on small balls); everything else
is exhaustive over enumerated balls.  All ratios are exact rationals; only
fitted decay exponents are floating point.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .alignment import AlignmentReport, check_alignment
from .balls import enumerate_ball, free_ball_count, geodesic_representative, word_distance
from .groups import Braid3, FreeGroup, FreeProductZ2Z3, GeneratingSet, GroupElement, GroupModel
from .ledger import ConstantLedger
from .spaces import GroupAction, OrbitSegment


# ---------------------------------------------------------------------------
# Classification


@dataclass
class Classification:
    element_word: str
    verdict: str  # pseudoAnosov | reducible | periodic | contracting-loxodromic | non-loxodromic
    evidence: dict


def _projective_order(m) -> Optional[int]:
    cur = m
    for n in range(1, 13):
        if cur in ((1, 0, 0, 1), (-1, 0, 0, -1)):
            return n
        cur = (
            cur[0] * m[0] + cur[1] * m[2],
            cur[0] * m[1] + cur[1] * m[3],
            cur[2] * m[0] + cur[3] * m[2],
            cur[2] * m[1] + cur[3] * m[3],
        )
    return None


def classify(model: GroupModel, action: Optional[GroupAction], g: GroupElement) -> Classification:
    """Nielsen-Thurston type for 3-braids via the integral matrix trace;
    loxodromy via exact tree translation length for the tree models."""
    word_str = model.alphabet.format(g.word)
    if isinstance(model, Braid3):
        m = model.sl2_image(g.word)
        tr = m[0] + m[3]
        proj_trivial = m in ((1, 0, 0, 1), (-1, 0, 0, -1))
        if abs(tr) > 2:
            verdict = "pseudoAnosov"
        elif abs(tr) == 2 and not proj_trivial:
            verdict = "reducible"
        else:
            verdict = "periodic"
        return Classification(word_str, verdict, {
            "trace": tr,
            "projective_order": _projective_order(m),
            "central_exponent": model.central_exponent(g.key),
        })
    if isinstance(model, FreeGroup):
        tau = model.translation_length_exact(g.key)
        verdict = "contracting-loxodromic" if tau > 0 else "non-loxodromic"
        return Classification(word_str, verdict, {"tree_translation_length": tau})
    if isinstance(model, FreeProductZ2Z3):
        tau = model.tree_translation_length_exact(g.key)
        verdict = "contracting-loxodromic" if tau > 0 else "non-loxodromic"
        return Classification(word_str, verdict, {"tree_translation_length": tau})
    raise ValueError(f"classification unsupported for model {model.name}")


# ---------------------------------------------------------------------------
# Free-group threshold counts (exact closed form + the counting inequality)


def _reduced_transfer_counts(rank: int, length: int) -> tuple[int, int]:
    """(total reduced words, reduced words with last = inverse of first)."""
    if length == 0:
        return 1, 0
    letters = list(range(1, rank + 1)) + [-i for i in range(1, rank + 1)]
    idx = {a: i for i, a in enumerate(letters)}
    size = len(letters)
    mat = [[0] * size for _ in range(size)]
    for a in letters:
        for b in letters:
            if b != -a:
                mat[idx[a]][idx[b]] = 1
    vecs = {a: [0] * size for a in letters}
    for a in letters:
        vecs[a][idx[a]] = 1
    for _ in range(length - 1):
        for a in letters:
            v = vecs[a]
            vecs[a] = [sum(v[i] * mat[i][j] for i in range(size)) for j in range(size)]
    total = sum(sum(vecs[a]) for a in letters)
    bad = sum(vecs[a][idx[-a]] for a in letters)
    return total, bad


def count_cyclically_reduced(rank: int, length: int) -> int:
    """Exact count of cyclically reduced words of the given length."""
    if length == 0:
        return 1
    total, bad = _reduced_transfer_counts(rank, length)
    return total - bad


def count_translation_below(rank: int, n: int, threshold: int) -> int:
    """#{g in B(n) : translation length <= threshold}, standard generators.

    Every such g factors uniquely as w c w^-1 with c its cyclic reduction
    (|c| <= threshold) and w a reduced conjugator avoiding two letters at
    its end, giving an exact closed form.
    """
    if threshold < 0 or n < 0:
        return 0
    total = 1  # the identity
    k2 = 2 * rank
    for t in range(1, min(threshold, n) + 1):
        conjugators = 1  # w = id
        for m in range(1, (n - t) // 2 + 1):
            conjugators += (k2 - 2) * (k2 - 1) ** (m - 1)
        total += count_cyclically_reduced(rank, t) * conjugators
    return total


@dataclass
class ThresholdCount:
    rank: int
    n: int
    threshold: int
    count_below: int
    ball: int
    linear_factor: Fraction  # 1 + (n - T)/12
    linear_lhs: Fraction
    linear_holds: bool
    binomial_factor: Fraction
    binomial_lhs: Fraction
    binomial_holds: bool


def free_group_threshold_count(rank: int, n: int, threshold: int) -> ThresholdCount:
    """Evaluate the replacement-counting inequalities exactly.

    The linear factor is 1 + (n - T)/12 as stated; the binomial refinement
    sums C(J, j)/6^j over j <= J with J = floor((n - T)/2).
    """
    count = count_translation_below(rank, n, threshold)
    ball = free_ball_count(rank, n)
    lin_factor = 1 + Fraction(n - threshold, 12)
    lin_lhs = lin_factor * count
    J = max(0, (n - threshold) // 2)
    bin_factor = Fraction(1)
    for j in range(1, J + 1):
        bin_factor += Fraction(math.comb(J, j), 6**j)
    bin_lhs = bin_factor * count
    return ThresholdCount(
        rank, n, threshold, count, ball,
        lin_factor, lin_lhs, lin_lhs <= ball,
        bin_factor, bin_lhs, bin_lhs <= ball,
    )


def single_letter_replacement(model: FreeGroup, word, i: int):
    """The basic loxodromic-making move: swap the i-th letter (1-based) of a
    reduced word for the least letter keeping the word reduced and pushing
    the translation length to at least len - 2i."""
    word = tuple(word)
    n = len(word)
    if not (1 <= i <= n):
        raise ValueError("replacement index out of range")
    target = n - 2 * i
    candidates = list(range(1, model.rank + 1)) + list(range(-1, -model.rank - 1, -1))
    for cand in candidates:
        if cand == word[i - 1]:
            continue
        if i >= 2 and cand == -word[i - 2]:
            continue
        if i < n and cand == -word[i]:
            continue
        new = word[: i - 1] + (cand,) + word[i:]
        if model.translation_length_exact(new) >= target:
            return new
    return None


@dataclass
class SingleReplacementCensus:
    rank: int
    n: int
    threshold: int
    domain: int
    max_fiber: int
    fibers: dict


def single_replacement_fibers(rank: int, n: int, threshold: int) -> SingleReplacementCensus:
    """Exhaustive fiber census of the single-letter replacement over the
    short-translation elements of the sphere of radius n."""
    model = FreeGroup(rank)
    gens = model.standard_gens()
    census = enumerate_ball(model, gens, n, keep_elements=True)
    fibers: dict = {}
    domain = 0
    for word in census.elements[n]:
        if model.translation_length_exact(word) > threshold:
            continue
        half = (n - threshold) // 2
        for i in range(1, max(half, 1)):
            new = single_letter_replacement(model, word, i)
            if new is None:
                continue
            domain += 1
            fibers[new] = fibers.get(new, 0) + 1
    max_fiber = max(fibers.values(), default=0)
    return SingleReplacementCensus(rank, n, threshold, domain, max_fiber, fibers)


# ---------------------------------------------------------------------------
# Thick-set certification and search


@dataclass
class ThickCertificate:
    certified: bool
    reason: str
    distance: Optional[int] = None
    report: Optional[AlignmentReport] = None


def a_thick_certify(
    model: GroupModel,
    gens: GeneratingSet,
    action: GroupAction,
    g: GroupElement,
    ledger: ConstantLedger,
    segment: OrbitSegment,
    norm: Optional[int] = None,
) -> ThickCertificate:
    """Exact check of the two thick-set conditions for a candidate segment:
    the word distance window and the basepoint alignment."""
    if segment.length != ledger.segment_length:
        raise ValueError(
            f"segment length {segment.length} differs from ledger length {ledger.segment_length}"
        )
    if norm is None:
        norm = _norm(model, gens, g)
    lo = ledger.window[0] * norm
    hi = ledger.window[1] * norm
    cap = int(hi) + 1
    best = None
    for h in segment.points:
        d = word_distance(model, gens, model.identity(), h, cap)
        if d is not None and (best is None or d < best):
            best = d
    if best is None or not (lo <= best <= hi):
        return ThickCertificate(False, "distance-window", best)
    seq = [action.space.basepoint, segment.projected, action.proj(g)]
    report = check_alignment(action.space, seq, ledger.dominating)
    if not report.aligned:
        return ThickCertificate(False, "alignment", best, report)
    return ThickCertificate(True, "ok", best, report)


@dataclass
class ThickSearchResult:
    found: bool
    degenerate: bool = False
    witness: Optional[OrbitSegment] = None
    certificate: Optional[ThickCertificate] = None


def a_thick_search(
    model: GroupModel,
    gens: GeneratingSet,
    action: GroupAction,
    phi: GroupElement,
    g: GroupElement,
    ledger: ConstantLedger,
    perturb_letters: Optional[Sequence[GroupElement]] = None,
) -> ThickSearchResult:
    """Window scan along the fixed geodesic representative, with bounded
    left perturbations.  Sound when it answers yes; a no is heuristic."""
    geo = geodesic_representative(model, gens, g)
    if geo is None:
        return ThickSearchResult(False)
    n = len(geo.s_letters)
    lo = math.ceil(ledger.window[0] * n)
    hi = math.floor(ledger.window[1] * n)
    if lo < 1 or lo > hi:
        return ThickSearchResult(False, degenerate=True)
    if perturb_letters is None:
        perturb_letters = [model.identity()] + list(gens.elements)
    for i in range(lo, hi + 1):
        prefix = model.element(gens.spell(geo.s_letters[:i]))
        for s in perturb_letters:
            seg = OrbitSegment(action, prefix * s, phi, ledger.segment_length)
            cert = a_thick_certify(model, gens, action, g, ledger, seg, norm=n)
            if cert.certified:
                return ThickSearchResult(True, witness=seg, certificate=cert)
    return ThickSearchResult(False)


def _norm(model, gens, g: GroupElement) -> int:
    if gens.standard and model.exact_length(g.key) is not None:
        return model.exact_length(g.key)
    d = word_distance(model, gens, model.identity(), g, 4 * len(g.word) + 4)
    if d is None:
        raise RuntimeError("norm exceeded budget")
    return d


# ---------------------------------------------------------------------------
# The replacement maps


class LinkageFailure(RuntimeError):
    """No linkage pair certified the splice alignment (a hard failure on
    tree models)."""

    def __init__(self, message, best_report=None):
        super().__init__(message)
        self.best_report = best_report


@dataclass
class Replacement:
    element: GroupElement
    cut: int
    s: GroupElement
    t: GroupElement
    report: AlignmentReport
    norm_in: int
    norm_out: int


def replacement_map(
    model: GroupModel,
    gens: GeneratingSet,
    action: GroupAction,
    phi: GroupElement,
    g: GroupElement,
    i: int,
    ledger: ConstantLedger,
) -> Replacement:
    """Cut the fixed geodesic at i, excise a block, splice in a linked
    power of the distinguished element: g = w l v  ->  w s phi^L t v.

    The linkage pair (s, t) is the first one in deterministic order whose
    splice alignment certifies at the ledger level.
    """
    geo = geodesic_representative(model, gens, g)
    n = len(geo.s_letters)
    lo = math.ceil(ledger.cut_window[0] * n)
    hi = math.floor(ledger.cut_window[1] * n)
    if not (lo <= i <= hi):
        raise ValueError(f"cut index {i} outside window [{lo}, {hi}]")
    block = ledger.block_length()
    if i + block > n:
        raise ValueError(f"excised block [{i + 1}, {i + block}] does not fit in length {n}")
    w = model.element(gens.spell(geo.s_letters[:i]))
    v = model.element(gens.spell(geo.s_letters[i + block :]))
    power = phi**ledger.segment_length
    level = ledger.alignment_level()
    candidates = [model.identity()] + list(gens.elements)
    best = None
    for s in candidates:
        seg = OrbitSegment(action, w * s, phi, ledger.segment_length)
        for t in candidates:
            out = w * s * power * t * v
            seq = [action.space.basepoint, seg.projected, action.proj(out)]
            report = check_alignment(action.space, seq, level)
            if report.aligned:
                return Replacement(
                    out, i, s, t, report,
                    norm_in=n, norm_out=_norm(model, gens, out),
                )
            if best is None or report.worst() < best.worst():
                best = report
    raise LinkageFailure(f"no linkage certified at level {level}", best)


@dataclass
class DoubleReplacement:
    first: GroupElement  # w s phi^L t w'
    second: GroupElement  # w s phi^L t w' s' phi^(2L) t' v
    cuts: tuple
    linkages: tuple  # (s, t, s2, t2)
    report: AlignmentReport


def double_replacement(
    model: GroupModel,
    gens: GeneratingSet,
    action: GroupAction,
    phi: GroupElement,
    g: GroupElement,
    i: int,
    j: int,
    ledger: ConstantLedger,
) -> DoubleReplacement:
    """Two-cut version: splice linked powers at both cut indices.

    Requires j - i > 2 * ceil(dominating * segment_length) + 3, mirroring
    the two-index set of the superpolynomial argument.
    """
    geo = geodesic_representative(model, gens, g)
    n = len(geo.s_letters)
    block = ledger.block_length()
    gap = 2 * (block - 2) + 3
    if not i < j - gap:
        raise ValueError(f"cut indices ({i}, {j}) violate the gap {gap}")
    lo = math.ceil(ledger.cut_window[0] * n)
    hi = math.floor(ledger.cut_window[1] * n)
    if not (lo <= i <= hi and lo <= j <= hi):
        raise ValueError(f"cut indices ({i}, {j}) outside window [{lo}, {hi}]")
    if j + block > n:
        raise ValueError("second excised block does not fit")
    w = model.element(gens.spell(geo.s_letters[:i]))
    w2 = model.element(gens.spell(geo.s_letters[i + block : j]))
    v = model.element(gens.spell(geo.s_letters[j + block :]))
    power = phi**ledger.segment_length
    power2 = phi ** (2 * ledger.segment_length)
    level = ledger.alignment_level()
    candidates = [model.identity()] + list(gens.elements)
    best = None
    for s in candidates:
        seg1 = OrbitSegment(action, w * s, phi, ledger.segment_length)
        for t in candidates:
            head = w * s * power * t * w2
            for s2 in candidates:
                seg2 = OrbitSegment(action, head * s2, phi, 2 * ledger.segment_length)
                for t2 in candidates:
                    out = head * s2 * power2 * t2 * v
                    seq = [action.space.basepoint, seg1.projected, seg2.projected, action.proj(out)]
                    report = check_alignment(action.space, seq, level)
                    if report.aligned:
                        return DoubleReplacement(head, out, (i, j), (s, t, s2, t2), report)
                    if best is None or report.worst() < best.worst():
                        best = report
    raise LinkageFailure(f"no double linkage certified at level {level}", best)


# ---------------------------------------------------------------------------
# Fiber census


@dataclass
class FiberReport:
    model_name: str
    n: int
    domain_size: int
    image_size: int
    max_fiber: int
    histogram: dict  # fiber size -> multiplicity
    sqrt_ratio: float  # max_fiber / sqrt(n)
    thick_skipped: int
    degenerate_skipped: int
    windows: dict

    def to_json(self) -> dict:
        return {
            "model": self.model_name,
            "n": self.n,
            "domain": self.domain_size,
            "image": self.image_size,
            "max_fiber": self.max_fiber,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "sqrt_ratio": self.sqrt_ratio,
            "thick_skipped": self.thick_skipped,
            "degenerate_skipped": self.degenerate_skipped,
            "windows": self.windows,
        }


def fiber_census(
    model: GroupModel,
    gens: GeneratingSet,
    action: GroupAction,
    phi: GroupElement,
    ledger: ConstantLedger,
    n: int,
    shell: Fraction = Fraction(99, 100),
) -> FiberReport:
    """Exact fibers of the replacement map over its domain: the outer shell
    of the radius-n ball, minus certified thick elements, crossed with the
    cut window."""
    census = enumerate_ball(model, gens, n, keep_elements=True)
    inner = math.floor(shell * n)
    fibers: dict = {}
    domain = 0
    thick_skipped = 0
    degenerate = 0
    for r in range(inner + 1, n + 1):
        for key in census.elements[r]:
            g = GroupElement(model, model.key_word(key), key)
            found = a_thick_search(model, gens, action, phi, g, ledger)
            if found.found:
                thick_skipped += 1
                continue
            lo = math.ceil(ledger.cut_window[0] * r)
            hi = math.floor(ledger.cut_window[1] * r)
            block = ledger.block_length()
            indices = [i for i in range(max(lo, 1), hi + 1) if i + block <= r]
            if not indices:
                degenerate += 1
                continue
            for i in indices:
                rep = replacement_map(model, gens, action, phi, g, i, ledger)
                domain += 1
                fibers[rep.element.key] = fibers.get(rep.element.key, 0) + 1
    histogram: dict = {}
    for size in fibers.values():
        histogram[size] = histogram.get(size, 0) + 1
    max_fiber = max(fibers.values(), default=0)
    return FiberReport(
        model_name=model.name,
        n=n,
        domain_size=domain,
        image_size=len(fibers),
        max_fiber=max_fiber,
        histogram=histogram,
        sqrt_ratio=max_fiber / math.sqrt(n) if n else 0.0,
        thick_skipped=thick_skipped,
        degenerate_skipped=degenerate,
        windows={
            "shell": str(shell),
            "cut_window": [str(w) for w in ledger.cut_window],
            "thick_window": [str(w) for w in ledger.window],
        },
    )


# ---------------------------------------------------------------------------
# Genericity curves


@dataclass
class GenericityCurve:
    model_name: str
    gens_words: list
    mode: str  # "tree" or "braid-cosets"
    radii: list
    special_counts: list  # non-loxodromic / non-pA-coset counts
    totals: list  # ball sizes / coset counts
    ratios: list  # exact Fractions
    fitted_exponent: Optional[float]
    tail_monotone: bool
    thresholds: dict

    def to_csv(self) -> str:
        lines = ["radius,special_count,total,ratio"]
        for r, s, t, q in zip(self.radii, self.special_counts, self.totals, self.ratios):
            lines.append(f"{r},{s},{t},{float(q)!r}")
        return "\n".join(lines) + "\n"

    def plot_data(self) -> str:
        return "".join(f"{r} {float(q)!r}\n" for r, q in zip(self.radii, self.ratios))

    def to_json(self) -> dict:
        return {
            "model": self.model_name,
            "gens": self.gens_words,
            "mode": self.mode,
            "radii": self.radii,
            "special_counts": self.special_counts,
            "totals": self.totals,
            "ratios": [str(q) for q in self.ratios],
            "fitted_exponent": self.fitted_exponent,
            "tail_monotone": self.tail_monotone,
            "thresholds": {k: str(v) for k, v in self.thresholds.items()},
        }


def _count_leq(sorted_vals, cut) -> int:
    return bisect.bisect_right(sorted_vals, cut)


def _fit_decay_exponent(radii, ratios) -> Optional[float]:
    pts = [(r, q) for r, q in zip(radii, ratios) if r >= 1 and q > 0]
    if len(pts) < 2:
        return None
    tail = pts[-math.ceil(len(pts) / 2) :]
    xs = np.log([float(r) for r, _ in tail])
    ys = np.log([float(q) for _, q in tail])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def genericity_experiment(
    model: GroupModel,
    action: Optional[GroupAction],
    gens: GeneratingSet,
    r_max: int,
    tree_threshold: int = 0,
    word_threshold: Fraction = Fraction(35, 100),
) -> GenericityCurve:
    """Per-radius ratios of the slow-elements set, exact over enumerated
    balls.  For 3-braids the count is of center cosets whose elements are
    not pseudo-Anosov, following the coset-counting reduction; for the
    tree models it is of elements with small tree translation length or
    small stable word norm."""
    census = enumerate_ball(model, gens, r_max, keep_elements=True)
    radii = list(range(r_max + 1))
    special, totals, ratios = [], [], []
    if isinstance(model, Braid3):
        seen: dict = {}
        running_special = 0
        for r in range(r_max + 1):
            for key in census.elements[r]:
                q = model.quotient_key(key)
                if q in seen:
                    continue
                rep = GroupElement(model, model.key_word((0, q)), (0, q))
                verdict = classify(model, None, rep).verdict
                seen[q] = verdict
                if verdict != "pseudoAnosov":
                    running_special += 1
            special.append(running_special)
            totals.append(len(seen))
            ratios.append(Fraction(running_special, len(seen)))
        mode = "braid-cosets"
    elif isinstance(model, (FreeGroup, FreeProductZ2Z3)):
        tau_fn = (
            model.translation_length_exact
            if isinstance(model, FreeGroup)
            else model.tree_translation_length_exact
        )
        taus = [sorted(tau_fn(key) for key in sphere) for sphere in census.elements]
        for r in range(r_max + 1):
            count = total = 0
            # the stable-norm threshold moves with the radius, so recount
            # per radius, but over precomputed sorted translation lengths
            cut = max(Fraction(tree_threshold), word_threshold * r)
            for rr in range(r + 1):
                total += len(taus[rr])
                count += _count_leq(taus[rr], cut)
            special.append(count)
            totals.append(total)
            ratios.append(Fraction(count, total))
        mode = "tree"
    else:
        raise ValueError(f"genericity unsupported for model {model.name}")
    tail = [q for r, q in zip(radii, ratios) if r >= max(2, r_max // 2)]
    tail_monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    return GenericityCurve(
        model_name=model.name,
        gens_words=gens.words(),
        mode=mode,
        radii=radii,
        special_counts=special,
        totals=totals,
        ratios=ratios,
        fitted_exponent=_fit_decay_exponent(radii, ratios),
        tail_monotone=tail_monotone,
        thresholds={"tree_threshold": tree_threshold, "word_threshold": word_threshold},
    )


# ---------------------------------------------------------------------------
# Conjugation-decomposability probe


@dataclass
class NegligibilityPoint:
    n: int
    shell_size: int
    decomposable: int
    ratio: Fraction


@dataclass
class NegligibilityProbe:
    points: list
    fitted_rate: Optional[float]
    windows: dict

    def to_json(self) -> dict:
        return {
            "points": [
                {"n": p.n, "shell": p.shell_size, "decomposable": p.decomposable, "ratio": str(p.ratio)}
                for p in self.points
            ],
            "fitted_rate": self.fitted_rate,
            "windows": {k: str(v) for k, v in self.windows.items()},
        }


def exponential_negligibility_probe(
    model: GroupModel,
    gens: GeneratingSet,
    n_values: Sequence[int],
    conj_window: Fraction = Fraction(31, 100),
    core_window: Fraction = Fraction(57, 100),
    shell: Fraction = Fraction(99, 100),
) -> NegligibilityProbe:
    """Fraction of the outer shell admitting a conjugation decomposition
    h^-1 g' h with the stated norm windows, exhaustive over short h."""
    points = []
    n_max = max(n_values)
    census = enumerate_ball(model, gens, n_max, keep_elements=True)
    conj_census = enumerate_ball(model, gens, math.floor(conj_window * n_max), keep_elements=True)
    for n in n_values:
        inner = math.floor(shell * n)
        h_cap = math.floor(conj_window * n)
        core_cap = core_window * n
        h_keys = [k for r in range(h_cap + 1) for k in conj_census.elements[r]]
        shell_size = 0
        decomposable = 0
        for r in range(inner + 1, n + 1):
            for key in census.elements[r]:
                shell_size += 1
                for hk in h_keys:
                    hw = model.key_word(hk)
                    conj = model.normalize(hw + model.key_word(key) + tuple(-a for a in reversed(hw)))
                    length = model.exact_length(conj)
                    if length is not None and length <= core_cap:
                        decomposable += 1
                        break
        points.append(NegligibilityPoint(n, shell_size, decomposable,
                                         Fraction(decomposable, shell_size) if shell_size else Fraction(0)))
    rates = [(p.n, p.ratio) for p in points if p.ratio > 0]
    fitted = None
    if len(rates) >= 2:
        xs = [float(n) for n, _ in rates]
        ys = [math.log(float(q)) for _, q in rates]
        slope, _ = np.polyfit(xs, ys, 1)
        fitted = float(slope)
    return NegligibilityProbe(points, fitted, {
        "conj_window": conj_window, "core_window": core_window, "shell": shell,
    })
