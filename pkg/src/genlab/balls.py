"""Word-metric balls: enumeration, distances, geodesics, translation lengths.

All computations run over canonical keys, so deduplication and equality are
exact.  Ball enumeration is a breadth-first search whose frontier may be
split across worker threads; the merge is order-insensitive, so the output
is deterministic regardless of the worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .groups import Braid3, FreeGroup, GeneratingSet, GroupElement, GroupModel
from .words import Word, invert


class BudgetExceeded(RuntimeError):
    """Raised when an operation would outgrow its node budget."""


@dataclass
class BallCensus:
    """Sphere/ball counts of a word metric, optionally with the elements."""

    model_name: str
    gens_words: list[str]
    radius: int
    sphere_counts: list[int]
    elements: Optional[list[list]] = None  # per-radius sorted key lists
    truncated: bool = False

    @property
    def ball_counts(self) -> list[int]:
        out, total = [], 0
        for c in self.sphere_counts:
            total += c
            out.append(total)
        return out

    def ball_count(self, r: Optional[int] = None) -> int:
        if r is None:
            r = self.radius
        return sum(self.sphere_counts[: r + 1])

    def growth_sequence(self) -> list[float]:
        """ln(#B(n))/n for n = 1..radius (Fekete-subadditive for groups)."""
        balls = self.ball_counts
        return [math.log(balls[n]) / n for n in range(1, len(balls))]

    def to_csv(self) -> str:
        lines = ["radius,sphere_count,ball_count,ln_ball_over_n"]
        balls = self.ball_counts
        for r, s in enumerate(self.sphere_counts):
            ln_over = "" if r == 0 else repr(math.log(balls[r]) / r)
            lines.append(f"{r},{s},{balls[r]},{ln_over}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        doc = {
            "model": self.model_name,
            "gens": self.gens_words,
            "radius": self.radius,
            "sphere_counts": self.sphere_counts,
            "ball_counts": self.ball_counts,
            "truncated": self.truncated,
        }
        if self.elements is not None:
            doc["elements"] = [[repr(k) for k in sphere] for sphere in self.elements]
        return doc


def _expand_chunk(model: GroupModel, gen_keys, chunk):
    out = []
    mul = model.mul_keys
    for key in chunk:
        for gk in gen_keys:
            out.append(mul(key, gk))
    return out


def enumerate_ball(
    model: GroupModel,
    gens: GeneratingSet,
    radius: int,
    keep_elements: bool = False,
    workers: int = 1,
    node_budget: Optional[int] = None,
) -> BallCensus:
    """BFS the ball of the given radius, deduplicating by canonical key.

    With ``workers > 1`` the frontier is split into equal chunks expanded in
    a thread pool; results are merged in chunk order, so counts and element
    lists are identical for every worker count.  If ``node_budget`` is hit
    the census is returned truncated (sphere counts up to the last complete
    radius are kept).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    ident = model.identity_key()
    visited = {ident}
    frontier = [ident]
    sphere_counts = [1]
    spheres = [[ident]] if keep_elements else None
    gen_keys = [g.key for g in gens.elements]
    truncated = False

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for _r in range(radius):
            if not frontier:
                sphere_counts.append(0)
                if spheres is not None:
                    spheres.append([])
                continue
            if workers > 1 and len(frontier) >= 4 * workers:
                size = (len(frontier) + workers - 1) // workers
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                produced = pool.map(lambda c: _expand_chunk(model, gen_keys, c), chunks)
                candidates = [k for part in produced for k in part]
            else:
                candidates = _expand_chunk(model, gen_keys, frontier)
            new_frontier = []
            for k in candidates:
                if k not in visited:
                    visited.add(k)
                    new_frontier.append(k)
            if node_budget is not None and len(visited) > node_budget:
                truncated = True
                break
            frontier = new_frontier
            sphere_counts.append(len(frontier))
            if spheres is not None:
                spheres.append(sorted(frontier))
    finally:
        if pool is not None:
            pool.shutdown()

    return BallCensus(
        model_name=model.name,
        gens_words=gens.words(),
        radius=len(sphere_counts) - 1,
        sphere_counts=sphere_counts,
        elements=spheres,
        truncated=truncated,
    )


def free_ball_count(rank: int, radius: int) -> int:
    """#B(radius) in the free group of the given rank, standard generators."""
    if radius < 0:
        return 0
    k2 = 2 * rank
    if rank == 1:
        return 2 * radius + 1
    return 1 + k2 * ((k2 - 1) ** radius - 1) // (k2 - 2)


def free_sphere_count(rank: int, radius: int) -> int:
    if radius == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (radius - 1)


def word_distance(
    model: GroupModel,
    gens: GeneratingSet,
    g: GroupElement,
    h: GroupElement,
    r_max: int,
    node_budget: Optional[int] = None,
) -> Optional[int]:
    """Exact d_S(g, h) when it is at most ``r_max``, else None.

    Bidirectional BFS over canonical keys.  For free groups with their
    standard generators the reduced-word length is used directly.
    """
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    if g.key == h.key:
        return 0
    target = model.mul_keys(model.normalize(invert(g.word)), h.key)
    if gens.standard:
        n = model.exact_length(target)
        if n is not None:
            return n if n <= r_max else None

    ident = model.identity_key()
    gen_keys = [x.key for x in gens.elements]
    fwd = {ident: 0}
    bwd = {target: 0}
    f_frontier, b_frontier = [ident], [target]
    dist_f = dist_b = 0
    while dist_f + dist_b < r_max and (f_frontier or b_frontier):
        # expand the smaller frontier
        if f_frontier and (len(f_frontier) <= len(b_frontier) or not b_frontier):
            dist_f += 1
            nxt = []
            for k in f_frontier:
                for gk in gen_keys:
                    nk = model.mul_keys(k, gk)
                    if nk not in fwd:
                        fwd[nk] = dist_f
                        if nk in bwd:
                            return dist_f + bwd[nk]
                        nxt.append(nk)
            f_frontier = nxt
        else:
            dist_b += 1
            nxt = []
            for k in b_frontier:
                for gk in gen_keys:
                    nk = model.mul_keys(k, gk)  # gens closed under inversion
                    if nk not in bwd:
                        bwd[nk] = dist_b
                        if nk in fwd:
                            return fwd[nk] + dist_b
                        nxt.append(nk)
            b_frontier = nxt
        if node_budget is not None and len(fwd) + len(bwd) > node_budget:
            return None
    return None


def word_norm(model, gens, g, r_max, node_budget=None) -> Optional[int]:
    return word_distance(model, gens, model.identity(), g, r_max, node_budget)


@dataclass
class GeodesicWord:
    """A geodesic spelling of an element over a generating set.

    ``s_letters`` are signed 1-based indices into the generating set; the
    flattened alphabet word is in ``word``.  The spelling is the shortlex
    least one (length first, then lexicographic on signed S-indices).
    """

    s_letters: tuple
    word: Word

    def __len__(self):
        return len(self.s_letters)


def geodesic_representative(
    model: GroupModel,
    gens: GeneratingSet,
    g: GroupElement,
    node_budget: Optional[int] = None,
) -> Optional[GeodesicWord]:
    """Shortlex-least geodesic word for g, or None if the budget runs out."""
    target = g.key
    ident = model.identity_key()
    if target == ident:
        return GeodesicWord((), ())
    if gens.standard and isinstance(model, FreeGroup):
        return GeodesicWord(tuple(target), tuple(target))
    # BFS in shortlex order: letters sorted ascending by signed index, and
    # within a radius the frontier is scanned in discovery (= shortlex) order.
    letters = sorted(gens.signed_letters())
    letter_keys = [(s, gens.letter_element(s).key) for s in letters]
    paths = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for k in frontier:
            base = paths[k]
            for s, gk in letter_keys:
                nk = model.mul_keys(k, gk)
                if nk not in paths:
                    paths[nk] = base + (s,)
                    if nk == target:
                        sl = paths[nk]
                        return GeodesicWord(sl, gens.spell(sl))
                    nxt.append(nk)
        if node_budget is not None and len(paths) > node_budget:
            return None
        frontier = nxt
    return None


@dataclass
class TranslationBounds:
    lower: Fraction
    upper: Fraction
    exact: bool
    samples: list = field(default_factory=list)  # (n, d_S(id, g^n))


def translation_length(
    model: GroupModel,
    gens: GeneratingSet,
    g: GroupElement,
    n_max: int,
    r_budget: Optional[int] = None,
) -> TranslationBounds:
    """Bounds on the stable word norm lim d_S(id, g^n)/n.

    The upper bound min_n d(id, g^n)/n is valid by subadditivity.  For free
    groups and Z/2 * Z/3 with standard generators the exact value (cyclic
    reduction length) is reported.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    from .groups import FreeProductZ2Z3

    exact_val = None
    if gens.standard:
        if isinstance(model, FreeGroup):
            exact_val = Fraction(model.translation_length_exact(g.key))
        elif isinstance(model, FreeProductZ2Z3):
            core = model.cyclic_syllable_reduction(g.key)
            exact_val = Fraction(len(core) if len(core) >= 2 else 0)

    samples = []
    upper = None
    power = model.identity()
    base_norm = None
    for n in range(1, n_max + 1):
        power = power * g
        cap = r_budget if r_budget is not None else (len(power.word) + 1)
        d = word_distance(model, gens, model.identity(), power, cap)
        if d is None:
            break
        samples.append((n, d))
        if base_norm is None:
            base_norm = d
        q = Fraction(d, n)
        upper = q if upper is None or q < upper else upper

    if exact_val is not None:
        return TranslationBounds(exact_val, exact_val, True, samples)
    if not samples:
        return TranslationBounds(Fraction(0), Fraction(10**9), False, samples)
    n_last, d_last = samples[-1]
    max_offset = max(abs(Fraction(d) - n * upper) for n, d in samples)
    lower = max(Fraction(0), (Fraction(d_last) - 2 * max_offset) / n_last)
    return TranslationBounds(lower, upper, False, samples)


@dataclass
class CenterCosetCensus:
    radius: int
    center_counts: list[int]  # #(C(G) cap B(r)) for r = 0..radius
    least_linear_slope: Fraction  # least M with count(r) <= M*r + 1
    max_coset_intersection: int  # max over cosets gC(G) of #(coset cap B(R))
    witnesses: list  # central keys found


def center_coset_census(model: GroupModel, gens: GeneratingSet, radius: int) -> CenterCosetCensus:
    """Count center elements per radius and the largest coset intersection.

    Only models exposing a center predicate are supported; the census also
    reports the least M certifying the linear bound count(r) <= M*r + 1.
    """
    if model.center_membership(model.identity_key()) is None:
        raise ValueError(f"model {model.name} exposes no center predicate")
    census = enumerate_ball(model, gens, radius, keep_elements=True)
    center_counts = []
    running = 0
    witnesses = []
    coset_sizes: dict = {}
    for r, sphere in enumerate(census.elements):
        for key in sphere:
            if model.center_membership(key):
                running += 1
                witnesses.append(key)
            if isinstance(model, Braid3):
                coset_sizes[model.quotient_key(key)] = coset_sizes.get(model.quotient_key(key), 0) + 1
        center_counts.append(running)
    slope = Fraction(0)
    for r in range(1, len(center_counts)):
        if center_counts[r] > 1:
            slope = max(slope, Fraction(center_counts[r] - 1, r))
    max_coset = max(coset_sizes.values()) if coset_sizes else 1
    return CenterCosetCensus(census.radius, center_counts, slope, max_coset, witnesses)


def census_to_files(census: BallCensus, csv_path, json_path) -> None:
    with open(csv_path, "w", newline="") as fh:
        fh.write(census.to_csv())
    with open(json_path, "w") as fh:
        json.dump(census.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
