"""Cross-module invariant suite behind `stablespan corpus --self-check`.

Each check exercises one family of invariants tying the recognizer, the
polynomial machinery, the factorizer, the rank decompositions, and the
falsifier together.  The acceptance tests run the same functions at their
full budgets; the CLI defaults keep a self-check under a minute.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

from .corpus import (
    ACCEPTED_FIXTURES,
    FIXTURES,
    FORBIDDEN_FIXTURES,
    c4_graph,
    house_case_certificate,
    house_case_polynomial,
    random_connected,
    random_constructed,
    random_fraction,
)
from .factorization import factor_from_trace, verify_factorization
from .graphs import (
    MixedSignCertificate,
    WeightedGraph,
    flip_blocks,
    normalize_signs,
    scale_vertex,
    star_polynomial,
)
from .polynomials import LinearForm, Monomial, Polynomial
from .probe import FalsifyNotFound, ZeroCertificate, falsify, k4_discriminant, verify_certificate
from .rankwidth import build_rank_decomposition, exhaustive_min_rankwidth, tree_width
from .recognition import is_distance_hereditary_oracle, recognize, replay_trace
from .spanning import (
    enumerate_spanning_trees,
    matrix_tree_check,
    spanning_tree_count,
    vertex_span_poly,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def iter_connected_unit_graphs(n: int) -> Iterator[WeightedGraph]:
    """All labeled connected graphs on n vertices, unit weights."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        nbr = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            rest = frontier
            v = 0
            while rest:
                if rest & 1:
                    nxt |= nbr[v]
                rest >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= frontier
        if seen != (1 << n) - 1:
            continue
        yield WeightedGraph(
            n, {(u, v): Fraction(1) for i, (u, v) in enumerate(pairs) if mask >> i & 1}
        )


def _rename_variables(p: Polynomial, mapping: dict[int, int], nvars: int) -> Polynomial:
    terms: dict[Monomial, Fraction] = {}
    for mono, c in p.terms.items():
        terms[tuple(sorted((mapping[v], e) for v, e in mono))] = c
    return Polynomial(terms, nvars)


def _copy_vertex(g: WeightedGraph, v: int, bridge: Fraction) -> WeightedGraph:
    """Append vertex n as an equal-weight copy of v, bridged when bridge > 0."""
    edges = dict(g.edges)
    for x in g.neighbors(v):
        edges[(min(x, g.n), max(x, g.n))] = g.weight(x, v)
    if bridge:
        edges[(v, g.n)] = bridge
    return WeightedGraph(g.n + 1, edges)


# -- individual checks ---------------------------------------------------------


def check_unweighted_agreement(max_n: int = 5) -> CheckResult:
    """Unit-weight recognition agrees with the forbidden-subgraph oracle."""
    total = 0
    for n in range(1, max_n + 1):
        for g in iter_connected_unit_graphs(n):
            total += 1
            accepted = recognize(g).accepted
            hereditary = is_distance_hereditary_oracle(g) is True
            if accepted != hereditary:
                return CheckResult(
                    "unweighted_agreement",
                    False,
                    f"disagreement on {g!r}: recognize={accepted}, oracle={hereditary}",
                )
    return CheckResult(
        "unweighted_agreement", True, f"{total} connected graphs up to n={max_n}, 0 disagreements"
    )


def check_named_fixtures() -> CheckResult:
    expected_names = {"c5": "long_cycle", "house": "house", "gem": "gem", "domino": "domino"}
    for name in FORBIDDEN_FIXTURES:
        result = recognize(FIXTURES[name])
        if result.accepted:
            return CheckResult("named_fixtures", False, f"{name} must be rejected")
        if result.obstruction.name != expected_names[name]:
            return CheckResult(
                "named_fixtures",
                False,
                f"{name} obstruction named {result.obstruction.name!r}",
            )
    for name in ACCEPTED_FIXTURES:
        if not recognize(FIXTURES[name]).accepted:
            return CheckResult("named_fixtures", False, f"{name} must be accepted")
    if recognize(FIXTURES["k4_distinct"]).accepted:
        return CheckResult("named_fixtures", False, "k4_distinct must be rejected")
    disc = k4_discriminant(Fraction(1), Fraction(2), Fraction(3))
    value = disc.eval_rational([Fraction(-1), Fraction(1, 2), Fraction(-1)])
    if value != -3:
        return CheckResult("named_fixtures", False, f"K4 discriminant gave {value}, want -3")
    return CheckResult("named_fixtures", True, "forbidden/accepted fixtures and K4 discriminant agree")


def check_c4_criterion(samples: int = 60, trials: int = 2000, seed: int = 0, min_rejected: int = 10) -> CheckResult:
    """C4 acceptance iff opposite edge products match; rejections falsifiable."""
    rng = random.Random(seed)
    rejected_certified = 0
    rejected_seen = 0
    for _ in range(samples):
        a, b, c, d = (random_fraction(rng) for _ in range(4))
        g = c4_graph(a, b, c, d)
        should_accept = a * c == b * d
        accepted = recognize(g).accepted
        if accepted != should_accept:
            return CheckResult(
                "c4_criterion", False, f"weights {(a, b, c, d)}: accepted={accepted}, want {should_accept}"
            )
        if not should_accept and rejected_certified < min_rejected:
            rejected_seen += 1
            p = vertex_span_poly(g)
            result = falsify(p, trials=trials, seed=seed)
            if not (isinstance(result, ZeroCertificate) and verify_certificate(p, result)):
                return CheckResult(
                    "c4_criterion", False, f"no certificate for rejected weights {(a, b, c, d)}"
                )
            rejected_certified += 1
    if rejected_certified < min_rejected:
        return CheckResult(
            "c4_criterion",
            False,
            f"only {rejected_certified} rejected samples certified (want {min_rejected}); enlarge sample",
        )
    return CheckResult(
        "c4_criterion",
        True,
        f"{samples} samples follow the opposite-product rule; {rejected_certified} rejections certified",
    )


def check_polynomial_identities(samples: int = 40, seed: int = 0) -> CheckResult:
    """Copy, gluing, and scaling identities as exact polynomial equalities."""
    rng = random.Random(seed)
    for i in range(samples):
        # copy identity
        g = random_constructed(rng, rng.randint(2, 7))
        v = rng.randrange(g.n)
        bridge = Fraction(0) if rng.random() < 0.5 else random_fraction(rng)
        g1 = _copy_vertex(g, v, bridge)
        base = Polynomial(vertex_span_poly(g).terms, g.n + 1)
        shifted = base.substitute_linear(v, LinearForm.of({v: 1, g.n: 1}))
        star = Polynomial(star_polynomial(g, v).terms, g.n + 1)
        if bridge:
            star = star + LinearForm.of({v: bridge, g.n: bridge}).to_polynomial(g.n + 1)
        if vertex_span_poly(g1) != shifted * star:
            return CheckResult("polynomial_identities", False, f"copy identity failed on sample {i}: {g!r} v={v} p={bridge}")

        # gluing identity
        parts = [random_constructed(rng, rng.randint(2, 4)) for _ in range(rng.randint(2, 3))]
        glued_edges: dict[tuple[int, int], Fraction] = {}
        offset = 1
        expected = Polynomial.constant(1)
        n_total = 1 + sum(p_.n - 1 for p_ in parts)
        for part in parts:
            mapping = {0: 0}
            for v_ in range(1, part.n):
                mapping[v_] = offset
                offset += 1
            for (u, v_), w in part.edges.items():
                a, b = mapping[u], mapping[v_]
                glued_edges[(min(a, b), max(a, b))] = w
            expected = expected * _rename_variables(vertex_span_poly(part), mapping, n_total)
        expected = expected * Polynomial.monomial(Fraction(1), {0: len(parts) - 1}, n_total)
        glued = WeightedGraph(n_total, glued_edges)
        if vertex_span_poly(glued) != expected:
            return CheckResult("polynomial_identities", False, f"gluing identity failed on sample {i}")

        # scaling identity
        g2 = random_constructed(rng, rng.randint(2, 7))
        v2 = rng.randrange(g2.n)
        c = random_fraction(rng)
        scaled = scale_vertex(g2, v2, c)
        derived = vertex_span_poly(g2).substitute_linear(v2, LinearForm.of({v2: c})).scale(c)
        if vertex_span_poly(scaled) != derived:
            return CheckResult("polynomial_identities", False, f"scaling identity failed on sample {i}")
    return CheckResult("polynomial_identities", True, f"copy/gluing/scaling identities exact on {samples} samples each")


def check_matrix_tree(max_n: int = 6, samples: int = 25, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    graphs: list[WeightedGraph] = [g for g in FIXTURES.values() if g.n <= max_n]
    for _ in range(samples):
        graphs.append(random_constructed(rng, rng.randint(2, max_n)))
        graphs.append(random_connected(rng, rng.randint(2, max_n), signed=True))
    for g in graphs:
        if not matrix_tree_check(g):
            return CheckResult("matrix_tree", False, f"cofactor mismatch on {g!r}")
        if sum(1 for _ in enumerate_spanning_trees(g)) != spanning_tree_count(g):
            return CheckResult("matrix_tree", False, f"tree count mismatch on {g!r}")
    return CheckResult("matrix_tree", True, f"{len(graphs)} graphs: cofactor and tree count agree")


def check_factorization(samples: int = 40, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    graphs = [FIXTURES[name] for name in ACCEPTED_FIXTURES]
    graphs += [random_constructed(rng, rng.randint(1, 8)) for _ in range(samples)]
    for g in graphs:
        result = recognize(g)
        if not result.accepted:
            return CheckResult("factorization", False, f"corpus graph unexpectedly rejected: {g!r}")
        f = factor_from_trace(result.trace)
        if len(f.factors) != max(g.n - 2, 0):
            return CheckResult(
                "factorization", False, f"{g!r}: {len(f.factors)} factors, want {max(g.n - 2, 0)}"
            )
        if any(c < 0 for factor in f.factors for _, c in factor.coefficients):
            return CheckResult("factorization", False, f"negative factor coefficient on {g!r}")
        if all(w > 0 for w in g.edges.values()) and f.constant <= 0:
            return CheckResult("factorization", False, f"nonpositive constant on positive-weight {g!r}")
        if not verify_factorization(g, f):
            return CheckResult("factorization", False, f"factorization mismatch on {g!r}")
    return CheckResult("factorization", True, f"{len(graphs)} accepted graphs factor exactly with n-2 factors")


def check_rankwidth(max_n: int = 5, samples: int = 15, seed: int = 0) -> CheckResult:
    """Acceptance coincides with exhaustive rank-width 1 on small graphs.

    The equivalence presupposes sign-normalizable weights: a graph with
    mixed signs inside one block is never stable, yet can still have
    rank-width 1 (any 3-vertex graph does), so such graphs are skipped.
    """
    rng = random.Random(seed)
    graphs = [g for g in FIXTURES.values() if 2 <= g.n <= max_n]
    for _ in range(samples):
        graphs.append(random_constructed(rng, rng.randint(2, max_n)))
        graphs.append(random_connected(rng, rng.randint(2, max_n)))
    checked = 0
    for g in graphs:
        if isinstance(normalize_signs(g), MixedSignCertificate):
            continue
        checked += 1
        result = recognize(g)
        width = exhaustive_min_rankwidth(g, cap=max(max_n, 7))
        if result.accepted != (width == 1):
            return CheckResult(
                "rankwidth", False, f"{g!r}: accepted={result.accepted} but min width={width}"
            )
        if result.accepted:
            tree = build_rank_decomposition(result.trace)
            if tree_width(g, tree) != 1:
                return CheckResult("rankwidth", False, f"constructed tree not width 1 on {g!r}")
    return CheckResult("rankwidth", True, f"{checked} graphs: accept <=> rank-width 1; built trees width 1")


def check_certificates(forbidden_trials: int = 10000, accepted_trials: int = 500, seed: int = 0) -> CheckResult:
    poly = house_case_polynomial(2)
    cert = house_case_certificate(2)
    if not verify_certificate(poly, cert):
        return CheckResult("certificates", False, "documented house-case certificate failed to verify")
    for name in FORBIDDEN_FIXTURES:
        p = vertex_span_poly(FIXTURES[name])
        result = falsify(p, trials=forbidden_trials, seed=seed)
        if not isinstance(result, ZeroCertificate):
            return CheckResult("certificates", False, f"no exact certificate for {name}")
        if not verify_certificate(p, result):
            return CheckResult("certificates", False, f"certificate for {name} failed verification")
    for name in ACCEPTED_FIXTURES:
        p = vertex_span_poly(FIXTURES[name])
        result = falsify(p, trials=accepted_trials, seed=seed)
        if not isinstance(result, FalsifyNotFound):
            return CheckResult("certificates", False, f"spurious witness on accepted {name}")
    return CheckResult(
        "certificates",
        True,
        f"house-case zero exact; forbidden fixtures certified within {forbidden_trials} trials; accepted clean",
    )


def check_sign_handling(samples: int = 40, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    graphs = [FIXTURES["mixed_sign_triangle"], FIXTURES["mixed_sign_bowtie"]]
    graphs += [random_connected(rng, rng.randint(2, 6), signed=True) for _ in range(samples)]
    mixed = normalized = 0
    for g in graphs:
        outcome = normalize_signs(g)
        if isinstance(outcome, MixedSignCertificate):
            mixed += 1
            star = star_polynomial(g, outcome.center)
            zero = outcome.zero_point(g.n)
            value = star.eval_complex([zero[v] for v in range(g.n)])
            if not value.is_zero():
                return CheckResult("sign_handling", False, f"star polynomial not killed on {g!r}")
            if not all(zero[v].im > 0 for v in outcome.hpoint_vertices()):
                return CheckResult("sign_handling", False, f"certificate point not in H on {g!r}")
        else:
            normalized += 1
            positive, flips = outcome
            if any(w <= 0 for w in positive.edges.values()):
                return CheckResult("sign_handling", False, f"normalization left nonpositive weight on {g!r}")
            if flip_blocks(positive, flips) != g:
                return CheckResult("sign_handling", False, f"sign flips do not round-trip on {g!r}")
    return CheckResult(
        "sign_handling", True, f"{mixed} mixed-sign certificates verified, {normalized} normalizations round-trip"
    )


def check_round_trip(samples: int = 100, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    for i in range(samples):
        g = random_constructed(rng, rng.randint(1, 10))
        result = recognize(g)
        if not result.accepted:
            return CheckResult("round_trip", False, f"constructed graph rejected: {g!r}")
        if replay_trace(result.trace) != g:
            return CheckResult("round_trip", False, f"replay mismatch on sample {i}: {g!r}")
    return CheckResult("round_trip", True, f"{samples} constructed graphs replay to their inputs exactly")


ALL_CHECKS: tuple[Callable[..., CheckResult], ...] = (
    check_unweighted_agreement,
    check_named_fixtures,
    check_c4_criterion,
    check_polynomial_identities,
    check_matrix_tree,
    check_factorization,
    check_rankwidth,
    check_certificates,
    check_sign_handling,
    check_round_trip,
)


def run_self_check(max_n: int = 5, seed: int = 0) -> list[CheckResult]:
    """Run every cross-module invariant at CLI-scale budgets."""
    return [
        check_unweighted_agreement(max_n=max_n),
        check_named_fixtures(),
        check_c4_criterion(seed=seed),
        check_polynomial_identities(seed=seed),
        check_matrix_tree(max_n=max(max_n, 5), seed=seed),
        check_factorization(seed=seed),
        check_rankwidth(max_n=min(max_n, 5), seed=seed),
        check_certificates(seed=seed),
        check_sign_handling(seed=seed),
        check_round_trip(seed=seed),
    ]
