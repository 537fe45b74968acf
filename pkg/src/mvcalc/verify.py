"""Property suites behind the ``verify`` subcommand.

Each property is a generator of (case label, ok) pairs; the runner
counts cases and failures and keeps the first failing label.  Checks
come in two flavours: exhaustive sweeps over small dimensions, and
randomized sweeps driven by a generator keyed to (seed, suite/name),
so a report is reproducible from its seed alone.

The reference implementations here are deliberately independent of the
code under test: permutation signs are recomputed by explicit swap
counting, and variational derivatives are recomputed from symmetric
differences of the density, which are exact for quadratic densities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .blades import AlgebraError, GradeError, Metric, Multivector
from .calculus import (
    check_laplacian_splitting,
    divergence_scalar,
    directional_deriv,
    ext_deriv,
    int_deriv,
    laplacian,
    matrix_divergence,
    right_int_deriv,
    tensor_deriv,
)
from .em import (
    MaxwellConfig,
    build_dual_lagrangian,
    build_lagrangian,
    derive_equations,
    dual_field,
    dual_theory,
    gauge_transform,
    polarization_count,
    wave_form,
)
from .indexes import complement, merge_signature, sort_signature
from .matrices import MvMatrix, mat_vec, vec_mat
from .poly import PolyScalar
from .randgen import (
    field_cases,
    random_constant_field,
    random_field,
    random_matrix_field,
    rng_for,
)
from .variational import (
    DerivOp,
    FieldEquation,
    FieldSymbol,
    FormalExpr,
    LagrangianDensity,
    euler_lagrange_exterior,
    euler_lagrange_tensor,
    first_variation,
    vderiv,
    verify_tensor_exterior_identity,
)

BATTERY_METRICS = (Metric(0, 3), Metric(1, 1), Metric(1, 3), Metric(2, 2))

_SMALL = (-3, -2, -1, 1, 2, 3)


@dataclass(frozen=True)
class PropertyOutcome:
    suite: str
    name: str
    cases: int
    failures: int
    first_counterexample: str | None

    @property
    def ok(self) -> bool:
        return self.failures == 0


# -- shared helpers ---------------------------------------------------------


def transposition_parity(raw) -> tuple[int, tuple]:
    """Permutation sign by explicit swap counting; the slow oracle."""
    items = list(raw)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    for i in range(len(items)):
        low = min(range(i, len(items)), key=items.__getitem__)
        if low != i:
            items[i], items[low] = items[low], items[i]
            sign = -sign
    return sign, tuple(items)


def _metric_splits(max_dim: int) -> Iterator[Metric]:
    for dim in range(1, max_dim + 1):
        for k in range(dim + 1):
            yield Metric(k, dim - k)


def _subsets(dim: int) -> list[tuple]:
    return [
        indices
        for size in range(dim + 1)
        for indices in itertools.combinations(range(dim), size)
    ]


def _sign(parity: int) -> Fraction:
    return Fraction(-1 if parity & 1 else 1)


def _scalar_eq(left, right) -> bool:
    return not (left - right)


def _pd(coeff, index: int):
    if isinstance(coeff, PolyScalar):
        return coeff.partial(index)
    return Fraction(0)


def _rand_fraction(rng) -> Fraction:
    return Fraction(rng.choice(_SMALL), rng.choice((1, 2, 3)))


# -- algebra ----------------------------------------------------------------


def _prop_signature_matches_swap_count(rng, trials):
    for case in range(250 * trials):
        length = rng.randint(0, 8)
        raw = [rng.randrange(16) for _ in range(length)]
        yield f"raw={raw}", sort_signature(raw) == transposition_parity(raw)


def _prop_merge_matches_concatenation(rng, trials):
    for dim in range(1, 6):
        for assign in itertools.product(range(3), repeat=dim):
            left = tuple(i for i, a in enumerate(assign) if a == 0)
            right = tuple(i for i, a in enumerate(assign) if a == 1)
            ok = merge_signature(left, right) == sort_signature(left + right)
            yield f"dim={dim} I={left} J={right}", ok


def _prop_merge_associative(rng, trials):
    for dim in range(1, 6):
        for assign in itertools.product(range(4), repeat=dim):
            one = tuple(i for i, a in enumerate(assign) if a == 0)
            two = tuple(i for i, a in enumerate(assign) if a == 1)
            three = tuple(i for i, a in enumerate(assign) if a == 2)
            s1, merged = merge_signature(one, two)
            s2, left_way = merge_signature(merged, three)
            t1, tail = merge_signature(two, three)
            t2, right_way = merge_signature(one, tail)
            ok = (s1 * s2, left_way) == (t1 * t2, right_way)
            yield f"dim={dim} I={one} J={two} K={three}", ok


def _prop_empty_merge_identity(rng, trials):
    for dim in range(1, 7):
        for indices in _subsets(dim):
            ok = (
                merge_signature((), indices) == (1, indices)
                and merge_signature(indices, ()) == (1, indices)
            )
            yield f"dim={dim} K={indices}", ok


def _prop_complement_merge_parity(rng, trials):
    for dim in range(1, 7):
        for indices in _subsets(dim):
            rest = complement(indices, dim)
            s1, _ = merge_signature(indices, rest)
            s2, _ = merge_signature(rest, indices)
            expected = (-1) ** (len(indices) * (dim - len(indices)))
            yield f"dim={dim} I={indices}", s1 * s2 == expected


def _prop_left_contraction_via_hodge(rng, trials):
    for metric in _metric_splits(5):
        subsets = _subsets(metric.dim)
        for I in subsets:
            for J in subsets:
                a = Multivector.blade(metric, I)
                b = Multivector.blade(metric, J)
                lhs = a.left_contract(b)
                rhs = a.wedge(b.hodge()).inv_hodge()
                yield f"({metric.k},{metric.n}) I={I} J={J}", lhs == rhs


def _prop_right_contraction_via_hodge(rng, trials):
    for metric in _metric_splits(5):
        subsets = _subsets(metric.dim)
        for I in subsets:
            for J in subsets:
                a = Multivector.blade(metric, I)
                b = Multivector.blade(metric, J)
                lhs = b.right_contract(a)
                rhs = b.inv_hodge().wedge(a).hodge()
                yield f"({metric.k},{metric.n}) I={I} J={J}", lhs == rhs


def _prop_hodge_round_trip(rng, trials):
    for metric in _metric_splits(6):
        for I in _subsets(metric.dim):
            e = Multivector.blade(metric, I)
            ok = e.hodge().inv_hodge() == e and e.inv_hodge().hodge() == e
            yield f"({metric.k},{metric.n}) I={I}", ok


def _prop_equal_grade_contraction_collapse(rng, trials):
    for metric in _metric_splits(5):
        for grade in range(metric.dim + 1):
            blades = list(metric.blades(grade))
            for I in blades:
                for J in blades:
                    a = Multivector.blade(metric, I)
                    b = Multivector.blade(metric, J)
                    scalar = Multivector.scalar(metric, a.dot(b))
                    ok = (
                        a.left_contract(b) == scalar
                        and b.right_contract(a) == scalar
                    )
                    yield f"({metric.k},{metric.n}) I={I} J={J}", ok


def _prop_wedge_graded_commutativity(rng, trials):
    for metric in _metric_splits(5):
        subsets = _subsets(metric.dim)
        for I in subsets:
            for J in subsets:
                a = Multivector.blade(metric, I)
                b = Multivector.blade(metric, J)
                ok = a.wedge(b) == b.wedge(a) * _sign(len(I) * len(J))
                yield f"({metric.k},{metric.n}) I={I} J={J}", ok


def _prop_wedge_associative(rng, trials):
    for metric in _metric_splits(4):
        subsets = _subsets(metric.dim)
        for I in subsets:
            a = Multivector.blade(metric, I)
            for J in subsets:
                b = Multivector.blade(metric, J)
                ab = a.wedge(b)
                for K in subsets:
                    c = Multivector.blade(metric, K)
                    ok = ab.wedge(c) == a.wedge(b.wedge(c))
                    yield f"({metric.k},{metric.n}) I={I} J={J} K={K}", ok


def _prop_products_bilinear(rng, trials):
    for case in range(trials):
        metric = rng.choice(BATTERY_METRICS)
        ga = rng.randint(0, metric.dim)
        gb = rng.randint(0, metric.dim)
        a1 = random_field(rng, metric, ga)
        a2 = random_field(rng, metric, ga)
        b = random_field(rng, metric, gb)
        alpha = _rand_fraction(rng)
        beta = _rand_fraction(rng)
        combo = a1 * alpha + a2 * beta
        ok = (
            combo.wedge(b) == a1.wedge(b) * alpha + a2.wedge(b) * beta
            and combo.left_contract(b)
            == a1.left_contract(b) * alpha + a2.left_contract(b) * beta
            and b.right_contract(combo)
            == b.right_contract(a1) * alpha + b.right_contract(a2) * beta
            and combo.hodge() == a1.hodge() * alpha + a2.hodge() * beta
        )
        if ga == gb:
            ok = ok and _scalar_eq(
                combo.dot(b), alpha * a1.dot(b) + beta * a2.dot(b)
            )
        yield f"({metric.k},{metric.n}) ga={ga} gb={gb} case={case}", ok


def _prop_matrix_algebra(rng, trials):
    for case in range(trials):
        metric = rng.choice(BATTERY_METRICS)
        g1 = rng.randint(0, min(2, metric.dim))
        g2 = rng.randint(0, min(2, metric.dim))
        g3 = rng.randint(0, min(2, metric.dim))
        A = random_matrix_field(rng, metric, g1, g2)
        B = random_matrix_field(rng, metric, g2, g3)
        C = random_matrix_field(rng, metric, g1, g2)
        v = random_field(rng, metric, g3, max_degree=1)
        w = random_field(rng, metric, g1, max_degree=1)
        frob = Fraction(0)
        for (rows, cols), val in A.terms.items():
            frob = metric.sign_of(rows) * metric.sign_of(cols) * val * val + frob
        ok = (
            MvMatrix.identity(metric, g1).matmul(A) == A
            and A.matmul(MvMatrix.identity(metric, g2)) == A
            and A.transpose().transpose() == A
            and _scalar_eq(A.dot(C), C.dot(A))
            and _scalar_eq(A.dot(C), A.transpose().dot(C.transpose()))
            and _scalar_eq(A.dot(A), frob)
            and mat_vec(A.matmul(B), v) == mat_vec(A, mat_vec(B, v))
            and vec_mat(w, A) == mat_vec(A.transpose(), w)
        )
        yield f"({metric.k},{metric.n}) shapes=({g1},{g2},{g3}) case={case}", ok


# -- calculus ---------------------------------------------------------------


def _battery_fields(rng, trials) -> Iterator[tuple[Metric, int, Multivector]]:
    for metric in BATTERY_METRICS:
        for grade in range(metric.dim + 1):
            for field in field_cases(rng, metric, grade, trials):
                yield metric, grade, field


def _prop_exterior_derivative_nilpotent(rng, trials):
    for metric, grade, field in _battery_fields(rng, trials):
        ok = ext_deriv(ext_deriv(field)).is_zero()
        yield f"({metric.k},{metric.n}) grade={grade} a={field}", ok


def _prop_interior_derivative_nilpotent(rng, trials):
    for metric, grade, field in _battery_fields(rng, trials):
        ok = int_deriv(int_deriv(field)).is_zero()
        yield f"({metric.k},{metric.n}) grade={grade} a={field}", ok


def _prop_interior_of_vector_wedge(rng, trials):
    for metric in BATTERY_METRICS:
        for case in range(trials):
            a = random_field(rng, metric, 1)
            b = random_field(rng, metric, 1)
            lhs = int_deriv(a.wedge(b))
            rhs = (
                a * divergence_scalar(b)
                - b * divergence_scalar(a)
                + directional_deriv(b, a)
                - directional_deriv(a, b)
            )
            yield f"({metric.k},{metric.n}) case={case} a={a} b={b}", lhs == rhs


def _prop_divergence_of_contraction(rng, trials):
    for metric in BATTERY_METRICS:
        for s in range(1, metric.dim + 1):
            for case in range(trials):
                a = random_field(rng, metric, s - 1)
                b = random_field(rng, metric, s)
                lhs = divergence_scalar(a.left_contract(b))
                rhs = ext_deriv(a).dot(b) + _sign(s - 1) * int_deriv(b).dot(a)
                ok = _scalar_eq(lhs, rhs)
                yield f"({metric.k},{metric.n}) s={s} case={case}", ok


def _prop_matrix_divergence_leibniz(rng, trials):
    for metric in BATTERY_METRICS:
        for grade in range(metric.dim + 1):
            for case in range(trials):
                B = random_matrix_field(rng, metric, 1, grade)
                a = random_field(rng, metric, grade)
                lhs = divergence_scalar(mat_vec(B, a))
                rhs = matrix_divergence(B).dot(a) + B.dot(tensor_deriv(a))
                ok = _scalar_eq(lhs, rhs)
                yield f"({metric.k},{metric.n}) grade={grade} case={case}", ok


def _prop_laplacian_splitting_sign(rng, trials):
    for metric, grade, field in _battery_fields(rng, trials):
        ok = check_laplacian_splitting(metric, grade, [field])
        yield f"({metric.k},{metric.n}) grade={grade} a={field}", ok


def _prop_tensor_divergence_is_laplacian(rng, trials):
    for metric, grade, field in _battery_fields(rng, trials):
        ok = matrix_divergence(tensor_deriv(field)) == laplacian(field)
        yield f"({metric.k},{metric.n}) grade={grade} a={field}", ok


def _prop_curl_forms_agree(rng, trials):
    metric = Metric(0, 3)
    for case in range(trials):
        v = random_field(rng, metric, 1)
        via_wedge = ext_deriv(v).inv_hodge()
        via_left = int_deriv(v.inv_hodge())
        via_right = int_deriv(v.hodge())
        comps = [v.coefficient((i,)) for i in range(3)]
        classical = Multivector(
            metric,
            1,
            {
                (0,): _pd(comps[2], 1) - _pd(comps[1], 2),
                (1,): _pd(comps[0], 2) - _pd(comps[2], 0),
                (2,): _pd(comps[1], 0) - _pd(comps[0], 1),
            },
        )
        ok = via_wedge == classical and via_left == classical and via_right == classical
        yield f"case={case} v={v}", ok


def _prop_interior_orientation_sign(rng, trials):
    for metric, grade, field in _battery_fields(rng, trials):
        ok = int_deriv(field) == right_int_deriv(field) * _sign(grade + 1)
        yield f"({metric.k},{metric.n}) grade={grade} a={field}", ok


def _prop_vector_divergence_routes(rng, trials):
    for metric in BATTERY_METRICS:
        for case in range(trials):
            v = random_field(rng, metric, 1)
            direct = divergence_scalar(v)
            ok = _scalar_eq(int_deriv(v).scalar_value(), direct)
            manual = Fraction(0)
            for i in range(metric.dim):
                manual = manual + _pd(v.coefficient((i,)), i)
            ok = ok and _scalar_eq(direct, manual)
            yield f"({metric.k},{metric.n}) case={case} v={v}", ok


# -- variational ------------------------------------------------------------


def battery_densities(metric: Metric) -> list[tuple[str, LagrangianDensity]]:
    """Labeled quadratic densities admissible in a metric, for sweeps."""
    out = []
    for r in range(1, metric.dim + 1):
        out.append((f"maxwell r={r}", build_lagrangian(MaxwellConfig(metric, r))))
        out.append(
            (f"massive r={r}", build_lagrangian(MaxwellConfig(metric, r, mass=2)))
        )
        if r >= 2:
            cfg = MaxwellConfig(metric, r, mass=1, xi=Fraction(1, 2))
            out.append((f"gauge-fixed r={r}", build_lagrangian(cfg)))
    for s in range(1, metric.dim + 1):
        out.append((f"dual s={s}", build_dual_lagrangian(s)))
    a = FieldSymbol("a", min(1, metric.dim), "dynamical")
    rho = FieldSymbol("rho", a.grade, "source")
    out.append(
        (
            "source-only",
            LagrangianDensity([(Fraction(1), (DerivOp.ID, rho), (DerivOp.ID, a))]),
        )
    )
    return out


def _assignments(rng, metric, L, count):
    symbols = L.symbols()
    dyn = L.dynamical
    out = []
    for value in field_cases(rng, metric, dyn.grade, count):
        assignment = {dyn.name: value}
        for name, sym in symbols.items():
            if name != dyn.name:
                assignment[name] = random_field(rng, metric, sym.grade)
        out.append(assignment)
    return out


def _prop_exterior_route_matches_tensor_route(rng, trials):
    per = max(3, trials // 10)
    for metric in BATTERY_METRICS:
        for label, L in battery_densities(metric):
            fields = _assignments(rng, metric, L, per)
            report = verify_tensor_exterior_identity(L, metric, fields)
            tag = f"({metric.k},{metric.n}) {label}"
            if report.ok:
                yield tag, True
            else:
                yield f"{tag} disagreements={report.counterexamples}", False


def _prop_first_variation_exact(rng, trials):
    for case in range(trials):
        metric = BATTERY_METRICS[case % len(BATTERY_METRICS)]
        densities = battery_densities(metric)
        label, L = densities[case % len(densities)]
        dyn = L.dynamical
        a_value = random_field(rng, metric, dyn.grade)
        eps = random_field(rng, metric, dyn.grade)
        sources = {
            name: random_field(rng, metric, sym.grade)
            for name, sym in L.symbols().items()
            if name != dyn.name
        }
        bulk, boundary = first_variation(L, a_value, eps, sources)
        plus = dict(sources, **{dyn.name: a_value + eps})
        minus = dict(sources, **{dyn.name: a_value - eps})
        target = (L.value(plus) - L.value(minus)) / 2
        ok = _scalar_eq(bulk + divergence_scalar(boundary), target)
        yield f"({metric.k},{metric.n}) {label} case={case}", ok


def _prop_slot_derivative_linear(rng, trials):
    for case in range(trials):
        metric = rng.choice(BATTERY_METRICS)
        s = rng.randint(1, metric.dim - 1)
        a = FieldSymbol("a", s, "dynamical")
        b = FieldSymbol("b", s, "source")
        pool = (
            ((DerivOp.ID, a), (DerivOp.ID, a)),
            ((DerivOp.ID, b), (DerivOp.ID, a)),
            ((DerivOp.EXT, a), (DerivOp.EXT, a)),
            ((DerivOp.EXT, b), (DerivOp.EXT, a)),
            ((DerivOp.INT, a), (DerivOp.INT, a)),
            ((DerivOp.INT, a), (DerivOp.INT, b)),
        )

        def pick():
            terms = [
                (Fraction(c), left, right)
                for left, right in pool
                if (c := rng.choice((-2, -1, 0, 0, 1, 2, 3)))
            ]
            if not terms:
                terms = [(Fraction(1), *pool[0])]
            return LagrangianDensity(terms)

        one, two = pick(), pick()
        alpha = _rand_fraction(rng)
        beta = _rand_fraction(rng)
        combo = one * alpha + two * beta
        ok = True
        for wrt in ((DerivOp.ID, a), (DerivOp.EXT, a), (DerivOp.INT, a)):
            ok = ok and vderiv(combo, wrt) == vderiv(one, wrt) * alpha + vderiv(
                two, wrt
            ) * beta
        yield f"({metric.k},{metric.n}) s={s} case={case}", ok


def _component_densities(grade: int):
    """A tensor-slot density and an exterior-slot density of one grade."""
    a = FieldSymbol("a", grade, "dynamical")
    j = FieldSymbol("j", grade, "source")
    tensor = LagrangianDensity(
        [
            (Fraction(1, 2), (DerivOp.TENSOR, a), (DerivOp.TENSOR, a)),
            (Fraction(1), (DerivOp.ID, j), (DerivOp.ID, a)),
            (Fraction(-3, 2), (DerivOp.ID, a), (DerivOp.ID, a)),
        ]
    )
    terms = [
        (Fraction(1, 2), (DerivOp.EXT, a), (DerivOp.EXT, a)),
        (Fraction(1), (DerivOp.ID, j), (DerivOp.ID, a)),
        (Fraction(-3, 2), (DerivOp.ID, a), (DerivOp.ID, a)),
    ]
    if grade >= 1:
        terms.append((Fraction(1, 4), (DerivOp.INT, a), (DerivOp.INT, a)))
    exterior = LagrangianDensity(terms)
    return a, tensor, exterior


def _prop_equation_components_match_difference_oracle(rng, trials):
    """Both EL routes against symmetric-difference partial derivatives.

    For every blade e_I the equation component must equal
    dL/da_I - sum_i d_i dL/d(d_i a_I), with both partials recovered from
    L alone by perturbing a with e_I and with x_i e_I.
    """
    per = max(1, trials // 16)
    for metric in BATTERY_METRICS:
        for grade in (0, 1):
            a, tensor_L, exterior_L = _component_densities(grade)
            routes = (
                ("tensor", tensor_L, euler_lagrange_tensor),
                ("exterior", exterior_L, euler_lagrange_exterior),
            )
            for case in range(per):
                a_value = random_field(rng, metric, grade, max_degree=2)
                j_value = random_field(rng, metric, grade, max_degree=2)
                assignment = {"a": a_value, "j": j_value}
                for route_name, L, route in routes:
                    residual = route(L).residual(assignment, metric)
                    for I in metric.blades(grade):
                        bump = Multivector.blade(metric, I)
                        d_field = (
                            L.value(dict(assignment, a=a_value + bump))
                            - L.value(dict(assignment, a=a_value - bump))
                        ) / 2
                        acc = d_field
                        for i in range(metric.dim):
                            ramp = PolyScalar.variable(metric.dim, i)
                            slope = Multivector.blade(metric, I, ramp)
                            d_slot = (
                                L.value(dict(assignment, a=a_value + slope))
                                - L.value(dict(assignment, a=a_value - slope))
                            ) / 2 - ramp * d_field
                            acc = acc - _pd(d_slot, i)
                        got = metric.sign_of(I) * residual.coefficient(I)
                        ok = _scalar_eq(got, acc)
                        yield (
                            f"({metric.k},{metric.n}) {route_name} grade={grade} "
                            f"I={I} case={case}"
                        ), ok


# -- field theories ---------------------------------------------------------


def _prop_maxwell_display_structure(rng, trials):
    for metric in _metric_splits(4):
        for r in range(1, metric.dim + 1):
            eq = derive_equations(MaxwellConfig(metric, r))
            A = FieldSymbol("A", r - 1, "dynamical")
            J = FieldSymbol("J", r - 1, "source")
            expected = FieldEquation(
                FormalExpr.single(("int", "ext"), A),
                FormalExpr.single((), J),
                r - 1,
            )
            ok = eq == expected and eq.render() == "d_| ( d^ A ) = J"
            yield f"({metric.k},{metric.n}) r={r}", ok


def _prop_massive_gauge_fixed_structure(rng, trials):
    for metric in _metric_splits(4):
        for r in range(1, metric.dim + 1):
            A = FieldSymbol("A", r - 1, "dynamical")
            J = FieldSymbol("J", r - 1, "source")
            lhs = FormalExpr(
                [(("int", "ext"), A, Fraction(1)), ((), A, Fraction(4))]
            )
            proca = derive_equations(MaxwellConfig(metric, r, mass=2))
            ok = proca == FieldEquation(lhs, FormalExpr.single((), J), r - 1)
            ok = ok and proca.render() == "d_| ( d^ A ) + 4 * A = J"
            if r >= 2:
                fixed = derive_equations(
                    MaxwellConfig(metric, r, mass=2, xi=Fraction(1, 3))
                )
                rhs = FormalExpr(
                    [((), J, Fraction(1)), (("ext", "int"), A, Fraction(3))]
                )
                ok = ok and fixed == FieldEquation(lhs, rhs, r - 1)
                ok = (
                    ok
                    and fixed.render()
                    == "d_| ( d^ A ) + 4 * A = J + 3 * d^ ( d_| A )"
                )
            yield f"({metric.k},{metric.n}) r={r}", ok


def _configs_for(metric: Metric, r: int) -> list[MaxwellConfig]:
    out = [MaxwellConfig(metric, r), MaxwellConfig(metric, r, mass=2)]
    if r >= 2:
        out.append(MaxwellConfig(metric, r, mass=2, xi=Fraction(1, 2)))
    return out


def _prop_display_matches_raw_equation(rng, trials):
    per = max(2, trials // 10)
    for metric in BATTERY_METRICS:
        for r in range(1, metric.dim + 1):
            for cfg in _configs_for(metric, r):
                for case in range(per):
                    assignment = {
                        "A": random_field(rng, metric, r - 1),
                        "J": random_field(rng, metric, r - 1),
                    }
                    raw = euler_lagrange_exterior(build_lagrangian(cfg))
                    disp = derive_equations(cfg)
                    ok = disp.residual(assignment, metric) == -raw.residual(
                        assignment, metric
                    )
                    tag = f"({metric.k},{metric.n}) r={r} xi={cfg.xi} case={case}"
                    yield tag, ok


def _prop_wave_form_agrees(rng, trials):
    per = max(2, trials // 10)
    for metric in BATTERY_METRICS:
        for r in range(2, metric.dim + 1):
            for xi in (Fraction(1, 2), Fraction(1)):
                cfg = MaxwellConfig(metric, r, mass=3, xi=xi)
                disp = derive_equations(cfg)
                wave = wave_form(cfg)
                for case in range(per):
                    assignment = {
                        "A": random_field(rng, metric, r - 1),
                        "J": random_field(rng, metric, r - 1),
                    }
                    ok = disp.residual(assignment, metric) == wave.residual(
                        assignment, metric
                    )
                    yield f"({metric.k},{metric.n}) r={r} xi={xi} case={case}", ok
            feynman = wave_form(MaxwellConfig(metric, r, xi=Fraction(1)))
            expected = "lap A = J" if (r - 1) % 2 == 0 else "-lap A = J"
            yield f"({metric.k},{metric.n}) r={r} feynman", feynman.render() == expected


def _prop_gauge_invariance(rng, trials):
    for metric in BATTERY_METRICS:
        for r in range(1, metric.dim + 1):
            for case in range(trials):
                A = random_field(rng, metric, r - 1)
                shift = random_constant_field(rng, metric, r - 1)
                G = random_field(rng, metric, r - 2) if r >= 2 else None
                moved = gauge_transform(A, shift, G)
                ok = ext_deriv(moved) == ext_deriv(A)
                yield f"({metric.k},{metric.n}) r={r} case={case}", ok


def _prop_source_continuity(rng, trials):
    for metric in BATTERY_METRICS:
        for r in range(1, metric.dim + 1):
            for case in range(trials):
                A = random_field(rng, metric, r - 1)
                induced = int_deriv(ext_deriv(A))
                ok = int_deriv(induced).is_zero()
                yield f"({metric.k},{metric.n}) r={r} case={case}", ok


def _prop_dual_display_structure(rng, trials):
    for metric in _metric_splits(4):
        for s in range(1, metric.dim + 1):
            nonhomog, homog = dual_theory(metric, s)
            Abar = FieldSymbol("Abar", s, "dynamical")
            Jbar = FieldSymbol("Jbar", s, "source")
            Fbar = FieldSymbol("Fbar", s - 1, "source")
            ok = (
                nonhomog
                == FieldEquation(
                    FormalExpr.single((), Jbar),
                    FormalExpr.single(("ext", "int"), Abar),
                    s,
                )
                and nonhomog.render() == "Jbar = d^ ( d_| Abar )"
                and homog
                == FieldEquation(
                    FormalExpr.single(("int",), Fbar), FormalExpr.zero(), s - 2
                )
                and homog.render() == "d_| Fbar = 0"
            )
            yield f"({metric.k},{metric.n}) s={s}", ok


def _prop_dual_field_identities(rng, trials):
    for metric in BATTERY_METRICS:
        for s in range(1, metric.dim + 1):
            nonhomog, homog = dual_theory(metric, s)
            for case in range(trials):
                Abar = random_field(rng, metric, s)
                Fbar = dual_field(Abar)
                induced = {"Abar": Abar, "Jbar": ext_deriv(int_deriv(Abar))}
                ok = (
                    int_deriv(Fbar).is_zero()
                    and nonhomog.residual(induced, metric).is_zero()
                    and homog.residual({"Fbar": Fbar}, metric).is_zero()
                    and int_deriv(Abar) == right_int_deriv(Abar) * _sign(s + 1)
                )
                yield f"({metric.k},{metric.n}) s={s} case={case}", ok


def _prop_polarization_table(rng, trials):
    pinned = {
        (1, 1, 1): 1,
        (1, 1, 2): 0,
        (1, 2, 1): 1,
        (1, 2, 2): 1,
        (1, 3, 1): 1,
        (1, 3, 2): 2,
        (1, 3, 3): 1,
        (1, 3, 4): 0,
        (1, 4, 2): 3,
        (1, 4, 3): 3,
        (2, 2, 1): 1,
        (2, 2, 2): 2,
        (2, 2, 3): 1,
        (2, 3, 2): 3,
    }
    for (k, n, r), expected in sorted(pinned.items()):
        yield f"(k,n,r)=({k},{n},{r})", polarization_count(k, n, r) == expected
    for k, n, r, exc in (
        (0, 3, 1, AlgebraError),
        (3, 0, 1, AlgebraError),
        (1, 3, 0, GradeError),
        (1, 3, 5, GradeError),
    ):
        try:
            polarization_count(k, n, r)
        except exc:
            yield f"rejects (k,n,r)=({k},{n},{r})", True
        except Exception:
            yield f"rejects (k,n,r)=({k},{n},{r})", False
        else:
            yield f"rejects (k,n,r)=({k},{n},{r})", False


# -- registry and runner ----------------------------------------------------

SUITES: dict[str, dict[str, Callable]] = {
    "algebra": {
        "signature_matches_swap_count": _prop_signature_matches_swap_count,
        "merge_matches_concatenation": _prop_merge_matches_concatenation,
        "merge_associative": _prop_merge_associative,
        "empty_merge_identity": _prop_empty_merge_identity,
        "complement_merge_parity": _prop_complement_merge_parity,
        "left_contraction_via_hodge": _prop_left_contraction_via_hodge,
        "right_contraction_via_hodge": _prop_right_contraction_via_hodge,
        "hodge_round_trip": _prop_hodge_round_trip,
        "equal_grade_contraction_collapse": _prop_equal_grade_contraction_collapse,
        "wedge_graded_commutativity": _prop_wedge_graded_commutativity,
        "wedge_associative": _prop_wedge_associative,
        "products_bilinear": _prop_products_bilinear,
        "matrix_algebra": _prop_matrix_algebra,
    },
    "calculus": {
        "exterior_derivative_nilpotent": _prop_exterior_derivative_nilpotent,
        "interior_derivative_nilpotent": _prop_interior_derivative_nilpotent,
        "interior_of_vector_wedge": _prop_interior_of_vector_wedge,
        "divergence_of_contraction": _prop_divergence_of_contraction,
        "matrix_divergence_leibniz": _prop_matrix_divergence_leibniz,
        "laplacian_splitting_sign": _prop_laplacian_splitting_sign,
        "tensor_divergence_is_laplacian": _prop_tensor_divergence_is_laplacian,
        "curl_forms_agree": _prop_curl_forms_agree,
        "interior_orientation_sign": _prop_interior_orientation_sign,
        "vector_divergence_routes": _prop_vector_divergence_routes,
    },
    "variational": {
        "exterior_route_matches_tensor_route": _prop_exterior_route_matches_tensor_route,
        "first_variation_exact": _prop_first_variation_exact,
        "slot_derivative_linear": _prop_slot_derivative_linear,
        "equation_components_match_difference_oracle": _prop_equation_components_match_difference_oracle,
    },
    "em": {
        "maxwell_display_structure": _prop_maxwell_display_structure,
        "massive_gauge_fixed_structure": _prop_massive_gauge_fixed_structure,
        "display_matches_raw_equation": _prop_display_matches_raw_equation,
        "wave_form_agrees": _prop_wave_form_agrees,
        "gauge_invariance": _prop_gauge_invariance,
        "source_continuity": _prop_source_continuity,
        "dual_display_structure": _prop_dual_display_structure,
        "dual_field_identities": _prop_dual_field_identities,
        "polarization_table": _prop_polarization_table,
    },
}


def run_suites(suites: Iterable[str] | str, seed: int = 42,
               trials: int = 40) -> list[PropertyOutcome]:
    """Run the named suites; "all" expands to every suite."""
    if isinstance(suites, str):
        suites = [suites]
    if trials < 1:
        raise AlgebraError("trials must be at least 1")
    picked: list[str] = []
    for name in suites:
        expansion = sorted(SUITES) if name == "all" else [name]
        for suite in expansion:
            if suite not in SUITES:
                raise AlgebraError(f"unknown suite {suite!r}")
            if suite not in picked:
                picked.append(suite)
    outcomes = []
    for suite in picked:
        for name in sorted(SUITES[suite]):
            rng = rng_for(seed, f"{suite}/{name}")
            cases = failures = 0
            first = None
            for label, ok in SUITES[suite][name](rng, trials):
                cases += 1
                if not ok:
                    failures += 1
                    if first is None:
                        first = label
            outcomes.append(PropertyOutcome(suite, name, cases, failures, first))
    return outcomes


def format_report(outcomes: Iterable[PropertyOutcome]) -> str:
    outcomes = list(outcomes)
    lines = []
    for item in outcomes:
        status = "PASS" if item.ok else "FAIL"
        lines.append(
            f"{status} {item.suite}/{item.name}: cases={item.cases} "
            f"failures={item.failures}"
        )
        if item.first_counterexample is not None:
            lines.append(f"    first counterexample: {item.first_counterexample}")
    passed = sum(1 for item in outcomes if item.ok)
    lines.append(
        f"SUMMARY: properties={len(outcomes)} passed={passed} "
        f"failed={len(outcomes) - passed} cases={sum(i.cases for i in outcomes)}"
    )
    return "\n".join(lines)
