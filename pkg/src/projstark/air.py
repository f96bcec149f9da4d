"""Algebraic intermediate representation of an execution trace.

Turns the trace into column interpolants over the cyclic domain, the four
constraint-numerator families, their quotients by the step-domain vanishing
polynomial, and the random-weighted combined polynomial.

Constraint families are held in the order the combination weights are drawn:
transition, slack definition, upper-bit, lower-bit.  The degree tables of the
worked example list the two bit families in the opposite order; the replay
fixture reorders for presentation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

from .dynamics import ExecutionTrace, SystemSpec, apply_transition
from .field import CyclicDomain, PrimeField
from .poly import Polynomial, divide_exact, interpolate, vanishing


class FieldOverflowError(ValueError):
    """A trace magnitude or intermediate product does not fit below the modulus."""


class InvalidTraceError(ValueError):
    """A constraint numerator is not divisible by the vanishing polynomial."""


@dataclass(frozen=True)
class FieldTrace:
    """Execution trace reduced to canonical residues."""

    field: PrimeField
    spec: SystemSpec
    z_rows: Tuple[Tuple[int, ...], ...]
    alpha_up_rows: Tuple[Tuple[int, ...], ...]
    alpha_lo_rows: Tuple[Tuple[int, ...], ...]
    delta_rows: Tuple[Tuple[int, ...], ...]


def lift_trace(trace: ExecutionTrace, field: PrimeField) -> FieldTrace:
    """Reduce the integer trace mod q, rejecting any magnitude >= q.

    Also rejects traces whose unprojected updates A_hat * z overflow, so the
    field constraints coincide with the integer semantics.
    """
    q = field.modulus
    spec = trace.spec

    def lift_rows(rows):
        out = []
        for row in rows:
            for v in row:
                if abs(v) >= q:
                    raise FieldOverflowError(f"trace value {v} has magnitude >= q={q}")
            out.append(tuple(v % q for v in row))
        return tuple(out)

    for z in trace.z_rows[:-1]:
        for w in apply_transition(spec, z):
            if abs(w) >= q:
                raise FieldOverflowError(f"intermediate A_hat*z value {w} has magnitude >= q={q}")
    return FieldTrace(
        field=field,
        spec=spec,
        z_rows=lift_rows(trace.z_rows),
        alpha_up_rows=lift_rows(trace.alpha_up_rows),
        alpha_lo_rows=lift_rows(trace.alpha_lo_rows),
        delta_rows=lift_rows(trace.delta_rows),
    )


@dataclass(frozen=True)
class TracePolynomials:
    """Column interpolants: f_z over the full domain, the rest over the first N points."""

    f_z: Tuple[Polynomial, ...]
    f_alpha_up: Tuple[Polynomial, ...]
    f_alpha_lo: Tuple[Polynomial, ...]
    f_delta: Tuple[Polynomial, ...]

    @property
    def n(self) -> int:
        return len(self.f_z)

    def degrees(self) -> dict:
        return {
            "z": tuple(p.reported_degree for p in self.f_z),
            "alpha_up": tuple(p.reported_degree for p in self.f_alpha_up),
            "alpha_lo": tuple(p.reported_degree for p in self.f_alpha_lo),
            "delta": tuple(p.reported_degree for p in self.f_delta),
        }


def build_trace_polys(
    trace: Union[ExecutionTrace, FieldTrace], domain: CyclicDomain
) -> TracePolynomials:
    if isinstance(trace, ExecutionTrace):
        trace = lift_trace(trace, domain.field)
    spec = trace.spec
    N = spec.num_steps
    if domain.order != N + 1:
        raise ValueError(f"domain order {domain.order} != num_steps + 1 = {N + 1}")
    field = domain.field
    xs_full = [e.value for e in domain.elements]
    xs_step = xs_full[:N]

    def column(rows, i):
        return [row[i] for row in rows]

    f_z, f_up, f_lo, f_d = [], [], [], []
    for i in range(spec.n):
        f_z.append(interpolate(list(zip(xs_full, column(trace.z_rows, i))), field))
        f_up.append(interpolate(list(zip(xs_step, column(trace.alpha_up_rows, i))), field))
        f_lo.append(interpolate(list(zip(xs_step, column(trace.alpha_lo_rows, i))), field))
        f_d.append(interpolate(list(zip(xs_step, column(trace.delta_rows, i))), field))
    return TracePolynomials(
        f_z=tuple(f_z), f_alpha_up=tuple(f_up), f_alpha_lo=tuple(f_lo), f_delta=tuple(f_d)
    )


@dataclass(frozen=True)
class ConstraintNumerators:
    """The four families, indexed by state coordinate."""

    transition: Tuple[Polynomial, ...]
    slack: Tuple[Polynomial, ...]
    upper_bit: Tuple[Polynomial, ...]
    lower_bit: Tuple[Polynomial, ...]

    def families(self) -> Iterator[Tuple[str, int, Polynomial]]:
        """(family, coordinate, numerator) in weight-draw order."""
        for name in ("transition", "slack", "upper_bit", "lower_bit"):
            for i, p in enumerate(getattr(self, name)):
                yield name, i, p


def build_numerators(
    tp: TracePolynomials, spec: SystemSpec, domain: CyclicDomain
) -> ConstraintNumerators:
    field = domain.field
    g = domain.generator
    one = Polynomial.constant(field, 1)
    az = []
    for i in range(spec.n):
        acc = Polynomial.zero(field)
        for j in range(spec.n):
            if spec.a_hat[i][j]:
                acc = acc + tp.f_z[j].scale(spec.a_hat[i][j])
        az.append(acc)

    transition, slack, upper_bit, lower_bit = [], [], [], []
    for i in range(spec.n):
        hi = Polynomial.constant(field, spec.z_upper[i])
        lw = Polynomial.constant(field, spec.z_lower[i])
        f_up, f_lo = tp.f_alpha_up[i], tp.f_alpha_lo[i]
        transition.append(
            tp.f_z[i].scale_argument(g)
            - f_lo * f_up * az[i]
            - (one - f_up).scale(spec.z_upper[i])
            - (one - f_lo).scale(spec.z_lower[i])
        )
        slack.append(tp.f_delta[i] - f_up * (hi - az[i]) - f_lo * (az[i] - lw))
        upper_bit.append(f_up * (one - f_up))
        lower_bit.append(f_lo * (one - f_lo))
    return ConstraintNumerators(
        transition=tuple(transition),
        slack=tuple(slack),
        upper_bit=tuple(upper_bit),
        lower_bit=tuple(lower_bit),
    )


@dataclass(frozen=True)
class CompositionSet:
    """Quotients by the step-domain vanishing polynomial, with declared degree bounds."""

    transition: Tuple[Polynomial, ...]
    slack: Tuple[Polynomial, ...]
    upper_bit: Tuple[Polynomial, ...]
    lower_bit: Tuple[Polynomial, ...]
    bounds: dict
    combined_degree_bound: int

    def ordered(self) -> List[Polynomial]:
        """Quotients in weight-draw order: per family, per coordinate."""
        out = []
        for name in ("transition", "slack", "upper_bit", "lower_bit"):
            out.extend(getattr(self, name))
        return out


def build_compositions(
    numerators: ConstraintNumerators,
    tp: TracePolynomials,
    domain: CyclicDomain,
    *,
    allow_remainder: bool = False,
) -> CompositionSet:
    """Divide every numerator by the vanishing polynomial of the first N points.

    A nonzero remainder means the trace breaks a constraint at some step; the
    honest prover stops there.  With allow_remainder the floor quotients are
    kept, which is the dishonest commit path used in soundness experiments.
    """
    field = domain.field
    N = domain.order - 1
    zv = vanishing([e.value for e in domain.elements[:N]], field)

    quots = {}
    for name, i, num in numerators.families():
        quot, exact = divide_exact(num, zv)
        if not exact and not allow_remainder:
            raise InvalidTraceError(f"constraint {name}[{i}] does not vanish on the step domain")
        quots.setdefault(name, []).append(quot)

    d = tp.degrees()
    n = tp.n
    bounds = {
        "transition": tuple(
            max(d["z"][i] + d["alpha_up"][i] + d["alpha_lo"][i] - N, 0) for i in range(n)
        ),
        "slack": tuple(
            max(d["z"][i] + max(d["alpha_up"][i], d["alpha_lo"][i]) - N, 0) for i in range(n)
        ),
        "upper_bit": tuple(max(2 * d["alpha_up"][i] - N, 0) for i in range(n)),
        "lower_bit": tuple(max(2 * d["alpha_lo"][i] - N, 0) for i in range(n)),
    }
    combined = max(
        d["z"][i] + d["alpha_up"][i] + d["alpha_lo"][i] for i in range(n)
    ) - N
    return CompositionSet(
        transition=tuple(quots["transition"]),
        slack=tuple(quots["slack"]),
        upper_bit=tuple(quots["upper_bit"]),
        lower_bit=tuple(quots["lower_bit"]),
        bounds=bounds,
        combined_degree_bound=max(combined, 0),
    )


@dataclass(frozen=True)
class CombinedPolynomial:
    poly: Polynomial
    gammas: Tuple[int, ...]
    degree_bound: int


def combine(cs: CompositionSet, gammas: Sequence[int]) -> CombinedPolynomial:
    """Random-weighted sum of all quotients; weights in family-major order."""
    quots = cs.ordered()
    if len(gammas) != len(quots):
        raise ValueError(f"need {len(quots)} weights, got {len(gammas)}")
    acc = None
    for g, quot in zip(gammas, quots):
        term = quot.scale(g)
        acc = term if acc is None else acc + term
    # the declared bound can only be trusted up to the observed degree
    bound = max(cs.combined_degree_bound, acc.reported_degree)
    return CombinedPolynomial(poly=acc, gammas=tuple(int(g) for g in gammas), degree_bound=bound)


def boundary_check(tp: TracePolynomials, spec: SystemSpec) -> bool:
    """Initialization condition: every f_z interpolant opens to z_init at g^0 = 1."""
    return all(tp.f_z[i](1) == spec.z_init[i] for i in range(spec.n))
