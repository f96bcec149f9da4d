"""FRI low-degree testing: even/odd folding, commit phase, and query checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .field import PrimeField
from .poly import Polynomial


class DegreeTestFailedError(RuntimeError):
    """The final FRI layer is not constant for the claimed degree bound."""


@dataclass(frozen=True)
class FriLayer:
    poly: Polynomial
    beta: Optional[int]  # challenge folding this layer into the next; None on the last
    eval_domain: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class FriQueryAnswer:
    """Values along one query chain: (Q_j(y_j), Q_j(-y_j)) with y_j = x^(2^j)."""

    x: int
    pairs: Tuple[Tuple[int, int], ...]
    final: int


def split_even_odd(p: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Q(x) = Q_e(x^2) + x * Q_o(x^2)."""
    return (
        Polynomial(p.field, p.coeffs[0::2]),
        Polynomial(p.field, p.coeffs[1::2]),
    )


def fold(p: Polynomial, beta: int) -> Polynomial:
    """Q_e + beta * Q_o; degree at most floor(deg/2)."""
    even, odd = split_even_odd(p)
    return even + odd.scale(beta)


def fold_value(field: PrimeField, v_pos: int, v_neg: int, x: int, beta: int) -> int:
    """Next-layer value at x^2 from Q(x) and Q(-x)."""
    q = field.modulus
    inv2 = pow(2, q - 2, q)
    even = (v_pos + v_neg) * inv2 % q
    odd = (v_pos - v_neg) * pow(2 * x % q, q - 2, q) % q
    return (even + beta * odd) % q


def num_rounds(bound: int) -> int:
    """floor(log2(bound)) + 1 folds bring a degree <= bound polynomial to a constant."""
    return max(bound, 1).bit_length()


def commit_phase(p: Polynomial, bound: int, betas: Iterator[int]) -> List[FriLayer]:
    """Fold num_rounds(bound) times; the final layer must come out constant."""
    rounds = num_rounds(bound)
    layers = []
    current = p
    for _ in range(rounds):
        beta = next(betas)
        layers.append(FriLayer(poly=current, beta=beta))
        current = fold(current, beta)
    layers.append(FriLayer(poly=current, beta=None))
    if current.reported_degree > 0:
        raise DegreeTestFailedError(
            f"final layer has degree {current.reported_degree} after {rounds} folds "
            f"(claimed bound {bound})"
        )
    return layers


def final_constant(layers: Sequence[FriLayer]) -> int:
    p = layers[-1].poly
    return p.coeffs[0] if p.coeffs else 0


def make_query_answer(layers: Sequence[FriLayer], x: int) -> FriQueryAnswer:
    """Prover-side answer in clear-polynomial mode."""
    q = layers[0].poly.field.modulus
    pairs = []
    y = x % q
    for layer in layers[:-1]:
        pairs.append((layer.poly(y).value, layer.poly(-y).value))
        y = y * y % q
    return FriQueryAnswer(x=x % q, pairs=tuple(pairs), final=final_constant(layers))


def query_check(layers: Sequence[FriLayer], answer: FriQueryAnswer) -> bool:
    """Walk the folding identities down the chain; accept iff every value matches."""
    field = layers[0].poly.field
    q = field.modulus
    if len(answer.pairs) != len(layers) - 1:
        return False
    y = answer.x % q
    for j, (v_pos, v_neg) in enumerate(answer.pairs):
        computed = fold_value(field, v_pos, v_neg, y, layers[j].beta)
        y = y * y % q
        if j + 1 < len(answer.pairs):
            if computed != answer.pairs[j + 1][0]:
                return False
        else:
            if computed != answer.final:
                return False
    return answer.final == final_constant(layers)
