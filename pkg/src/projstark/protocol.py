"""End-to-end orchestration: online stage, proof generation, and verification.

The proof commits every trace-column interpolant, the boundary quotients, the
combined composition polynomial, and the FRI folding layers as Merkle trees
over evaluation tables.  Verification checks commitment openings, the
boundary-quotient identity, recomputation of the composition values from the
opened column values, and the FRI folding chain, attributing any failure to
the earliest failing stage.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .air import (
    InvalidTraceError,
    build_compositions,
    build_numerators,
    build_trace_polys,
    combine,
    lift_trace,
)
from .channel import (
    FiatShamirTranscript,
    MerkleCommitment,
    MerkleTree,
    ReplayTranscript,
    TranscriptError,
    verify_opening,
)
from .dynamics import ExecutionTrace, StepRecord, StepSource, SystemSpec, online_check
from .field import CyclicDomain, PrimeField, build_domain
from .fri import DegreeTestFailedError, fold, fold_value, num_rounds
from .poly import Polynomial, divide_exact

MAX_FRI_LAYERS = 64
MAX_QUERIES = 1024


class ProofFormatError(ValueError):
    """Malformed proof: structural problem, distinct from a verification reject."""


class OnlineStageError(RuntimeError):
    """A step source kept failing the online checks past the retry bound."""


@dataclass(frozen=True)
class Opening:
    index: int
    value: int
    path: Tuple[bytes, ...]


@dataclass(frozen=True)
class ProofQuery:
    x: int
    f_z: Tuple[Tuple[Opening, Opening], ...]  # per coordinate: at x and at g*x
    f_alpha_up: Tuple[Opening, ...]
    f_alpha_lo: Tuple[Opening, ...]
    f_delta: Tuple[Opening, ...]
    boundary: Tuple[Opening, ...]
    fri: Tuple[Tuple[Opening, Opening], ...]  # per layer j: at x^(2^j) and its negation


@dataclass(frozen=True)
class Proof:
    modulus: int
    num_steps: int
    generator: int
    spec_hash: bytes
    salt: bytes
    degree_bound: int
    f_z_comms: Tuple[MerkleCommitment, ...]
    f_alpha_up_comms: Tuple[MerkleCommitment, ...]
    f_alpha_lo_comms: Tuple[MerkleCommitment, ...]
    f_delta_comms: Tuple[MerkleCommitment, ...]
    boundary_comms: Tuple[MerkleCommitment, ...]
    composition_comm: MerkleCommitment
    fri_comms: Tuple[MerkleCommitment, ...]  # layers 1..rounds-1
    fri_final: int
    queries: Tuple[ProofQuery, ...]
    challenges: Optional[dict]  # replay mode only
    version: int = 1

    @property
    def mode(self) -> str:
        return "replay" if self.challenges is not None else "fiat_shamir"


@dataclass(frozen=True)
class VerificationReport:
    verdict: str  # "accept" | "reject"
    stage: Optional[str] = None  # online|boundary|consistency|fri_commit|fri_query|commitment
    detail: str = ""

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"


def _accept() -> VerificationReport:
    return VerificationReport(verdict="accept")


def _reject(stage: str, detail: str) -> VerificationReport:
    return VerificationReport(verdict="reject", stage=stage, detail=detail)


def hash_spec(field: PrimeField, spec: SystemSpec) -> bytes:
    """Binding digest of the public inputs."""
    h = hashlib.sha256()
    h.update(field.modulus.to_bytes(8, "little"))
    h.update(spec.num_steps.to_bytes(8, "little"))
    h.update(spec.n.to_bytes(8, "little"))
    for row in spec.a_hat:
        for v in row:
            h.update(v.to_bytes(8, "little", signed=True))
    for vec in (spec.z_upper, spec.z_lower, spec.z_init):
        for v in vec:
            h.update(v.to_bytes(8, "little", signed=True))
    return h.digest()


def base_eval_domain(field: PrimeField, domain: CyclicDomain) -> List[int]:
    """F_q* minus the trace subgroup, ascending; negation-closed for even order."""
    excluded = {e.value for e in domain.elements}
    return [x for x in range(1, field.modulus) if x not in excluded]


def layer_eval_domains(field: PrimeField, d0: Sequence[int], count: int) -> List[List[int]]:
    """Evaluation domains for FRI layers 0..count-1.

    Each next domain is the squared previous one closed under negation, so the
    pair (y, -y) needed by the folding identity is always committable.
    """
    q = field.modulus
    doms = [list(d0)]
    for _ in range(count - 1):
        squares = {x * x % q for x in doms[-1]}
        doms.append(sorted(squares | {(q - s) % q for s in squares}))
    return doms


class _Committed:
    """A polynomial with its evaluation table, Merkle tree, and point index."""

    def __init__(self, poly: Polynomial, points: Sequence[int]):
        self.poly = poly
        self.table = [poly(x).value for x in points]
        self.tree = MerkleTree(self.table)
        self.index = {x: i for i, x in enumerate(points)}

    def open_at(self, point: int) -> Opening:
        i = self.index[point]
        return Opening(index=i, value=self.table[i], path=tuple(self.tree.open(i)))


def run_online_stage(
    spec: SystemSpec,
    step_source: StepSource,
    verifier_log: Optional[list] = None,
    *,
    max_retries: int = 3,
) -> ExecutionTrace:
    """Request steps one by one, re-requesting rejected ones up to the retry bound."""
    z_rows: List[Tuple[int, ...]] = [spec.z_init]
    up_rows, lo_rows, d_rows = [], [], []
    for k in range(spec.num_steps):
        accepted = None
        for attempt in range(max_retries + 1):
            rec = step_source(k, z_rows[-1], attempt)
            reason = online_check(spec, rec)
            if verifier_log is not None:
                verifier_log.append(
                    {"step": k, "attempt": attempt,
                     "verdict": "accept" if reason is None else "reject",
                     "reason": reason}
                )
            if reason is None:
                accepted = rec
                break
        if accepted is None:
            raise OnlineStageError(f"step {k} rejected {max_retries + 1} times")
        z_rows.append(accepted.z_next)
        up_rows.append(accepted.alpha_up)
        lo_rows.append(accepted.alpha_lo)
        d_rows.append(accepted.delta)
    return ExecutionTrace(
        spec=spec,
        z_rows=tuple(z_rows),
        alpha_up_rows=tuple(up_rows),
        alpha_lo_rows=tuple(lo_rows),
        delta_rows=tuple(d_rows),
    )


def honest_step_source(spec: SystemSpec) -> StepSource:
    from .dynamics import step_slack

    def source(k: int, z: Tuple[int, ...], attempt: int) -> StepRecord:
        return step_slack(spec, z)

    return source


def prove(
    field: PrimeField,
    spec: SystemSpec,
    trace: ExecutionTrace,
    transcript,
    *,
    num_queries: int = 8,
    force: bool = False,
    salt: bytes = b"",
) -> Proof:
    """Build a proof for the trace.

    The honest path refuses traces that fail the online checks or whose
    constraint numerators leave a remainder.  With force=True the trace is
    committed as-is (floor quotients), the dishonest path used to exercise the
    verifier's consistency stage.
    """
    N = spec.num_steps
    n = spec.n
    if (N + 1) % 2:
        raise ValueError("num_steps + 1 must be even so the evaluation domain is symmetric")
    if not 1 <= num_queries <= MAX_QUERIES:
        raise ValueError(f"num_queries must be in [1, {MAX_QUERIES}]")
    domain = build_domain(field, N + 1)

    if not force:
        for k in range(N):
            rec = StepRecord(
                z_next=trace.z_rows[k + 1],
                alpha_up=trace.alpha_up_rows[k],
                alpha_lo=trace.alpha_lo_rows[k],
                delta=trace.delta_rows[k],
            )
            reason = online_check(spec, rec)
            if reason is not None:
                raise InvalidTraceError(f"online check failed at step {k}: {reason}")

    ft = lift_trace(trace, field)
    tp = build_trace_polys(ft, domain)

    x_minus_one = Polynomial(field, (-1, 1))
    boundary_polys = []
    for i in range(n):
        num = tp.f_z[i] - Polynomial.constant(field, spec.z_init[i])
        quot, exact = divide_exact(num, x_minus_one)
        if not exact and not force:
            raise InvalidTraceError(f"boundary condition violated for coordinate {i}")
        boundary_polys.append(quot)

    spec_digest = hash_spec(field, spec)
    transcript.absorb("spec", spec_digest)

    d0 = base_eval_domain(field, domain)
    groups = {
        "f_z": [_Committed(p, d0) for p in tp.f_z],
        "f_alpha_up": [_Committed(p, d0) for p in tp.f_alpha_up],
        "f_alpha_lo": [_Committed(p, d0) for p in tp.f_alpha_lo],
        "f_delta": [_Committed(p, d0) for p in tp.f_delta],
        "boundary": [_Committed(p, d0) for p in boundary_polys],
    }
    for name in ("f_z", "f_alpha_up", "f_alpha_lo", "f_delta", "boundary"):
        for i, cm in enumerate(groups[name]):
            transcript.absorb(f"{name}[{i}]", cm.tree.root)

    gammas = [transcript.draw("gamma") for _ in range(4 * n)]

    numerators = build_numerators(tp, spec, domain)
    cs = build_compositions(numerators, tp, domain, allow_remainder=force)
    combined = combine(cs, gammas)

    if transcript.mode == "replay":
        bound = combined.degree_bound
    else:
        bound = max(2 * N - 2, 0)
    rounds = num_rounds(bound)

    composition = _Committed(combined.poly, d0)
    transcript.absorb("composition", composition.tree.root)
    transcript.absorb("degree_bound", bound.to_bytes(8, "little"))

    domains = layer_eval_domains(field, d0, rounds)
    layer_committed = [composition]
    layer_polys = [combined.poly]
    betas: List[int] = []
    fri_final = 0
    for j in range(rounds):
        beta = transcript.draw("beta")
        betas.append(beta)
        nxt = fold(layer_polys[-1], beta)
        layer_polys.append(nxt)
        if j < rounds - 1:
            cm = _Committed(nxt, domains[j + 1])
            layer_committed.append(cm)
            transcript.absorb(f"fri[{j + 1}]", cm.tree.root)
        else:
            if nxt.reported_degree > 0:
                raise DegreeTestFailedError(
                    f"final FRI layer has degree {nxt.reported_degree} for bound {bound}"
                )
            fri_final = nxt.coeffs[0] if nxt.coeffs else 0
            transcript.absorb("fri_final", fri_final.to_bytes(8, "little"))

    q = field.modulus
    g = domain.generator.value
    excluded = {e.value for e in domain.elements} | {0}
    queries = []
    for _ in range(num_queries):
        x = transcript.draw("sample_point", exclusions=excluded)
        fz_pairs = tuple(
            (groups["f_z"][i].open_at(x), groups["f_z"][i].open_at(g * x % q)) for i in range(n)
        )
        fri_pairs = []
        y = x
        for j in range(rounds):
            cm = layer_committed[j]
            fri_pairs.append((cm.open_at(y), cm.open_at((q - y) % q)))
            y = y * y % q
        queries.append(
            ProofQuery(
                x=x,
                f_z=fz_pairs,
                f_alpha_up=tuple(groups["f_alpha_up"][i].open_at(x) for i in range(n)),
                f_alpha_lo=tuple(groups["f_alpha_lo"][i].open_at(x) for i in range(n)),
                f_delta=tuple(groups["f_delta"][i].open_at(x) for i in range(n)),
                boundary=tuple(groups["boundary"][i].open_at(x) for i in range(n)),
                fri=tuple(fri_pairs),
            )
        )

    challenges = None
    if transcript.mode == "replay":
        challenges = {
            "gammas": transcript.consumed("gamma"),
            "betas": transcript.consumed("beta"),
            "sample_points": transcript.consumed("sample_point"),
        }
    return Proof(
        modulus=q,
        num_steps=N,
        generator=g,
        spec_hash=spec_digest,
        salt=salt,
        degree_bound=bound,
        f_z_comms=tuple(cm.tree.commitment for cm in groups["f_z"]),
        f_alpha_up_comms=tuple(cm.tree.commitment for cm in groups["f_alpha_up"]),
        f_alpha_lo_comms=tuple(cm.tree.commitment for cm in groups["f_alpha_lo"]),
        f_delta_comms=tuple(cm.tree.commitment for cm in groups["f_delta"]),
        boundary_comms=tuple(cm.tree.commitment for cm in groups["boundary"]),
        composition_comm=composition.tree.commitment,
        fri_comms=tuple(cm.tree.commitment for cm in layer_committed[1:]),
        fri_final=fri_final,
        queries=tuple(queries),
        challenges=challenges,
    )


def _structural_validate(proof: Proof, field: PrimeField, spec: SystemSpec) -> int:
    """Raise ProofFormatError on malformed proofs; return the FRI round count."""
    q = field.modulus
    n = spec.n
    if proof.version != 1:
        raise ProofFormatError(f"unsupported proof version {proof.version}")
    if len(proof.fri_comms) + 2 > MAX_FRI_LAYERS:
        raise ProofFormatError("too many FRI layers")
    if not 1 <= len(proof.queries) <= MAX_QUERIES:
        raise ProofFormatError("query count out of range")
    for name in ("f_z_comms", "f_alpha_up_comms", "f_alpha_lo_comms",
                 "f_delta_comms", "boundary_comms"):
        if len(getattr(proof, name)) != n:
            raise ProofFormatError(f"{name} must have {n} entries")
    if proof.degree_bound < 0:
        raise ProofFormatError("negative degree bound")
    rounds = num_rounds(proof.degree_bound)
    if len(proof.fri_comms) != rounds - 1:
        raise ProofFormatError(
            f"expected {rounds - 1} intermediate FRI commitments, got {len(proof.fri_comms)}"
        )
    for query in proof.queries:
        if not 0 < query.x < q:
            raise ProofFormatError("query point out of range")
        if len(query.f_z) != n or len(query.f_alpha_up) != n or len(query.f_alpha_lo) != n \
                or len(query.f_delta) != n or len(query.boundary) != n:
            raise ProofFormatError("query opening counts do not match the state dimension")
        if len(query.fri) != rounds:
            raise ProofFormatError(f"expected {rounds} FRI opening pairs per query")
    if proof.challenges is not None:
        for key in ("gammas", "betas", "sample_points"):
            if key not in proof.challenges:
                raise ProofFormatError(f"challenge record missing {key!r}")
    return rounds


def verify(field: PrimeField, spec: SystemSpec, proof: Proof) -> VerificationReport:
    """Check a proof against the public inputs.

    Stages, in order: commitment (openings and challenge agreement), boundary
    (initialization quotient identity), consistency (composition values
    recomputed from opened column values), fri_query (folding chain).
    """
    rounds = _structural_validate(proof, field, spec)
    q = field.modulus
    N = spec.num_steps
    n = spec.n

    if proof.modulus != q or proof.num_steps != N:
        return _reject("commitment", "public inputs do not match the proof")
    if (N + 1) % 2:
        return _reject("commitment", "trace subgroup order must be even")
    domain = build_domain(field, N + 1)
    g = domain.generator.value
    if proof.generator != g:
        return _reject("commitment", f"generator mismatch: {proof.generator} != {g}")

    replay = proof.challenges is not None
    if not replay and proof.degree_bound != max(2 * N - 2, 0):
        return _reject("fri_commit",
                       f"degree bound {proof.degree_bound} != worst case {max(2 * N - 2, 0)}")

    if replay:
        transcript = ReplayTranscript(
            q,
            gammas=proof.challenges["gammas"],
            betas=proof.challenges["betas"],
            sample_points=proof.challenges["sample_points"],
        )
    else:
        transcript = FiatShamirTranscript(q, salt=proof.salt)

    spec_digest = hash_spec(field, spec)
    transcript.absorb("spec", spec_digest)
    for name, comms in (
        ("f_z", proof.f_z_comms),
        ("f_alpha_up", proof.f_alpha_up_comms),
        ("f_alpha_lo", proof.f_alpha_lo_comms),
        ("f_delta", proof.f_delta_comms),
        ("boundary", proof.boundary_comms),
    ):
        for i, cm in enumerate(comms):
            transcript.absorb(f"{name}[{i}]", cm.root)

    excluded = {e.value for e in domain.elements} | {0}
    try:
        gammas = [transcript.draw("gamma") for _ in range(4 * n)]
        transcript.absorb("composition", proof.composition_comm.root)
        transcript.absorb("degree_bound", proof.degree_bound.to_bytes(8, "little"))
        betas = []
        for j in range(rounds):
            betas.append(transcript.draw("beta"))
            if j < rounds - 1:
                transcript.absorb(f"fri[{j + 1}]", proof.fri_comms[j].root)
            else:
                transcript.absorb("fri_final", proof.fri_final.to_bytes(8, "little"))
        expected_xs = [
            transcript.draw("sample_point", exclusions=excluded) for _ in proof.queries
        ]
    except TranscriptError as exc:
        raise ProofFormatError(f"challenge record unusable: {exc}") from exc

    d0 = base_eval_domain(field, domain)
    domains = layer_eval_domains(field, d0, rounds)
    index_maps = [{x: i for i, x in enumerate(dm)} for dm in domains]

    # --- stage: commitment ---------------------------------------------------
    def check_opening(cm: MerkleCommitment, opening: Opening, point: int, layer: int = 0) -> bool:
        expected = index_maps[layer].get(point)
        if expected is None or opening.index != expected:
            return False
        try:
            return verify_opening(cm, opening.index, opening.value, opening.path)
        except IndexError:
            return False

    for k, (query, expected_x) in enumerate(zip(proof.queries, expected_xs)):
        x = query.x
        if x != expected_x:
            return _reject("commitment", f"query {k}: point {x} does not match challenge")
        gx = g * x % q
        for i in range(n):
            at_x, at_gx = query.f_z[i]
            if not check_opening(proof.f_z_comms[i], at_x, x):
                return _reject("commitment", f"query {k}: bad f_z[{i}] opening at x")
            if not check_opening(proof.f_z_comms[i], at_gx, gx):
                return _reject("commitment", f"query {k}: bad f_z[{i}] opening at g*x")
            for comms, ops, label in (
                (proof.f_alpha_up_comms, query.f_alpha_up, "f_alpha_up"),
                (proof.f_alpha_lo_comms, query.f_alpha_lo, "f_alpha_lo"),
                (proof.f_delta_comms, query.f_delta, "f_delta"),
                (proof.boundary_comms, query.boundary, "boundary"),
            ):
                if not check_opening(comms[i], ops[i], x):
                    return _reject("commitment", f"query {k}: bad {label}[{i}] opening")
        y = x
        for j in range(rounds):
            cm = proof.composition_comm if j == 0 else proof.fri_comms[j - 1]
            pos, neg = query.fri[j]
            if not check_opening(cm, pos, y, layer=j):
                return _reject("commitment", f"query {k}: bad FRI layer {j} opening")
            if not check_opening(cm, neg, (q - y) % q, layer=j):
                return _reject("commitment", f"query {k}: bad FRI layer {j} opening at -y")
            y = y * y % q

    # --- stage: boundary -----------------------------------------------------
    for k, query in enumerate(proof.queries):
        x = query.x
        for i in range(n):
            lhs = (query.f_z[i][0].value - spec.z_init[i]) % q
            rhs = query.boundary[i].value * (x - 1) % q
            if lhs != rhs:
                return _reject("boundary", f"query {k}: boundary identity fails for coordinate {i}")

    # --- stage: consistency --------------------------------------------------
    g_pow_n = pow(g, N, q)
    for k, query in enumerate(proof.queries):
        x = query.x
        z_of_x = (pow(x, N + 1, q) - 1) * pow((x - g_pow_n) % q, q - 2, q) % q
        inv_z = pow(z_of_x, q - 2, q)
        fz = [query.f_z[i][0].value for i in range(n)]
        fz_g = [query.f_z[i][1].value for i in range(n)]
        fup = [query.f_alpha_up[i].value for i in range(n)]
        flo = [query.f_alpha_lo[i].value for i in range(n)]
        fd = [query.f_delta[i].value for i in range(n)]
        az = [sum(spec.a_hat[i][j] * fz[j] for j in range(n)) % q for i in range(n)]
        numerators = []
        for i in range(n):
            hi = spec.z_upper[i] % q
            lw = spec.z_lower[i] % q
            numerators.append(
                (fz_g[i] - flo[i] * fup[i] % q * az[i] - (1 - fup[i]) * hi - (1 - flo[i]) * lw) % q
            )
        for i in range(n):
            hi = spec.z_upper[i] % q
            lw = spec.z_lower[i] % q
            numerators.append((fd[i] - fup[i] * (hi - az[i]) - flo[i] * (az[i] - lw)) % q)
        for i in range(n):
            numerators.append(fup[i] * (1 - fup[i]) % q)
        for i in range(n):
            numerators.append(flo[i] * (1 - flo[i]) % q)
        recombined = sum(gm * nm for gm, nm in zip(gammas, numerators)) % q * inv_z % q
        if recombined != query.fri[0][0].value:
            return _reject("consistency", f"query {k}: composition value mismatch at x={x}")

    # --- stage: fri_query ----------------------------------------------------
    for k, query in enumerate(proof.queries):
        y = query.x
        for j in range(rounds):
            pos, neg = query.fri[j]
            computed = fold_value(field, pos.value, neg.value, y, betas[j])
            y = y * y % q
            expected = query.fri[j + 1][0].value if j + 1 < rounds else proof.fri_final
            if computed != expected:
                return _reject("fri_query", f"query {k}: folding identity fails at layer {j}")

    return _accept()


# --- serialization ----------------------------------------------------------


def _opening_to_json(o: Opening) -> dict:
    return {"index": o.index, "value": str(o.value), "path": [p.hex() for p in o.path]}


def _comm_to_json(c: MerkleCommitment) -> dict:
    return {"root": c.root.hex(), "leaves": c.leaf_count}


def proof_to_json(proof: Proof) -> dict:
    doc = {
        "version": proof.version,
        "publics": {
            "q": str(proof.modulus),
            "N": str(proof.num_steps),
            "g": str(proof.generator),
            "spec_hash": proof.spec_hash.hex(),
            "salt": proof.salt.hex(),
            "degree_bound": str(proof.degree_bound),
        },
        "commitments": {
            "f_z": [_comm_to_json(c) for c in proof.f_z_comms],
            "f_alpha_up": [_comm_to_json(c) for c in proof.f_alpha_up_comms],
            "f_alpha_lo": [_comm_to_json(c) for c in proof.f_alpha_lo_comms],
            "f_delta": [_comm_to_json(c) for c in proof.f_delta_comms],
            "boundary": [_comm_to_json(c) for c in proof.boundary_comms],
            "composition": _comm_to_json(proof.composition_comm),
        },
        "fri_layers": {
            "roots": [_comm_to_json(c) for c in proof.fri_comms],
            "final": str(proof.fri_final),
        },
        "queries": [
            {
                "x": str(qr.x),
                "f_z": [
                    {"at_x": _opening_to_json(a), "at_gx": _opening_to_json(b)}
                    for a, b in qr.f_z
                ],
                "f_alpha_up": [_opening_to_json(o) for o in qr.f_alpha_up],
                "f_alpha_lo": [_opening_to_json(o) for o in qr.f_alpha_lo],
                "f_delta": [_opening_to_json(o) for o in qr.f_delta],
                "boundary": [_opening_to_json(o) for o in qr.boundary],
                "fri": [
                    {"pos": _opening_to_json(a), "neg": _opening_to_json(b)}
                    for a, b in qr.fri
                ],
            }
            for qr in proof.queries
        ],
    }
    if proof.challenges is not None:
        doc["challenges"] = {
            key: [str(v) for v in proof.challenges[key]]
            for key in ("gammas", "betas", "sample_points")
        }
    return doc


def _want(doc: dict, key: str, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise ProofFormatError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ProofFormatError(f"field {key!r} has the wrong type")
    return value


def _int_str(value) -> int:
    if not isinstance(value, str):
        raise ProofFormatError("integer fields must be base-10 strings")
    try:
        return int(value, 10)
    except ValueError as exc:
        raise ProofFormatError(f"bad integer literal {value!r}") from exc


def _hex_bytes(value) -> bytes:
    if not isinstance(value, str):
        raise ProofFormatError("digest fields must be hex strings")
    try:
        return bytes.fromhex(value)
    except ValueError as exc:
        raise ProofFormatError(f"bad hex literal {value!r}") from exc


def _opening_from_json(doc: dict) -> Opening:
    index = _want(doc, "index", int)
    value = _int_str(_want(doc, "value", str))
    path = tuple(_hex_bytes(p) for p in _want(doc, "path", list))
    return Opening(index=index, value=value, path=path)


def _comm_from_json(doc: dict) -> MerkleCommitment:
    root = _hex_bytes(_want(doc, "root", str))
    if len(root) != 32:
        raise ProofFormatError("commitment root must be 32 bytes")
    return MerkleCommitment(root=root, leaf_count=_want(doc, "leaves", int))


def proof_from_json(doc: dict) -> Proof:
    version = _want(doc, "version", int)
    publics = _want(doc, "publics", dict)
    commitments = _want(doc, "commitments", dict)
    fri_layers = _want(doc, "fri_layers", dict)
    queries_doc = _want(doc, "queries", list)

    def comm_list(key) -> Tuple[MerkleCommitment, ...]:
        return tuple(_comm_from_json(c) for c in _want(commitments, key, list))

    queries = []
    for qd in queries_doc:
        queries.append(
            ProofQuery(
                x=_int_str(_want(qd, "x", str)),
                f_z=tuple(
                    (_opening_from_json(_want(p, "at_x", dict)),
                     _opening_from_json(_want(p, "at_gx", dict)))
                    for p in _want(qd, "f_z", list)
                ),
                f_alpha_up=tuple(_opening_from_json(o) for o in _want(qd, "f_alpha_up", list)),
                f_alpha_lo=tuple(_opening_from_json(o) for o in _want(qd, "f_alpha_lo", list)),
                f_delta=tuple(_opening_from_json(o) for o in _want(qd, "f_delta", list)),
                boundary=tuple(_opening_from_json(o) for o in _want(qd, "boundary", list)),
                fri=tuple(
                    (_opening_from_json(_want(p, "pos", dict)),
                     _opening_from_json(_want(p, "neg", dict)))
                    for p in _want(qd, "fri", list)
                ),
            )
        )

    challenges = None
    if "challenges" in doc:
        ch = _want(doc, "challenges", dict)
        challenges = {
            key: [_int_str(v) for v in _want(ch, key, list)]
            for key in ("gammas", "betas", "sample_points")
        }

    return Proof(
        version=version,
        modulus=_int_str(_want(publics, "q", str)),
        num_steps=_int_str(_want(publics, "N", str)),
        generator=_int_str(_want(publics, "g", str)),
        spec_hash=_hex_bytes(_want(publics, "spec_hash", str)),
        salt=_hex_bytes(_want(publics, "salt", str)),
        degree_bound=_int_str(_want(publics, "degree_bound", str)),
        f_z_comms=comm_list("f_z"),
        f_alpha_up_comms=comm_list("f_alpha_up"),
        f_alpha_lo_comms=comm_list("f_alpha_lo"),
        f_delta_comms=comm_list("f_delta"),
        boundary_comms=comm_list("boundary"),
        composition_comm=_comm_from_json(_want(commitments, "composition", dict)),
        fri_comms=tuple(_comm_from_json(c) for c in _want(fri_layers, "roots", list)),
        fri_final=_int_str(_want(fri_layers, "final", str)),
        queries=tuple(queries),
        challenges=challenges,
    )


def dump_proof(proof: Proof) -> str:
    return json.dumps(proof_to_json(proof), indent=2)


def load_proof(text: str) -> Proof:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProofFormatError(f"proof file is not valid JSON: {exc}") from exc
    return proof_from_json(doc)
