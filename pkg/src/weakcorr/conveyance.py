"""Strong-coupling state transfer and local copy fan-out.

The conveyance circuit hands the joint state of the remote parties over to
the receiver's particles: each remote party is coupled to one half of a
maximally entangled ancilla pair through a controlled shift, the coupled
half is measured in the computational basis, and the measured particles are
discarded as classical.  The broadcast step plays the same trick locally to
equip one particle with a computational-basis-correlated copy for the
single-party device lines.

Two conveyance modes are provided.  ``"literal"`` executes the gates and
measurements exactly as wired, which preserves every computational-basis
diagonal element for zero outcomes but dephases coherences involving the
transferred parties (the original particle stays correlated with its
image).  ``"idealized"`` relabels the input state directly: the identity
map for zero outcomes and a local permutation otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadDimension, BadSubsystem, ImpossibleOutcome, ShapeMismatch
from .qcore import DensityMatrix, PureState, ket2dm, partial_trace, tensor_product

OUTCOME_TOL = 1e-14

__all__ = [
    "AncillaPair",
    "ConveyanceRecord",
    "bell_state",
    "strong_couple_and_measure",
    "convey",
    "broadcast",
]


@dataclass(frozen=True)
class AncillaPair:
    """Maximally entangled pair of equal-dimension particles."""

    dim: int
    state: PureState


@dataclass(frozen=True)
class ConveyanceRecord:
    """State left behind by a measured strong coupling, plus bookkeeping."""

    state: DensityMatrix
    outcomes: tuple[int, ...]
    probability: float


def bell_state(dim: int, variant: str = "aligned") -> AncillaPair:
    """(1/sqrt(l)) sum_m |m>|m+offset> with offset 0 ("aligned") or 1 ("flip")."""
    l = int(dim)
    if l < 2:
        raise BadDimension(f"ancilla dimension must be >= 2, got {l}")
    if variant not in ("aligned", "flip"):
        raise BadDimension(f"unknown ancilla variant {variant!r}")
    offset = 1 if variant == "flip" else 0
    amp = np.zeros(l * l, dtype=complex)
    for m in range(l):
        amp[m * l + (m + offset) % l] = 1.0 / math.sqrt(l)
    return AncillaPair(l, PureState((l, l), amp))


def _digits(dims) -> np.ndarray:
    """Mixed-radix digit table, shape (prod(dims), len(dims))."""
    d = math.prod(dims)
    out = np.zeros((d, len(dims)), dtype=int)
    for index in range(d):
        rem = index
        for pos in range(len(dims) - 1, -1, -1):
            out[index, pos] = rem % dims[pos]
            rem //= dims[pos]
    return out


def _relabel(rho: DensityMatrix, perm: np.ndarray) -> np.ndarray:
    """Matrix of U rho U^dagger for the basis permutation |i> -> |perm[i]>."""
    inverse = np.argsort(perm)
    return rho.matrix[np.ix_(inverse, inverse)]


def _controlled_shift_perm(dims, control: int, target: int) -> np.ndarray:
    """Index permutation of |..x..m..> -> |..x..(m+x) mod l..>."""
    digits = _digits(dims)
    l = dims[target]
    strides = np.ones(len(dims), dtype=int)
    for pos in range(len(dims) - 2, -1, -1):
        strides[pos] = strides[pos + 1] * dims[pos + 1]
    shifted = (digits[:, target] + digits[:, control]) % l
    base = np.arange(math.prod(dims))
    return base + (shifted - digits[:, target]) * strides[target]


def strong_couple_and_measure(
    joint: DensityMatrix, control: int, target: int, outcome: int
) -> ConveyanceRecord:
    """Controlled shift of ``target`` by ``control``, then measure the target.

    The target is projected onto the computational label ``outcome``,
    the state is renormalized, and the target subsystem is removed.  The
    recorded probability is the Born probability of the outcome.
    """
    n = len(joint.dims)
    if not (0 <= control < n and 0 <= target < n):
        raise BadSubsystem(f"control {control} / target {target} out of range")
    if control == target:
        raise BadSubsystem("control and target must differ")
    if joint.dims[control] != joint.dims[target]:
        raise ShapeMismatch(
            f"control dim {joint.dims[control]} != target dim {joint.dims[target]}"
        )
    l = joint.dims[target]
    if not 0 <= int(outcome) < l:
        raise ImpossibleOutcome(f"outcome {outcome} out of range for dimension {l}")
    perm = _controlled_shift_perm(joint.dims, control, target)
    coupled = _relabel(joint, perm)
    sel = np.flatnonzero(_digits(joint.dims)[:, target] == int(outcome))
    block = coupled[np.ix_(sel, sel)]
    prob = float(np.real(np.trace(block)))
    if prob < OUTCOME_TOL:
        raise ImpossibleOutcome(
            f"outcome {outcome} on subsystem {target} has probability {prob:.3e}"
        )
    dims = joint.dims[:target] + joint.dims[target + 1 :]
    state = DensityMatrix(dims, block / prob)
    return ConveyanceRecord(state, (int(outcome),), prob)


def convey(
    rho: DensityMatrix, outcomes: Sequence[int], mode: str = "literal"
) -> ConveyanceRecord:
    """Transfer an n-party state to the receiver-side particles.

    Every party except the last is conveyed; ``outcomes`` lists one ancilla
    measurement result per conveyed party.  The output dims keep the party
    order: image of party 0 first, the receiver's own particle last.

    ``"literal"`` runs the circuit: attach one entangled pair per conveyed
    party, controlled-shift the party onto its ancilla, measure the ancilla,
    then trace out the conveyed parties and the measured ancillas.
    ``"idealized"`` relabels each conveyed party's computational digit by
    ``x -> (x + outcome) mod l``, the identity for zero outcomes.
    """
    n = len(rho.dims)
    if n < 2:
        raise ShapeMismatch("conveyance needs at least two parties")
    outcomes = tuple(int(v) for v in outcomes)
    if len(outcomes) != n - 1:
        raise ShapeMismatch(f"expected {n - 1} outcomes, got {len(outcomes)}")
    if mode not in ("literal", "idealized"):
        raise ShapeMismatch(f"unknown conveyance mode {mode!r}")

    if mode == "idealized":
        digits = _digits(rho.dims)
        strides = np.ones(n, dtype=int)
        for pos in range(n - 2, -1, -1):
            strides[pos] = strides[pos + 1] * rho.dims[pos + 1]
        perm = np.arange(rho.dim)
        for party, nu in enumerate(outcomes):
            l = rho.dims[party]
            if not 0 <= nu < l:
                raise ImpossibleOutcome(f"outcome {nu} out of range for dim {l}")
            shifted = (digits[:, party] + nu) % l
            perm = perm + (shifted - digits[:, party]) * strides[party]
        state = DensityMatrix(rho.dims, _relabel(rho, perm))
        prob = 1.0 / math.prod(rho.dims[:-1])
        return ConveyanceRecord(state, outcomes, prob)

    work = rho
    prob = 1.0
    for party, nu in enumerate(outcomes):
        pair = bell_state(rho.dims[party])
        work = tensor_product(work, ket2dm(pair.state))
        rec = strong_couple_and_measure(
            work, control=party, target=len(work.dims) - 2, outcome=nu
        )
        work = rec.state
        prob *= rec.probability
    # Layout now: n original parties, then one image per conveyed party.
    keep = list(range(n, 2 * n - 1)) + [n - 1]
    state = partial_trace(work, keep)
    return ConveyanceRecord(state, outcomes, prob)


def broadcast(
    rho: DensityMatrix, party: int, outcome: int, variant: str = "aligned"
) -> ConveyanceRecord:
    """Equip ``party`` with a computational-basis-correlated copy.

    Attaches an entangled pair, controlled-shifts the party onto the second
    pair member, measures that member with result ``outcome`` and removes
    it.  The copy is appended as the last subsystem.  For outcome 0 the
    (party, copy) pair carries sum_{ii'} rho_{ii'} |i><i'| (x) |i><i'|, so
    the copy's marginal is the computational-basis dephasing of the party.
    """
    n = len(rho.dims)
    if not 0 <= party < n:
        raise BadSubsystem(f"party {party} out of range for {n} subsystems")
    pair = bell_state(rho.dims[party], variant)
    work = tensor_product(rho, ket2dm(pair.state))
    rec = strong_couple_and_measure(
        work, control=party, target=len(work.dims) - 1, outcome=outcome
    )
    return ConveyanceRecord(rec.state, (int(outcome),), rec.probability)
