"""Two-phase transmission protocol for the K-user MISO interference channel.

The scheme delivers b = K symbols per user across W = K + C(K,2) slots.
Phase 1 ("orthogonal transmission", OT) activates one transmitter per slot
with an unprecoded full-power identity precoder, so every receiver
overhears one linear combination of each interferer's symbol vector.
Phase 2 activates user pairs. Each paired transmitter sends along a
rank-one precoder steered by its delayed estimate of the phase-1 channel
toward the partner receiver, which makes the fresh interference there
collinear with the already-overheard phase-1 observation. A per-user
linear receive filter subtracts the aligned contributions, leaving
residual interference proportional only to the channel estimation error.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Tuple

import numpy as np

if TYPE_CHECKING:
    from .channel import ChannelSet, CsitReport

__all__ = [
    "DegenerateChannelError",
    "Slot",
    "Schedule",
    "PrecoderSet",
    "ExtendedSystem",
    "build_schedule",
    "ot_precoder",
    "ria_precoder",
    "build_precoders",
    "assemble_extended",
    "receive_filter",
]


class DegenerateChannelError(ValueError):
    """Raised when a zero-norm channel estimate cannot steer a rank-one
    precoder (a probability-zero event under continuous fading)."""


@dataclass(frozen=True)
class Slot:
    """One time slot: phase in {1, 2}, 1-based index within the phase, and
    the ascending tuple of transmitters active during the slot."""

    phase: int
    index: int
    active: Tuple[int, ...]


@dataclass
class Schedule:
    """Ordered two-phase slot plan.

    Phase 1 has W1 = K single-transmitter slots, G_(1,s) = {s}. Phase 2
    has W2 = C(K,2) pair slots, one per unordered transmitter pair,
    enumerated lexicographically. Users are numbered 1..K.
    """

    K: int
    slots: Tuple[Slot, ...]
    pair_positions: Dict[Tuple[int, int], int] = field(repr=False)

    @property
    def W1(self) -> int:
        return self.K

    @property
    def W2(self) -> int:
        return len(self.slots) - self.K

    @property
    def W(self) -> int:
        return len(self.slots)

    def position(self, phase: int, index: int) -> int:
        """0-based position of slot (phase, index) in the transmission."""
        if phase == 1 and 1 <= index <= self.W1:
            return index - 1
        if phase == 2 and 1 <= index <= self.W2:
            return self.K + index - 1
        raise ValueError(f"no slot ({phase}, {index}) in a {self.K}-user schedule")

    def pair_position(self, a: int, b: int) -> int:
        """0-based position of the phase-2 slot pairing transmitters a and b."""
        lo, hi = (a, b) if a < b else (b, a)
        return self.pair_positions[(lo, hi)]


def build_schedule(K: int) -> Schedule:
    """Build the two-phase schedule for K users.

    Raises ValueError for K < 2, where no transmitter pairs exist.
    """
    if K < 2:
        raise ValueError("scheduling needs K >= 2 users, no pair slots exist otherwise")
    slots: List[Slot] = [Slot(1, s, (s,)) for s in range(1, K + 1)]
    pairs = list(itertools.combinations(range(1, K + 1), 2))
    slots.extend(Slot(2, s, pair) for s, pair in enumerate(pairs, start=1))
    pair_positions = {pair: K + n for n, pair in enumerate(pairs)}
    return Schedule(K=K, slots=tuple(slots), pair_positions=pair_positions)


def ot_precoder(K: int, M: int, P: float) -> np.ndarray:
    """Phase-1 precoder sqrt(P/K) * I on the first K antennas (M x K).

    One symbol per antenna and slot, no steering. Antennas beyond the
    first K stay silent, so the squared Frobenius norm equals P exactly.
    """
    if K < 1 or M < K:
        raise ValueError("need M >= K >= 1 transmit antennas")
    if P <= 0:
        raise ValueError("transmit power must be positive")
    V = np.zeros((M, K), dtype=complex)
    np.fill_diagonal(V[:K, :], math.sqrt(P / K))
    return V


def ria_precoder(hhat: np.ndarray, P: float, b: int | None = None) -> np.ndarray:
    """Phase-2 rank-one alignment precoder sigma * e1 * hhat (M x b).

    Only the first antenna transmits; the beam direction is the delayed
    estimate of the phase-1 channel toward the partner receiver, so the
    interference caused there repeats (up to estimation error) the row
    that receiver already overheard. sigma = sqrt(P)/||hhat|| meets the
    power constraint with equality.

    With M > b antennas the estimate is truncated to its first b entries,
    matching the convention that extra antennas are switched off.
    """
    hhat = np.asarray(hhat, dtype=complex).reshape(-1)
    M = hhat.size
    if b is None:
        b = M
    beam = hhat[:b]
    nrm = np.linalg.norm(beam)
    if nrm == 0.0:
        raise DegenerateChannelError("zero-norm channel estimate, cannot normalize precoder")
    V = np.zeros((M, b), dtype=complex)
    V[0, :] = (math.sqrt(P) / nrm) * beam
    return V


@dataclass
class PrecoderSet:
    """All per-slot precoders of one realization.

    precoders maps (transmitter i, phase p, slot s) with i active in
    (p, s) to the M x b precoding matrix. sigmas stores the phase-2 power
    normalization sqrt(P)/||hhat|| per (i, 2, s); receivers are assumed to
    know these scalars when forming their filters.
    """

    b: int
    P: float
    precoders: Dict[Tuple[int, int, int], np.ndarray]
    sigmas: Dict[Tuple[int, int, int], float] = field(repr=False)


def build_precoders(csit: "CsitReport", schedule: Schedule, M: int, P: float) -> PrecoderSet:
    """Construct every slot's precoder from the transmitter-side estimates."""
    K = schedule.K
    b = K
    precoders: Dict[Tuple[int, int, int], np.ndarray] = {}
    sigmas: Dict[Tuple[int, int, int], float] = {}
    V_ot = ot_precoder(K, M, P)
    for slot in schedule.slots:
        if slot.phase == 1:
            (i,) = slot.active
            precoders[(i, 1, slot.index)] = V_ot
        else:
            alpha, beta = slot.active
            for tx, rx in ((alpha, beta), (beta, alpha)):
                hhat = csit.estimate(rx, tx)
                V = ria_precoder(hhat, P, b=b)
                precoders[(tx, 2, slot.index)] = V
                sigmas[(tx, 2, slot.index)] = math.sqrt(P) / float(
                    np.linalg.norm(np.asarray(hhat).reshape(-1)[:b])
                )
    return PrecoderSet(b=b, P=P, precoders=precoders, sigmas=sigmas)


@dataclass
class ExtendedSystem:
    """Stacked block system of one realization, per user.

    H[(j, i)] is the W x MW block-diagonal extended channel (one 1 x M
    block per slot, zero in slots where i is silent). V[i] is the MW x b
    stacked precoder. Xi[j] concatenates the interference columns
    H[(j, i)] @ V[i] over i != j, ascending, giving W x (K-1)b. U[j] is
    the b x W receive filter and Heq[j] = U[j] @ H[(j, j)] @ V[j] the
    b x b equivalent channel of the desired symbols.
    """

    schedule: Schedule
    P: float
    M: int
    b: int
    precoders: PrecoderSet
    H: Dict[Tuple[int, int], np.ndarray]
    V: Dict[int, np.ndarray]
    Xi: Dict[int, np.ndarray]
    U: Dict[int, np.ndarray]
    Heq: Dict[int, np.ndarray]
    degenerate_slots: List[Tuple[int, int, int]] = field(default_factory=list)

    def interferers(self, j: int) -> Tuple[int, ...]:
        """Block-column order of Xi[j]."""
        return tuple(i for i in range(1, self.schedule.K + 1) if i != j)


def assemble_extended(
    channels: "ChannelSet",
    csit: "CsitReport",
    schedule: Schedule,
    P: float,
) -> ExtendedSystem:
    """Assemble the whole-transmission block system for every user.

    Populates the extended channels, stacked precoders, interference
    stacks, receive filters and equivalent channels. Channel vectors and
    estimates must cover the schedule; missing entries raise KeyError.
    """
    K = schedule.K
    M = channels.M
    W = schedule.W
    b = K
    precoders = build_precoders(csit, schedule, M, P)

    V: Dict[int, np.ndarray] = {}
    for i in range(1, K + 1):
        Vi = np.zeros((M * W, b), dtype=complex)
        for w, slot in enumerate(schedule.slots):
            if i in slot.active:
                Vi[w * M : (w + 1) * M, :] = precoders.precoders[(i, slot.phase, slot.index)]
        V[i] = Vi

    H: Dict[Tuple[int, int], np.ndarray] = {}
    for j in range(1, K + 1):
        for i in range(1, K + 1):
            Hji = np.zeros((W, M * W), dtype=complex)
            for w, slot in enumerate(schedule.slots):
                if i in slot.active:
                    Hji[w, w * M : (w + 1) * M] = channels.vector(j, i, slot.phase, slot.index)
            H[(j, i)] = Hji

    Xi: Dict[int, np.ndarray] = {}
    for j in range(1, K + 1):
        blocks = [H[(j, i)] @ V[i] for i in range(1, K + 1) if i != j]
        Xi[j] = np.hstack(blocks)

    system = ExtendedSystem(
        schedule=schedule,
        P=P,
        M=M,
        b=b,
        precoders=precoders,
        H=H,
        V=V,
        Xi=Xi,
        U={},
        Heq={},
    )
    for j in range(1, K + 1):
        Uj = receive_filter(j, system, channels, schedule)
        system.U[j] = Uj
        system.Heq[j] = Uj @ H[(j, j)] @ V[j]
        if system.Heq[j].shape != (b, b):
            raise AssertionError("equivalent channel has inconsistent shape")
    return system


def receive_filter(
    j: int,
    system: ExtendedSystem,
    channels: "ChannelSet",
    schedule: Schedule,
) -> np.ndarray:
    """Interference-cancelling filter of user j (b x W).

    Row 1 selects the user's own interference-free OT slot. For every
    interferer beta there is one row supported on exactly two slots, the
    OT slot (1, beta) and the phase-2 slot pairing {j, beta}, weighted so
    the aligned interference cancels: the OT observation is scaled by the
    phase-2 interference coefficient sigma_beta * h_{j,beta}[1] / sqrt(P)
    and the phase-2 observation by -1/sqrt(K). Pair slots not involving j
    carry no usable alignment and get zero weight.

    Perfect estimates null the interference exactly; otherwise each
    combined row keeps a residual proportional to sqrt(P) times the
    estimation error of the corresponding link.
    """
    K = schedule.K
    P = system.P
    U = np.zeros((K, schedule.W), dtype=complex)
    U[0, schedule.position(1, j)] = 1.0
    c_ot = 1.0 / math.sqrt(K)
    row = 1
    for beta in range(1, K + 1):
        if beta == j:
            continue
        w_pair = schedule.pair_position(j, beta)
        slot = schedule.slots[w_pair]
        sigma = system.precoders.sigmas[(beta, 2, slot.index)]
        g = channels.vector(j, beta, 2, slot.index)[0]
        if g == 0.0:
            system.degenerate_slots.append((j, 2, slot.index))
        U[row, schedule.position(1, beta)] = sigma * g / math.sqrt(P)
        U[row, w_pair] = -c_ot
        row += 1
    return U
