"""Random codebooks, maximum-likelihood decoders and the coding schemes.

Two schemes are simulated end to end:

* the non-cooperative scheme: every node sends an independent random
  codeword once and every receiver jointly decodes the two other messages
  as a two-user multiple-access channel (finite-field or AWGN);
* the cooperative scheme on the AWGN channel: node 0 acts as relay.  Over
  ``B + 1`` blocks nodes 1 and 2 send fresh messages while the relay
  decodes both at the end of every block and, in the next block, sends its
  own message together with the modulo-sum of the two decoded messages,
  either through a double-indexed codebook or as a superposition
  ``U(w0) + V(w_sum)``.  Nodes 1 and 2 decode backwards from block ``B`` to
  block 1, combining two consecutive received blocks.

Joint-typicality decoding is replaced by exact maximum likelihood
throughout.  Ties are resolved towards the lexicographically smallest
hypothesis, flagged, and counted as errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .channels import (
    NODES,
    AwgnChannelSpec,
    FfChannelSpec,
    ReceiverPhases,
    awgn_transmit,
    classify,
    ff_transmit,
    others,
)
from .errors import (
    AlphaOutOfRange,
    BudgetExceeded,
    ConfigError,
    IncompatibleScheme,
    LengthMismatch,
    NotReciprocal,
    OutOfRange,
)
from .galois import FieldSpec
from .regions import log2_1p, optimal_alpha, reciprocal_order, superposition_rates
from .seeding import CHANNEL, CODEBOOK, CODEBOOK_V, MESSAGES, SeedLike, keyed_rng

TIE_RTOL = 1e-9
RELAY = 0
MAX_TABLE_BYTES = 3 * 2**30


# ----------------------------------------------------------------------
# Codebooks
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Codebook:
    """Codeword table of one node for one block.

    ``table`` has shape ``(M, n)``, or ``(M, M, n)`` for the relay's
    double-indexed codebook.  A table may hold only a prefix of the
    (row-major) codewords when the rest are never used; ``size`` is the
    number of messages per index either way.
    """

    table: np.ndarray
    size: int
    key: tuple = ()
    power: Optional[float] = None

    @property
    def n(self) -> int:
        return self.table.shape[-1]

    @property
    def double_index(self) -> bool:
        return self.table.ndim == 3

    def __getitem__(self, idx):
        return self.table[idx]


def nc_modsum(w2: int, w3: int, M: int) -> int:
    """Network-coded index ``(w2 + w3) mod M``."""
    if M < 1:
        raise OutOfRange(f"codebook size must be >= 1, got {M}")
    if not (0 <= w2 < M and 0 <= w3 < M):
        raise OutOfRange(f"messages ({w2}, {w3}) outside [0, {M})")
    return (int(w2) + int(w3)) % M


def nc_recover(w_nc: int, own: int, M: int) -> int:
    """Invert the modulo-sum given one's own message."""
    return (int(w_nc) - int(own)) % M


def ff_codebook(f: FieldSpec, M: int, n: int, rng: np.random.Generator, key: tuple = ()) -> Codebook:
    """``M`` codewords with i.i.d. uniform letters over GF(q)."""
    return Codebook(rng.integers(0, f.q, size=(M, n), dtype=np.int64), M, key)


def gaussian_codebook(
    M: int,
    n: int,
    power: float,
    rng: np.random.Generator,
    *,
    double_index: bool = False,
    rows: Optional[int] = None,
    key: tuple = (),
) -> Codebook:
    """Circularly symmetric complex Gaussian codewords with letter variance ``power``.

    With ``rows`` only the first ``rows`` codewords (row-major over the
    index tuple) are drawn; they coincide with the leading rows of the
    full table generated from the same stream.
    """
    total = M * M if double_index else M
    count = total if rows is None else min(int(rows), total)
    draws = rng.standard_normal((count, n, 2), dtype=np.float32)
    draws *= np.float32(np.sqrt(power / 2.0))
    table = draws.view(np.complex64)[..., 0]
    if double_index and rows is None:
        table = table.reshape(M, M, n)
    return Codebook(table, M, key, float(power))


# ----------------------------------------------------------------------
# Decisions
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class MacDecision:
    """Outcome of a joint ML decision over a 2-D hypothesis grid."""

    w_i: int
    w_j: int
    metric: float
    runner_up: float
    tie: bool
    tied: tuple[tuple[int, int], ...] = ()

    @property
    def pair(self) -> tuple[int, int]:
        return (self.w_i, self.w_j)

    def wrong(self, truth: Sequence[int]) -> tuple[bool, bool]:
        """Per-component error flags; a tie counts against any component it disagrees on."""
        hyps = self.tied or (self.pair,)
        return (
            any(h[0] != truth[0] for h in hyps),
            any(h[1] != truth[1] for h in hyps),
        )


def _argmax_lex(metric: np.ndarray) -> MacDecision:
    best = float(metric.max())
    tol = TIE_RTOL * max(1.0, abs(best))
    hits = np.argwhere(metric >= best - tol)
    i, j = (int(v) for v in hits[0])
    if metric.size > 1:
        flat = metric.ravel()
        second = np.partition(flat, -2)[-2] if flat.size > 1 else -np.inf
    else:
        second = -np.inf
    tied = tuple((int(a), int(b)) for a, b in hits) if len(hits) > 1 else ()
    return MacDecision(i, j, best, float(second), len(hits) > 1, tied)


def _check_len(y, *cbs: Codebook) -> int:
    n = len(y)
    for cb in cbs:
        if cb.n != n:
            raise LengthMismatch(f"codeword length {cb.n} != received length {n}")
    return n


def ff_mac_metric(ch: FfChannelSpec, k: int, cb_i: Codebook, cb_j: Codebook, y) -> np.ndarray:
    """Log-likelihood of every codeword pair at receiver ``k`` (natural log).

    Symbols of zero noise probability get a penalty larger in magnitude
    than any all-possible path, so impossible pairs always rank last.
    Evaluated as one-hot(residual of sender i) @ table(log p_Z(v - G x_j)).
    """
    f = ch.field
    i, j = others(k)
    y = f.check(np.atleast_1d(y))
    n = _check_len(y, cb_i, cb_j)
    q = f.q
    with np.errstate(divide="ignore"):
        logp = np.log(ch.noise[k].probabilities)
    finite = np.isfinite(logp)
    penalty = (n + 1) * float(logp[finite].min()) - 1.0
    L = np.where(finite, logp, penalty)

    resid = np.atleast_2d(f.sub(y[None, :], f.mul(ch.gains[i, k], cb_i.table)))
    Mi = resid.shape[0]
    onehot = np.zeros((Mi, n * q))
    onehot[np.arange(Mi)[:, None], np.arange(n)[None, :] * q + resid] = 1.0

    b = np.atleast_2d(f.mul(ch.gains[j, k], cb_j.table))
    Mj = b.shape[0]
    diff = np.atleast_3d(f.sub(np.arange(q)[None, None, :], b[:, :, None]))
    table = L[diff].reshape(Mj, n * q).T
    return onehot @ table


def decode_mac_ff(ch: FfChannelSpec, k: int, cb_i: Codebook, cb_j: Codebook, y) -> MacDecision:
    """ML decoding of both senders' messages at receiver ``k`` of a finite-field channel.

    ``cb_i`` and ``cb_j`` belong to the two other nodes in ascending order.
    """
    return _argmax_lex(ff_mac_metric(ch, k, cb_i, cb_j, y))


def awgn_mac_metric(
    ch: AwgnChannelSpec,
    k: int,
    cb_i: Codebook,
    cb_j: Codebook,
    y,
    phases: ReceiverPhases,
    noise_power: Optional[float] = None,
) -> np.ndarray:
    """``-sum_t |y - h_i x_i - h_j x_j|^2 / N`` for every codeword pair."""
    if phases.receiver != k:
        raise ConfigError(f"receiver {k} was handed the phases of receiver {phases.receiver}")
    i, j = others(k)
    y = np.asarray(y, dtype=complex)
    _check_len(y, cb_i, cb_j)
    g = ch.gain_magnitudes
    N = ch.noise_powers[k] if noise_power is None else noise_power
    a = cb_i.table * (g[i, k] * phases.rotation(i))
    b = cb_j.table * (g[j, k] * phases.rotation(j))
    ra = y[None, :] - a
    e = np.sum(np.abs(ra) ** 2, axis=1)
    fb = np.sum(np.abs(b) ** 2, axis=1)
    cross = (ra @ b.conj().T).real
    return -(e[:, None] + fb[None, :] - 2.0 * cross) / N


def decode_mac_awgn(
    ch: AwgnChannelSpec, k: int, cb_i: Codebook, cb_j: Codebook, y, phases: ReceiverPhases
) -> MacDecision:
    """ML decoding at receiver ``k`` using only that receiver's phase view."""
    return _argmax_lex(awgn_mac_metric(ch, k, cb_i, cb_j, y, phases))


# ----------------------------------------------------------------------
# Non-cooperative scheme
# ----------------------------------------------------------------------
@dataclass
class NoncoopOutcome:
    n: int
    sizes: tuple[int, int, int]
    messages: tuple[int, int, int]
    decisions: dict[int, MacDecision]

    @property
    def errors(self) -> dict[tuple[int, int], bool]:
        """``(receiver, source) -> error`` for all six links."""
        out = {}
        for k, d in self.decisions.items():
            i, j = others(k)
            wi, wj = d.wrong((self.messages[i], self.messages[j]))
            out[(k, i)] = wi
            out[(k, j)] = wj
        return out

    @property
    def any_error(self) -> bool:
        return any(self.errors.values())

    @property
    def realized_rates(self) -> tuple[float, ...]:
        return tuple(float(np.log2(M)) / self.n for M in self.sizes)


def run_noncoop(ch, n: int, sizes: Sequence[int], seed: SeedLike) -> NoncoopOutcome:
    """One trial of the non-cooperative scheme on either channel model.

    Fresh codebooks (stream ``(0, CODEBOOK, node)``), uniform messages
    (``(0, MESSAGES)``) and one channel block (``(0, CHANNEL)``).
    """
    sizes = tuple(int(M) for M in sizes)
    if len(sizes) != 3 or min(sizes) < 1:
        raise ConfigError(f"need three codebook sizes >= 1, got {sizes}")
    if n < 1:
        raise ConfigError("block length must be >= 1")
    if isinstance(ch, FfChannelSpec):
        cbs = [ff_codebook(ch.field, sizes[a], n, keyed_rng(seed, 0, CODEBOOK, a), (0, CODEBOOK, a)) for a in NODES]
    elif isinstance(ch, AwgnChannelSpec):
        cbs = [
            gaussian_codebook(sizes[a], n, ch.powers[a], keyed_rng(seed, 0, CODEBOOK, a), key=(0, CODEBOOK, a))
            for a in NODES
        ]
    else:
        raise IncompatibleScheme(f"unsupported channel {type(ch).__name__}")

    mrng = keyed_rng(seed, 0, MESSAGES)
    w = tuple(int(mrng.integers(0, M)) for M in sizes)
    x = [cbs[a][w[a]] for a in NODES]
    crng = keyed_rng(seed, 0, CHANNEL)

    decisions = {}
    if isinstance(ch, FfChannelSpec):
        ys = ff_transmit(ch, *x, crng)
        for k in NODES:
            i, j = others(k)
            decisions[k] = decode_mac_ff(ch, k, cbs[i], cbs[j], ys[k])
    else:
        ys, phases = awgn_transmit(ch, *x, crng)
        for k in NODES:
            i, j = others(k)
            decisions[k] = decode_mac_awgn(ch, k, cbs[i], cbs[j], ys[k], phases.view(k))
    return NoncoopOutcome(n, sizes, w, decisions)


# ----------------------------------------------------------------------
# Cooperative scheme
# ----------------------------------------------------------------------
SCHEMES = ("double_index", "superposition")


@dataclass
class BlockRecord:
    block: int
    tx_indices: dict[int, object]
    received: np.ndarray
    phases: tuple[ReceiverPhases, ReceiverPhases, ReceiverPhases]


@dataclass
class ForwardDecision:
    """Relay's decision on block ``block`` (messages of nodes 1 and 2)."""

    block: int
    decision: MacDecision
    truth: tuple[int, int]

    @property
    def wrong(self) -> tuple[bool, bool]:
        return self.decision.wrong(self.truth)


@dataclass
class BackwardDecision:
    """Decision of ``receiver`` on block ``block``: ``p`` is the relay's message, ``q`` the other node's."""

    receiver: int
    block: int
    decision: MacDecision
    truth: tuple[int, int]

    @property
    def wrong(self) -> tuple[bool, bool]:
        return self.decision.wrong(self.truth)

    @property
    def event(self) -> str:
        wp, wq = self.wrong
        return {(False, False): "ok", (True, False): "wrong_p", (False, True): "wrong_q", (True, True): "wrong_both"}[
            (wp, wq)
        ]


@dataclass
class ProtocolTrace:
    """Everything that happened in one run of the cooperative protocol.

    ``messages[a, b - 1]`` is node ``a``'s message for block ``b``;
    ``transmitted[a, b - 1]`` the codeword it sent in block ``b``.
    """

    n: int
    M: int
    B: int
    scheme: str
    alpha: Optional[float]
    messages: np.ndarray
    transmitted: np.ndarray
    blocks: list[BlockRecord] = field(default_factory=list)
    forward: list[ForwardDecision] = field(default_factory=list)
    backward: dict[int, list[BackwardDecision]] = field(default_factory=dict)

    @property
    def decode_order(self) -> dict[int, list[int]]:
        out = {RELAY: [d.block for d in self.forward]}
        out.update({r: [d.block for d in ds] for r, ds in self.backward.items()})
        return out

    @property
    def errors(self) -> dict[tuple[int, int], bool]:
        """``(receiver, source) -> error in any block``."""
        out = {(k, s): False for k in NODES for s in others(k)}
        for d in self.forward:
            w1, w2 = d.wrong
            out[(RELAY, 1)] |= w1
            out[(RELAY, 2)] |= w2
        for r, ds in self.backward.items():
            other = 2 if r == 1 else 1
            for d in ds:
                wp, wq = d.wrong
                out[(r, RELAY)] |= wp
                out[(r, other)] |= wq
        return out

    @property
    def any_error(self) -> bool:
        return any(self.errors.values())

    @property
    def event_counts(self) -> dict[str, int]:
        counts = {"wrong_p": 0, "wrong_q": 0, "wrong_both": 0}
        for ds in self.backward.values():
            for d in ds:
                if d.event != "ok":
                    counts[d.event] += 1
        return counts

    @property
    def backward_errors(self) -> int:
        return sum(d.event != "ok" for ds in self.backward.values() for d in ds)

    @property
    def realized_rate(self) -> float:
        return float(np.log2(self.M)) / self.n


def coop_ops(n: int, M: int, B: int) -> int:
    """Elementary metric operations of one cooperative run, ``M^2 n B``."""
    return int(M) * int(M) * int(n) * int(B)


def _relay_books(scheme, M, n, P, alpha, seed, block, full):
    """Relay codebook(s) of ``block``; only the dummy row(s) unless ``full``."""
    rows = None if full else 1
    if scheme == "double_index":
        return (
            gaussian_codebook(
                M, n, P, keyed_rng(seed, block, CODEBOOK, RELAY), double_index=True, rows=rows, key=(block, CODEBOOK, RELAY)
            ),
        )
    u = gaussian_codebook(M, n, alpha * P, keyed_rng(seed, block, CODEBOOK, RELAY), rows=rows, key=(block, CODEBOOK, RELAY))
    v = gaussian_codebook(
        M, n, (1.0 - alpha) * P, keyed_rng(seed, block, CODEBOOK_V, RELAY), rows=rows, key=(block, CODEBOOK_V, RELAY)
    )
    return (u, v)


def _relay_codeword(scheme, books, own, w_nc, M):
    if scheme == "double_index":
        tab = books[0].table
        return tab[own, w_nc] if tab.ndim == 3 else tab[own * M + w_nc]
    u, v = books
    return u.table[own].astype(np.complex128) + v.table[w_nc].astype(np.complex128)


def _relay_metric(scheme, books, r, h) -> np.ndarray:
    """``-sum_t |r - h x_relay(p, c)|^2`` over all ``(p, c)``, without the noise scaling.

    ``h`` carries the link gain and the receiver's phases; ``|h_t|`` is constant.
    """
    g2 = float(np.abs(h[0]) ** 2)
    rr = float(np.sum(np.abs(r) ** 2))
    w = (np.conj(r) * h).astype(np.complex64)
    if scheme == "double_index":
        tab = books[0].table
        M = tab.shape[0]
        flat = tab.reshape(M * M, -1)
        norms = np.einsum("ij,ij->i", flat.real, flat.real) + np.einsum("ij,ij->i", flat.imag, flat.imag)
        cross = (flat @ w).real
        out = -(rr + g2 * norms.astype(np.float64) - 2.0 * cross.astype(np.float64))
        return out.reshape(M, M)
    u, v = (b.table.astype(np.complex128) for b in books)
    w = np.conj(r) * h
    nu = np.sum(np.abs(u) ** 2, axis=1)
    nv = np.sum(np.abs(v) ** 2, axis=1)
    cu = (u @ w).real
    cv = (v @ w).real
    uv = (u @ v.conj().T).real
    return -(rr + g2 * (nu[:, None] + nv[None, :] + 2.0 * uv) - 2.0 * (cu[:, None] + cv[None, :]))


def run_coop(
    ch: AwgnChannelSpec,
    n: int,
    M: int,
    B: int,
    seed: SeedLike,
    scheme: str = "double_index",
    alpha: Optional[float] = None,
    max_table_bytes: int = MAX_TABLE_BYTES,
) -> ProtocolTrace:
    """Run the cooperative relaying protocol once with node 0 as relay.

    Parameters
    ----------
    ch : AwgnChannelSpec
        Channel; any SNRs are accepted, relay choice is the caller's.
    n, M, B : int
        Block length, messages per node per block, and number of message
        blocks (the run spans ``B + 1`` blocks).
    seed : int or SeedSequence
        Trial seed; all streams derive from it (see :mod:`threeway.seeding`).
    scheme : {"double_index", "superposition"}
    alpha : float, optional
        Power fraction of the relay's own codeword (superposition only).

    Returns
    -------
    ProtocolTrace
    """
    if not isinstance(ch, AwgnChannelSpec):
        raise IncompatibleScheme("the cooperative scheme needs an AWGN channel")
    if scheme not in SCHEMES:
        raise IncompatibleScheme(f"unknown cooperative scheme {scheme!r}")
    n, M, B = int(n), int(M), int(B)
    if n < 1 or M < 1 or B < 1:
        raise ConfigError("n, M and B must all be >= 1")
    if scheme == "superposition":
        if alpha is None or not 0.0 <= float(alpha) <= 1.0:
            raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
        alpha = float(alpha)
    else:
        alpha = None
    if scheme == "double_index" and M * M * n * 8 * B > max_table_bytes:
        raise BudgetExceeded(f"relay codebooks need {M * M * n * 8 * B} bytes (limit {max_table_bytes})")

    P = ch.powers
    N = ch.noise_powers
    g = ch.gain_magnitudes

    mrng = keyed_rng(seed, 0, MESSAGES)
    msgs = mrng.integers(0, M, size=(3, B), dtype=np.int64)

    def w(a, b):  # dummy messages outside 1..B
        return int(msgs[a, b - 1]) if 1 <= b <= B else 0

    books = {
        b: {a: gaussian_codebook(M, n, P[a], keyed_rng(seed, b, CODEBOOK, a), key=(b, CODEBOOK, a)) for a in (1, 2)}
        for b in range(1, B + 2)
    }
    relay_books = {b: _relay_books(scheme, M, n, P[RELAY], alpha, seed, b, full=b > 1) for b in range(1, B + 2)}

    trace = ProtocolTrace(n, M, B, scheme, alpha, msgs.copy(), np.zeros((3, B + 1, n), dtype=complex))

    # Forward pass: transmission and relay decoding.
    relay_sum = {0: 0}
    for b in range(1, B + 2):
        own, w_nc = w(RELAY, b - 1), relay_sum[b - 1]
        x = [
            _relay_codeword(scheme, relay_books[b], own, w_nc, M),
            books[b][1][w(1, b)],
            books[b][2][w(2, b)],
        ]
        ys, phases = awgn_transmit(ch, *x, keyed_rng(seed, b, CHANNEL))
        views = tuple(phases.view(k) for k in NODES)
        for a in NODES:
            trace.transmitted[a, b - 1] = x[a]
        trace.blocks.append(BlockRecord(b, {RELAY: (own, w_nc), 1: w(1, b), 2: w(2, b)}, np.array(ys), views))
        if b <= B:
            d = decode_mac_awgn(ch, RELAY, books[b][1], books[b][2], ys[RELAY], views[RELAY])
            trace.forward.append(ForwardDecision(b, d, (w(1, b), w(2, b))))
            relay_sum[b] = nc_modsum(d.w_i, d.w_j, M)

    # Backward pass at nodes 1 and 2.
    for r in (1, 2):
        other = 2 if r == 1 else 1
        decisions = []
        known_other = 0  # dummy message of the last block
        for b in range(B, 0, -1):
            nxt, cur = trace.blocks[b], trace.blocks[b - 1]
            view_n, view_c = nxt.phases[r], cur.phases[r]

            h_o = g[other, r] * view_n.rotation(other)
            resid = nxt.received[r] - h_o * books[b + 1][other][known_other]
            m_next = _relay_metric(scheme, relay_books[b + 1], resid, g[RELAY, r] * view_n.rotation(RELAY)) / N[r]
            # column c of m_next is the network-coded index; q = c - own
            own = w(r, b)
            m_next = np.roll(m_next, -own, axis=1)

            y_c = cur.received[r]
            if b == 1:
                known = _relay_codeword(scheme, relay_books[1], 0, 0, M)
                y_c = y_c - g[RELAY, r] * view_c.rotation(RELAY) * known
                var = N[r]
            else:
                var = N[r] + g[RELAY, r] ** 2 * P[RELAY]
            cands = books[b][other].table * (g[other, r] * view_c.rotation(other))
            m_cur = -np.sum(np.abs(y_c[None, :] - cands) ** 2, axis=1) / var

            d = _argmax_lex(m_next + m_cur[None, :])
            decisions.append(BackwardDecision(r, b, d, (w(RELAY, b), w(other, b))))
            known_other = d.w_j
        trace.backward[r] = decisions
    return trace


def coop_rate_bounds(snr, scheme: str = "double_index", alpha: Optional[float] = None) -> list[tuple[str, float]]:
    """Rate constraints of the cooperative scheme, as ``(label, bound on R)``.

    ``snr`` is a reciprocal 3x3 SNR matrix (or AWGN spec); nodes are first
    relabeled into relay order.  The minimum of the returned bounds is the
    equal rate the scheme supports.  For the superposition scheme ``alpha``
    defaults to the split that maximizes ``min(R', R'')`` for node 2.
    """
    ch = snr if isinstance(snr, AwgnChannelSpec) else AwgnChannelSpec(snr)
    if not classify(ch)["reciprocal"]:
        raise NotReciprocal("cooperative rate bounds need a reciprocal channel")
    s = ch.permute(reciprocal_order(ch)).snr
    g12, g13, g23 = s[0, 1], s[0, 2], s[1, 2]
    out = [
        ("relay: R<log2(1+g12)", log2_1p(g12)),
        ("relay: R<log2(1+g13)", log2_1p(g13)),
        ("relay: 2R<log2(1+g12+g13)", 0.5 * log2_1p(g12 + g13)),
    ]
    if scheme == "double_index":
        out += [
            ("node2: R<log2(1+g12)", log2_1p(g12)),
            ("node2: 2R<log2(1+g12+g23)", 0.5 * log2_1p(g12 + g23)),
            ("node3: R<log2(1+g13)", log2_1p(g13)),
            ("node3: 2R<log2(1+g13+g23)", 0.5 * log2_1p(g13 + g23)),
        ]
    elif scheme == "superposition":
        a = optimal_alpha(g12, g23) if alpha is None else float(alpha)
        r1, r2, sb = superposition_rates(g12, g23, a)
        t1, t2, tb = superposition_rates(g13, g23, a)
        out += [
            ("node2: R<R'(alpha)", r1),
            ("node2: R<R''(alpha)", r2),
            ("node2: 2R<log2(1+g12+g23)", 0.5 * sb),
            ("node3: R<R'(alpha)", t1),
            ("node3: R<R''(alpha)", t2),
            ("node3: 2R<log2(1+g13+g23)", 0.5 * tb),
        ]
    else:
        raise IncompatibleScheme(f"unknown cooperative scheme {scheme!r}")
    return out
