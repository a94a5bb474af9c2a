"""Evidence engine: exact secrecy oracle, statistical tests, bound reports.

The secrecy oracle enumerates every key and every pad in exact rational
arithmetic and checks P(e|m) = P(e) = 2^-l with zero tolerance.  Floats
appear only in human-readable summaries and in the large-scale chi-square
complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

from scipy.stats import chisquare

from .bits import BitString
from .codec import MessageSpace, PrefixCode, encode
from .errors import EnumerationTooLarge, NotInCodebook
from .rng import RandomSource

DEFAULT_MAX_L = 12
CHI_SQUARE_MIN_PER_BIN = 50


def shannon_entropy(space: MessageSpace) -> float:
    """h(p) = -sum p log2 p, with zero-probability terms contributing 0."""
    return -sum(float(p) * math.log2(float(p)) for p in space.probs if p > 0)


# --- exact oracle --------------------------------------------------------

@dataclass
class SecrecyReport:
    l: int
    per_message_dists: dict[bytes, dict[BitString, Fraction]]
    marginal: dict[BitString, Fraction]
    max_deviation: Fraction
    verdict: str  # "perfect" | "leaky"

    @property
    def perfect(self) -> bool:
        return self.verdict == "perfect"

    def posterior(self, m: bytes, e: BitString, prior: Fraction) -> Fraction:
        """P(m|e) via Bayes from the stored tables."""
        p_e = self.marginal.get(e, Fraction(0))
        if p_e == 0:
            raise ValueError(f"ciphertext {e} has zero probability")
        return prior * self.per_message_dists[m].get(e, Fraction(0)) / p_e

    def write_text(self, out: TextIO) -> None:
        out.write(f"l {self.l}\n")
        out.write(f"verdict {self.verdict}\n")
        out.write(f"max_deviation {self.max_deviation.numerator}/{self.max_deviation.denominator}\n")
        out.write("table marginal\n")
        for e in sorted(self.marginal, key=str):
            p = self.marginal[e]
            out.write(f"  {e} {p.numerator}/{p.denominator}\n")
        for m, dist in self.per_message_dists.items():
            out.write(f"table conditional {m.hex() or '-'}\n")
            for e in sorted(dist, key=str):
                p = dist[e]
                out.write(f"  {e} {p.numerator}/{p.denominator}\n")


def _conditional_dist(x: BitString, l: int, naive: bool) -> dict[BitString, Fraction]:
    """Brute-force P(e|m) by enumerating all keys (and pads unless naive)."""
    s = len(x)
    dist: dict[BitString, Fraction] = {}
    npad = 0 if naive else l - s
    weight = Fraction(1, 2 ** (s + npad))
    for k in range(2 ** s):
        y = BitString(x.value ^ k, s)
        for r in range(2 ** npad):
            e = y + BitString(r, npad)
            dist[e] = dist.get(e, Fraction(0)) + weight
    return dist


def exact_secrecy_oracle(space: MessageSpace, code: PrefixCode, *,
                         naive: bool = False,
                         max_l: int = DEFAULT_MAX_L) -> SecrecyReport:
    """Exhaustively verify perfect secrecy in exact rational arithmetic.

    With naive=True the random padding is omitted (ciphertext is the XORed
    codeword alone), reproducing the length side channel.
    """
    if not space.is_exact:
        raise ValueError("oracle requires exact rational probabilities")
    l = code.max_len
    if l > max_l:
        raise EnumerationTooLarge(f"l={l} exceeds the budget of {max_l}")

    per_message: dict[bytes, dict[BitString, Fraction]] = {}
    for m in space.messages:
        per_message[m] = _conditional_dist(encode(code, m), l, naive)

    marginal: dict[BitString, Fraction] = {}
    for m, p in zip(space.messages, space.probs):
        for e, q in per_message[m].items():
            marginal[e] = marginal.get(e, Fraction(0)) + Fraction(p) * q

    max_dev = Fraction(0)
    for m in space.messages:
        dist = per_message[m]
        for e in marginal:
            dev = abs(dist.get(e, Fraction(0)) - marginal[e])
            if dev > max_dev:
                max_dev = dev
    verdict = "perfect" if max_dev == 0 else "leaky"
    return SecrecyReport(l, per_message, marginal, max_dev, verdict)


# --- key discipline equivalence ------------------------------------------

def key_discipline_equivalence(space: MessageSpace, code: PrefixCode, *,
                               max_l: int = DEFAULT_MAX_L) -> bool:
    """Check that drawing a fresh l-bit key per message and drawing only the
    s bits actually XORed induce identical ciphertext distributions, message
    by message, in exact arithmetic."""
    l = code.max_len
    if l > max_l:
        raise EnumerationTooLarge(f"l={l} exceeds the budget of {max_l}")
    for m in space.messages:
        x = encode(code, m)
        s = len(x)
        # discipline A: s key bits from a pool, then l-s pad bits
        dist_pool = _conditional_dist(x, l, naive=False)
        # discipline B: a full l-bit key of which only s bits are used
        dist_fresh: dict[BitString, Fraction] = {}
        weight = Fraction(1, 2 ** l * 2 ** (l - s))
        for k in range(2 ** l):
            y = BitString(x.value ^ (k >> (l - s)), s)
            for r in range(2 ** (l - s)):
                e = y + BitString(r, l - s)
                dist_fresh[e] = dist_fresh.get(e, Fraction(0)) + weight
        if dist_pool != dist_fresh:
            return False
    return True


# --- empirical uniformity ------------------------------------------------

@dataclass
class UniformityReport:
    l: int
    trials: int
    statistic: float | None
    p_value: float | None
    insufficient_data: bool
    counts: list[int] = field(repr=False, default_factory=list)


def empirical_uniformity(space: MessageSpace, code: PrefixCode,
                         rng: RandomSource, trials: int, *,
                         fixed_message: bytes | None = None,
                         pad_rng: RandomSource | None = None,
                         max_l: int = 24) -> UniformityReport:
    """Chi-square goodness of fit of simulated ciphertexts against uniform.

    Each trial uses fresh key and pad bits from rng (pad_rng overrides the
    pad source, which is the fault-injection point for biased-pad tests).
    With fixed_message set, the per-message conditional is tested instead
    of the marginal.
    """
    l = code.max_len
    if l > max_l:
        raise EnumerationTooLarge(f"l={l} exceeds the budget of {max_l}")
    if pad_rng is None:
        pad_rng = rng

    cum: list[tuple[float, bytes]] = []
    acc = 0.0
    for m, p in zip(space.messages, space.probs):
        acc += float(p)
        cum.append((acc, m))

    counts = [0] * (2 ** l)
    for _ in range(trials):
        if fixed_message is not None:
            m = fixed_message
        else:
            u = rng.uniform()
            m = cum[-1][1]
            for bound, msg in cum:
                if u < bound:
                    m = msg
                    break
        x = encode(code, m)
        s = len(x)
        y = x.xor(rng.bits(s))
        e = y + pad_rng.bits(l - s)
        counts[e.value] += 1

    insufficient = trials < CHI_SQUARE_MIN_PER_BIN * 2 ** l
    if trials == 0:
        return UniformityReport(l, 0, None, None, True, counts)
    stat, p = chisquare(counts)
    return UniformityReport(l, trials, float(stat), float(p), insufficient, counts)


# --- length leak ---------------------------------------------------------

@dataclass
class LeakReport:
    mutual_information: float
    observable: str


def leak_mutual_information(space: MessageSpace, code: PrefixCode, *,
                            observable: str = "naive-ciphertext-length") -> LeakReport:
    """I(M; observable) by explicit joint-distribution enumeration.

    The naive observable is the unpadded ciphertext length |codeword(m)|;
    "ciphertext-length" is the padded scheme's constant l, giving I = 0.
    """
    if observable == "ciphertext-length":
        obs = {m: code.max_len for m in space.messages}
    elif observable == "naive-ciphertext-length":
        obs = {m: len(encode(code, m)) for m in space.messages}
    else:
        raise ValueError(f"unknown observable {observable!r}")

    joint: dict[tuple[bytes, int], Fraction | float] = {}
    for m, p in zip(space.messages, space.probs):
        key = (m, obs[m])
        joint[key] = joint.get(key, 0) + p
    p_obs: dict[int, Fraction | float] = {}
    for (_, o), p in joint.items():
        p_obs[o] = p_obs.get(o, 0) + p
    p_msg: dict[bytes, Fraction | float] = {
        m: p for m, p in zip(space.messages, space.probs)}

    info = 0.0
    for (m, o), p in joint.items():
        if p > 0:
            info += float(p) * math.log2(float(p) / (float(p_msg[m]) * float(p_obs[o])))
    # clamp float dust so the I >= 0 invariant holds exactly at 0
    return LeakReport(max(info, 0.0), observable)


# --- bound report --------------------------------------------------------

@dataclass
class BoundReport:
    entropy: float
    average_length: float
    max_length: int
    length_cap: int  # ceil(log2 L) + 1
    kind: str  # "huffman" | "trimmed" | "generic"
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def bound_report(space: MessageSpace, code: PrefixCode,
                 kind: str = "huffman") -> BoundReport:
    """Check average/max length against the entropy bounds for `kind`."""
    if kind not in ("huffman", "trimmed", "generic"):
        raise ValueError(f"unknown code kind {kind!r}")
    missing = [m for m in space.messages if m not in code.codebook]
    if missing:
        raise NotInCodebook(f"code does not cover {missing[0]!r}")
    h = shannon_entropy(space)
    avg = float(sum(float(p) * len(code.codebook[m])
                    for m, p in zip(space.messages, space.probs)))
    cap = math.ceil(math.log2(len(space))) + 1 if len(space) > 1 else 1

    violations: list[str] = []
    if kind == "huffman":
        if not (h - 1e-9 <= avg < h + 1):
            violations.append(
                f"average length {avg:.6f} outside [h, h+1) = [{h:.6f}, {h + 1:.6f})")
    elif kind == "trimmed":
        if avg > h + 2 + 1e-9:
            violations.append(f"average length {avg:.6f} exceeds h+2 = {h + 2:.6f}")
        if code.max_len > cap:
            violations.append(f"max length {code.max_len} exceeds cap {cap}")
    return BoundReport(h, avg, code.max_len, cap, kind, violations)
