"""Prefix-free codes over finite message spaces.

Builds Huffman codes from a known distribution, the trimmed transform that
caps codeword length at ceil(log2 L) + 1, and an adapter that turns any
deterministic external compressor into a prefix-free code by gamma-framing
its outputs.
"""

from __future__ import annotations

import math
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TextIO

from .bits import BitString, elias_gamma, fixed_width
from .errors import (
    CodebookFormatError,
    DegenerateSpace,
    EmptyCompressorOutput,
    InvalidCode,
    InvalidSpace,
    NondeterministicCompressor,
    NotACodeword,
    NotInCodebook,
)

PROB_SUM_TOL = 1e-9


@dataclass(frozen=True)
class MessageSpace:
    """Finite set of distinct messages with a probability distribution."""

    messages: tuple[bytes, ...]
    probs: tuple[Fraction | float, ...]

    def __init__(self, messages: Sequence[bytes], probs: Sequence[Fraction | float]):
        messages = tuple(bytes(m) for m in messages)
        probs = tuple(probs)
        if not messages:
            raise InvalidSpace("message space is empty")
        if len(set(messages)) != len(messages):
            raise InvalidSpace("messages are not pairwise distinct")
        if len(probs) != len(messages):
            raise InvalidSpace("probs and messages differ in length")
        if any(p < 0 for p in probs):
            raise InvalidSpace("negative probability")
        total = sum(probs)
        if isinstance(total, Fraction):
            if total != 1:
                raise InvalidSpace(f"probabilities sum to {total}, expected 1")
        elif abs(total - 1.0) > PROB_SUM_TOL:
            raise InvalidSpace(f"probabilities sum to {total}, expected 1")
        object.__setattr__(self, "messages", messages)
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.messages)

    def index(self, m: bytes) -> int:
        return self.messages.index(m)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)


@dataclass(frozen=True)
class PrefixCode:
    """Injective prefix-free codebook message -> BitString."""

    codebook: dict[bytes, BitString]
    max_len: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.codebook:
            raise InvalidCode("empty codebook")
        words = list(self.codebook.values())
        if len(set(words)) != len(words):
            raise InvalidCode("codebook is not injective")
        if not _prefix_free(words):
            raise InvalidCode("codeword set is not prefix-free")
        object.__setattr__(self, "max_len", max(len(w) for w in words))
        # decoder lookup: (length, value) -> message
        lut = {(w.length, w.value): m for m, w in self.codebook.items()}
        object.__setattr__(self, "_lut", lut)

    def __contains__(self, m: bytes) -> bool:
        return m in self.codebook


@dataclass(frozen=True)
class ExternalCompressor:
    """Deterministic byte-string -> byte-string (or bit-string) transform."""

    transform: Callable[[bytes], "bytes | BitString"]
    name: str

    def run(self, m: bytes) -> BitString:
        out = self.transform(m)
        again = self.transform(m)
        if out != again:
            raise NondeterministicCompressor(
                f"{self.name} gave different outputs for {m!r}")
        if isinstance(out, BitString):
            return out
        return BitString.from_bytes(bytes(out))


def _prefix_free(words: Iterable[BitString]) -> bool:
    ordered = sorted(words, key=str)
    for a, b in zip(ordered, ordered[1:]):
        if b.startswith(a):
            return False
    return True


def verify_prefix_free(code: "PrefixCode | Iterable[BitString]") -> bool:
    """True iff no codeword prefixes another and the codebook is injective."""
    if isinstance(code, PrefixCode):
        words = list(code.codebook.values())
    else:
        words = list(code)
    if len(set(words)) != len(words):
        return False
    return _prefix_free(words)


def max_codeword_length(code: PrefixCode) -> int:
    """The public ciphertext length l: the longest codeword in the book."""
    return code.max_len


# --- Huffman -------------------------------------------------------------

def build_huffman(space: MessageSpace) -> PrefixCode:
    """Optimal prefix-free code for a known distribution, in canonical form.

    Deterministic: heap ties break on (weight, smallest message index) and
    codewords are assigned canonically, shortest first, then index order.
    """
    L = len(space)
    if L == 1:
        # degenerate space still needs a nonempty codeword
        return PrefixCode({space.messages[0]: BitString.from_str("0")})

    # merge queue entries: (weight, min message index, set of indices)
    heap: list[tuple[Fraction | float, int, list[int]]] = [
        (p, i, [i]) for i, p in enumerate(space.probs)
    ]
    heapq.heapify(heap)
    depth = [0] * L
    while len(heap) > 1:
        wa, ia, ga = heapq.heappop(heap)
        wb, ib, gb = heapq.heappop(heap)
        for i in ga + gb:
            depth[i] += 1
        heapq.heappush(heap, (wa + wb, min(ia, ib), ga + gb))

    return _canonical(space.messages, depth)


def _canonical(messages: Sequence[bytes], lengths: Sequence[int]) -> PrefixCode:
    """Assign codewords in lexicographic order, sorted by (length, index)."""
    order = sorted(range(len(messages)), key=lambda i: (lengths[i], i))
    codebook: dict[bytes, BitString] = {}
    code = 0
    prev = 0
    for i in order:
        code <<= lengths[i] - prev
        prev = lengths[i]
        codebook[messages[i]] = BitString(code, lengths[i])
        code += 1
    # keep message order of the space
    return PrefixCode({m: codebook[m] for m in messages})


# --- trimmed code --------------------------------------------------------

def trim_code(code: PrefixCode, space: MessageSpace) -> PrefixCode:
    """Cap codeword length at ceil(log2 L) + 1.

    Codewords of length <= ceil(log2 L) are kept behind a 0 flag; longer
    ones are replaced by a 1 flag plus the 0-based message index in exactly
    ceil(log2 L) bits.
    """
    L = len(space)
    if L < 2:
        raise DegenerateSpace("trimming needs at least 2 messages")
    if set(code.codebook) != set(space.messages):
        raise NotInCodebook("code does not cover exactly the space's messages")
    width = math.ceil(math.log2(L))
    zero = BitString.from_str("0")
    one = BitString.from_str("1")
    codebook: dict[bytes, BitString] = {}
    for i, m in enumerate(space.messages):
        word = code.codebook[m]
        if len(word) <= width:
            codebook[m] = zero + word
        else:
            codebook[m] = one + fixed_width(i, width)
    return PrefixCode(codebook)


# --- external compressor adapter ----------------------------------------

def wrap_external(compressor: ExternalCompressor, space: MessageSpace) -> PrefixCode:
    """Explicit prefix-free codebook from a deterministic compressor.

    Each output is framed as gamma(bit length) || bits, which is prefix-free
    whenever outputs differ; identical outputs get a fixed-width message
    index appended to restore injectivity.
    """
    L = len(space)
    frames: list[BitString] = []
    for m in space.messages:
        out = compressor.run(m)
        if len(out) == 0:
            raise EmptyCompressorOutput(
                f"{compressor.name} produced no output for {m!r}")
        frames.append(elias_gamma(len(out)) + out)

    # gamma framing leaves only exact-equality collisions possible
    groups: dict[BitString, list[int]] = {}
    for i, f in enumerate(frames):
        groups.setdefault(f, []).append(i)
    width = math.ceil(math.log2(L)) if L > 1 else 1
    codebook: dict[bytes, BitString] = {}
    for i, m in enumerate(space.messages):
        frame = frames[i]
        if len(groups[frame]) > 1:
            frame = frame + fixed_width(i, width)
        codebook[m] = frame
    return PrefixCode(codebook)


# --- encode / decode -----------------------------------------------------

def encode(code: PrefixCode, m: bytes) -> BitString:
    try:
        return code.codebook[bytes(m)]
    except KeyError:
        raise NotInCodebook(f"message {bytes(m)!r} has no codeword") from None


def decode_prefix(code: PrefixCode, stream: BitString) -> tuple[bytes, int]:
    """Return the unique message whose codeword prefixes stream, plus its length."""
    lut = code._lut  # type: ignore[attr-defined]
    acc = 0
    limit = min(len(stream), code.max_len)
    for i in range(limit):
        acc = (acc << 1) | stream[i]
        m = lut.get((i + 1, acc))
        if m is not None:
            return m, i + 1
    raise NotACodeword(f"no codeword prefixes {stream}")


# --- codebook file format ------------------------------------------------
#
#   padcrypt-codebook 1 <codec-name> <L>
#   <index> <message-hex or -> <codeword as ASCII 0/1>

CODEBOOK_MAGIC = "padcrypt-codebook"
CODEBOOK_VERSION = 1


def save_codebook(code: PrefixCode, out: TextIO, codec_name: str = "custom") -> None:
    if " " in codec_name or not codec_name:
        raise ValueError("codec name must be a single nonempty token")
    out.write(f"{CODEBOOK_MAGIC} {CODEBOOK_VERSION} {codec_name} {len(code.codebook)}\n")
    for i, (m, w) in enumerate(code.codebook.items()):
        out.write(f"{i} {m.hex() or '-'} {w}\n")


def load_codebook(src: TextIO) -> tuple[PrefixCode, str]:
    """Parse a codebook file; returns (code, codec name)."""
    header = src.readline().split()
    if len(header) != 4 or header[0] != CODEBOOK_MAGIC:
        raise CodebookFormatError("bad codebook header")
    if header[1] != str(CODEBOOK_VERSION):
        raise CodebookFormatError(f"unsupported codebook version {header[1]}")
    codec_name = header[2]
    try:
        count = int(header[3])
    except ValueError:
        raise CodebookFormatError("bad record count") from None
    entries: list[tuple[int, bytes, BitString]] = []
    for lineno, line in enumerate(src, start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CodebookFormatError(f"line {lineno}: expected 3 fields")
        try:
            idx = int(parts[0])
            msg = b"" if parts[1] == "-" else bytes.fromhex(parts[1])
            word = BitString.from_str(parts[2])
        except ValueError as exc:
            raise CodebookFormatError(f"line {lineno}: {exc}") from None
        entries.append((idx, msg, word))
    if len(entries) != count or [e[0] for e in entries] != list(range(count)):
        raise CodebookFormatError("record indices do not match header count")
    try:
        code = PrefixCode({m: w for _, m, w in entries})
    except InvalidCode as exc:
        raise CodebookFormatError(str(exc)) from None
    return code, codec_name
