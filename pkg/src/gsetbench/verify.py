"""Hexadecimal solution bitstrings and cut certification.

A solution is a hex string; each character expands to four bits, most
significant bit first, and bit ``k`` (0-based, left to right) is variable
``k + 1``.  Bits map to spins as 0 -> +1, 1 -> -1.  Only the final character
may carry padding, and encoded padding is always zero.

Solution files::

    # optional comment lines
    instance=G72 n=10000 claimed=7008
    AB09C32B897F...
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from gsetbench import registry
from gsetbench.instances import ProblemInstance
from gsetbench.metrics import solution_quality
from gsetbench.model import as_spins, bits_to_spins, cut_value, spins_to_bits

_HEX = frozenset(string.hexdigits)

BUNDLED = {"G72": "g72_7008.hex", "G77": "g77_9940.hex"}


class HexDecodeError(ValueError):
    pass


@dataclass(frozen=True)
class HexSolution:
    hex: str
    n: int

    def __post_init__(self):
        cleaned = "".join(self.hex.split())
        object.__setattr__(self, "hex", cleaned)
        bad = next((c for c in cleaned if c not in _HEX), None)
        if bad is not None:
            raise HexDecodeError(f"non-hex character {bad!r} at position {cleaned.index(bad)}")
        if self.n < 1:
            raise HexDecodeError(f"n must be >= 1, got {self.n}")
        bits = 4 * len(cleaned)
        if bits < self.n:
            raise HexDecodeError(
                f"{len(cleaned)} hex characters encode {bits} bits, fewer than n={self.n}"
            )
        if bits - self.n >= 4:
            raise HexDecodeError(
                f"{len(cleaned)} hex characters encode {bits} bits; only the final "
                f"character may be padding for n={self.n}"
            )


def decode_hex_solution(hs: HexSolution) -> np.ndarray:
    """Return the spin configuration encoded by ``hs``."""
    nibbles = np.frombuffer(bytes.fromhex(hs.hex if len(hs.hex) % 2 == 0 else hs.hex + "0"), dtype=np.uint8)
    bits = np.unpackbits(nibbles)[: hs.n]
    return bits_to_spins(bits)


def encode_hex_solution(cfg) -> str:
    bits = spins_to_bits(as_spins(cfg))
    n = len(bits)
    chars = -(-n // 4)
    packed = np.packbits(bits).tobytes().hex().upper()
    return packed[:chars]


@dataclass(frozen=True)
class CertifyReport:
    cut: int
    quality: float | None
    best_known: int | None
    claimed: int | None
    matches_claim: bool | None

    @property
    def verdict(self) -> str:
        if self.matches_claim is None:
            return "NO-CLAIM"
        return "MATCH" if self.matches_claim else "MISMATCH"


def certify(inst: ProblemInstance, cfg, claimed: int | None = None) -> CertifyReport:
    cut = cut_value(inst, cfg)
    best = registry.best_known(inst.id) if inst.id else None
    quality = solution_quality(cut, best) if best else None
    return CertifyReport(
        cut=cut,
        quality=quality,
        best_known=best,
        claimed=claimed,
        matches_claim=None if claimed is None else cut == claimed,
    )


@dataclass(frozen=True)
class SolutionFile:
    hex: str
    instance: str | None = None
    n: int | None = None
    claimed: int | None = None

    def solution(self, n: int | None = None) -> HexSolution:
        size = n if n is not None else self.n
        if size is None:
            raise HexDecodeError("variable count unknown: no n= header and none supplied")
        if self.n is not None and n is not None and self.n != n:
            raise HexDecodeError(f"solution header says n={self.n} but the instance has n={n}")
        return HexSolution(self.hex, size)


def parse_solution_file(text: str) -> SolutionFile:
    header: dict[str, str] = {}
    payload: list[str] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" in stripped:
            if payload:
                raise HexDecodeError("header line after hex payload")
            for key, value in re.findall(r"(\w+)\s*=\s*(\S+)", stripped):
                header[key.lower()] = value
            continue
        payload.append(stripped)

    def as_int(key: str) -> int | None:
        if key not in header:
            return None
        try:
            return int(header[key])
        except ValueError:
            raise HexDecodeError(f"header {key}={header[key]!r} is not an integer") from None

    return SolutionFile(
        hex="".join("".join(payload).split()),
        instance=header.get("instance"),
        n=as_int("n"),
        claimed=as_int("claimed"),
    )


def format_solution_file(cfg, instance: str | None = None, claimed: int | None = None, comment: str | None = None) -> str:
    spins = as_spins(cfg)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    fields = []
    if instance:
        fields.append(f"instance={instance}")
    fields.append(f"n={len(spins)}")
    if claimed is not None:
        fields.append(f"claimed={claimed}")
    lines.append(" ".join(fields))
    lines.append(encode_hex_solution(spins))
    return "\n".join(lines) + "\n"


def read_solution_file(path: str | Path) -> SolutionFile:
    return parse_solution_file(Path(path).read_text())


def bundled_solution(instance_id: str) -> SolutionFile:
    """The record bitstring shipped for G72 (7008) or G77 (9940)."""
    name = BUNDLED[instance_id.upper()]
    return parse_solution_file(resources.files("gsetbench.data").joinpath(name).read_text())


def bundled_path(instance_id: str) -> Path:
    return Path(str(resources.files("gsetbench.data").joinpath(BUNDLED[instance_id.upper()])))
