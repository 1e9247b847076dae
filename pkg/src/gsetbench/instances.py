"""Gset instances: parsing, serialization, cached acquisition and summary stats.

The Gset text format is ``n m`` followed by ``m`` triples ``u v w`` with
1-based vertex indices and integer weights.  Tokens may be separated by any
whitespace.  Instances are validated on parse: indices in range, no
self-loops, no duplicate undirected edges, exact edge count.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
import urllib.error
import urllib.request
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from gsetbench.registry import InstanceMeta, UnknownInstanceError, lookup

log = logging.getLogger(__name__)

CACHE_ENV = "GSETBENCH_CACHE"
URL_ENV = "GSETBENCH_URL"
DEFAULT_URL = "https://web.stanford.edu/~yyye/yyye/Gset/"

_INT32 = (-(2**31), 2**31 - 1)


class GsetParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FetchError(OSError):
    """Network-side failure while downloading an instance."""


class CacheMissError(FileNotFoundError):
    """Offline mode was requested and the instance is not cached."""


class ChecksumMismatchError(ValueError):
    """A cached file no longer matches the checksum recorded when it was fetched."""


class InstanceMismatchError(ValueError):
    """A downloaded/cached file disagrees with the registry's n or m."""


class Adjacency:
    """Compressed adjacency: neighbours of vertex i (0-based) are
    ``neighbors[offsets[i]:offsets[i+1]]`` with matching ``weights``."""

    __slots__ = ("offsets", "neighbors", "weights")

    def __init__(self, n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray):
        src = np.concatenate([u, v]) - 1
        dst = np.concatenate([v, u]) - 1
        ww = np.concatenate([w, w]).astype(np.int64)
        order = np.lexsort((dst, src))
        self.neighbors = dst[order].astype(np.int32)
        self.weights = ww[order]
        counts = np.bincount(src, minlength=n)
        self.offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.offsets[1:])
        for arr in (self.offsets, self.neighbors, self.weights):
            arr.setflags(write=False)

    def degree(self) -> np.ndarray:
        return np.diff(self.offsets)


class ProblemInstance:
    """An undirected weighted graph with 1-based vertex labels.

    Immutable after construction; the adjacency structure is built lazily
    once and shared by every solver state on this instance.
    """

    def __init__(self, id: str, n: int, edges, source_path: str = ""):
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 3)
        self.id = id
        self.n = int(n)
        self.source_path = source_path
        self.u = arr[:, 0].copy()
        self.v = arr[:, 1].copy()
        self.w = arr[:, 2].copy()
        for a in (self.u, self.v, self.w):
            a.setflags(write=False)
        _validate(self.n, self.u, self.v, self.w)

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return list(zip(self.u.tolist(), self.v.tolist(), self.w.tolist()))

    @cached_property
    def adjacency(self) -> Adjacency:
        return Adjacency(self.n, self.u, self.v, self.w)

    @cached_property
    def total_weight(self) -> int:
        return int(self.w.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.id == other.id
            and self.n == other.n
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.w, other.w)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ProblemInstance(id={self.id!r}, n={self.n}, m={self.m})"


def _validate(n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray, lines: np.ndarray | None = None) -> None:
    def where(k: int) -> int | None:
        return None if lines is None else int(lines[k])

    if n < 1:
        raise GsetParseError(f"vertex count must be >= 1, got {n}", None if lines is None else 1)
    bad = np.flatnonzero((u < 1) | (u > n) | (v < 1) | (v > n))
    if bad.size:
        k = int(bad[0])
        raise GsetParseError(f"vertex index out of [1, {n}] in edge ({u[k]}, {v[k]})", where(k))
    loops = np.flatnonzero(u == v)
    if loops.size:
        k = int(loops[0])
        raise GsetParseError(f"self-loop on vertex {u[k]}", where(k))
    wide = np.flatnonzero((w < _INT32[0]) | (w > _INT32[1]))
    if wide.size:
        k = int(wide[0])
        raise GsetParseError(f"weight {w[k]} does not fit in 32 bits", where(k))
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * (n + 1) + hi
    order = np.argsort(key, kind="stable")
    repeats = np.flatnonzero(key[order][1:] == key[order][:-1])
    if repeats.size:
        k = int(order[1:][repeats].min())
        raise GsetParseError(f"duplicate edge {{{lo[k]}, {hi[k]}}}", where(k))


def parse_gset(text: str, id: str = "", source_path: str = "") -> ProblemInstance:
    """Parse Gset text into a validated :class:`ProblemInstance`."""
    tokens: list[str] = []
    token_lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        tokens.extend(parts)
        token_lines.extend([lineno] * len(parts))

    values = np.empty(len(tokens), dtype=np.int64)
    for i, tok in enumerate(tokens):
        try:
            values[i] = int(tok)
        except (ValueError, OverflowError):
            raise GsetParseError(f"non-integer token {tok!r}", token_lines[i]) from None

    if len(values) < 2:
        raise GsetParseError("missing 'n m' header", 1)
    n, m = int(values[0]), int(values[1])
    if m < 0:
        raise GsetParseError(f"negative edge count {m}", token_lines[1])
    body = values[2:]
    if len(body) % 3 != 0:
        raise GsetParseError("trailing incomplete edge triple", token_lines[-1])
    found = len(body) // 3
    if found != m:
        at = token_lines[-1] if token_lines else 1
        raise GsetParseError(f"header declares {m} edges but {found} were found", at)
    triples = body.reshape(-1, 3)
    edge_lines = np.asarray(token_lines[2::3][:m] if m else [], dtype=np.int64)
    _validate(n, triples[:, 0], triples[:, 1], triples[:, 2], edge_lines)
    return ProblemInstance(id, n, triples, source_path)


def serialize_gset(inst: ProblemInstance) -> str:
    lines = [f"{inst.n} {inst.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in inst.edges)
    return "\n".join(lines) + "\n"


def read_gset(path: str | os.PathLike, id: str | None = None) -> ProblemInstance:
    path = Path(path)
    return parse_gset(path.read_text(), id=id or path.stem, source_path=str(path))


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "gsetbench"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _download(url: str, timeout: float) -> bytes:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            return resp.read()
    except (urllib.error.URLError, OSError) as exc:
        raise FetchError(f"could not download {url}: {exc}") from exc


def _check_meta(inst: ProblemInstance, meta: InstanceMeta) -> None:
    if inst.n != meta.n or inst.m != meta.m:
        raise InstanceMismatchError(
            f"{meta.id}: file has n={inst.n} m={inst.m}, registry expects n={meta.n} m={meta.m}"
        )


def _store(cache: Path, name: str, data: bytes) -> None:
    """Publish ``data`` as ``cache/name`` via exclusive creation; the first
    writer wins and later writers leave the existing file untouched."""
    cache.mkdir(parents=True, exist_ok=True)
    final = cache / name
    fd, tmp_name = tempfile.mkstemp(prefix=f".{name}.", suffix=".part", dir=cache)
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        try:
            os.link(tmp, final)
        except FileExistsError:
            pass
    finally:
        tmp.unlink(missing_ok=True)


def load_instance(
    id: str,
    cache_dir: str | os.PathLike | None = None,
    offline: bool = False,
    url: str | None = None,
    timeout: float = 60.0,
) -> ProblemInstance:
    """Return a parsed instance by registry id or by path to a Gset file.

    Registry ids are served from ``<cache_dir>/<ID>.gset``; on a miss the file
    is fetched from ``url`` (or ``$GSETBENCH_URL``) unless ``offline`` is set,
    and its SHA-256 is stored next to it as ``<ID>.sha256``.
    """
    candidate = Path(id)
    if candidate.is_file():
        return read_gset(candidate)

    try:
        meta = lookup(id)
    except UnknownInstanceError:
        if candidate.suffix or os.sep in id:
            raise FileNotFoundError(f"no such instance file: {id}") from None
        raise

    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    gset_path = cache / f"{meta.id}.gset"
    sha_path = cache / f"{meta.id}.sha256"

    if gset_path.is_file():
        data = gset_path.read_bytes()
        digest = sha256_hex(data)
        if sha_path.is_file():
            recorded = sha_path.read_text().split()[0].strip()
            if recorded != digest:
                raise ChecksumMismatchError(
                    f"{gset_path}: sha256 {digest} differs from recorded {recorded}"
                )
        inst = parse_gset(data.decode("ascii"), id=meta.id, source_path=str(gset_path))
        _check_meta(inst, meta)
        return inst

    if offline:
        raise CacheMissError(f"{meta.id} is not cached in {cache} and offline mode is set")

    base = url or os.environ.get(URL_ENV) or DEFAULT_URL
    src = base.format(id=meta.id) if "{id}" in base else base.rstrip("/") + "/" + meta.id
    log.info("fetching %s from %s", meta.id, src)
    data = _download(src, timeout)
    inst = parse_gset(data.decode("ascii"), id=meta.id, source_path=str(gset_path))
    _check_meta(inst, meta)
    _store(cache, gset_path.name, data)
    stored = gset_path.read_bytes()
    _store(cache, sha_path.name, f"{sha256_hex(stored)}  {gset_path.name}\n".encode())
    if stored != data:
        # another process published first; trust theirs only if it parses identically
        inst = parse_gset(stored.decode("ascii"), id=meta.id, source_path=str(gset_path))
        _check_meta(inst, meta)
    return inst


def cached_checksum(id: str, cache_dir: str | os.PathLike | None = None) -> str | None:
    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    sha_path = cache / f"{lookup(id).id}.sha256"
    if not sha_path.is_file():
        return None
    return sha_path.read_text().split()[0]


@dataclass(frozen=True)
class InstanceStats:
    n: int
    m: int
    total_weight: int
    weight_histogram: dict[int, int]
    min_degree: int
    max_degree: int
    mean_degree: float


def instance_stats(inst: ProblemInstance) -> InstanceStats:
    deg = np.bincount(np.concatenate([inst.u, inst.v]) - 1, minlength=inst.n)
    hist = dict(sorted(Counter(inst.w.tolist()).items()))
    return InstanceStats(
        n=inst.n,
        m=inst.m,
        total_weight=inst.total_weight,
        weight_histogram=hist,
        min_degree=int(deg.min()),
        max_degree=int(deg.max()),
        mean_degree=float(deg.mean()),
    )
