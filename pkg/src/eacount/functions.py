"""Lookup tables for functions F: F_q^n -> F_q^m.

Vectors are indexed by their radix-q code ``sum(v[i] * q**i)``; a table
lists ``F(x)`` (as a code in ``[0, q**m)``) for x = 0, 1, ..., q**n - 1.

Table files are JSON documents with keys in the fixed order
``q, n, m, table``::

    {"q": 2, "n": 2, "m": 2, "table": [0, 1, 3, 2]}
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ConfigurationError, DimensionMismatch, TableParseError
from .gf import SUPPORTED_Q


def encode_vec(v, q: int) -> int:
    code = 0
    for x in reversed(tuple(v)):
        if not 0 <= x < q:
            raise ConfigurationError(f"entry {x} outside [0, {q})")
        code = code * q + x
    return code


def decode_vec(code: int, dim: int, q: int) -> tuple:
    if not 0 <= code < q**dim:
        raise ConfigurationError(f"code {code} outside [0, {q}**{dim})")
    out = []
    for _ in range(dim):
        code, r = divmod(code, q)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class FuncTable:
    q: int
    n: int
    m: int
    table: tuple

    def __post_init__(self):
        if self.q not in SUPPORTED_Q:
            raise ConfigurationError(f"unsupported field size q={self.q}")
        if self.n < 1 or self.m < 1:
            raise ConfigurationError("n and m must be >= 1")
        table = tuple(int(x) for x in self.table)
        if len(table) != self.q**self.n:
            raise DimensionMismatch(f"table length {len(table)} != q**n = {self.q**self.n}")
        top = self.q**self.m
        if any(not 0 <= x < top for x in table):
            raise ConfigurationError(f"table codes must lie in [0, {top})")
        object.__setattr__(self, "table", table)

    @property
    def dims(self):
        return self.q, self.n, self.m

    def __call__(self, x):
        """Evaluate on a vector (tuple) or a code (int); returns the same kind."""
        if isinstance(x, int):
            return self.table[x]
        return decode_vec(self.table[encode_vec(x, self.q)], self.m, self.q)

    def index(self) -> int:
        """Position of this table in :func:`all_tables` order."""
        return table_to_index(self.table, self.q**self.m)

    @classmethod
    def from_index(cls, idx, q, n, m):
        return cls(q, n, m, index_to_table(idx, q**m, q**n))

    @classmethod
    def zero(cls, q, n, m):
        return cls(q, n, m, (0,) * q**n)


def table_to_index(table, qm):
    idx = 0
    for y in reversed(table):
        idx = idx * qm + y
    return idx


def index_to_table(idx, qm, N):
    out = []
    for _ in range(N):
        idx, r = divmod(idx, qm)
        out.append(r)
    return tuple(out)


def function_space_size(q: int, n: int, m: int) -> int:
    """|F| = q**(m * q**n), exact.  Its log_q is ``m * q**n``."""
    if q not in SUPPORTED_Q:
        raise ConfigurationError(f"unsupported field size q={q}")
    return q ** (m * q**n)


def function_space_log_q(q, n, m) -> int:
    return m * q**n


def all_tables(q, n, m) -> Iterator[FuncTable]:
    for idx in range(function_space_size(q, n, m)):
        yield FuncTable.from_index(idx, q, n, m)


# ---------------------------------------------------------------------------
# random functions


def make_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    """Philox-4x64 generator for a 64-bit seed.

    ``stream`` selects an independent substream (e.g. a trial index); the
    key is derived by hashing ``(seed, stream)`` through SeedSequence, so a
    trial's draws do not depend on which worker runs it.
    """
    if not 0 <= seed < 2**64:
        raise ConfigurationError("seed must be a 64-bit unsigned integer")
    entropy = [seed] if stream is None else [seed, stream]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def random_table(rng: np.random.Generator, q, n, m) -> FuncTable:
    cells = rng.integers(0, q**m, size=q**n, dtype=np.int64)
    return FuncTable(q, n, m, tuple(int(c) for c in cells))


def random_function(q, n, m, seed: int) -> FuncTable:
    return random_table(make_rng(seed), q, n, m)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class GraphSet:
    """Graph {(x, F(x))} as sorted codes of F_q^(n+m) (x in the low digits)."""

    q: int
    n: int
    m: int
    points: tuple

    def __len__(self):
        return len(self.points)

    def to_table(self) -> FuncTable:
        qn = self.q**self.n
        table = [None] * qn
        for c in self.points:
            y, x = divmod(c, qn)
            if table[x] is not None:
                raise ValueError("point set is not the graph of a function")
            table[x] = y
        if any(t is None for t in table):
            raise ValueError("point set does not cover the domain")
        return FuncTable(self.q, self.n, self.m, tuple(table))


def graph_of(F: FuncTable) -> GraphSet:
    qn = F.q**F.n
    return GraphSet(F.q, F.n, F.m, tuple(sorted(x + qn * y for x, y in enumerate(F.table))))


# ---------------------------------------------------------------------------
# file format


def dumps_table(F: FuncTable) -> str:
    return json.dumps({"q": F.q, "n": F.n, "m": F.m, "table": list(F.table)}) + "\n"


def write_table(F: FuncTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_table(F))


_INT = re.compile(rb"-?\d+")


def loads_table(data: bytes | str) -> FuncTable:
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise TableParseError(f"malformed document: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise TableParseError("malformed header: top level must be an object", 0)
    for key in ("q", "n", "m", "table"):
        if key not in doc:
            raise TableParseError(f"malformed header: missing key {key!r}", len(data))
    for key in ("q", "n", "m"):
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise TableParseError(f"malformed header: {key!r} must be an integer",
                                  _key_offset(data, key))
    q, n, m, table = doc["q"], doc["n"], doc["m"], doc["table"]
    if q not in SUPPORTED_Q or n < 1 or m < 1:
        raise TableParseError(f"malformed header: unsupported (q, n, m) = ({q}, {n}, {m})",
                              _key_offset(data, "q"))
    start = _key_offset(data, "table")
    if not isinstance(table, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in table):
        raise TableParseError("table must be an array of integers", start)
    if len(table) != q**n:
        raise TableParseError(f"table length {len(table)} != q**n = {q**n}", start)
    top = q**m
    for i, x in enumerate(table):
        if not 0 <= x < top:
            raise TableParseError(f"code out of range: table[{i}] = {x} not in [0, {top})",
                                  _element_offset(data, start, i))
    return FuncTable(q, n, m, tuple(table))


def read_table(path) -> FuncTable:
    with open(path, "rb") as fh:
        return loads_table(fh.read())


def _key_offset(data: bytes, key: str) -> int:
    pos = data.find(b'"' + key.encode() + b'"')
    return max(pos, 0)


def _element_offset(data: bytes, table_key_pos: int, i: int) -> int:
    bracket = data.find(b"[", table_key_pos)
    for k, match in enumerate(_INT.finditer(data, bracket)):
        if k == i:
            return match.start()
    return bracket  # pragma: no cover
