"""
graph6 encoder/decoder and newline-delimited corpus streaming
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, List, Tuple, Union

from app.models.graph import Graph
from app.utils.exceptions import Graph6ParseError, SizeLimitError

logger = logging.getLogger(__name__)

HEADER = b">>graph6<<"
_OFFSET = 63
_MAX_PRINTABLE = 126
_SHORT_FORM_MAX = 62
_LONG_FORM_MAX = 258047


def edge_positions(n: int) -> List[Tuple[int, int]]:
    """Upper-triangle pairs in graph6 bit order (column-major: (0,1), (0,2), (1,2), (0,3), ...)"""
    return [(i, j) for j in range(1, n) for i in range(j)]


def _encode_size(n: int) -> bytes:
    if n <= _SHORT_FORM_MAX:
        return bytes([n + _OFFSET])
    if n <= _LONG_FORM_MAX:
        return bytes([_MAX_PRINTABLE, (n >> 12 & 0x3F) + _OFFSET, (n >> 6 & 0x3F) + _OFFSET, (n & 0x3F) + _OFFSET])
    raise SizeLimitError("graph6 vertex count", n, _LONG_FORM_MAX)


def record_length(n: int) -> int:
    """Total byte length of a graph6 record on n vertices"""
    size = 1 if n <= _SHORT_FORM_MAX else 4
    return size + (n * (n - 1) // 2 + 5) // 6


def g6_encode(g: Graph) -> bytes:
    out = bytearray(_encode_size(g.n))
    value = 0
    width = 0
    for i, j in edge_positions(g.n):
        value = value << 1 | (g.adj[i] >> j & 1)
        width += 1
        if width == 6:
            out.append(value + _OFFSET)
            value = 0
            width = 0
    if width:
        out.append((value << (6 - width)) + _OFFSET)
    return bytes(out)


def _as_bytes(text: str) -> bytes:
    # Non-ASCII characters become bytes >= 0x80 and fail the printable-range check
    return text.encode("utf-8")


def g6_decode(data: Union[bytes, str], strict: bool = True) -> Graph:
    """Decode one graph6 record; a trailing newline is tolerated"""
    if isinstance(data, str):
        data = _as_bytes(data)
    data = data.rstrip(b"\r\n")
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise Graph6ParseError("empty record", 0)

    for offset, byte in enumerate(data):
        if not _OFFSET <= byte <= _MAX_PRINTABLE:
            raise Graph6ParseError(f"non-printable byte 0x{byte:02x}", offset)

    if data[0] != _MAX_PRINTABLE:
        n = data[0] - _OFFSET
        pos = 1
    else:
        if len(data) < 4:
            raise Graph6ParseError("truncated size field", len(data))
        if data[1] == _MAX_PRINTABLE:
            raise Graph6ParseError("8-byte size form is not supported", 1)
        n = (data[1] - _OFFSET) << 12 | (data[2] - _OFFSET) << 6 | (data[3] - _OFFSET)
        pos = 4

    expected = record_length(n)
    if len(data) < expected:
        raise Graph6ParseError(f"truncated bit field: expected {expected} bytes, got {len(data)}", len(data))
    if len(data) > expected:
        raise Graph6ParseError(f"trailing bytes after {expected}-byte record", expected)
    if n == 0:
        raise Graph6ParseError("graphs without vertices are not supported", 0)

    rows = [0] * n
    positions = edge_positions(n)
    for k, (i, j) in enumerate(positions):
        byte = data[pos + k // 6] - _OFFSET
        if byte >> (5 - k % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i

    pad = (-len(positions)) % 6
    if pad and strict:
        last = data[-1] - _OFFSET
        if last & ((1 << pad) - 1):
            raise Graph6ParseError("nonzero padding bits", len(data) - 1)

    return Graph(n, tuple(rows))


@dataclass
class Graph6Diagnostic:
    line: int
    offset: int
    message: str


@dataclass
class Graph6Stream:
    """Lazy single-consumer iterator of graphs from newline-delimited graph6 records"""
    source: Iterable[bytes]
    strict: bool = True
    lenient: bool = False
    diagnostics: List[Graph6Diagnostic] = field(default_factory=list)

    def __iter__(self) -> Iterator[Graph]:
        for line_no, record in self.records():
            try:
                yield g6_decode(record, strict=self.strict)
            except Graph6ParseError as e:
                if not self.lenient:
                    raise Graph6ParseError(e.reason, e.offset, line_no) from e
                self.diagnostics.append(Graph6Diagnostic(line_no, e.offset, e.reason))
                logger.warning(f"Skipping malformed graph6 record at line {line_no}: {e.detail}")

    def records(self) -> Iterator[Tuple[int, bytes]]:
        for line_no, raw in enumerate(self.source, start=1):
            if isinstance(raw, str):
                raw = _as_bytes(raw)
            record = raw.strip()
            if record.startswith(HEADER):
                record = record[len(HEADER):]
            if record:
                yield line_no, record


def g6_stream(source: Union[BinaryIO, Iterable[bytes], bytes], strict: bool = True, lenient: bool = False) -> Graph6Stream:
    if isinstance(source, (bytes, bytearray)):
        source = bytes(source).splitlines()
    return Graph6Stream(source, strict=strict, lenient=lenient)


def read_corpus(path: Union[str, Path], strict: bool = True, lenient: bool = False) -> Iterator[Graph]:
    with open(path, "rb") as handle:
        yield from g6_stream(handle, strict=strict, lenient=lenient)


def write_corpus(graphs: Iterable[Graph], handle: BinaryIO) -> int:
    count = 0
    for g in graphs:
        handle.write(g6_encode(g) + b"\n")
        count += 1
    return count
