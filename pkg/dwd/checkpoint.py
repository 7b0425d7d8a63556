"""
Resumable BFS checkpoints.

Layout: magic `DWD1`, then little-endian (version u16, n u8, fingerprint algorithm u8),
then three u32-length-prefixed protobuf sections: visited, frontier, stats.
Files are written to a temporary name and renamed into place.
"""

import logging
import os
import struct
from dataclasses import dataclass, field
from typing import Dict, List, Set, Union

from google.protobuf.message import DecodeError

from .errors import CheckpointCorrupt
from .labels import ClassKey
from .wire import dwd_pb2, keys_to_msgs, msg_to_key

MAGIC = b"DWD1"
VERSION = 1
_HEADER = struct.Struct("<HBB")
_LENGTH = struct.Struct("<I")

ALGO_EXACT = 0
ALGO_BLAKE2B_128 = 1

logger = logging.getLogger("checkpoint")

Token = Union[ClassKey, bytes]


@dataclass
class BfsState:
    n: int
    algorithm: int
    layer: int = 0
    visited: Set[Token] = field(default_factory=set)
    frontier: List[ClassKey] = field(default_factory=list)
    degree_histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def vertices(self) -> int:
        return sum(self.degree_histogram.values())

    @property
    def degree_sum(self) -> int:
        return sum(d * c for d, c in self.degree_histogram.items())


def _pack_visited(state: BfsState) -> bytes:
    if state.algorithm == ALGO_BLAKE2B_128:
        record_size = 16
        packed = b"".join(sorted(state.visited))
    else:
        width = state.n * state.n + 1
        record_size = 4 * width
        record = struct.Struct(f"<{width}I")
        packed = b"".join(record.pack(*key) for key in sorted(state.visited))
    section = dwd_pb2.VisitedSection(record_size=record_size, count=len(state.visited), packed=packed)
    return section.SerializeToString()


def _unpack_visited(data: bytes, n: int, algorithm: int) -> Set[Token]:
    section = dwd_pb2.VisitedSection()
    section.ParseFromString(data)
    size = section.record_size
    if size == 0 or len(section.packed) != size * section.count:
        raise CheckpointCorrupt("visited section length does not match its record count")
    chunks = [section.packed[i:i + size] for i in range(0, len(section.packed), size)]
    if algorithm == ALGO_BLAKE2B_128:
        if size != 16:
            raise CheckpointCorrupt(f"fingerprint records must be 16 bytes, got {size}")
        return set(chunks)
    width = n * n + 1
    if size != 4 * width:
        raise CheckpointCorrupt(f"class records must be {4 * width} bytes for n={n}, got {size}")
    record = struct.Struct(f"<{width}I")
    return {record.unpack(chunk) for chunk in chunks}


def encode_state(state: BfsState) -> bytes:
    frontier = dwd_pb2.FrontierSection(classes=keys_to_msgs(state.frontier))
    stats = dwd_pb2.StatsSection(layer=state.layer, vertices=state.vertices, degree_sum=state.degree_sum)
    for degree, count in state.degree_histogram.items():
        stats.degree_histogram[degree] = count
    out = [MAGIC, _HEADER.pack(VERSION, state.n, state.algorithm)]
    for section in (_pack_visited(state), frontier.SerializeToString(), stats.SerializeToString()):
        out.append(_LENGTH.pack(len(section)))
        out.append(section)
    return b"".join(out)


def decode_state(data: bytes) -> BfsState:
    if data[:4] != MAGIC:
        raise CheckpointCorrupt("bad magic; not a dwd checkpoint")
    try:
        version, n, algorithm = _HEADER.unpack_from(data, 4)
    except struct.error:
        raise CheckpointCorrupt("truncated header") from None
    if version != VERSION:
        raise CheckpointCorrupt(f"unsupported checkpoint version {version}")
    if algorithm not in (ALGO_EXACT, ALGO_BLAKE2B_128):
        raise CheckpointCorrupt(f"unknown fingerprint algorithm id {algorithm}")

    offset = 4 + _HEADER.size
    sections = []
    for _ in range(3):
        if offset + _LENGTH.size > len(data):
            raise CheckpointCorrupt("truncated section header")
        (length,) = _LENGTH.unpack_from(data, offset)
        offset += _LENGTH.size
        if offset + length > len(data):
            raise CheckpointCorrupt("truncated section body")
        sections.append(data[offset:offset + length])
        offset += length
    if offset != len(data):
        raise CheckpointCorrupt("trailing bytes after the stats section")

    try:
        visited = _unpack_visited(sections[0], n, algorithm)
        frontier = dwd_pb2.FrontierSection()
        frontier.ParseFromString(sections[1])
        stats = dwd_pb2.StatsSection()
        stats.ParseFromString(sections[2])
    except DecodeError as e:
        raise CheckpointCorrupt(f"section failed to decode: {e}") from None

    state = BfsState(n=n, algorithm=algorithm, layer=stats.layer, visited=visited,
                     frontier=[msg_to_key(msg) for msg in frontier.classes],
                     degree_histogram=dict(stats.degree_histogram))
    if state.vertices != stats.vertices or state.degree_sum != stats.degree_sum:
        raise CheckpointCorrupt("stats section totals disagree with its histogram")
    return state


def save_checkpoint(path: str, state: BfsState) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as f:
        f.write(encode_state(state))
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    logger.debug(f"layer {state.layer}: wrote {len(state.visited)} visited, {len(state.frontier)} frontier to {path}")


def load_checkpoint(path: str) -> BfsState:
    with open(path, "rb") as f:
        state = decode_state(f.read())
    logger.info(f"resuming n={state.n} at layer {state.layer} with {len(state.visited)} visited classes")
    return state
