# cluster/wire.py
"""
Frame codec shared by clients and database nodes.

Layout (big-endian): magic "PI" (2 bytes), version (1), frame type (1), database index (2),
payload length (4), payload. Query payloads are one byte per entry, answer payloads the raw
field symbols, error payloads an error code byte followed by a UTF-8 message.
"""

from dataclasses import dataclass
from enum import IntEnum
import logging
import struct
from typing import BinaryIO

from ..errors import MalformedFrame

logger = logging.getLogger(__name__)

MAGIC = b"PI"
VERSION = 1
HEADER = struct.Struct(">2sBBHI")
MAX_PAYLOAD = 1 << 20


class FrameType(IntEnum):
    QUERY = 0
    ANSWER = 1
    ERROR = 2


class ErrorCode(IntEnum):
    MALFORMED_FRAME = 1
    INVALID_QUERY = 2
    WRONG_DATABASE = 3
    INTERNAL = 4


@dataclass(frozen=True)
class WireFrame:
    frame_type: FrameType
    db_index: int
    payload: bytes = b""

    @property
    def error(self) -> tuple[ErrorCode, str]:
        """(code, message) of an error frame."""
        if self.frame_type is not FrameType.ERROR or not self.payload:
            raise MalformedFrame("not an error frame")
        try:
            code = ErrorCode(self.payload[0])
        except ValueError:
            code = ErrorCode.INTERNAL
        return code, self.payload[1:].decode("utf-8", errors="replace")


def error_frame(db_index: int, code: ErrorCode, message: str) -> WireFrame:
    return WireFrame(FrameType.ERROR, db_index, bytes([code]) + message.encode("utf-8"))


def encode_frame(frame: WireFrame) -> bytes:
    if not 0 <= frame.db_index < 1 << 16:
        raise MalformedFrame(f"database index {frame.db_index} does not fit in two bytes")
    if len(frame.payload) > MAX_PAYLOAD:
        raise MalformedFrame(f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}")
    header = HEADER.pack(MAGIC, VERSION, int(frame.frame_type), frame.db_index, len(frame.payload))
    return header + frame.payload


def _parse_header(header: bytes) -> tuple[FrameType, int, int]:
    magic, version, frame_type, db_index, length = HEADER.unpack(header)
    if magic != MAGIC:
        raise MalformedFrame(f"bad magic {magic!r}")
    if version != VERSION:
        raise MalformedFrame(f"unsupported version {version}")
    try:
        frame_type = FrameType(frame_type)
    except ValueError:
        raise MalformedFrame(f"unknown frame type {frame_type}") from None
    if length > MAX_PAYLOAD:
        raise MalformedFrame(f"declared payload of {length} bytes exceeds {MAX_PAYLOAD}")
    return frame_type, db_index, length


def decode_frame(data: bytes) -> WireFrame:
    """
    Decode exactly one frame.

    Raises:
        MalformedFrame: on a short header, bad magic/version/type, or a payload length that
            does not match the bytes supplied
    """
    if len(data) < HEADER.size:
        raise MalformedFrame(
            f"frame of {len(data)} bytes is shorter than the {HEADER.size}-byte header"
        )
    frame_type, db_index, length = _parse_header(data[: HEADER.size])
    payload = data[HEADER.size :]
    if len(payload) != length:
        raise MalformedFrame(
            f"header declares {length} payload bytes, frame carries {len(payload)}"
        )
    return WireFrame(frame_type, db_index, bytes(payload))


def read_frame(stream: BinaryIO) -> WireFrame | None:
    """
    Read one frame from a binary stream; None on a clean end of stream.

    Raises:
        MalformedFrame: on a truncated or invalid frame
    """
    header = stream.read(HEADER.size)
    if not header:
        return None
    if len(header) < HEADER.size:
        raise MalformedFrame(f"stream ended inside a frame header ({len(header)} bytes)")
    frame_type, db_index, length = _parse_header(header)
    payload = stream.read(length) if length else b""
    if len(payload) != length:
        raise MalformedFrame(f"stream ended after {len(payload)} of {length} payload bytes")
    return WireFrame(frame_type, db_index, payload)
