# cluster/__init__.py

from .client import RetrievalClient
from .deployment import Mode, deploy, load_shard, save_shard
from .node import DatabaseNode
from .server import NodeServer, serve
from .transcript import RetrievalTranscript, describe_key
from .transport import InProcessTransport, SocketTransport
from .wire import (
    ErrorCode,
    FrameType,
    WireFrame,
    decode_frame,
    encode_frame,
    error_frame,
    read_frame,
)

__all__ = [
    "DatabaseNode",
    "ErrorCode",
    "FrameType",
    "InProcessTransport",
    "Mode",
    "NodeServer",
    "RetrievalClient",
    "RetrievalTranscript",
    "SocketTransport",
    "WireFrame",
    "decode_frame",
    "deploy",
    "describe_key",
    "encode_frame",
    "error_frame",
    "load_shard",
    "read_frame",
    "save_shard",
    "serve",
]
