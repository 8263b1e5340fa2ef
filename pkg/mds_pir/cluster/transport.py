# cluster/transport.py
"""Ways for a client to exchange one frame with one node. Both speak raw frame bytes."""

import logging
import socket

from ..errors import NodeUnreachable
from .node import DatabaseNode
from .wire import encode_frame, read_frame

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 5.0


class InProcessTransport:
    """Calls the node directly."""

    def __init__(self, node: DatabaseNode):
        self.node = node

    def exchange(self, data: bytes) -> bytes:
        return self.node.handle_frame(data)


class SocketTransport:
    """One TCP connection per exchange."""

    def __init__(self, endpoint: tuple[str, int], timeout: float = DEFAULT_TIMEOUT):
        self.endpoint = endpoint
        self.timeout = timeout

    def exchange(self, data: bytes) -> bytes:
        """
        Raises:
            NodeUnreachable: if the connection fails or closes before a full frame arrives
        """
        host, port = self.endpoint
        try:
            with socket.create_connection(self.endpoint, timeout=self.timeout) as sock:
                sock.sendall(data)
                with sock.makefile("rb") as stream:
                    frame = read_frame(stream)
        except OSError as e:
            logger.error(f"Exchange with {host}:{port} failed: {e}")
            raise NodeUnreachable(f"node at {host}:{port} unreachable: {e}") from e

        if frame is None:
            raise NodeUnreachable(f"node at {host}:{port} closed the connection without answering")
        return encode_frame(frame)
