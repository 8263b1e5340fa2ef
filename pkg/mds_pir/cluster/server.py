# cluster/server.py
"""Loopback TCP serving of database nodes, one thread per connection."""

import logging
import socketserver
import threading

from ..config import NODE_BASE_PORT, NODE_HOST
from ..errors import MalformedFrame
from .node import DatabaseNode
from .wire import ErrorCode, encode_frame, error_frame, read_frame

logger = logging.getLogger(__name__)


class _FrameHandler(socketserver.StreamRequestHandler):
    """Answers frames on one connection, in order, until the client closes it."""

    def handle(self):
        node: DatabaseNode = self.server.node
        while True:
            try:
                frame = read_frame(self.rfile)
            except MalformedFrame as e:
                logger.warning(
                    f"Node {node.db_index}: malformed frame from {self.client_address}: {e}"
                )
                error = error_frame(node.db_index, ErrorCode.MALFORMED_FRAME, str(e))
                self.wfile.write(encode_frame(error))
                return
            if frame is None:
                return
            self.wfile.write(encode_frame(node.handle(frame)))
            self.wfile.flush()


class NodeServer(socketserver.ThreadingTCPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, node: DatabaseNode, host: str, port: int):
        self.node = node
        super().__init__((host, port), _FrameHandler)

    @property
    def endpoint(self) -> tuple[str, int]:
        host, port = self.server_address[:2]
        return host, port


def serve(node: DatabaseNode, host: str = NODE_HOST, port: int | None = None) -> NodeServer:
    """
    Start serving ``node`` on a background thread.

    Args:
        node: Database node to expose
        host: Listen address
        port: Listen port; defaults to NODE_BASE_PORT + db_index, or an ephemeral port when the
            base port is 0

    Returns:
        The running server; call ``shutdown()`` and ``server_close()`` to stop it
    """
    if port is None:
        port = NODE_BASE_PORT + node.db_index if NODE_BASE_PORT else 0
    server = NodeServer(node, host, port)
    thread = threading.Thread(
        target=server.serve_forever, name=f"pir-node-{node.db_index}", daemon=True
    )
    thread.start()
    logger.debug(f"Node {node.db_index} listening on {server.endpoint[0]}:{server.endpoint[1]}")
    return server
