# cluster/deployment.py

from contextlib import contextmanager
from enum import Enum
import logging
from pathlib import Path
from typing import Iterator

import numpy as np

from ..config import NODE_HOST
from ..field import FieldSpec
from ..mds import MessageSet, Shard, encode_storage
from ..schemes import PirScheme
from .client import RetrievalClient
from .node import DatabaseNode
from .server import serve
from .transport import InProcessTransport, SocketTransport

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    IN_PROCESS = "in-process"
    WIRE = "wire"


@contextmanager
def deploy(
    scheme: PirScheme,
    msgs: MessageSet,
    mode: Mode | str = Mode.IN_PROCESS,
    host: str = NODE_HOST,
) -> Iterator[RetrievalClient]:
    """
    Encode ``msgs`` onto N nodes and yield a client wired to them.

    In wire mode every node listens on loopback for the duration of the block.
    """
    mode = Mode(mode)
    shards = encode_storage(scheme.code, msgs)
    nodes = [DatabaseNode(shard.db_index, shard, scheme) for shard in shards]

    if mode is Mode.IN_PROCESS:
        yield RetrievalClient(scheme, [InProcessTransport(node) for node in nodes], reference=msgs)
        return

    servers = [serve(node, host) for node in nodes]
    try:
        transports = [SocketTransport(server.endpoint) for server in servers]
        yield RetrievalClient(scheme, transports, reference=msgs)
    finally:
        for server in servers:
            server.shutdown()
            server.server_close()
        logger.debug(f"Stopped {len(servers)} node servers")


# ============================================================================
# Shard persistence
# ============================================================================


def save_shard(shard: Shard, path: Path | str) -> Path:
    """Write the K x M symbol grid of ``shard`` as a .npy file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.save(path, np.asarray(shard.cells.view(np.ndarray), dtype=np.int64))
    logger.debug(f"Saved shard {shard.db_index} to {path}")
    return path


def load_shard(path: Path | str, db_index: int, field: FieldSpec) -> Shard:
    """Read a grid written by ``save_shard`` back into a shard over ``field``."""
    cells = np.load(Path(path))
    if cells.ndim != 2:
        raise ValueError(f"shard file {path} holds a {cells.ndim}-d array, expected 2-d")
    return Shard(db_index=db_index, cells=field.array(cells))
