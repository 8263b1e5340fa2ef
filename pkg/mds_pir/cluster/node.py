# cluster/node.py

from dataclasses import dataclass
import logging

from ..errors import MalformedFrame, PirError
from ..mds import Shard
from ..schemes import PirScheme
from .wire import ErrorCode, FrameType, WireFrame, decode_frame, encode_frame, error_frame

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class DatabaseNode:
    """
    One database: an immutable shard and the scheme's answer function.

    Nodes only ever see query payloads, never the requested message index.
    """

    db_index: int
    shard: Shard
    scheme: PirScheme

    def __post_init__(self):
        if self.shard.db_index != self.db_index:
            raise ValueError(
                f"node {self.db_index} given the shard of database {self.shard.db_index}"
            )

    def answer_payload(self, payload: bytes) -> bytes:
        query = self.scheme.decode_query(payload, self.db_index)
        answer = self.scheme.answer(self.shard, query)
        return self.scheme.encode_answer(answer)

    def handle(self, frame: WireFrame) -> WireFrame:
        """Answer a query frame; every failure becomes an error frame."""
        if frame.frame_type is not FrameType.QUERY:
            return error_frame(
                self.db_index,
                ErrorCode.MALFORMED_FRAME,
                f"expected a query frame, got {frame.frame_type.name}",
            )
        if frame.db_index != self.db_index:
            return error_frame(
                self.db_index,
                ErrorCode.WRONG_DATABASE,
                f"query for database {frame.db_index} sent to {self.db_index}",
            )
        try:
            return WireFrame(FrameType.ANSWER, self.db_index, self.answer_payload(frame.payload))
        except MalformedFrame as e:
            logger.warning(f"Node {self.db_index}: rejected query: {e}")
            return error_frame(self.db_index, ErrorCode.INVALID_QUERY, str(e))
        except PirError as e:
            logger.error(f"Node {self.db_index}: failed to answer: {e}")
            return error_frame(self.db_index, ErrorCode.INTERNAL, str(e))
        except ValueError as e:
            logger.warning(f"Node {self.db_index}: unusable query payload: {e}")
            return error_frame(self.db_index, ErrorCode.INVALID_QUERY, str(e))

    def handle_frame(self, data: bytes) -> bytes:
        """Bytes in, bytes out; malformed input yields an error frame and the node stays usable."""
        try:
            frame = decode_frame(data)
        except MalformedFrame as e:
            logger.warning(f"Node {self.db_index}: malformed frame: {e}")
            return encode_frame(error_frame(self.db_index, ErrorCode.MALFORMED_FRAME, str(e)))
        return encode_frame(self.handle(frame))
