# cluster/client.py

from concurrent.futures import ThreadPoolExecutor, as_completed
import logging
from typing import Any, Protocol, Sequence

import numpy as np

from ..errors import DimensionMismatch, MalformedFrame, ReconstructionMismatch
from ..field import same_symbols
from ..mds import MessageSet
from ..schemes import PirScheme
from .transcript import RetrievalTranscript, describe_key
from .wire import HEADER, FrameType, WireFrame, decode_frame, encode_frame

logger = logging.getLogger(__name__)


class Transport(Protocol):
    def exchange(self, data: bytes) -> bytes: ...


class RetrievalClient:
    """
    Issues the N queries of a retrieval concurrently and reconstructs from the answers.

    With a ``reference`` message set every reconstruction is checked against the stored message.
    """

    def __init__(
        self,
        scheme: PirScheme,
        transports: Sequence[Transport],
        reference: MessageSet | None = None,
    ):
        if len(transports) != scheme.params.n:
            raise DimensionMismatch(f"need {scheme.params.n} transports, got {len(transports)}")
        self.scheme = scheme
        self.transports = list(transports)
        self.reference = reference

    def retrieve(self, k_star: int, rng: np.random.Generator) -> RetrievalTranscript:
        """Draw a fresh key from ``rng`` and retrieve message k*."""
        self.scheme.check_k_star(k_star)
        return self.retrieve_with_key(k_star, self.scheme.sample_key(rng))

    def retrieve_with_key(self, k_star: int, key: Any) -> RetrievalTranscript:
        """
        Raises:
            NodeUnreachable: if a node cannot be reached
            MalformedFrame: if a node answers with an error or an invalid frame
            ReconstructionMismatch: if the result differs from the reference message
        """
        scheme = self.scheme
        queries = scheme.queries(k_star, key)
        query_frames = [
            encode_frame(WireFrame(FrameType.QUERY, q.db_index, scheme.encode_query(q)))
            for q in queries
        ]
        answer_frames = self._exchange_all(query_frames)

        answers = [
            scheme.decode_answer(self._answer_payload(n, data), queries[n])
            for n, data in enumerate(answer_frames)
        ]
        recovered = scheme.reconstruct(answers, k_star, key)

        reference = self.reference
        if reference is not None and not same_symbols(recovered, reference.message(k_star)):
            logger.error(f"Reconstruction of message {k_star} differs from the stored message")
            raise ReconstructionMismatch(
                f"reconstructed message {k_star} does not match the stored message"
            )

        return RetrievalTranscript(
            params=scheme.params.as_dict(),
            scheme=scheme.name,
            k_star=k_star,
            key=describe_key(key),
            query_frames=query_frames,
            answer_frames=answer_frames,
            reconstructed=[int(symbol) for symbol in recovered],
            uploaded_bytes=sum(len(frame) - HEADER.size for frame in query_frames),
            downloaded_bytes=sum(len(frame) - HEADER.size for frame in answer_frames),
            downloaded_symbols=sum(len(answer) for answer in answers),
        )

    def _exchange_all(self, frames: list[bytes]) -> list[bytes]:
        """Send every frame concurrently; answers are collected in arrival order."""
        responses: dict[int, bytes] = {}
        with ThreadPoolExecutor(max_workers=len(frames)) as pool:
            futures = {
                pool.submit(transport.exchange, frame): n
                for n, (transport, frame) in enumerate(zip(self.transports, frames))
            }
            for future in as_completed(futures):
                responses[futures[future]] = future.result()
        return [responses[n] for n in range(len(frames))]

    @staticmethod
    def _answer_payload(n: int, data: bytes) -> bytes:
        frame = decode_frame(data)
        if frame.frame_type is FrameType.ERROR:
            code, message = frame.error
            raise MalformedFrame(f"database {n} returned {code.name}: {message}")
        if frame.frame_type is not FrameType.ANSWER or frame.db_index != n:
            raise MalformedFrame(
                f"expected an answer frame from database {n}, "
                f"got {frame.frame_type.name} from {frame.db_index}"
            )
        return frame.payload
