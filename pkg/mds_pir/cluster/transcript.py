# cluster/transcript.py

from dataclasses import dataclass
import json
from typing import Any

from ..schemes import RandomKey


def describe_key(key: Any) -> Any:
    """JSON-friendly form of a scheme key (RandomKey entries or a K=2 partition)."""
    if isinstance(key, RandomKey):
        return list(key.f)
    return key.as_dict()


@dataclass
class RetrievalTranscript:
    """Everything one retrieval put on and took off the wire."""

    params: dict
    scheme: str
    k_star: int
    key: Any
    query_frames: list[bytes]
    answer_frames: list[bytes]
    reconstructed: list[int]
    uploaded_bytes: int
    downloaded_bytes: int
    downloaded_symbols: int

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "scheme": self.scheme,
            "k_star": self.k_star,
            "key": self.key,
            "query_frames": [frame.hex() for frame in self.query_frames],
            "answer_frames": [frame.hex() for frame in self.answer_frames],
            "reconstructed": self.reconstructed,
            "uploaded_bytes": self.uploaded_bytes,
            "downloaded_bytes": self.downloaded_bytes,
            "downloaded_symbols": self.downloaded_symbols,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
