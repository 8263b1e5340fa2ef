# mds_pir/params.py
"""System parameters shared by every scheme: (N, T, K, q) and the derived (p, r, s, M, L)."""

from dataclasses import dataclass
from enum import Enum
from math import gcd, lcm

from .config import DEFAULT_FIELD_ORDER
from .errors import InvalidParams


class SchemeTag(str, Enum):
    A = "a"
    B = "b"
    K2 = "k2"


class Regime(str, Enum):
    HIGH_RATE = "high"
    LOW_RATE = "low"
    BOTH = "both"


@dataclass(frozen=True)
class SystemParams:
    """Validated system parameters.

    ``n`` databases store ``k`` messages of ``l`` symbols each; any ``t`` databases recover
    everything. ``n - t = p * r`` and ``t = p * s`` with ``p = gcd(n, t)``. Each message is
    split into ``m`` sub-messages of ``t`` symbols.
    """

    n: int
    t: int
    k: int
    q: int
    p: int
    r: int
    s: int
    m: int
    l: int  # noqa: E741
    scheme: SchemeTag

    @property
    def key_modulus(self) -> int:
        """Alphabet size r + s of the random key entries (equals n / p)."""
        return self.r + self.s

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "k": self.k,
            "q": self.q,
            "p": self.p,
            "r": self.r,
            "s": self.s,
            "m": self.m,
            "l": self.l,
            "scheme": self.scheme.value,
        }


def derive(
    n: int,
    t: int,
    k: int,
    q: int = DEFAULT_FIELD_ORDER,
    scheme: SchemeTag | str = SchemeTag.A,
) -> SystemParams:
    """
    Validate raw parameters and derive p, r, s, M and L.

    Args:
        n: Number of databases N
        t: MDS recovery threshold T
        k: Number of messages K
        q: Field order
        scheme: Scheme tag; K2 uses L = T, A and B use L = lcm(N-T, T)

    Returns:
        SystemParams

    Raises:
        InvalidParams: naming the failed constraint
    """
    scheme = _parse_scheme(scheme)

    for name, value in [("n", n), ("t", t), ("k", k), ("q", q)]:
        if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
            raise InvalidParams(f"{name} must be a positive integer, got {value!r}")
    if t >= n:
        raise InvalidParams(f"t must be less than n (0 < t < n), got t={t}, n={n}")
    if q < n:
        raise InvalidParams(f"field order q={q} must be at least n={n} for an MDS generator")

    p = gcd(n, t)
    r = (n - t) // p
    s = t // p

    if scheme is SchemeTag.K2:
        if k != 2:
            raise InvalidParams(f"the K=2 scheme requires k = 2, got k={k}")
        if 2 * t < n:
            raise InvalidParams(f"the K=2 scheme requires 2t >= n, got t={t}, n={n}")
        m = 1
    else:
        m = r

    return SystemParams(n=n, t=t, k=k, q=q, p=p, r=r, s=s, m=m, l=m * t, scheme=scheme)


def regime(params: SystemParams) -> Regime:
    """High rate iff s > r (T > N-T), low rate iff s < r, both iff r = s = 1."""
    if params.s > params.r:
        return Regime.HIGH_RATE
    if params.s < params.r:
        return Regime.LOW_RATE
    return Regime.BOTH


def min_message_size(n: int, t: int) -> int:
    """Minimum message size lcm(N-T, T) of capacity-achieving linear codes (for K > T/gcd)."""
    if not 0 < t < n:
        raise InvalidParams(f"need 0 < t < n, got t={t}, n={n}")
    return lcm(n - t, t)


def converse_applies(params: SystemParams) -> bool:
    """True when K > T/gcd(N,T), the range where lcm(N-T, T) is proven minimal."""
    return params.k > params.s


def baseline_message_sizes(n: int, t: int, k: int) -> dict[str, int]:
    """
    Message sizes of earlier capacity-achieving designs, for comparison with lcm(N-T, T).

    ``symmetrized`` is the size T*N^K of the fully symmetrized construction, and
    ``equal_answer_bound`` the lower bound T*(N/gcd(N,T))^(K-1) that holds when all answers
    must have the same length.
    """
    return {
        "symmetrized": t * n**k,
        "equal_answer_bound": t * (n // gcd(n, t)) ** (k - 1),
        "minimum": min_message_size(n, t),
    }


def auto_scheme(n: int, t: int) -> SchemeTag:
    """Construction-A when r = 1, Construction-B otherwise."""
    if not 0 < t < n:
        raise InvalidParams(f"need 0 < t < n, got t={t}, n={n}")
    r = (n - t) // gcd(n, t)
    return SchemeTag.A if r == 1 else SchemeTag.B


def _parse_scheme(scheme: SchemeTag | str) -> SchemeTag:
    if isinstance(scheme, SchemeTag):
        return scheme
    try:
        return SchemeTag(str(scheme).lower())
    except ValueError:
        valid = [tag.value for tag in SchemeTag]
        raise InvalidParams(f"scheme must be one of {valid}, got '{scheme}'") from None
