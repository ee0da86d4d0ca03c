"""Deterministic 64-bit random stream.

Every randomized routine in this package draws from one explicit stream so
that a run is reproducible from its seed alone.  The compiled kernels must
produce bit-identical draws, which rules out :mod:`random` and NumPy's
generators (their internals are not practical to mirror inside compiled
code).  Instead both sides implement the same small, well-known generator:

* state initialisation: splitmix64, applied four times to the user seed;
* core generator: xoshiro256** (public domain, Blackman & Vigna);
* bounded sampling: rejection against ``2**64 mod k``, which is exactly
  uniform and consumes an identical number of raw draws in every
  implementation.

All arithmetic is modulo ``2**64``.  The compiled twin of this class lives
in ``_kernels``; the test suite pins both to the same output stream.
"""

from __future__ import annotations

from .errors import PreconditionViolated

_MASK64 = 0xFFFFFFFFFFFFFFFF

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MUL2 = 0x94D049BB133111EB


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state and return ``(new_state, output)``."""
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _SPLITMIX_MUL1) & _MASK64
    z = ((z ^ (z >> 27)) * _SPLITMIX_MUL2) & _MASK64
    return state, z ^ (z >> 31)


class RngStream:
    """A seeded xoshiro256** stream of 64-bit words.

    Parameters
    ----------
    seed : int
        Any integer; it is reduced modulo ``2**64``.  Equal seeds give
        equal streams.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int) -> None:
        x = seed & _MASK64
        x, s0 = _splitmix64(x)
        x, s1 = _splitmix64(x)
        x, s2 = _splitmix64(x)
        x, s3 = _splitmix64(x)
        if (s0 | s1 | s2 | s3) == 0:
            # xoshiro must not start at the all-zero fixed point.  splitmix64
            # cannot actually emit four zeros in a row; this keeps the
            # constructor total anyway.
            s0 = _SPLITMIX_GAMMA
        self._s0 = s0
        self._s1 = s1
        self._s2 = s2
        self._s3 = s3

    @property
    def state(self) -> tuple[int, int, int, int]:
        """Current generator state as four 64-bit words."""
        return (self._s0, self._s1, self._s2, self._s3)

    def set_state(self, state: tuple[int, int, int, int]) -> None:
        """Restore a state previously obtained from :attr:`state`.

        Used to hand the stream to a compiled routine and adopt the
        advanced state afterwards, keeping one logical stream.

        Raises
        ------
        PreconditionViolated
            If the words are out of 64-bit range or all zero.
        """
        s0, s1, s2, s3 = (int(w) for w in state)
        for w in (s0, s1, s2, s3):
            if not 0 <= w <= _MASK64:
                raise PreconditionViolated(f"state word out of 64-bit range: {w}")
        if (s0 | s1 | s2 | s3) == 0:
            raise PreconditionViolated("all-zero state is not reachable")
        self._s0 = s0
        self._s1 = s1
        self._s2 = s2
        self._s3 = s3

    def next_u64(self) -> int:
        """Return the next raw 64-bit word of the stream."""
        s0 = self._s0
        s1 = self._s1
        s2 = self._s2
        s3 = self._s3
        result = (s1 * 5) & _MASK64
        result = (((result << 7) | (result >> 57)) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s0 = s0
        self._s1 = s1
        self._s2 = s2
        self._s3 = s3
        return result

    def uniform_below(self, k: int) -> int:
        """Return an exactly uniform integer in ``0..k-1``.

        Raw words below ``2**64 mod k`` are rejected, leaving a multiple of
        ``k`` accepted words, so the result has no modulo bias.

        Parameters
        ----------
        k : int
            Exclusive upper bound; ``1 <= k <= 2**64``.

        Raises
        ------
        PreconditionViolated
            If `k` is outside the supported range.
        """
        if not 1 <= k <= 1 << 64:
            raise PreconditionViolated(f"uniform_below needs 1 <= k <= 2**64, got {k}")
        threshold = ((1 << 64) - k) % k  # == 2**64 mod k
        while True:
            u = self.next_u64()
            if u >= threshold:
                return u % k
