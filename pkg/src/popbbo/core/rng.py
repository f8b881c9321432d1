"""Labeled random-number streams derived from one master seed.

Every stochastic draw an optimizer makes comes from a stream addressed by
(master_seed, label).  Two streams with the same address produce identical
sequences; distinct labels (or seeds) give statistically independent
sequences.  Determinism is promised within this implementation, not across
libraries or numpy versions.
"""

import hashlib

import numpy as np

from .errors import InvalidOption

_MAX_SEED = 2**64


def _label_words(label: str):
    """Hash a stream label into four 32-bit entropy words."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]


class RngStream:
    """A deterministic substream of a master seed, addressed by a label."""

    def __init__(self, master_seed: int, stream_label: str):
        if not stream_label:
            raise InvalidOption("stream label must be a non-empty string")
        master_seed = int(master_seed)
        if not 0 <= master_seed < _MAX_SEED:
            raise InvalidOption(
                f"master seed must be a 64-bit unsigned integer, got {master_seed}"
            )
        self.master_seed = master_seed
        self.stream_label = stream_label
        seq = np.random.SeedSequence([master_seed, *_label_words(stream_label)])
        self._generator = np.random.default_rng(seq)

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def __getattr__(self, name):
        # Delegate draw methods (normal, uniform, integers, permutation, ...)
        # to the underlying numpy Generator.
        if name.startswith("_"):
            raise AttributeError(name)
        generator = self.__dict__.get("_generator")
        if generator is None:
            raise AttributeError(name)
        return getattr(generator, name)

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_label={self.stream_label!r})"


def derive_stream(master_seed: int, stream_label: str) -> RngStream:
    """Return the deterministic stream addressed by (master_seed, stream_label)."""
    return RngStream(master_seed, stream_label)
