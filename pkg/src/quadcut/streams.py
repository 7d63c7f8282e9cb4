"""Counter-based random streams.

Each stream is a Philox generator keyed by the run seed plus a tuple of
integers (purpose tag, batch counter, member, ...), so any draw can be
reproduced without replaying the ones before it and the result never depends
on how work is split across workers.
"""

from __future__ import annotations

import numpy as np

MEMBER = 1
INIT = 2
EVO = 3
SEARCH_EVAL = 4


class Streams:
    def __init__(self, seed: int, prefix: tuple = ()):
        self.seed = int(seed)
        self.prefix = tuple(int(k) for k in prefix)

    def gen(self, *key) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=self.prefix + tuple(int(k) for k in key))
        return np.random.Generator(np.random.Philox(ss))

    def child(self, *key) -> "Streams":
        return Streams(self.seed, self.prefix + tuple(int(k) for k in key))

    def __repr__(self):
        return f"Streams(seed={self.seed}, prefix={self.prefix})"
