"""Monomial orders.

A :class:`TermOrder` turns an exponent tuple into a sort key; comparing keys
compares monomials.  Blocks are given as tuples of variable *indices* so an
order is independent of variable names.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

Monomial = tuple  # tuple[int, ...]

KINDS = ("lex", "degrevlex", "block")


def _lex_key(m):
    return m


def _degrevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _block_keyfn(blocks) -> Callable:
    parts = []
    for idx, sub in blocks:
        idx = tuple(idx)
        if sub == "lex":
            parts.append((idx, True))
        elif sub == "degrevlex":
            parts.append((idx, False))
        else:
            raise ValueError(f"unknown sub-order {sub!r}")

    def key(m):
        out = []
        for idx, is_lex in parts:
            sub = [m[i] for i in idx]
            if is_lex:
                out.extend(sub)
            else:
                out.append(sum(sub))
                out.extend(-e for e in reversed(sub))
        return tuple(out)

    return key


@dataclass(frozen=True)
class TermOrder:
    """A total, multiplicative well-order on monomials.

    ``kind`` is one of ``lex``, ``degrevlex`` or ``block``.  For ``block``,
    ``blocks`` lists ``(variable indices, sub-order)`` from most to least
    significant; the blocks must partition the variables of the ring the
    order is used in.
    """

    kind: str = "degrevlex"
    blocks: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _fn: Callable = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block":
            if not self.blocks:
                raise ValueError("block order needs at least one block")
            blocks = tuple((tuple(idx), sub) for idx, sub in self.blocks)
            flat = [i for idx, _ in blocks for i in idx]
            if len(flat) != len(set(flat)):
                raise ValueError("blocks overlap")
            object.__setattr__(self, "blocks", blocks)
            fn = _block_keyfn(blocks)
        elif self.blocks:
            raise ValueError(f"{self.kind} order takes no blocks")
        else:
            fn = _lex_key if self.kind == "lex" else _degrevlex_key
        object.__setattr__(self, "_fn", fn)

    def key(self, m: Monomial):
        """Sort key: ``key(m1) < key(m2)`` iff ``m1 < m2`` in this order."""
        try:
            return self._cache[m]
        except KeyError:
            k = self._cache[m] = self._fn(m)
            return k

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def check_arity(self, n: int) -> None:
        if self.kind != "block":
            return
        flat = sorted(i for idx, _ in self.blocks for i in idx)
        if flat != list(range(n)):
            raise ValueError(f"block order does not partition {n} variables")

    def leading_block(self) -> tuple:
        """Indices of the most significant block (all variables otherwise)."""
        if self.kind == "block":
            return self.blocks[0][0]
        return ()

    def __str__(self):
        if self.kind != "block":
            return self.kind
        inner = "; ".join(f"{sub}{list(idx)}" for idx, sub in self.blocks)
        return f"block({inner})"


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def lex() -> TermOrder:
    return LEX


def degrevlex() -> TermOrder:
    return DEGREVLEX


def block(*blocks: tuple[Sequence[int], str]) -> TermOrder:
    """``block((idx1, "degrevlex"), (idx2, "degrevlex"), ...)``."""
    return TermOrder("block", tuple((tuple(i), s) for i, s in blocks))


def elimination_order(n: int, drop: Sequence[int], sub: str = "degrevlex") -> TermOrder:
    """Two-block order on ``n`` variables with ``drop`` in the leading block."""
    drop = tuple(sorted(set(drop)))
    rest = tuple(i for i in range(n) if i not in drop)
    if not drop:
        return DEGREVLEX if sub == "degrevlex" else LEX
    if not rest:
        return block((drop, sub))
    return block((drop, sub), (rest, sub))


def from_name(name: str) -> TermOrder:
    if name == "lex":
        return LEX
    if name in ("degrevlex", "grevlex"):
        return DEGREVLEX
    raise ValueError(f"unknown term order {name!r}")
