"""Matrix local systems over Artin groups of types A and B."""

from __future__ import annotations

from ..exact_linalg import IntMatrix, snf
from ..surface_rep.twists import RelationError
from .groups import CoxeterSpec


def _alternating(x: IntMatrix, y: IntMatrix, m: int) -> IntMatrix:
    out = IntMatrix.identity(x.nrows)
    for i in range(m):
        out = out * (x if i % 2 == 0 else y)
    return out


class LocalSystem:
    """An integer matrix representation of the Artin generators.

    The defining Artin relations (length m(s, s') alternating products
    agree) and unimodularity of each generator are hard postconditions.
    """

    def __init__(self, spec: CoxeterSpec, actions, dimension: int | None = None):
        actions = tuple(actions)
        if len(actions) != spec.rank:
            raise ValueError(f"need {spec.rank} generator actions")
        dims = {m.nrows for m in actions} | {m.ncols for m in actions}
        if dimension is not None:
            dims.add(dimension)
        if len(dims) > 1:
            raise ValueError("generator actions must share one dimension")
        self.spec = spec
        self.dimension = dims.pop() if dims else 0
        self.actions = actions
        self._check()

    def _check(self):
        for g, m in enumerate(self.actions):
            s = snf(m)
            if s.rank != self.dimension or any(v != 1 for v in s.divisors):
                raise RelationError(f"rho(s{g}) is not invertible over the integers")
        for i in range(len(self.actions)):
            for j in range(i + 1, len(self.actions)):
                m = self.spec.coxeter_m(i, j)
                lhs = _alternating(self.actions[i], self.actions[j], m)
                rhs = _alternating(self.actions[j], self.actions[i], m)
                if lhs != rhs:
                    raise RelationError(
                        f"Artin relation of order {m} fails for (s{i}, s{j})")

    def action(self, g: int) -> IntMatrix:
        return self.actions[g]

    def evaluate_word(self, word) -> IntMatrix:
        out = IntMatrix.identity(self.dimension)
        for g in word:
            out = out * self.actions[g]
        return out


def trivial_system(spec: CoxeterSpec, dim: int = 1) -> LocalSystem:
    return LocalSystem(spec, [IntMatrix.identity(dim)] * spec.rank,
                       dimension=dim)


T_VARIANTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def companion_t_matrix(d: int) -> IntMatrix:
    """Companion matrix C of the variable t in Z[t]/(1 - (-t)^d).

    C shifts the power basis and wraps with the sign (-1)^d, so that
    1 - (-C)^d = 0 holds as a matrix identity.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    ent = {(j + 1, j): 1 for j in range(d - 1)}
    ent[(0, d - 1)] = (-1) ** d
    return IntMatrix(d, d, ent)


def t_local_system(n: int, d: int, variant: int = 0) -> LocalSystem:
    """Type-B local system of rank d realizing the quotient module of t.

    The special generator acts by the companion matrix of t up to sign and
    the type-A generators act by a global sign, per the chosen variant in
    ``T_VARIANTS`` (s0 sign, s_i sign).
    """
    if not 0 <= variant < len(T_VARIANTS):
        raise ValueError(f"variant must be in 0..{len(T_VARIANTS) - 1}")
    s0_sign, si_sign = T_VARIANTS[variant]
    spec = CoxeterSpec("B", n)
    c = companion_t_matrix(d)
    s0 = c if s0_sign == 1 else -c
    si = IntMatrix.identity(d) if si_sign == 1 else -IntMatrix.identity(d)
    return LocalSystem(spec, [s0] + [si] * (n - 1))
