"""Fast nontriviality certificates through a homomorphism into SL(2, F_p).

Each generator is sent to a fixed pseudo-random matrix of determinant 1
modulo the Mersenne prime 2^61 - 1.  Removed generators go to the identity
matrix, so the map commutes with quotients.  If the image of a word is not
the identity, the word is certainly nontrivial; an identity image proves
nothing and callers must fall back to exact free reduction.
"""

from __future__ import annotations

import random

from .words import Concat, Inverse, Leaf, Power, WordExpr

P = (1 << 61) - 1
I2 = (1, 0, 0, 1)


def _mul(a, b):
    return (
        (a[0] * b[0] + a[1] * b[2]) % P,
        (a[0] * b[1] + a[1] * b[3]) % P,
        (a[2] * b[0] + a[3] * b[2]) % P,
        (a[2] * b[1] + a[3] * b[3]) % P,
    )


def _inv(a):
    return (a[3], -a[1] % P, -a[2] % P, a[0])


def _pow(a, e):
    if e < 0:
        a, e = _inv(a), -e
    out = I2
    while e:
        if e & 1:
            out = _mul(out, a)
        a = _mul(a, a)
        e >>= 1
    return out


class SL2Witness:
    def __init__(self, rank: int, seed: int = 0x51):
        rng = random.Random(seed)
        self.images = [I2]
        for _ in range(rank):
            while True:
                a, b, c = rng.randrange(1, P), rng.randrange(P), rng.randrange(P)
                # d chosen so that ad - bc = 1
                d = (1 + b * c) * pow(a, -1, P) % P
                m = (a, b, c, d)
                if m != I2:
                    break
            self.images.append(m)

    def image(self, w: WordExpr, mask: int) -> tuple:
        return self._eval(w, mask, {})

    def _eval(self, node, mask, memo):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Leaf):
            g = abs(node.letter)
            if not mask >> (g - 1) & 1:
                out = I2
            else:
                out = self.images[g] if node.letter > 0 else _inv(self.images[g])
        elif isinstance(node, Concat):
            out = I2
            for c in node.children:
                out = _mul(out, self._eval(c, mask, memo))
        elif isinstance(node, Inverse):
            out = _inv(self._eval(node.child, mask, memo))
        elif isinstance(node, Power):
            out = _pow(self._eval(node.child, mask, memo), node.exponent)
        else:
            raise TypeError(f"not a WordExpr node: {node!r}")
        memo[key] = out
        return out

    def certifies_nontrivial(self, w: WordExpr, mask: int) -> bool:
        return self.image(w, mask) != I2
