"""Pure-Python dense coefficient kernels over Z/n.

Inputs are lists of residues in ``[0, n)``; outputs are untrimmed lists of
residues. Same signatures as the compiled ``_ckernels`` module.
"""


def mul_mod(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % n for c in out]


def add_mod(a, b, n):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % n
    return out


def sub_mod(a, b, n):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % n
    return out


def scale_mod(a, c, n):
    return [x * c % n for x in a]
