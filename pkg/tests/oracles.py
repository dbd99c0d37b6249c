"""Independent reference computations used by several test modules."""

from fractions import Fraction

from hopfdual.grading import monomials
from hopfdual.poly import Poly


def naive_rank(rows):
    M = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c] / M[r][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def _basis(nparts, degs):
    """Basis of tuples of polynomials: part ``k`` is homogeneous of degree ``degs[k]``."""
    out = []
    for k in range(nparts):
        for e in monomials(2, degs[k]):
            out.append((k, e))
    return out


def _matrix(src, tgt, image):
    index = {b: i for i, b in enumerate(tgt)}
    rows = [[Fraction(0)] * len(src) for _ in tgt]
    for c, b in enumerate(src):
        for k, p in enumerate(image(b)):
            for e, v in p.terms.items():
                rows[index[(k, e)]][c] += v
    return rows


def _rank(src, tgt, image):
    if not src or not tgt:
        return 0
    return naive_rank(_matrix(src, tgt, image))


def plane_poisson_tables(p: Poly, window):
    """Lichnerowicz cohomology and Koszul-Brylinski homology of ``{x, y} = p``, per weight.

    Polyvectors: ``f``, ``a d_x + b d_y``, ``h d_x^d_y`` with weight ``deg - k``.
    Forms: ``f``, ``a dx + b dy``, ``h dx^dy`` with weight ``deg + k``.
    """
    v = p.variables
    t = max(p.degrees()) if p else 0
    s = t - 2
    zero = Poly.zero(v)

    def mono(e):
        return Poly.monomial(v, e)

    def d0(b):  # f -> (p f_y, -p f_x)
        f = mono(b[1])
        return [p * f.derivative(1), -(p * f.derivative(0))]

    def d1(b):  # X -> X(p) - p div X
        k, e = b
        a = mono(e) if k == 0 else zero
        c = mono(e) if k == 1 else zero
        return [a * p.derivative(0) + c * p.derivative(1) - p * (a.derivative(0) + c.derivative(1))]

    def b1(b):  # (f, g) -> p (g_x - f_y)
        k, e = b
        f = mono(e) if k == 0 else zero
        g = mono(e) if k == 1 else zero
        return [p * (g.derivative(0) - f.derivative(1))]

    def b2(b):  # h -> -(ph)_x dx - (ph)_y dy
        h = mono(b[1])
        return [-(p * h).derivative(0), -(p * h).derivative(1)]

    def co_space(k, w):
        return _basis([1, 2, 1][k], [w + k] * [1, 2, 1][k]) if 0 <= k <= 2 else []

    def ho_space(k, w):
        return _basis([1, 2, 1][k], [w - k] * [1, 2, 1][k]) if 0 <= k <= 2 else []

    co_maps = {0: d0, 1: d1}
    ho_maps = {1: b1, 2: b2}

    def co_rank(k, w):
        if k not in co_maps:
            return 0
        return _rank(co_space(k, w), co_space(k + 1, w + s), co_maps[k])

    def ho_rank(k, w):
        if k not in ho_maps:
            return 0
        return _rank(ho_space(k, w), ho_space(k - 1, w + s), ho_maps[k])

    co, ho = {}, {}
    for w in range(window[0], window[1] + 1):
        for k in range(3):
            co[(k, w)] = len(co_space(k, w)) - co_rank(k, w) - co_rank(k - 1, w - s)
            ho[(k, w)] = len(ho_space(k, w)) - ho_rank(k, w) - ho_rank(k + 1, w - s)
    return co, ho
