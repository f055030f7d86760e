"""Pure-Python hot loops for the Hecke module.

Every function here has a twin with the same signature in the compiled
``_ckernels`` extension; ``affine_cells.kernels`` picks one at import.

Conventions: a window is a tuple of ints; a Laurent coefficient is a dict
{exponent: nonzero int}; a KL polynomial is a tuple of ints in v = q^2.
"""

from __future__ import annotations

Window = tuple


def _right_simple(w: Window, k: int) -> Window:
    n = len(w)
    lst = list(w)
    if k == 0:
        lst[0], lst[n - 1] = w[n - 1] - n, w[0] + n
    else:
        lst[k - 1], lst[k] = w[k], w[k - 1]
    return tuple(lst)


def _left_simple(w: Window, k: int) -> Window:
    n = len(w)
    k1 = (k + 1) % n
    out = []
    for x in w:
        r = x % n
        if r == k:
            out.append(x + 1)
        elif r == k1:
            out.append(x - 1)
        else:
            out.append(x)
    return tuple(out)


def _has_left_descent(w: Window, k: int) -> bool:
    n = len(w)
    pos_k = pos_k1 = 0
    target = k if k else n
    for i, x in enumerate(w, 1):
        c, r = divmod(x - 1, n)
        r += 1
        if r == target:
            pos_k = i - c * n - (n if k == 0 else 0)
        if r == k + 1:
            pos_k1 = i - c * n
    return pos_k > pos_k1


def _add_shifted(acc: dict, src: dict, shift: int, factor: int) -> None:
    for e, a in src.items():
        e += shift
        v = acc.get(e, 0) + a * factor
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def t_right_mul_simple(elem: dict, k: int) -> dict:
    """elem * T_{s_k} in the T-basis, using (T_s - q^2)(T_s + 1) = 0."""
    out: dict = {}
    n = None
    for z, c in elem.items():
        if n is None:
            n = len(z)
        zs = _right_simple(z, k)
        if k == 0:
            descent = z[n - 1] - n > z[0]
        else:
            descent = z[k - 1] > z[k]
        if descent:
            # T_z T_s = (q^2 - 1) T_z + q^2 T_{zs}
            tgt = out.setdefault(z, {})
            _add_shifted(tgt, c, 2, 1)
            _add_shifted(tgt, c, 0, -1)
            if not tgt:
                del out[z]
            tgt = out.setdefault(zs, {})
            _add_shifted(tgt, c, 2, 1)
            if not tgt:
                del out[zs]
        else:
            tgt = out.setdefault(zs, {})
            _add_shifted(tgt, c, 0, 1)
            if not tgt:
                del out[zs]
    return out


def t_accumulate(acc: dict, elem: dict, coeff: dict) -> None:
    """acc += coeff * elem, both T-basis dicts, coeff a Laurent dict."""
    for z, c in elem.items():
        tgt = acc.setdefault(z, {})
        for e1, a1 in coeff.items():
            _add_shifted(tgt, c, e1, a1)
        if not tgt:
            del acc[z]


def kl_column(interval, k: int, col_v: dict, mu_terms: list) -> dict:
    """Column {x: P_{x,w}} for w = s_k v with v < w.

    mu_terms lists (col_z, mu, shift) for every z < v with s_k z < z and
    mu(z, v) != 0, where shift = (l(w) - l(z)) / 2.
    """
    out = {}
    for x in interval:
        sx = _left_simple(x, k)
        c = 1 if _has_left_descent(x, k) else 0
        acc: list = []
        p = col_v.get(sx)
        if p is not None:
            need = len(p) + 1 - c
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i, a in enumerate(p):
                acc[i + 1 - c] += a
        p = col_v.get(x)
        if p is not None:
            need = len(p) + c
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i, a in enumerate(p):
                acc[i + c] += a
        for col_z, mu, shift in mu_terms:
            p = col_z.get(x)
            if p is None:
                continue
            need = len(p) + shift
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i, a in enumerate(p):
                acc[i + shift] -= mu * a
        while acc and acc[-1] == 0:
            acc.pop()
        if acc:
            out[x] = tuple(acc)
    return out
