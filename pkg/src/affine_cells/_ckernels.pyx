"""Compiled twins of the functions in _pykernels (same signatures, same results)."""


cdef inline tuple _right_simple(tuple w, int k):
    cdef int n = len(w)
    cdef list lst = list(w)
    if k == 0:
        lst[0] = <long>w[n - 1] - n
        lst[n - 1] = <long>w[0] + n
    else:
        lst[k - 1] = w[k]
        lst[k] = w[k - 1]
    return tuple(lst)


cdef inline tuple _left_simple(tuple w, int k):
    cdef int n = len(w)
    cdef int k1 = (k + 1) % n
    cdef long x, r
    cdef list out = []
    for obj in w:
        x = obj
        r = x % n
        if r < 0:
            r += n
        if r == k:
            out.append(x + 1)
        elif r == k1:
            out.append(x - 1)
        else:
            out.append(x)
    return tuple(out)


cdef inline bint _has_left_descent(tuple w, int k):
    cdef int n = len(w)
    cdef long pos_k = 0, pos_k1 = 0, x, c, r
    cdef int target = k if k else n
    cdef int i
    for i in range(n):
        x = w[i]
        # floor division and residue in 1..n
        c = (x - 1) // n
        r = (x - 1) - c * n + 1
        if r == target:
            pos_k = (i + 1) - c * n - (n if k == 0 else 0)
        if r == k + 1:
            pos_k1 = (i + 1) - c * n
    return pos_k > pos_k1


cdef inline void _add_shifted(dict acc, dict src, long shift, long factor):
    cdef long e, v
    for key, a in src.items():
        e = <long>key + shift
        v = acc.get(e, 0) + <long>a * factor
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def t_right_mul_simple(dict elem, int k):
    cdef dict out = {}
    cdef dict tgt
    cdef tuple z, zs
    cdef int n
    cdef bint descent
    for key, c in elem.items():
        z = key
        n = len(z)
        zs = _right_simple(z, k)
        if k == 0:
            descent = <long>z[n - 1] - n > <long>z[0]
        else:
            descent = <long>z[k - 1] > <long>z[k]
        if descent:
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


def t_accumulate(dict acc, dict elem, dict coeff):
    cdef dict tgt
    for z, c in elem.items():
        tgt = acc.setdefault(z, {})
        for e1, a1 in coeff.items():
            _add_shifted(tgt, c, e1, a1)
        if not tgt:
            del acc[z]


def kl_column(interval, int k, dict col_v, list mu_terms):
    cdef dict out = {}
    cdef list acc
    cdef tuple x, sx, p
    cdef int c, i, need, shift
    cdef long mu
    for obj in interval:
        x = obj
        sx = _left_simple(x, k)
        c = 1 if _has_left_descent(x, k) else 0
        acc = []
        p = col_v.get(sx)
        if p is not None:
            need = len(p) + 1 - c
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i in range(len(p)):
                acc[i + 1 - c] += p[i]
        p = col_v.get(x)
        if p is not None:
            need = len(p) + c
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i in range(len(p)):
                acc[i + c] += p[i]
        for col_z, mu_obj, shift_obj in mu_terms:
            p = (<dict>col_z).get(x)
            if p is None:
                continue
            mu = mu_obj
            shift = shift_obj
            need = len(p) + shift
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i in range(len(p)):
                acc[i + shift] -= mu * <long>p[i]
        while acc and acc[len(acc) - 1] == 0:
            acc.pop()
        if acc:
            out[x] = tuple(acc)
    return out
