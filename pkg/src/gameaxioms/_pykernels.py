"""Pure-Python integer kernels.

Every routine here has a twin in ``_ckernels.pyx``; the two must agree
exactly on all inputs. Values are Python ints (arbitrary precision).
"""

from math import gcd


def common_denominator(values):
    """Scale a sequence of Fractions to integers over one denominator.

    Returns ``(nums, den)`` with ``values[k] == nums[k] / den`` and ``den``
    the least common denominator.
    """
    den = 1
    for v in values:
        d = v.denominator
        if den % d:
            den = den // gcd(den, d) * d
    return [v.numerator * (den // v.denominator) for v in values], den


def dot(xs, ys):
    total = 0
    for x, y in zip(xs, ys):
        if x and y:
            total += x * y
    return total


def matvec(rows, ys):
    out = []
    for row in rows:
        total = 0
        for x, y in zip(row, ys):
            if x and y:
                total += x * y
        out.append(total)
    return out


def outer_flat(vectors):
    """Flattened outer product, last vector varying fastest."""
    acc = [1]
    for vec in vectors:
        acc = [a * v for a in acc for v in vec]
    return acc


def pivot(rows, r, s, d):
    """Fraction-free (Bareiss/Edmonds) pivot on ``rows[r][s]``, in place.

    ``d`` is the previous pivot element. Every row other than ``r`` becomes
    ``(row * p - row[s] * rows[r]) / d`` with exact division; row ``r`` is
    left unchanged.
    """
    prow = rows[r]
    p = prow[s]
    width = len(prow)
    nz = [j for j in range(width) if prow[j]]
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[s]
        if f:
            new = [x * p for x in row]
            for j in nz:
                new[j] -= f * prow[j]
        else:
            new = [x * p if x else 0 for x in row]
        if d != 1:
            new = [x // d if x else 0 for x in new]
        rows[i] = new


def scaled_difference(xs, dx, ys, dy):
    """Numerators of ``ys/dy - xs/dx`` over the denominator ``dx * dy``."""
    return [y * dx - x * dy for x, y in zip(xs, ys)]


def own_action_dependence(diff, bases, stride, count):
    """First ``(k, a)`` where ``diff[bases[k] + a * stride] != diff[bases[k]]``.

    Returns None when every slice is constant along the player's own action.
    """
    for k, base in enumerate(bases):
        d0 = diff[base]
        for a in range(1, count):
            if diff[base + a * stride] != d0:
                return k, a
    return None
