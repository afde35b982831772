"""Double description method for pointed cones ``{y : A y >= 0}``.

Works on integer data (rows are scaled to integers by the caller) so that
every intermediate ray stays a primitive integer vector.  Adjacency uses the
combinatorial test on zero sets, evaluated with bitsets.
"""
from __future__ import annotations

from .errors import InputError
from .linalg import independent_rows, solve
from .rational import Q, primitive, primitive_int


def _dot(a, r):
    s = 0
    for x, y in zip(a, r):
        if x and y:
            s += x * y
    return s


def extreme_rays(A, order: str = "satisfied") -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : A y >= 0}``.

    ``A`` is a list of integer rows of common length D and must have rank D.
    ``order`` selects the insertion order of the non-basis rows:
    ``"satisfied"`` sorts them by decreasing number of initial rays that
    already satisfy them, ``"index"`` keeps the input order.
    """
    if not A:
        raise InputError("empty constraint matrix")
    D = len(A[0])
    basis = independent_rows(A)
    if len(basis) < D:
        raise InputError("cone is not pointed (constraint matrix rank deficient)")

    # initial simplicial cone: columns of the inverse of the basis rows
    AB = [A[i] for i in basis]
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    for k in range(D):
        rhs = [1 if t == k else 0 for t in range(D)]
        sol = solve(AB, rhs)
        rays.append(primitive(sol))
        masks.append(sum(1 << basis[t] for t in range(D) if t != k))

    rest = [i for i in range(len(A)) if i not in set(basis)]
    if order == "satisfied":
        score = {i: sum(1 for r in rays if _dot(A[i], r) >= 0) for i in rest}
        rest.sort(key=lambda i: (-score[i], i))
    elif order != "index":
        raise InputError(f"unknown row order {order!r}")

    processed = set(basis)
    for i in rest:
        a = A[i]
        vals = [_dot(a, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        if not neg:
            bit = 1 << i
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            processed.add(i)
            continue
        # bitset of ray indices tight at each processed row
        tight: dict[int, int] = {}
        for t, m in enumerate(masks):
            mm = m
            while mm:
                low = mm & -mm
                row = low.bit_length() - 1
                tight[row] = tight.get(row, 0) | (1 << t)
                mm ^= low
        all_rays = (1 << len(rays)) - 1
        new_rays = []
        new_masks = []
        bit = 1 << i
        for t, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[t])
                new_masks.append(masks[t])
            elif v == 0:
                new_rays.append(rays[t])
                new_masks.append(masks[t] | bit)
        for p in pos:
            mp = masks[p]
            vp = vals[p]
            rp = rays[p]
            for n in neg:
                common = mp & masks[n]
                if common.bit_count() < D - 2:
                    continue
                acc = all_rays
                cm = common
                while cm:
                    low = cm & -cm
                    acc &= tight[low.bit_length() - 1]
                    cm ^= low
                    if acc.bit_count() <= 2:
                        break
                if acc.bit_count() > 2:
                    continue
                vn = vals[n]
                rn = rays[n]
                ray = primitive_int(tuple(vp * y - vn * x for x, y in zip(rp, rn)))
                new_rays.append(ray)
                new_masks.append(common | bit)
        rays = new_rays
        masks = new_masks
        processed.add(i)
    return rays


def integer_rows(rows) -> list[tuple[int, ...]]:
    """Scale rational rows to primitive integer rows (positive factor)."""
    return [primitive([Q(x) for x in r]) for r in rows]
