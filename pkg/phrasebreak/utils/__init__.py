from collections.abc import Iterable


def listify(param):
    """
    Converts the parameter to a list. If it's an iterable, converts it to a list.
    If it's a string, bytes or object, returns a 1-element listing containing it.
    If it's None, returns an empty list.
    """
    if param is None:
        return []
    elif isinstance(param, Iterable) and not isinstance(param, (str, bytes)):
        return list(param)
    else:
        return [param]


def chunk_list(lst, n):
    """
    Split a list into n-sized chunks. The last chunk may be shorter.
    """
    lst = list(lst)
    return [lst[i : i + n] for i in range(0, len(lst), n)]


def largest_remainder_counts(fractions, total):
    """
    Splits ``total`` into integer counts proportional to ``fractions``,
    distributing the remainder to the largest fractional parts (ties go
    to the earlier entry). The counts always sum to ``total``.
    """
    weight = float(sum(fractions))
    assert weight > 0, "fractions must not all be zero"
    exact = [total * f / weight for f in fractions]
    counts = [int(x) for x in exact]
    order = sorted(range(len(exact)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[: total - sum(counts)]:
        counts[i] += 1
    return counts
