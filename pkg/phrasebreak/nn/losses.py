import numpy as np

from ..errors import DataError


def softmax(logits, axis=-1):
    shifted = logits - logits.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


def softmax_cross_entropy(logits, targets, class_weights=None):
    """
    Mean cross-entropy of ``softmax(logits)`` against integer targets.

    :param logits: ``(C,)`` or ``(N, C)`` array.
    :param targets: An ``int`` for 1-D logits, else ``(N,)`` ints.
    :param class_weights: Optional ``(C,)`` weights; the loss is then the
        weighted mean over samples.
    :returns: ``(loss, grad)`` with ``grad`` shaped like ``logits``.
    :raise DataError: if a target is not a valid class index.
    """
    logits = np.asarray(logits)
    single = logits.ndim == 1
    if single:
        logits = logits[None, :]
    targets = np.atleast_1d(np.asarray(targets, dtype=np.int64))
    n, n_classes = logits.shape
    if targets.shape != (n,):
        raise DataError("Expected {} targets, got {}".format(n, targets.shape))
    if n and (targets.min() < 0 or targets.max() >= n_classes):
        raise DataError("Target out of range for {} classes".format(n_classes))

    shifted = logits - logits.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_norm
    rows = np.arange(n)
    losses = -log_probs[rows, targets]

    if class_weights is None:
        weights = np.ones(n, dtype=logits.dtype)
    else:
        weights = np.asarray(class_weights, dtype=logits.dtype)[targets]
    total = weights.sum()
    if n == 0 or total == 0:
        return 0.0, np.zeros_like(logits[0] if single else logits)

    loss = float((weights * losses).sum() / total)
    grad = np.exp(log_probs)
    grad[rows, targets] -= 1
    grad *= (weights / total)[:, None]
    return loss, grad[0] if single else grad


def inverse_frequency_weights(targets, n_classes):
    """
    Weights ``n / (n_classes * count_c)`` per class; absent classes get 0.
    """
    counts = np.bincount(np.asarray(targets, dtype=np.int64), minlength=n_classes)
    n = counts.sum()
    weights = np.zeros(n_classes)
    present = counts > 0
    weights[present] = n / (n_classes * counts[present])
    return weights
