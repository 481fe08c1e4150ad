"""
Finite-difference verification of analytic gradients.
"""
import logging

import numpy as np


logger = logging.getLogger("phrasebreak.nn")


def grad_check(
    loss_and_grads,
    params,
    eps=1e-5,
    num_coords=200,
    seed=0,
    dtype=np.float64,
    abs_floor=1e-6,
    names=None,
):
    """
    Compares the analytic gradients of ``loss_and_grads`` with central
    differences on a random subsample of coordinates of each parameter.

    The parameters are promoted to ``dtype`` for the duration of the
    check, so the comparison measures the gradient code rather than
    ``float32`` rounding in the differences.

    :param loss_and_grads: Callable without arguments that zeroes the
        gradients of ``params``, runs forward and backward deterministically
        and returns the loss.
    :param ModelParams params: The parameters to perturb.
    :param float eps: Half the finite-difference step, sized for ``float64``.
    :param int num_coords: Coordinates checked per parameter (all if fewer).
    :param float abs_floor: Lower bound of the relative-error denominator.
    :param names: Optional subset of parameter names to check.
    :returns: The largest relative error ``|a - n| / max(|a|, |n|, abs_floor)``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    with params.promoted(dtype):
        loss_and_grads()
        analytic = {name: params.grad(name).copy() for name in params.names()}

        for name in names or params.names():
            flat = params[name].reshape(-1)
            grad = analytic[name].reshape(-1)
            if flat.size <= num_coords:
                coords = np.arange(flat.size)
            else:
                coords = rng.choice(flat.size, size=num_coords, replace=False)

            param_worst = 0.0
            for idx in coords:
                original = flat[idx]
                flat[idx] = original + eps
                loss_plus = loss_and_grads()
                flat[idx] = original - eps
                loss_minus = loss_and_grads()
                flat[idx] = original

                numeric = (loss_plus - loss_minus) / (2 * eps)
                a = float(grad[idx])
                denom = max(abs(a), abs(numeric), abs_floor)
                param_worst = max(param_worst, abs(a - numeric) / denom)

            logger.debug("grad_check %s: max relative error %.3g", name, param_worst)
            worst = max(worst, param_worst)

    return worst
