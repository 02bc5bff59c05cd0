"""Reverse-mode autodiff over numpy arrays.

Small on purpose: exactly the operations the disparity regressor needs
(convolution lives in :mod:`lfdepth.nn.conv`).  Every op checks its
output for NaN/Inf so a poisoned value fails at the op that produced it,
not steps later.  Gradients accumulate, which is what lets one shared
parameter set receive contributions from both Siamese passes.
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from ..errors import NumericsError, ShapeError

_grad_enabled = True


@contextmanager
def no_grad():
    """Disable graph recording (e.g. for evaluation passes)."""
    global _grad_enabled
    prev = _grad_enabled
    _grad_enabled = False
    try:
        yield
    finally:
        _grad_enabled = prev


def grad_enabled() -> bool:
    return _grad_enabled


def check_finite(arr: np.ndarray, what: str) -> None:
    if not np.isfinite(arr).all():
        raise NumericsError(f"non-finite values in {what}")


class Tensor:
    """An array plus an optional gradient buffer and backward closure."""

    __slots__ = ("data", "grad", "requires_grad", "name", "_parents", "_backward_fn")

    def __init__(self, data, requires_grad: bool = False, name: str | None = None):
        arr = np.asarray(data)
        if not np.issubdtype(arr.dtype, np.floating):
            arr = arr.astype(np.float64)
        check_finite(arr, f"tensor {name or '<unnamed>'}")
        self.data = arr
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self.name = name
        self._parents: tuple[Tensor, ...] = ()
        self._backward_fn = None

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def item(self) -> float:
        return float(self.data)

    def __repr__(self):
        tag = f" name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.data.shape}, dtype={self.data.dtype}{tag})"

    def accumulate_grad(self, g: np.ndarray) -> None:
        if self.grad is None:
            self.grad = np.zeros_like(self.data)
        self.grad += g

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        """Backpropagate from a scalar; grads accumulate into leaves."""
        if self.data.size != 1:
            raise ShapeError(f"backward() needs a scalar, got shape {self.data.shape}")
        topo: list[Tensor] = []
        seen: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                topo.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in seen:
                    stack.append((p, False))
        self.accumulate_grad(np.ones_like(self.data))
        for node in reversed(topo):
            if node._backward_fn is not None:
                node._backward_fn(node)
                node._backward_fn = None
                node._parents = ()


def make_op(data: np.ndarray, parents: tuple[Tensor, ...], backward_fn, what: str) -> Tensor:
    """Wrap an op result; records the graph only when gradients can flow."""
    out = Tensor(data, name=what)
    if _grad_enabled and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._backward_fn = backward_fn
    return out


def add(a: Tensor, b: Tensor) -> Tensor:
    if a.shape != b.shape:
        raise ShapeError(f"add shape mismatch: {a.shape} vs {b.shape}")

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad)
        if b.requires_grad:
            b.accumulate_grad(out.grad)

    return make_op(a.data + b.data, (a, b), backward, "add")


def sub(a: Tensor, b: Tensor) -> Tensor:
    if a.shape != b.shape:
        raise ShapeError(f"sub shape mismatch: {a.shape} vs {b.shape}")

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad)
        if b.requires_grad:
            b.accumulate_grad(-out.grad)

    return make_op(a.data - b.data, (a, b), backward, "sub")


def add_const(a: Tensor, c) -> Tensor:
    c = np.asarray(c, dtype=a.dtype)

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(_unbroadcast(out.grad, a.shape))

    return make_op(a.data + c, (a,), backward, "add_const")


def mul_const(a: Tensor, c) -> Tensor:
    c = np.asarray(c, dtype=a.dtype)

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(_unbroadcast(out.grad * c, a.shape))

    return make_op(a.data * c, (a,), backward, "mul_const")


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum a gradient down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def relu(a: Tensor) -> Tensor:
    mask = a.data > 0

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad * mask)

    return make_op(np.where(mask, a.data, 0), (a,), backward, "relu")


def absolute(a: Tensor) -> Tensor:
    sign = np.sign(a.data)  # subgradient 0 at the kink

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad * sign)

    return make_op(np.abs(a.data), (a,), backward, "abs")


def total(a: Tensor) -> Tensor:
    """Sum of all elements, as a 0-d tensor."""

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(np.broadcast_to(out.grad, a.shape).copy())

    return make_op(a.data.sum(), (a,), backward, "sum")


def concat(parts: list[Tensor], axis: int) -> Tensor:
    if not parts:
        raise ShapeError("concat needs at least one tensor")
    sizes = [p.shape[axis] for p in parts]
    splits = np.cumsum(sizes)[:-1]

    def backward(out):
        grads = np.split(out.grad, splits, axis=axis)
        for p, g in zip(parts, grads):
            if p.requires_grad:
                p.accumulate_grad(g)

    return make_op(np.concatenate([p.data for p in parts], axis=axis), tuple(parts), backward, "concat")


def transpose(a: Tensor, axes: tuple[int, ...]) -> Tensor:
    inverse = tuple(np.argsort(axes))

    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad.transpose(inverse))

    return make_op(np.ascontiguousarray(a.data.transpose(axes)), (a,), backward, "transpose")


def reshape(a: Tensor, shape: tuple[int, ...]) -> Tensor:
    def backward(out):
        if a.requires_grad:
            a.accumulate_grad(out.grad.reshape(a.shape))

    return make_op(a.data.reshape(shape), (a,), backward, "reshape")
