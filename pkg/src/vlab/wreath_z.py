"""The wreath product G wr Z over tail-constant base functions.

The full function group G^Z is not representable; the tail-constant functions
(constant outside a finite window) are the smallest computable class that is
closed under the group operations and contains both the finitely supported
functions and the outputs of the commutator-solving recursion.

Conventions match the finite wreath module: an element is x^k * f with shift
k in Z and f: Z -> G, the product is

    (k1, f1) * (k2, f2) = (k1 + k2, n |-> f1(n) * f2(n + k1)),

so conjugating a base function by the shift generator x gives
(f^x)(n) = f(n - 1): the shift re-indexes by right translation.  In
particular the commutator of a base function psi with x satisfies

    [psi, x](n) = psi(n)^-1 * psi(n - 1),

which is the identity the solver inverts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupError
from .perm import Permutation, PermutationGroup


@dataclass(frozen=True)
class TailConstantFn:
    """A map Z -> G that is constant left of lo and right of hi.

    Canonical form: the window [lo, hi] is tight (its boundary values differ
    from the adjacent tails).  A constant function has the empty window
    (0, -1); a two-tail step keeps an empty positioned window (k, k-1) whose
    lo marks the first position with the right-tail value.
    """

    group: PermutationGroup
    lo: int
    hi: int
    window: tuple[tuple[int, ...], ...]  # images of values at lo..hi
    left_tail: Permutation
    right_tail: Permutation

    @staticmethod
    def make(group: PermutationGroup, values: dict[int, Permutation],
             left_tail: Permutation | None = None,
             right_tail: Permutation | None = None) -> TailConstantFn:
        identity = group.identity()
        left = left_tail if left_tail is not None else identity
        right = right_tail if right_tail is not None else identity
        if not values:
            lo, hi, window = 0, -1, ()
            if left != right:
                raise GroupError(
                    "a two-tail step needs at least one window value")
            return TailConstantFn(group, lo, hi, window, left, right)
        lo = min(values)
        hi = max(values)
        # unlisted positions inside the window default to the identity
        window = [values.get(n, identity) for n in range(lo, hi + 1)]
        return _canonical(group, lo, window, left, right)

    @staticmethod
    def constant(group: PermutationGroup, value: Permutation) -> TailConstantFn:
        return TailConstantFn(group, 0, -1, (), value, value)

    @staticmethod
    def point_mass(group: PermutationGroup, position: int,
                   value: Permutation) -> TailConstantFn:
        return TailConstantFn.make(group, {position: value})

    def value(self, n: int) -> Permutation:
        if n < self.lo:
            return self.left_tail
        if n > self.hi:
            return self.right_tail
        return Permutation(self.window[n - self.lo])

    def support_window(self):
        return (self.lo, self.hi)

    def is_identity(self) -> bool:
        identity = self.group.identity()
        return (self.left_tail == identity and self.right_tail == identity
                and not self.window)

    def has_identity_tails(self) -> bool:
        identity = self.group.identity()
        return self.left_tail == identity and self.right_tail == identity

    def shift(self, k: int) -> TailConstantFn:
        """The function n |-> value(n + k)."""
        if not self.window and self.lo == 0:
            if self.left_tail == self.right_tail:
                return self
        return TailConstantFn(self.group, self.lo - k, self.hi - k,
                              self.window, self.left_tail, self.right_tail)

    def pointwise(self, other: TailConstantFn, op) -> TailConstantFn:
        if self.group.degree != other.group.degree:
            raise GroupError("mixed base groups")
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        values = {n: op(self.value(n), other.value(n)) for n in range(lo, hi + 1)}
        left = op(self.left_tail, other.left_tail)
        right = op(self.right_tail, other.right_tail)
        if not values:
            # both windows empty: combine the (possibly distinct) step points
            step = max(self.lo, other.lo)
            values = {step: op(self.value(step), other.value(step))}
        return TailConstantFn.make(self.group, values, left, right)

    def inverted(self) -> TailConstantFn:
        values = {n: self.value(n).inverse() for n in range(self.lo, self.hi + 1)}
        if not values and self.left_tail != self.right_tail:
            values = {self.lo: self.value(self.lo).inverse()}
        return TailConstantFn.make(self.group, values,
                                   self.left_tail.inverse(),
                                   self.right_tail.inverse())

    def __str__(self) -> str:
        inner = ", ".join(f"{n}:{self.value(n)}"
                          for n in range(self.lo, self.hi + 1))
        return f"{{{inner} | L={self.left_tail}, R={self.right_tail}}}"


def _canonical(group, lo, window, left, right) -> TailConstantFn:
    values = list(window)
    hi = lo + len(values) - 1
    while values and values[-1] == right:
        values.pop()
        hi -= 1
    while values and values[0] == left:
        values.pop(0)
        lo += 1
    if not values:
        if left == right:
            lo, hi = 0, -1
        else:
            hi = lo - 1  # positioned empty window marks the step
    return TailConstantFn(group, lo, hi,
                          tuple(v.images for v in values), left, right)


@dataclass(frozen=True)
class WreathZElement:
    """x^shift * f, an element of G wr Z with tail-constant base part."""

    shift: int
    fn: TailConstantFn

    @property
    def group(self) -> PermutationGroup:
        return self.fn.group

    @staticmethod
    def base(fn: TailConstantFn) -> WreathZElement:
        return WreathZElement(0, fn)

    @staticmethod
    def shift_power(group: PermutationGroup, k: int) -> WreathZElement:
        return WreathZElement(k, TailConstantFn.constant(group,
                                                         group.identity()))

    @staticmethod
    def identity(group: PermutationGroup) -> WreathZElement:
        return WreathZElement.shift_power(group, 0)

    def is_identity(self) -> bool:
        return self.shift == 0 and self.fn.is_identity()

    def __str__(self) -> str:
        return f"x^{self.shift} {self.fn}"


def wz_multiply(a: WreathZElement, b: WreathZElement) -> WreathZElement:
    if a.group.degree != b.group.degree:
        raise GroupError("mixed base groups")
    fn = a.fn.pointwise(b.fn.shift(a.shift), lambda u, v: u * v)
    return WreathZElement(a.shift + b.shift, fn)


def wz_inverse(a: WreathZElement) -> WreathZElement:
    fn = a.fn.inverted().shift(-a.shift)
    return WreathZElement(-a.shift, fn)


def wz_commutator(a: WreathZElement, b: WreathZElement) -> WreathZElement:
    return wz_multiply(wz_multiply(wz_inverse(a), wz_inverse(b)),
                       wz_multiply(a, b))


def wz_conjugate(a: WreathZElement, g: WreathZElement) -> WreathZElement:
    return wz_multiply(wz_multiply(wz_inverse(g), a), g)


def solve_commutator(phi: TailConstantFn,
                     seed: Permutation | None = None) -> TailConstantFn:
    """Find psi with [psi, x] = phi, for finitely supported phi.

    The defining identity [psi, x](n) = psi(n)^-1 psi(n-1) forces, once
    psi(0) is chosen (the seed; the choice is free),

        psi(n+1) = psi(n) * phi(n+1)^-1   for n >= 0,
        psi(-n-1) = psi(-n) * phi(-n)     for n >= 0.

    Identity tails of phi make both recursions eventually constant, so psi is
    tail-constant; non-identity tails would leave the class and are rejected.
    """
    group = phi.group
    if not phi.has_identity_tails():
        raise GroupError(
            "solve_commutator needs identity tails (finite support): "
            "the recursion is eventually periodic, not tail-constant, "
            "otherwise")
    if seed is None:
        seed = group.identity()
    lo = min(phi.lo, 0) - 1
    hi = max(phi.hi, 0)
    values = {0: seed}
    for n in range(0, hi):
        values[n + 1] = values[n] * phi.value(n + 1).inverse()
    for n in range(0, -lo):
        values[-n - 1] = values[-n] * phi.value(-n)
    psi = TailConstantFn.make(group, values,
                              left_tail=values[lo], right_tail=values[hi])
    return psi


def verify_commutator_solution(phi: TailConstantFn,
                               psi: TailConstantFn) -> bool:
    """Recompute [psi, x] with the generic group operations and compare."""
    x = WreathZElement.shift_power(phi.group, 1)
    got = wz_commutator(WreathZElement.base(psi), x)
    return got.shift == 0 and got.fn == phi


def componentwise_commutator(pairs):
    """[(a_i), (b_i)] = ([a_i, b_i]): a tuple of commutators is the
    commutator of the tuples, computed per component."""
    return [wz_commutator(a, b) for a, b in pairs]


@dataclass
class Depth2Report:
    witness: TailConstantFn
    verified: bool
    note: str


def depth2_witness(phi: TailConstantFn,
                   seed: Permutation | None = None) -> Depth2Report:
    """Exhibit phi as a single commutator [psi, x] with psi a base function.

    This shows phi lies among the class-2 verbal values of G wr Z; the
    deeper nilpotency claims are exercised on finite analogs (see the
    dominion engine's wreath dichotomy checker and the acceptance suite).
    """
    psi = solve_commutator(phi, seed)
    ok = verify_commutator_solution(phi, psi)
    return Depth2Report(
        witness=psi, verified=ok,
        note="deeper nilpotent-verbal claims are checked on finite analogs")


def parse_tail_constant(text: str, group: PermutationGroup) -> TailConstantFn:
    """Parse ``{-2:(0 1), 0:(0 1 2) | L=(), R=()}``; values in cycle notation."""
    from .perm import parse_permutation

    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise GroupError(f"bad tail-constant literal {text!r}")
    body = s[1:-1]
    if "|" in body:
        window_part, _, tail_part = body.partition("|")
    else:
        window_part, tail_part = body, ""
    values = {}
    for chunk in _split_top_level(window_part):
        if not chunk.strip():
            continue
        pos_text, _, val_text = chunk.partition(":")
        values[int(pos_text.strip())] = parse_permutation(
            val_text.strip(), group.degree)
    left = right = group.identity()
    for chunk in _split_top_level(tail_part):
        if not chunk.strip():
            continue
        key, _, val_text = chunk.partition("=")
        value = parse_permutation(val_text.strip() or "()", group.degree)
        if key.strip() == "L":
            left = value
        elif key.strip() == "R":
            right = value
        else:
            raise GroupError(f"unknown tail {key.strip()!r}")
    if not values:
        if left != right:
            raise GroupError("step literals need an explicit window value")
        return TailConstantFn.constant(group, left)
    return TailConstantFn.make(group, values, left, right)


def _split_top_level(text: str):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts
