"""Lifted-code module lattices beta * pi_P^{-1}(S) inside O_K^t.

Coordinates: a vector of O_K^t is a length t*d integer vector, block i holding
the power-basis coordinates of entry i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ValidationError
from .exact import det_int
from .numberfield import CyclotomicField, mul_int
from .residue import PrimeIdeal, Subspace, rank_fq, reduce_int
from .zlattice import IntegralLattice, Scale, gram, hnf

__all__ = [
    "BetaExponent",
    "ModuleLatticeInstance",
    "lift_subspace",
    "beta_scale",
    "build_module_lattice",
    "lift_residue",
    "reduce_vector",
]


@dataclass(frozen=True)
class BetaExponent:
    """beta = normQ ** exponent, exponent = -(1 - s/t)/d."""

    normQ: int
    codim_fraction: Fraction  # 1 - s/t
    d: int

    @property
    def exponent(self) -> Fraction:
        return -self.codim_fraction / self.d

    def value(self) -> float:
        return float(self.normQ) ** float(self.exponent)

    def is_one(self) -> bool:
        return self.codim_fraction == 0

    def squared(self) -> Scale:
        return Scale.of(1, [(self.normQ, 2 * self.exponent)])


def beta_scale(P: PrimeIdeal, s: int, t: int, field: CyclotomicField) -> BetaExponent:
    if not 1 <= s <= t:
        raise ValidationError("need 1 <= s <= t")
    return BetaExponent(P.normQ, 1 - Fraction(s, t), field.d)


def lift_residue(P: PrimeIdeal, a: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Coefficient lift of an element of F_p[x]/(g) to O_K (digits in [0, p))."""
    return tuple(a) + (0,) * (d - len(a))


def reduce_vector(P: PrimeIdeal, v, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(reduce_int(P, v[i * d : (i + 1) * d]) for i in range(len(v) // d))


def _generators(field: CyclotomicField, t: int, P: PrimeIdeal, S: Subspace) -> list[list[int]]:
    d = field.d
    gens: list[list[int]] = []
    g_elem = tuple(P.g) + (0,) * (d - len(P.g)) if len(P.g) <= d else None
    for row in S.basis:
        lifted = [lift_residue(P, a, d) for a in row]
        for j in range(d):
            zj = field.power_table[j]
            vec: list[int] = []
            for entry in lifted:
                vec.extend(mul_int(field, zj, entry))
            gens.append(vec)
    # P^t = (p, g(zeta)) in every coordinate
    for i in range(t):
        for j in range(d):
            zj = field.power_table[j]
            for gen in ((P.p,) + (0,) * (d - 1), g_elem):
                if gen is None:
                    continue
                vec = [0] * (t * d)
                vec[i * d : (i + 1) * d] = mul_int(field, zj, gen)
                gens.append(vec)
    return gens


def lift_subspace(field: CyclotomicField, t: int, P: PrimeIdeal, S: Subspace) -> IntegralLattice:
    """HNF basis of pi_P^{-1}(S) with its integer trace-form Gram (scale 1)."""
    if S.t != t:
        raise DimensionMismatch(f"subspace lives in k_P^{S.t}, expected t={t}")
    if S.field != P.residue_field:
        raise DimensionMismatch("subspace is not over the residue field of P")
    basis = hnf(_generators(field, t, P, S), modulus=P.p)
    return IntegralLattice(tuple(map(tuple, basis)), gram(field, t, basis))


@dataclass(frozen=True)
class ModuleLatticeInstance:
    field: CyclotomicField
    t: int
    P: PrimeIdeal
    s: int
    S: Subspace
    lattice: IntegralLattice
    beta: BetaExponent

    @property
    def N(self) -> int:
        return self.t * self.field.d

    @property
    def steinitz_power(self) -> int:
        """Exponent e of the Steinitz class [P]^e (metadata only)."""
        return self.t - self.s

    def index(self) -> int:
        B = self.lattice.basis
        return abs(B[0][0]) if len(B) == 1 else abs(_diag_prod(B))

    def check(self) -> None:
        field, t, s = self.field, self.t, self.s
        idx = self.index()
        if idx != self.P.normQ ** (t - s):
            raise AssertionError(f"index {idx} != normQ^(t-s)")
        if self.lattice.det_gram() != field.abs_disc**t * self.P.normQ ** (2 * (t - s)):
            raise AssertionError("Gram determinant identity failed")
        if self.lattice.normalized_det() != 1:
            raise AssertionError("normalized covolume is not 1")


def _diag_prod(B) -> int:
    # HNF bases are triangular
    out = 1
    for i, row in enumerate(B):
        out *= row[i]
    return out


def build_module_lattice(field: CyclotomicField, t: int, P: PrimeIdeal, S: Subspace) -> ModuleLatticeInstance:
    lat = lift_subspace(field, t, P, S)
    beta = beta_scale(P, S.s, t, field)
    sigma = Scale.module(field.abs_disc, field.d, P.normQ, S.s, t)
    inst = ModuleLatticeInstance(field, t, P, S.s, S, lat.with_scale(sigma), beta)
    inst.check()
    return inst


def in_preimage(field: CyclotomicField, P: PrimeIdeal, S: Subspace, v) -> bool:
    """pi_P(v) in S, checked directly over the residue field."""
    return S.contains(reduce_vector(P, v, field.d))


def basis_reduces_into(inst: ModuleLatticeInstance) -> bool:
    F = inst.P.residue_field
    rows = list(inst.S.basis)
    for b in inst.lattice.basis:
        if rank_fq(F, rows + [reduce_vector(inst.P, b, inst.field.d)]) != inst.s:
            return False
    return True


def det_basis(inst: ModuleLatticeInstance) -> int:
    return det_int(inst.lattice.basis)
