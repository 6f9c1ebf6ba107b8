"""Normal-ordering engine for vacuum expectation values in the doubled Fock
representation, plus the one-particle distributional-kernel algebra.

The engine repeatedly moves the rightmost annihilator to the right: crossing
a creator emits a braided continuation term (an S-matrix tensor joining the
four component legs involved) and two contraction terms, one of
transmission type

    delta(q - p) [I + calT(q)]

and one of reflection type  delta(q + p) calR(q).  An annihilator that
reaches the vacuum kills its term, as does any leftover creator against the
vacuum bra.  A surviving term is a perfect matching between annihilators
and creators ("pairing"), decorated with a lazy tensor network
("coefficient") whose leaves are S/T/R matrices evaluated at label-dependent
momenta.  Coefficients are only evaluated after a substitution consistent
with the pairing.

Delta normalization is the bare delta internally; the physical-model
comparison layer multiplies by 2*pi per contraction through the explicit
``two_pi_power`` field.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

import numpy as np

from .defect import DefectPair
from .doubling import DoubledModel
from .tensor import norm_inf

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class WordSymbol:
    """One generator in a word: a (annihilator) or ad (creator).

    The symbol's momentum is ``sign * value(label)``; ``dress`` optionally
    attaches a matrix factor to the symbol's component leg (evaluated at the
    label's value), which is how composite generators like
    a'(w) = (I + T(w)) a(w) enter the engine.
    """

    kind: str  # "a" | "ad"
    label: str
    sign: int = +1
    dress: Optional[Callable[[float], np.ndarray]] = None

    def __post_init__(self):
        if self.kind not in ("a", "ad"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.sign not in (+1, -1):
            raise ValueError("momentum sign must be +1 or -1")


def a(label: str, sign: int = +1, dress=None) -> WordSymbol:
    return WordSymbol("a", label, sign, dress)


def ad(label: str, sign: int = +1, dress=None) -> WordSymbol:
    return WordSymbol("ad", label, sign, dress)


# --- coefficient networks ---------------------------------------------------
#
# Atoms reference integer leg ids; the external leg of word position i is i.
# ("S", (a_old, ad_new, a_new, ad_old), q_expr, p_expr)   4-leg braid tensor
# ("C", (a_leg, ad_leg), "T"|"R", q_expr)                 contraction matrix
# ("D", (row, col), dress_fn, label)                      dressing matrix
# where an expr is (sign, label).

Expr = tuple[int, str]


@dataclass(frozen=True)
class ContractionTerm:
    """One decorated matching: pairing plus a sum of coefficient networks.

    pairing entries are (a_position, ad_position, rel) with the momentum
    constraint value[a_label] = rel * value[ad_label]; rel = +1 comes from a
    transmission-type delta(q - p) contraction, rel = -1 from a
    reflection-type delta(q + p) one (for unsigned symbols).
    """

    pairing: tuple[tuple[int, int, int], ...]
    networks: tuple[tuple, ...]
    two_pi_power: int = 0


@dataclass(frozen=True)
class AmplitudeExpression:
    word: tuple[WordSymbol, ...]
    dim: int
    terms: tuple[ContractionTerm, ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms


def _canonical_pairing(pairs: Iterable[tuple[int, int, int]]) -> tuple:
    return tuple(sorted(pairs))


def normal_order_vev(word: list[WordSymbol], model: DoubledModel) -> AmplitudeExpression:
    """Vacuum expectation value of a word as a canonicalized expression.

    Words with unequal creator/annihilator counts give the zero expression.
    """
    word = tuple(word)
    n_a = sum(1 for s in word if s.kind == "a")
    n_ad = len(word) - n_a
    if n_a != n_ad:
        return AmplitudeExpression(word, model.doubled_dim, ())

    counter = [len(word)]  # fresh internal leg ids

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    # live word entries: (position, kind, expr(sign,label), current_leg)
    init_atoms: list[tuple] = []
    init_word = []
    for pos, s in enumerate(word):
        leg = pos
        if s.dress is not None:
            inner = fresh()
            if s.kind == "ad":
                # [ad^b X]^ext: X rows contract the creator component
                init_atoms.append(("D", (inner, pos), s.dress, s.label))
            else:
                # [X a]_ext: X columns contract the annihilator component
                init_atoms.append(("D", (pos, inner), s.dress, s.label))
            leg = inner
        init_word.append((pos, s.kind, (s.sign, s.label), leg))

    done: list[tuple[tuple, tuple]] = []  # (pairing, atoms)
    stack = [(tuple(init_atoms), (), tuple(init_word))]
    while stack:
        atoms, pairs, live = stack.pop()
        idx = max((i for i, e in enumerate(live) if e[1] == "a"), default=None)
        if idx is None:
            if live:  # leftover creators hit the vacuum bra
                continue
            done.append((pairs, atoms))
            continue
        if idx == len(live) - 1:
            continue  # annihilator meets the vacuum ket
        a_pos, _, a_expr, a_leg = live[idx]
        c_pos, c_kind, c_expr, c_leg = live[idx + 1]
        assert c_kind == "ad"
        sa, la = a_expr
        sc, lc = c_expr
        # transmission contraction: delta(q - p) (I + calT(q))
        pair_t = pairs + (((a_pos, c_pos, sa * sc)),)
        atoms_t = atoms + (("C", (a_leg, c_leg), "T", a_expr),)
        stack.append((atoms_t, pair_t, live[:idx] + live[idx + 2 :]))
        # reflection contraction: delta(q + p) calR(q)
        pair_r = pairs + (((a_pos, c_pos, -sa * sc)),)
        atoms_r = atoms + (("C", (a_leg, c_leg), "R", a_expr),)
        stack.append((atoms_r, pair_r, live[:idx] + live[idx + 2 :]))
        # braided continuation: ad(p) S12(q, p) a(q)
        new_c = fresh()
        new_a = fresh()
        atoms_s = atoms + (("S", (a_leg, new_c, new_a, c_leg), a_expr, c_expr),)
        swapped = (
            live[:idx]
            + ((c_pos, c_kind, c_expr, new_c), (a_pos, "a", a_expr, new_a))
            + live[idx + 2 :]
        )
        stack.append((atoms_s, pairs, swapped))

    merged: dict[tuple, list[tuple]] = {}
    for pairs, atoms in done:
        merged.setdefault(_canonical_pairing(pairs), []).append(atoms)
    terms = tuple(
        ContractionTerm(pairing, tuple(nets)) for pairing, nets in sorted(merged.items())
    )
    return AmplitudeExpression(word, model.doubled_dim, terms)


def canonicalize(expr: AmplitudeExpression) -> AmplitudeExpression:
    """Merge terms with equal pairings; idempotent."""
    merged: dict[tuple, list] = {}
    for t in expr.terms:
        key = _canonical_pairing(t.pairing)
        merged.setdefault(key, []).extend(t.networks)
    terms = tuple(
        ContractionTerm(p, tuple(nets), expr.terms[0].two_pi_power if expr.terms else 0)
        for p, nets in sorted(merged.items())
    )
    return replace(expr, terms=terms)


def with_two_pi(expr: AmplitudeExpression) -> AmplitudeExpression:
    """Raise the 2*pi bookkeeping by one per contraction in every term."""
    terms = tuple(
        replace(t, two_pi_power=t.two_pi_power + len(t.pairing)) for t in expr.terms
    )
    return replace(expr, terms=terms)


def _eval_atom(atom: tuple, env: dict[str, float], model: DoubledModel):
    kind = atom[0]
    d = model.doubled_dim
    if kind == "S":
        _, legs, (sq, lq), (sp, lp) = atom
        m = model.calS.eval(sq * env[lq], sp * env[lp])
        return m.reshape(d, d, d, d), list(legs)
    if kind == "C":
        _, legs, flavor, (sq, lq) = atom
        q = sq * env[lq]
        if flavor == "T":
            m = np.eye(d, dtype=complex) + np.asarray(model.calT(q), dtype=complex)
        else:
            m = np.asarray(model.calR(q), dtype=complex)
        return m, list(legs)
    if kind == "D":
        _, legs, fn, label = atom
        return np.asarray(fn(env[label]), dtype=complex), list(legs)
    raise ValueError(f"unknown atom kind {atom[0]!r}")


def evaluate_coefficient(
    expr: AmplitudeExpression, term: ContractionTerm, env: dict[str, float],
    model: DoubledModel,
) -> np.ndarray:
    """Evaluate a term's coefficient tensor at a momentum assignment.

    The result has one axis of size 2N per word position, in word order.
    The caller is responsible for supplying an assignment consistent with
    the term's pairing.
    """
    d = model.doubled_dim
    externals = list(range(len(expr.word)))
    total = np.zeros((d,) * len(externals) if externals else (), dtype=complex)
    for net in term.networks:
        if not net:
            contrib = np.array(1.0 + 0.0j)
            if externals:
                raise ValueError("empty network with free legs")
        else:
            operands = []
            for atom in net:
                tensor, legs = _eval_atom(atom, env, model)
                operands.extend([tensor, legs])
            # compact leg ids for einsum's integer-subscript mode
            seen: dict[int, int] = {}
            for i in range(1, len(operands), 2):
                operands[i] = [seen.setdefault(l, len(seen)) for l in operands[i]]
            out = [seen[l] for l in externals if l in seen]
            contrib = np.einsum(*operands, out)
            # positions never touched by any atom keep an implicit identity;
            # that cannot happen for vacuum-surviving terms of balanced words
            if len(out) != len(externals):
                raise ValueError("network does not cover all word positions")
            order = [out.index(seen[l]) for l in externals]
            contrib = np.transpose(contrib, order)
        total = total + contrib
    return total * (TWO_PI ** term.two_pi_power)


def resolve_momenta(
    term: ContractionTerm, word: tuple[WordSymbol, ...], seeds: dict[str, float]
) -> dict[str, float]:
    """Propagate pairing constraints value[a] = rel * value[ad] from seeds."""
    env = dict(seeds)
    by_pos = {i: s.label for i, s in enumerate(word)}
    changed = True
    while changed:
        changed = False
        for a_pos, c_pos, rel in term.pairing:
            la, lc = by_pos[a_pos], by_pos[c_pos]
            if la in env and lc not in env:
                env[lc] = env[la] / rel
                changed = True
            elif lc in env and la not in env:
                env[la] = rel * env[lc]
                changed = True
    return env


# --- one-particle kernels ---------------------------------------------------


@dataclass(frozen=True)
class OneParticleKernel:
    """Distributional kernel A(p) delta(p - k) + B(p) delta(p + k)."""

    dim: int
    A: Callable[[float], np.ndarray]
    B: Callable[[float], np.ndarray]

    def __call__(self, p: float) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.A(p), dtype=complex), np.asarray(self.B(p), dtype=complex)


def identity_kernel(dim: int) -> OneParticleKernel:
    eye = np.eye(dim, dtype=complex)
    zero = np.zeros((dim, dim), dtype=complex)
    return OneParticleKernel(dim, lambda p: eye, lambda p: zero)


def compose(K1: OneParticleKernel, K2: OneParticleKernel) -> OneParticleKernel:
    """Kernel of the operator product: the delta calculus closure.

    A(p) = A1(p) A2(p) + B1(p) B2(-p);  B(p) = A1(p) B2(p) + B1(p) A2(-p).
    """
    if K1.dim != K2.dim:
        raise ValueError("kernel dimensions differ")
    return OneParticleKernel(
        K1.dim,
        lambda p: K1.A(p) @ K2.A(p) + K1.B(p) @ K2.B(-p),
        lambda p: K1.A(p) @ K2.B(p) + K1.B(p) @ K2.A(-p),
    )


def add(K1: OneParticleKernel, K2: OneParticleKernel) -> OneParticleKernel:
    if K1.dim != K2.dim:
        raise ValueError("kernel dimensions differ")
    return OneParticleKernel(
        K1.dim, lambda p: K1.A(p) + K2.A(p), lambda p: K1.B(p) + K2.B(p)
    )


def scale(K: OneParticleKernel, c: complex) -> OneParticleKernel:
    return OneParticleKernel(K.dim, lambda p: c * K.A(p), lambda p: c * K.B(p))


def subtract(K1: OneParticleKernel, K2: OneParticleKernel) -> OneParticleKernel:
    return add(K1, scale(K2, -1.0))


def kernel_distance(K1: OneParticleKernel, K2: OneParticleKernel, p: float) -> float:
    return norm_inf(K1.A(p) - K2.A(p)) + norm_inf(K1.B(p) - K2.B(p))


def involution_kernel(model: DoubledModel) -> OneParticleKernel:
    """J with A(k) = calT(k), B(k) = calR(k); J o J = id iff defect unitarity."""
    return OneParticleKernel(model.doubled_dim, model.calT, model.calR)


def one_particle_amplitude(
    half_line: DefectPair, delta_2pi: bool = False
) -> OneParticleKernel:
    """The transition-amplitude kernel assembled from Heaviside projections.

    A(p) = theta(p) T(p) + theta(-p) T(-p), B likewise with R, optionally
    times 2*pi per delta.
    """
    c = TWO_PI if delta_2pi else 1.0

    def A(p: float) -> np.ndarray:
        if p == 0:
            raise ValueError("amplitude undefined at p = 0")
        return c * (half_line.T(p) if p > 0 else half_line.T(-p))

    def B(p: float) -> np.ndarray:
        if p == 0:
            raise ValueError("amplitude undefined at p = 0")
        return c * (half_line.R(p) if p > 0 else half_line.R(-p))

    return OneParticleKernel(half_line.dim, A, B)


# --- engine-derived kernels -------------------------------------------------

HAMILTONIAN_PREFACTOR = 0.5  # the 1/2 in front of the Hamiltonian integral


def _kernel_from_four_word(
    model: DoubledModel,
    power: int,
    mid_creator: WordSymbol,
    mid_annihilator: WordSymbol,
    prefactor: float,
) -> OneParticleKernel:
    """Kernel of <a(p) [integral dw w^power M†(w) M(w)] ad(q)> via the engine.

    The middle symbols share the integration label; their component legs are
    traced.  Each surviving term fixes w from p through its pairing, and the
    delta calculus reduces the integral to the substitution.
    """
    word = [a("p"), mid_creator, mid_annihilator, ad("q")]
    expr = normal_order_vev(word, model)
    d = model.doubled_dim
    by_pos = {i: s for i, s in enumerate(expr.word)}

    def part(p: float, want_flip: bool) -> np.ndarray:
        out = np.zeros((d, d), dtype=complex)
        for term in expr.terms:
            env = resolve_momenta(term, expr.word, {"p": p})
            if "w" not in env or "q" not in env:
                continue
            flip = env["q"] * p < 0  # q is exactly +p or -p here
            if flip != want_flip:
                continue
            coeff = evaluate_coefficient(expr, term, env, model)
            out = out + (env["w"] ** power) * np.trace(coeff, axis1=1, axis2=2)
        return prefactor * out

    return OneParticleKernel(d, lambda p: part(p, False), lambda p: part(p, True))


def hamiltonian_kernel(n: int, model: DoubledModel) -> OneParticleKernel:
    """One-particle kernel of H^(n) = 1/2 integral dk k^n ad(k) a(k),
    computed through the normal-ordering engine."""
    if n < 0:
        raise ValueError("hierarchy index must be >= 0")
    return _kernel_from_four_word(model, n, ad("w"), a("w"), HAMILTONIAN_PREFACTOR)


def reflection_moment_kernel(power: int, model: DoubledModel) -> OneParticleKernel:
    """Kernel of 1/2 integral dk k^power ad(k) calR(k) a(-k) via the engine."""
    mid = a("w", sign=-1, dress=lambda w: model.calR(w))
    return _kernel_from_four_word(model, power, ad("w"), mid, HAMILTONIAN_PREFACTOR)


def hierarchy_commutator_residual(
    m: int, n: int, model: DoubledModel, p: float
) -> float:
    """Residual of the hierarchy commutator identity at one-particle level.

    [H^(m), H^(n)] must equal [(-1)^m - (-1)^n] times the reflection-moment
    kernel of order m + n; both sides are built independently (compose /
    subtract versus engine expansion).
    """
    if p == 0:
        raise ValueError("kernel comparison undefined at p = 0")
    Km = hamiltonian_kernel(m, model)
    Kn = hamiltonian_kernel(n, model)
    lhs = subtract(compose(Km, Kn), compose(Kn, Km))
    pref = (-1.0) ** m - (-1.0) ** n
    rhs = scale(reflection_moment_kernel(m + n, model), pref)
    return kernel_distance(lhs, rhs, p)


def _zf_view(model: DoubledModel) -> DoubledModel:
    """Same exchange matrix, trivial defect: the plain ZF contraction rules."""
    d = model.doubled_dim
    zero = np.zeros((d, d), dtype=complex)
    return DoubledModel(model.bulk_dim, model.calS, lambda k: zero, lambda k: zero)


def hierarchy_relation_residual(n: int, model: DoubledModel, p: float) -> float:
    """Residual of the impurity/no-impurity hierarchy relation at kernel level.

    Verified in the central specialization, where the composite generators
    are A(k) = [(I + calT(k)) a(k) + calR(k) a(-k)] / 2 over the plain ZF
    contraction rules and the relation holds for even n with an overall 1/2
    on the free-plus-impurity side:

        K_RT = ( K_ZF + K_impurity ) / 2 .
    """
    if n % 2 != 0:
        raise ValueError("the central specialization verifies even orders only")
    if p == 0:
        raise ValueError("kernel comparison undefined at p = 0")
    zf = _zf_view(model)
    d = model.doubled_dim
    eye = np.eye(d, dtype=complex)

    creators = [
        ad("w", dress=lambda w: eye + np.asarray(model.calT(w), dtype=complex)),
        ad("w", sign=-1, dress=lambda w: np.asarray(model.calR(-w), dtype=complex)),
    ]
    annihilators = [
        a("w", dress=lambda w: eye + np.asarray(model.calT(w), dtype=complex)),
        a("w", sign=-1, dress=lambda w: np.asarray(model.calR(w), dtype=complex)),
    ]
    k_rt = None
    for cr in creators:
        for an in annihilators:
            piece = _kernel_from_four_word(zf, n, cr, an, 0.25)
            k_rt = piece if k_rt is None else add(k_rt, piece)

    k_zf = _kernel_from_four_word(zf, n, ad("w"), a("w"), 1.0)
    imp_t = _kernel_from_four_word(
        zf, n, ad("w"), a("w", dress=lambda w: np.asarray(model.calT(w), dtype=complex)), 1.0
    )
    imp_r = _kernel_from_four_word(
        zf, n, ad("w"),
        a("w", sign=-1, dress=lambda w: np.asarray(model.calR(w), dtype=complex)), 1.0,
    )
    rhs = scale(add(k_zf, add(imp_t, imp_r)), 0.5)
    return kernel_distance(k_rt, rhs, p)


# --- factorization ----------------------------------------------------------


def _component_index(xi_sign: int) -> int:
    # flattening puts xi = + first
    return 0 if xi_sign > 0 else 1


def physical_components(
    in_momenta: list[float], out_momenta: list[float]
) -> tuple[list[int], list[int]]:
    """Component assignments for the physical in/out configuration:
    xi_i = -sign(k_i) for creators, eps_i = sign(p_i) for annihilators."""
    xi = [_component_index(-int(np.sign(k))) for k in in_momenta]
    eps = [_component_index(int(np.sign(p))) for p in out_momenta]
    return eps, xi


def validate_orderings(in_momenta, out_momenta) -> None:
    ks, ps = list(in_momenta), list(out_momenta)
    if any(k == 0 for k in ks) or any(p == 0 for p in ps):
        raise ValueError("zero momentum in amplitude query")
    if any(not k2 > k1 for k1, k2 in zip(ks, ks[1:])):
        raise ValueError("in-momenta must be strictly increasing")
    if any(not p2 < p1 for p1, p2 in zip(ps, ps[1:])):
        raise ValueError("out-momenta must be strictly decreasing")


MAX_PARTICLES = 6  # term count grows as n! 2^n


def n_particle_expression(
    n: int, in_labels: list[str], out_labels: list[str], model: DoubledModel
) -> AmplitudeExpression:
    """Engine expression for <out_1..out_n | in_1..in_n>: the word is
    a(p_n)..a(p_1) ad(k_1)..ad(k_n)."""
    if n > MAX_PARTICLES:
        raise ValueError(f"amplitudes are limited to n <= {MAX_PARTICLES}")
    word = [a(l) for l in reversed(out_labels)] + [ad(l) for l in in_labels]
    return normal_order_vev(word, model)


def factorization_residual(
    n: int, in_momenta: list[float], out_momenta: list[float], model: DoubledModel
) -> float:
    """Engine amplitude versus the factorized product of one-particle
    amplitudes, compared coefficient-wise over the product's pairings.

    The product side pairs out-slot i with in-slot i; for each of the 2^n
    sign patterns its coefficient is the product of projected transmission
    or reflection brackets.  The engine coefficient for the same pairing is
    evaluated at the pairing-consistent substitution p_i = sigma_i k_i with
    the physical component assignment, and the maximal discrepancy over all
    patterns is returned.
    """
    if model.bulk_dim != 1:
        raise ValueError("factorization comparison is defined for N = 1 models")
    if len(in_momenta) != n or len(out_momenta) != n:
        raise ValueError("momentum lists must have length n")
    validate_orderings(in_momenta, out_momenta)
    if n == 0:
        return 0.0

    half = half_pair_from(model)
    opta = one_particle_amplitude(half, delta_2pi=False)
    in_labels = [f"k{i+1}" for i in range(n)]
    out_labels = [f"p{i+1}" for i in range(n)]
    expr = n_particle_expression(n, in_labels, out_labels, model)
    # word positions: a(p_n)..a(p_1) at 0..n-1, ad(k_1)..ad(k_n) at n..2n-1
    pos_of_out = {i: n - 1 - i for i in range(n)}  # out slot i -> word position
    pos_of_in = {i: n + i for i in range(n)}
    by_pairing = {t.pairing: t for t in expr.terms}

    worst = 0.0
    for bits in range(2**n):
        sigma = [1 - 2 * ((bits >> i) & 1) for i in range(n)]
        p_sub = [sigma[i] * in_momenta[i] for i in range(n)]
        pairing = _canonical_pairing(
            (pos_of_out[i], pos_of_in[i], sigma[i]) for i in range(n)
        )
        env = {in_labels[i]: in_momenta[i] for i in range(n)}
        env.update({out_labels[i]: p_sub[i] for i in range(n)})

        prod = 1.0 + 0.0j
        for i in range(n):
            mat = opta.A(p_sub[i]) if sigma[i] == +1 else opta.B(p_sub[i])
            prod *= complex(mat[0, 0])

        term = by_pairing.get(pairing)
        if term is None:
            engine_val = 0.0 + 0.0j
        else:
            coeff = evaluate_coefficient(expr, term, env, model)
            eps, xi = physical_components(in_momenta, p_sub)
            idx = tuple(reversed([eps[i] for i in range(n)])) + tuple(xi)
            engine_val = complex(coeff[idx])
        worst = max(worst, abs(engine_val - prod))
    return worst


def n_particle_tensor(
    n: int, in_momenta: list[float], model: DoubledModel, max_particles: int = 3
) -> list[tuple[tuple, np.ndarray]]:
    """Full component tensors of the n-particle amplitude, one per pairing.

    Each entry is (pairing, tensor) with one axis of size 2N per word
    position and the substitution p_i = rel_i * k_i applied.  Guarded to
    small particle numbers; use component queries beyond that.
    """
    if n > max_particles:
        raise ValueError(f"full tensors are limited to n <= {max_particles}")
    if len(in_momenta) != n:
        raise ValueError("momentum list must have length n")
    in_labels = [f"k{i+1}" for i in range(n)]
    out_labels = [f"p{i+1}" for i in range(n)]
    expr = n_particle_expression(n, in_labels, out_labels, model)
    out = []
    for term in expr.terms:
        env = resolve_momenta(term, expr.word, dict(zip(in_labels, in_momenta)))
        out.append((term.pairing, evaluate_coefficient(expr, term, env, model)))
    return out


def half_pair_from(model: DoubledModel) -> DefectPair:
    """Half-line defect data of a doubled model (from provenance)."""
    from .doubling import half_line_defect

    return half_line_defect(model)


def opta_agreement_residual(model: DoubledModel, p: float) -> float:
    """Engine one-particle kernel versus the projected-amplitude kernel, both
    restricted to the physical component assignment (N = 1 models)."""
    if model.bulk_dim != 1:
        raise ValueError("agreement check is defined for N = 1 models")
    if p == 0:
        raise ValueError("undefined at p = 0")
    expr = normal_order_vev([a("p"), ad("k")], model)
    half = half_pair_from(model)
    opta = one_particle_amplitude(half, delta_2pi=False)
    worst = 0.0
    for rel, ref in ((+1, opta.A(p)), (-1, opta.B(p))):
        term = next(t for t in expr.terms if t.pairing[0][2] == rel)
        env = {"p": p, "k": p / rel}
        coeff = evaluate_coefficient(expr, term, env, model)
        eps = _component_index(int(np.sign(p)))
        xi = _component_index(-int(np.sign(env["k"])))
        worst = max(worst, abs(complex(coeff[eps, xi]) - complex(ref[0, 0])))
    return worst
