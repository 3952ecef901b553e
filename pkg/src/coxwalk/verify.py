"""Executable checks of the structural facts the package relies on.

Each check returns a :class:`Check`; ``run_all`` collects them for the
``verify`` command.  Checks with ``expected=None`` are informational: they
test a claim with known counterexamples and never fail the run.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import affine as af
from . import ncore as nc
from . import shi
from . import walker as wk
from . import wchain as wc
from .rational import is_proportional
from .roots import build_root_system

SUPPORTED = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "E6")


@dataclass
class Check:
    name: str
    anchor: str
    ok: bool
    detail: str = ""
    expected: bool | None = True

    @property
    def failed(self) -> bool:
        return self.expected is not None and self.ok != self.expected

    def line(self) -> str:
        if self.expected is None:
            status = "HOLDS (info)" if self.ok else "FAILS (info)"
        else:
            status = "PASS" if self.ok else "FAIL"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{status:16s} {self.name}  <{self.anchor}>{tail}"


def highest_root_pairing(tag: str) -> Check:
    rs = build_root_system(tag)
    vals = {int(rs.pair(rs.theta_coroot, a)) for k, a in enumerate(rs.positive_roots)
            if k != rs.theta_index}
    return Check(f"<theta^vee, alpha> in {{0,1}} ({tag})", "highest root",
                 vals <= {0, 1}, f"values {sorted(vals)}")


def stationary_exact(tag: str, weights: str = "uniform") -> Check:
    rs = build_root_system(tag)
    P = wc.build_chain(rs, weights)
    zeta = wc.stationary_distribution(P)
    ok = (wc.is_stationary(P, zeta) and sum(zeta.values) == 1
          and all(z > 0 for z in zeta.values))
    return Check(f"zeta P = zeta, zeta > 0 ({tag}, {weights})", "stationarity", ok)


def s3_stationary_values(tag: str = "A2") -> Check:
    rs = build_root_system(tag)
    zeta = wc.stationary(rs)
    want = [Fraction(2, 9), Fraction(1, 9), Fraction(1, 9),
            Fraction(2, 9), Fraction(2, 9), Fraction(1, 9)]
    return Check("stationary distribution of S_3", "S_3 values",
                 list(zeta.values) == want)


def psi_dominant(tag: str) -> Check:
    rs = build_root_system(tag)
    d = wc.psi(rs, wc.stationary(rs))
    return Check(f"psi dominant ({tag})", "limit direction", True, str(d.coords))


def psi_rho(tag: str) -> Check:
    rs = build_root_system(tag)
    d = wc.psi(rs, wc.stationary(rs))
    return Check(f"psi parallel to rho ({tag})", "type A direction",
                 is_proportional(d.exact, rs.rho_vee), str(d.coords))


def s0_cover(tag: str, max_length: int = 8) -> Check:
    rs = build_root_system(tag)
    bad = 0
    total = 0
    for shell in af.affine_ball(rs, max_length):
        for x in shell:
            if not af.is_affine_grassmannian(x):
                continue
            total += 1
            y, up = af.left_mul_gen(x, 0)
            if x.w.theta_ascent() != (up and af.is_affine_grassmannian(y)):
                bad += 1
    return Check(f"theta-ascent iff s_0 Grassmannian cover ({tag}, l<={max_length})",
                 "s_0 cover", bad == 0, f"{total} elements, {bad} counterexamples")


def reversal(tag: str, N: int, variant: str) -> Check:
    rs = build_root_system(tag)
    if variant == "reduced-words":
        dist = wk.reduced_word_measure(rs, N)
    else:
        dist = wk.exact_distribution(rs, N, variant).probs
    bad = sum(dist[x] != dist.get(af.inverse_affine(x), 0) for x in dist)
    return Check(f"Prob(x) = Prob(x^-1) ({tag}, {variant}, N={N})", "reversal",
                 bad == 0, f"{bad} asymmetric elements",
                 expected=None if variant == "free" else True)


def shi_identity(tag: str) -> Check:
    rs = build_root_system(tag)
    gamma = shi.build_gamma(rs)
    absorbed = shi.absorption_probabilities(gamma)
    chambers = wc.chamber_probabilities(rs, wc.stationary(rs))
    ok = all(absorbed[w] == chambers[w] for w in absorbed)
    return Check(f"Shi absorption = zeta(w^-1 w_0) ({tag})", "Shi absorption", ok)


def a2_region_hitting() -> Check:
    rs = build_root_system("A2")
    probs = sorted(shi.region_hitting_probabilities(shi.build_gamma(rs)).values())
    want = sorted([Fraction(1)] + [Fraction(1, 3)] * 3 + [Fraction(1, 6)] * 6
                  + [Fraction(2, 9)] * 3 + [Fraction(1, 9)] * 3)
    return Check("Shi region hitting probabilities of A2", "Shi hitting",
                 probs == want)


def core_roundtrip(n: int, max_degree: int) -> Check:
    rs = build_root_system(f"A{n - 1}")
    bad = total = 0
    for shell in af.affine_ball(rs, max_degree):
        for x in shell:
            if af.is_affine_grassmannian(x):
                total += 1
                core = nc.core_from_affine(x)
                if (nc.affine_from_core(core) != x or not core.is_core()
                        or core != nc.core_from_word(af.reduced_word(x), n)):
                    bad += 1
    return Check(f"core bijection round trip (n={n}, degree<={max_degree})",
                 "core bijection", bad == 0, f"{total} cores")


def translation_core_example() -> Check:
    core = nc.translation_core((-7, -2, 3, 6))
    want = (24, 21, 18, 15, 15, 13, 13, 11, 11, 9, 9, 7, 7, 5, 5, 5,
            4, 4, 4, 3, 3, 3, 2, 2, 2, 1, 1, 1)
    return Check("4-core of t_(-7,-2,3,6)", "translation core", core.rows == want)


def run_all(quick: bool = False) -> list[Check]:
    checks = [highest_root_pairing(t) for t in SUPPORTED]
    for t in ("A2", "A3", "B2", "B3", "G2"):
        for scheme in wc.WEIGHT_SCHEMES:
            checks.append(stationary_exact(t, scheme))
    checks.append(s3_stationary_values())
    checks += [psi_dominant(t) for t in ("A2", "A3", "B2", "B3", "C3", "G2")]
    checks += [psi_rho(f"A{k}") for k in range(1, 5)]
    checks += [s0_cover(t, 6 if quick else 8) for t in ("A2", "A3", "B2")]
    N = 5 if quick else 8
    for t in ("A1", "A2", "B2"):
        for variant in ("delayed", "reduced-words", "free"):
            checks.append(reversal(t, N, variant))
    checks.append(a2_region_hitting())
    checks += [shi_identity(t) for t in (("A2", "B2") if quick
                                         else ("A2", "B2", "A3"))]
    checks += [core_roundtrip(n, 8 if quick else 10) for n in (3, 4)]
    checks.append(translation_core_example())
    return checks
