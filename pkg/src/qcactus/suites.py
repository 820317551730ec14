"""Verification suites shared by the command line driver and the acceptance tests.

A suite expands its configuration into an ordered list of independent tasks.
Each task is a ``(function name, arguments)`` pair resolved in this module, so
tasks can be shipped to worker processes and the reports reassembled in the
original order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import factorial

from .cartan import build_cartan, matsumoto_connect, reduced_words
from .qrep import Report

SUITES = (
    "cartan", "marked-words", "braid", "w0-chevalley", "cautis", "full-twist", "crystal-axioms",
    "cactus", "schutzenberger-agree", "tableaux", "kl", "evacuation-theorem", "promotion-theorem",
    "zigzag",
)

DEFAULT_DATA = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4))
DEFAULT_MODULES = ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3))
MARKED_MODULES = ((3, 2), (3, 3), (4, 2), (4, 3))
ZIGZAG_DATA = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4))
RECTANGLES = ((2, 2), (3, 3), (2, 2, 2))


class ConfigError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name}={raw!r} is not an integer") from exc
    if value <= 0:
        raise ConfigError(f"{name} must be positive")
    return value


@dataclass
class SuiteConfig:
    suite: str
    type: str | None = None
    rank: int | None = None
    k: int | None = None
    n: int | None = None
    weights: list | None = None
    word: tuple | None = None
    max_basis: int = field(default_factory=lambda: _env_int("QCACTUS_MAX_BASIS", 4096))
    max_nodes: int = field(default_factory=lambda: _env_int("QCACTUS_MAX_NODES", 200_000))
    max_dim: int = field(default_factory=lambda: _env_int("QCACTUS_MAX_DIM", 1000))
    max_sn: int = field(default_factory=lambda: _env_int("QCACTUS_MAX_SN", 5))
    max_pairs: int = 20
    jobs: int = 1
    seed: int = 0

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        for name in ("max_basis", "max_nodes", "max_dim", "max_sn", "max_pairs", "jobs"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if (self.type is None) != (self.rank is None):
            raise ConfigError("--type and --rank must be given together")
        if self.type is not None:
            build_cartan(self.type, self.rank)
        if self.k is not None and self.k < 2:
            raise ConfigError("k must be at least 2")
        if self.n is not None and self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.max_sn > 6:
            raise ConfigError("max_sn above 6 is not supported")

    def as_dict(self) -> dict:
        out = asdict(self)
        out["word"] = list(self.word) if self.word else None
        out["weights"] = [list(w) for w in self.weights] if self.weights else None
        out.pop("jobs")  # parallelism does not change results
        return out

    # -- parameter expansion ---------------------------------------------------------
    def data(self):
        if self.type is not None:
            return [(self.type, self.rank)]
        return list(DEFAULT_DATA)

    def modules(self, default=DEFAULT_MODULES):
        if self.k is not None or self.n is not None:
            ks = [self.k] if self.k is not None else sorted({k for k, _ in default})
            ns = [self.n] if self.n is not None else sorted({n for _, n in default})
            return [(k, n) for k in ks for n in ns if k ** n <= self.max_basis]
        return [(k, n) for k, n in default if k ** n <= self.max_basis]


# -- tasks ------------------------------------------------------------------------------------


def task_cartan(letter, rank):
    d = build_cartan(letter, rank)
    rep = Report(f"cartan[{d.name}]")
    C = d.cartan
    rep.add("symmetric", bool((C == C.T).all()))
    expected_roots = {"A": rank * (rank + 1) // 2, "D": rank * (rank - 1), "E": {6: 36, 7: 63, 8: 120}.get(rank)}[letter]
    rep.add("positive_root_count", len(d.positive_roots) == expected_roots, n=len(d.positive_roots))
    w0 = d.longest_element()
    rep.add("length(w0)=#positive roots", d.length(w0) == len(d.positive_roots))
    rep.add("w0 sends rho to -rho", d.act(w0, d.rho) == tuple(-x for x in d.rho))
    tau = d.tau()
    rep.add("tau is an involution", all(tau[tau[i]] == i for i in d.nodes))
    rep.add("tau preserves the Cartan matrix", all(d.a(tau[i], tau[j]) == d.a(i, j) for i in d.nodes for j in d.nodes))
    adjoint = d.highest_root
    lam = tuple(int(x) for x in d.root_to_weight(adjoint))
    rep.add("dim of the adjoint = rank + 2 #positive roots",
            d.weyl_dimension(lam) == rank + 2 * len(d.positive_roots))
    rep.add("coxeter number = height(theta) + 1", d.coxeter_number() == sum(adjoint) + 1)
    if len(d.positive_roots) <= 10:
        words = reduced_words(d, w0)
        ok = True
        for w in words[1:]:
            moves = matsumoto_connect(d, words[0], w)
            ok &= moves is not None
        rep.add("matsumoto: reduced words of w0 are braid-connected", ok, words=len(words))
    rep.data = d.report()
    return rep


def task_relations(k, n, max_basis):
    from .qrep import WeightModule

    return WeightModule(k, n, max_basis=max_basis).verify_relations()


def task_braid(k, n, max_basis, max_pairs):
    from .qrep import WeightModule, verify_braid_relations

    return verify_braid_relations(WeightModule(k, n, max_basis=max_basis), max_pairs=max_pairs)


def task_w0_chevalley(k, n, max_basis, convention):
    from .qrep import WeightModule, verify_w0_chevalley

    return verify_w0_chevalley(WeightModule(k, n, max_basis=max_basis, convention=convention))


def task_cautis(k, n, max_basis, convention):
    from .qrep import WeightModule, verify_cautis_relations

    return verify_cautis_relations(WeightModule(k, n, max_basis=max_basis, convention=convention))


def task_full_twist(k, n, max_basis, convention):
    from .qrep import WeightModule, extremal_transport_check, specialise_at_one, verify_full_twist

    M = WeightModule(k, n, max_basis=max_basis, convention=convention)
    rep = verify_full_twist(M)
    for sub in (extremal_transport_check(M), specialise_at_one(M)):
        for r in sub.records:
            rep.add(f"{sub.name.split('[')[0]}:{r.identity}", r.ok, r.detail, **r.params)
        rep.data[sub.name.split("[")[0]] = sub.data
    return rep


def task_weight_vanishing(k, n, max_basis):
    from .qrep import WeightModule, module_multiplicity, weight_vanishing_check

    M = WeightModule(k, n, max_basis=max_basis)
    rep = Report(f"weight-vanishing[{M.name}]")
    for lam in sorted(M.multiplicities()):
        sub = weight_vanishing_check(M.datum, module_multiplicity(M, lam), lam)
        for r in sub.records:
            rep.add(r.identity, r.ok, r.detail, lam=list(lam), **r.params)
    return rep


def task_marked_words(k, n, max_basis, flavor):
    from .laurent import scalar_ratio
    from .markedword import connect, end_start_pairs, path_independence, predicted_ratio
    from .qrep import WeightModule, evaluate_marked

    M = WeightModule(k, n, max_basis=max_basis)
    d = M.datum
    rep = Report(f"marked-words[{M.name},{flavor}]")
    hist: dict = {}
    for a, b in end_start_pairs(d, flavor):
        for lam in M.weight_spaces:
            A = evaluate_marked(M, a, lam)
            B = evaluate_marked(M, b, lam)
            if A.is_zero() and B.is_zero():
                continue
            tr = connect(d, a, b, lam)
            params = {"a": str(a), "b": str(b), "lam": list(lam)}
            if tr is None:
                rep.add("marked words connected by moves", False, **params)
                continue
            rep.add("per-move shifts in {0,+1,-1}", all(s in (0, 1, -1) for s in tr.shifts), **params)
            r = scalar_ratio(A, B)
            mono = r.signed_monomial() if r is not None else None
            want = predicted_ratio(tr)
            rep.add("matrix ratio = (-1)^k q^k", mono == want, f"measured={r} k={tr.k}", **params)
            key = f"k={tr.k},ratio={r}"
            hist[key] = hist.get(key, 0) + 1
            ok, states = path_independence(d, a, lam)
            rep.add("shift is path independent", ok, states=states, **params)
    rep.data["histogram"] = dict(sorted(hist.items()))
    if flavor == "E":
        from .markedword import e_mark_table

        rep.data["e_mark_table"] = {str(key): v for key, v in sorted(e_mark_table().items())}
    return rep


def task_crystal(letter, rank, lam, max_nodes, cactus):
    from .crystal import crystal_from_highest, stembridge, validate, verify_cactus_relations

    d = build_cartan(letter, rank)
    g = crystal_from_highest(d, lam, max_nodes=max_nodes)
    rep = Report(f"crystal[{d.name},{list(lam)}]")
    expect = d.weyl_dimension(lam)
    rep.add("node count = Weyl dimension", g.size == expect, f"{g.size} vs {expect}")
    if cactus:
        sub = verify_cactus_relations(g)
        for r in sub.records:
            rep.add(f"cactus:{r.identity}", r.ok, r.detail, **r.params)
        rep.data["cactus"] = sub.data
    else:
        for sub in (validate(g, expect_irreducible=True), stembridge(g)):
            for r in sub.records:
                rep.add(r.identity, r.ok, r.detail, **r.params)
    return rep


def task_bridge(shape):
    from .tableaux import verify_evacuation_bridge, verify_promotion_factorization

    rep = Report(f"schutzenberger-agree{tuple(shape)}")
    for sub in (verify_evacuation_bridge(shape), verify_promotion_factorization(shape)):
        for r in sub.records:
            rep.add(r.identity, r.ok, r.detail, **r.params)
        rep.data.update(sub.data)
    return rep


def task_tableaux(n):
    from .tableaux import (demotion, evacuation, partitions, promotion, promotion_order, rsk, rsk_inverse,
                           syt_enumerate)
    from itertools import permutations

    rep = Report(f"tableaux[n={n}]")
    seen = set()
    ok_inv = True
    for w in permutations(range(1, n + 1)):
        pair = rsk(w)
        seen.add((pair.P, pair.Q))
        ok_inv &= rsk_inverse(pair) == w
    rep.add("RSK is a bijection S_n -> pairs of SYT", len(seen) == factorial(n) and ok_inv)
    for lam in partitions(n):
        syt = syt_enumerate(lam)
        rep.add("hook length count", len(syt) == _hook_count(lam), shape=list(lam))
        rep.add("evacuation is an involution", all(evacuation(evacuation(T)) == T for T in syt), shape=list(lam))
        rep.add("demotion inverts promotion", all(demotion(promotion(T)) == T for T in syt), shape=list(lam))
        if len(set(lam)) == 1:
            rep.add("promotion order divides n on rectangles", all(n % promotion_order(T) == 0 for T in syt),
                    shape=list(lam))
        rep.add("evacuation conjugates promotion to demotion",
                all(evacuation(promotion(T)) == demotion(evacuation(T)) for T in syt), shape=list(lam))
    return rep


def _hook_count(lam) -> int:
    conj = [sum(1 for p in lam if p > c) for c in range(lam[0])] if lam else []
    prod = 1
    for r, p in enumerate(lam):
        for c in range(p):
            prod *= (p - c - 1) + (conj[c] - r - 1) + 1
    return factorial(sum(lam)) // prod


def task_kl(n):
    from .hecke import cell_module, kl_polynomials, verify_cell_module, verify_cells_vs_rsk, verify_kl_table
    from .tableaux import partitions

    rep = Report(f"kl[S{n}]")
    for sub in [verify_kl_table(kl_polynomials(n)), verify_cells_vs_rsk(n)] + \
            [verify_cell_module(cell_module(n, lam)) for lam in partitions(n)]:
        for r in sub.records:
            rep.add(f"{sub.name.split('[')[0]}:{r.identity}", r.ok, r.detail, **r.params)
    return rep


def task_evacuation_theorem(n, shape):
    from .hecke import verify_evacuation_theorem

    return verify_evacuation_theorem(n, shape)


def task_promotion_theorem(n, shape):
    from .hecke import verify_promotion_theorem

    return verify_promotion_theorem(n, shape)


def task_negative_control(n, shape):
    from .hecke import negative_control

    return negative_control(n, shape)


def task_zigzag(letter, rank, word):
    from .zigzag import (build_zigzag, identify, summary, standard_modules, theta_word, verify_rank_one,
                         verify_texactness)

    d = build_cartan(letter, rank)
    if word is None:
        rep = verify_texactness(d)
        if (letter, rank) == ("A", 1):
            sub = verify_rank_one()
            for r in sub.records:
                rep.add(f"rank-one:{r.identity}", r.ok, r.detail, **r.params)
        return rep
    A = build_zigzag(d)
    rep = Report(f"zigzag[{d.name},{','.join(map(str, word))}]")
    T = theta_word(A, tuple(word))
    rep.add("d^2=0", T.check_d2())
    rep.data["profile"] = {str(k): v for k, v in T.profile().items()}
    mods = standard_modules(A)
    rep.data["modules"] = {}
    for name, M in mods.items():
        info = summary(T, M)
        H = T.apply(M).cohomology()
        if len(H) == 1:
            (deg, h), = H.items()
            info["identified"] = identify(h, mods)
            info["identified_twist"] = identify(h, {f"{k}^psi": v.twist() for k, v in mods.items()})
        rep.data["modules"][name] = info
    return rep


def _run_task(task):
    name, args = task
    return globals()[name](*args)


# -- suite expansion ----------------------------------------------------------------------------


def _crystal_tasks(cfg: SuiteConfig, cactus: bool):
    from .crystal import dominant_weights_up_to

    out = []
    for letter, rank in cfg.data():
        d = build_cartan(letter, rank)
        lams = cfg.weights if cfg.weights else dominant_weights_up_to(d, cfg.max_dim)
        for lam in lams:
            lam = tuple(lam)
            if len(lam) != rank:
                raise ConfigError(f"weight {list(lam)} has {len(lam)} coordinates; {d.name} needs {rank}")
            out.append(("task_crystal", (letter, rank, lam, cfg.max_nodes, cactus)))
    return out


def _shapes(cfg: SuiteConfig, limit_syt=None, max_n=None):
    from .tableaux import partitions, syt_enumerate

    if cfg.weights:
        return [tuple(w) for w in cfg.weights]
    ns = [cfg.n] if cfg.n is not None else range(1, (max_n or cfg.max_sn) + 1)
    out = []
    for n in ns:
        for lam in partitions(n):
            if limit_syt is None or len(syt_enumerate(lam)) <= limit_syt:
                out.append(tuple(lam))
    return out


def tasks_for(cfg: SuiteConfig) -> list:
    cfg.validate()
    s = cfg.suite
    if s == "cartan":
        return [("task_cartan", d) for d in cfg.data()]
    if s == "braid":
        mods = cfg.modules()
        return [("task_relations", (k, n, cfg.max_basis)) for k, n in mods] + \
               [("task_braid", (k, n, cfg.max_basis, cfg.max_pairs)) for k, n in mods]
    if s in ("w0-chevalley", "cautis", "full-twist"):
        fn = {"w0-chevalley": "task_w0_chevalley", "cautis": "task_cautis", "full-twist": "task_full_twist"}[s]
        out = [(fn, (k, n, cfg.max_basis, conv)) for k, n in cfg.modules() for conv in ("standard", "mirror")]
        if s == "full-twist":
            out += [("task_weight_vanishing", (k, n, cfg.max_basis)) for k, n in cfg.modules()]
        return out
    if s == "marked-words":
        return [("task_marked_words", (k, n, cfg.max_basis, fl)) for k, n in cfg.modules(MARKED_MODULES)
                for fl in ("F", "E")]
    if s == "crystal-axioms":
        return _crystal_tasks(cfg, cactus=False)
    if s == "cactus":
        return _crystal_tasks(cfg, cactus=True)
    if s == "schutzenberger-agree":
        return [("task_bridge", (lam,)) for lam in _shapes(cfg, limit_syt=10, max_n=min(cfg.max_sn, 5))]
    if s == "tableaux":
        ns = [cfg.n] if cfg.n is not None else range(1, cfg.max_sn + 1)
        return [("task_tableaux", (n,)) for n in ns]
    if s == "kl":
        ns = [cfg.n] if cfg.n is not None else range(1, cfg.max_sn + 1)
        return [("task_kl", (n,)) for n in ns]
    if s == "evacuation-theorem":
        return [("task_evacuation_theorem", (sum(lam), lam)) for lam in _shapes(cfg)]
    if s == "promotion-theorem":
        shapes = [tuple(w) for w in cfg.weights] if cfg.weights else list(RECTANGLES)
        out = [("task_promotion_theorem", (sum(lam), lam)) for lam in shapes]
        if not cfg.weights:
            out.append(("task_negative_control", (5, (3, 2))))
        return out
    if s == "zigzag":
        data = cfg.data() if cfg.type is not None else list(ZIGZAG_DATA)
        return [("task_zigzag", (letter, rank, cfg.word)) for letter, rank in data]
    raise ConfigError(f"unknown suite {s!r}")


def run(cfg: SuiteConfig) -> list[Report]:
    """Execute a suite; reports come back in task order whatever the parallelism."""
    tasks = tasks_for(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_run_task, tasks))
    return [_run_task(t) for t in tasks]


__all__ = ["SUITES", "SuiteConfig", "ConfigError", "tasks_for", "run"]
