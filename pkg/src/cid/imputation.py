"""Multiple imputation of missing categorical outcomes under MAR and
log-odds pattern-mixture MNAR mechanisms, with point-estimate combining."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

N_LEVELS = 10


@dataclass(frozen=True)
class CategoricalDistribution:
    """Probability vector over K ordered levels."""

    probs: tuple

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")

    @classmethod
    def from_array(cls, p) -> "CategoricalDistribution":
        p = np.asarray(p, dtype=float)
        return cls(tuple(float(v) for v in p / p.sum()))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    @property
    def k(self) -> int:
        return len(self.probs)

    def mass_above(self, cutoff_level: int) -> float:
        """Total probability on levels strictly above cutoff_level (1-based)."""
        return float(self.as_array()[cutoff_level:].sum())


@dataclass(frozen=True)
class MnarMechanism:
    """Per-level log-odds weights w; the tilt at knob value t adds t*w."""

    weights: tuple
    name: str = "custom"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if not np.all(np.isfinite(w)):
            raise ValueError("mechanism weights must be finite")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def accordion_mechanism() -> MnarMechanism:
    """Add t to the log-odds of the three lowest levels only."""
    return MnarMechanism(weights=(1, 1, 1, 0, 0, 0, 0, 0, 0, 0), name="accordion")


def parametric_mechanism() -> MnarMechanism:
    """Graded per-level weights, largest at the lowest levels."""
    return MnarMechanism(weights=(1, 0.9, 0.8, 0.6, 0.4, 0, 0, 0, -0.2, -0.25),
                         name="parametric")


def mar_mechanism(k: int = N_LEVELS) -> MnarMechanism:
    """All-zero weights: no tilt at any knob value."""
    return MnarMechanism(weights=(0,) * k, name="mar")


BUILTIN_MECHANISMS = {
    "accordion": accordion_mechanism,
    "parametric": parametric_mechanism,
    "mar": mar_mechanism,
}


@dataclass(frozen=True)
class LeadPopulation:
    """Observed per-level counts within a larger population of size n_total.

    Levels are 1..K; units with level > cutoff_level count as "high".
    """

    observed_counts: tuple
    n_total: int
    cutoff_level: int = 3

    def __post_init__(self):
        counts = np.asarray(self.observed_counts, dtype=np.int64)
        if len(counts) < 2:
            raise ValueError("need at least 2 levels")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if counts.sum() > self.n_total:
            raise ValueError(
                f"observed count {counts.sum()} exceeds n_total {self.n_total}"
            )
        if not (1 <= self.cutoff_level < len(counts)):
            raise ValueError(f"cutoff_level out of range: {self.cutoff_level}")

    @property
    def k(self) -> int:
        return len(self.observed_counts)

    @property
    def n_observed(self) -> int:
        return int(sum(self.observed_counts))

    @property
    def n_missing(self) -> int:
        return self.n_total - self.n_observed

    @property
    def observed_high_count(self) -> int:
        return int(sum(self.observed_counts[self.cutoff_level:]))

    @property
    def observed_fraction_high(self) -> float:
        return self.observed_high_count / self.n_observed

    def counts_array(self) -> np.ndarray:
        return np.asarray(self.observed_counts, dtype=np.int64)

    @classmethod
    def from_probabilities(cls, probs, n_observed: int, n_total: int,
                           cutoff_level: int = 3) -> "LeadPopulation":
        """Synthesize integer counts from level probabilities.

        Largest-remainder apportionment, so the counts sum to n_observed exactly.
        """
        p = np.asarray(probs, dtype=float)
        p = p / p.sum()
        raw = p * n_observed
        counts = np.floor(raw).astype(np.int64)
        short = n_observed - int(counts.sum())
        if short > 0:
            order = np.argsort(-(raw - counts), kind="stable")
            counts[order[:short]] += 1
        return cls(tuple(int(c) for c in counts), n_total, cutoff_level)

    @classmethod
    def from_csv(cls, path, n_total: int, cutoff_level: int = 3) -> "LeadPopulation":
        """Read a `level,count` CSV file; rows must cover levels 1..K in order."""
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            rows = [(int(r["level"]), int(r["count"])) for r in reader]
        rows.sort()
        levels = [lvl for lvl, _ in rows]
        if levels != list(range(1, len(rows) + 1)):
            raise ValueError(f"levels must be 1..K without gaps, got {levels}")
        return cls(tuple(c for _, c in rows), n_total, cutoff_level)


@dataclass(frozen=True)
class ImputationConfig:
    m: int = 5
    seed: int = 20240101

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")


def substream(seed: int, stream_index: int, m: int) -> np.random.Generator:
    """Independent generator for imputation m of stream stream_index.

    Derived from (seed, stream_index, m) so results do not depend on
    evaluation order.
    """
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(stream_index, m))
    )


def draw_dirichlet_posterior(pop: LeadPopulation,
                             rng: np.random.Generator) -> CategoricalDistribution:
    """One draw from Dirichlet(1 + n_1, ..., 1 + n_K).

    Drawn as K independent gamma variates with shapes 1 + n_k, normalized;
    all shapes are >= 1 thanks to the flat prior.
    """
    g = rng.standard_gamma(1.0 + pop.counts_array())
    return CategoricalDistribution.from_array(g)


def tilt_distribution(p: CategoricalDistribution, mech: MnarMechanism,
                      t: float) -> CategoricalDistribution:
    """Pattern-mixture tilt: p_t[k] proportional to p[k] * exp(t * w[k]).

    Equivalent to adding t*w on the log-odds scale with level 1 as baseline;
    category 1 must have positive mass for that representation to exist.
    """
    probs = p.as_array()
    if probs[0] == 0.0:
        raise ValueError("baseline category empty: p_1 must be positive")
    w = mech.as_array()
    if len(w) != p.k:
        raise ValueError(f"mechanism has {len(w)} weights for {p.k} levels")
    tilted = probs * np.exp(t * w)
    return CategoricalDistribution.from_array(tilted)


def impute_theta(pop: LeadPopulation, mech: MnarMechanism, t: float,
                 cfg: ImputationConfig, stream_index: int = 0):
    """Multiply-imputed fraction above the cutoff under tilt t.

    Each of the M rounds draws level probabilities from the Dirichlet
    posterior, tilts them, imputes all missing units with a single
    multinomial draw (missing units are exchangeable given the tilted
    probabilities), and computes the completed-population fraction above
    the cutoff. Returns the mean fraction and the mean completed frequency
    vector over the M rounds.
    """
    if not np.isfinite(t):
        raise ValueError(f"knob value must be finite, got {t}")
    observed = pop.counts_array()
    n_missing = pop.n_missing
    theta_sum = 0.0
    freq_sum = np.zeros(pop.k)
    for m in range(cfg.m):
        rng = substream(cfg.seed, stream_index, m)
        p = draw_dirichlet_posterior(pop, rng)
        p_t = tilt_distribution(p, mech, t)
        imputed = rng.multinomial(n_missing, p_t.as_array())
        completed = observed + imputed
        theta_sum += completed[pop.cutoff_level:].sum() / pop.n_total
        freq_sum += completed / pop.n_total
    theta_hat = theta_sum / cfg.m
    freqs = CategoricalDistribution.from_array(freq_sum / cfg.m)
    return theta_hat, freqs
