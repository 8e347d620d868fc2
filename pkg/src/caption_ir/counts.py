"""Co-occurrence count store with hierarchy-inherited estimation.

Binary counts are keyed by (rule, head sense, dependent sense) and every
increment also bumps the full cross-product of ancestor generalizations,
so a missing specific pair can be estimated from an ancestor pair scaled
by unary-count ratios (the antisampling estimate). A hypergeometric
standard deviation decides which exact counts are redundant enough to drop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

INHERIT_THRESHOLD = 5       # minimum ancestor-pair count worth inheriting from
COUNT_FLOOR = 0.5           # estimate when nothing qualifies

INDEX_NAMES = ("first", "firstSensePos", "second", "secondSensePos")


class CountsError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True, order=True)
class PairKey:
    rule_id: str
    first: str
    second: str


@dataclass(frozen=True)
class Estimate:
    value: float
    source: str                    # "exact" | "inherited" | "floor"
    basis: PairKey | None = None   # ancestor pair the estimate came from
    count_sd: float = 0.0          # one standard deviation, on the count scale


@dataclass(frozen=True)
class CodePolicy:
    """Categories whose subconcepts are never stored individually."""
    code_categories: frozenset[str] = frozenset()

    def generalize(self, synset: str, hierarchy) -> str:
        if synset in self.code_categories:
            return synset
        for ancestor in hierarchy.superconcepts(synset):
            if ancestor in self.code_categories:
                return ancestor
        return synset


def antisample_estimate(A: float, n: float, N: float) -> tuple[float, float]:
    """Estimate a subpopulation count from a population count.

    A is the population pair count, n the subpopulation unary count and N
    the population unary count. Returns (A*n/N, proportion standard
    deviation); callers multiply the deviation by n for the count scale.
    """
    if N < 2:
        raise ValueError(f"population count N={N} must be >= 2")
    if not 0 < n <= N:
        raise ValueError(f"subpopulation count n={n} must satisfy 0 < n <= N")
    if not 0 <= A <= N:
        raise ValueError(f"pair count A={A} must satisfy 0 <= A <= N")
    estimate = A * n / N
    sd = math.sqrt(A * (N - A) * (N - n) / (n * N * N * (N - 1)))
    return estimate, sd


class CountStore:
    """Pair and unary counts with four-way indexing.

    `pos_of` maps a synset to its part of speech; it backs the two
    sense+pos indexes. Single-writer / many-reader discipline is assumed.
    """

    def __init__(self, pos_of=None):
        self.pair_counts: dict[PairKey, int] = {}
        self.unary_counts: dict[str, int] = {}
        self.total_instances = 0
        self._pos_of = pos_of or (lambda synset: "noun")
        self._ix_first: dict[str, set[PairKey]] = {}
        self._ix_first_sp: dict[tuple[str, str], set[PairKey]] = {}
        self._ix_second: dict[str, set[PairKey]] = {}
        self._ix_second_sp: dict[tuple[str, str], set[PairKey]] = {}

    # -- low-level mutation ---------------------------------------------------

    def _lemma(self, synset: str) -> str:
        return synset.rsplit("-", 1)[0]

    def _index_add(self, key: PairKey):
        self._ix_first.setdefault(self._lemma(key.first), set()).add(key)
        self._ix_first_sp.setdefault(
            (self._pos_of(key.first), key.first), set()).add(key)
        self._ix_second.setdefault(self._lemma(key.second), set()).add(key)
        self._ix_second_sp.setdefault(
            (self._pos_of(key.second), key.second), set()).add(key)

    def _index_remove(self, key: PairKey):
        self._ix_first[self._lemma(key.first)].discard(key)
        self._ix_first_sp[(self._pos_of(key.first), key.first)].discard(key)
        self._ix_second[self._lemma(key.second)].discard(key)
        self._ix_second_sp[(self._pos_of(key.second), key.second)].discard(key)

    def _bump_pair(self, key: PairKey, delta: int):
        if key not in self.pair_counts:
            self.pair_counts[key] = 0
            self._index_add(key)
        self.pair_counts[key] += delta

    def _bump_unary(self, synset: str, delta: int):
        self.unary_counts[synset] = self.unary_counts.get(synset, 0) + delta

    # -- public operations ------------------------------------------------------

    def increment_pair(self, hierarchy, rule_id: str, head: str, dep: str,
                       delta: int = 1, policy: CodePolicy | None = None,
                       depth_cap: int = 0):
        """Count one co-occurrence and propagate through the hierarchy.

        Every (ancestor-or-self(head), ancestor-or-self(dep)) combination is
        incremented; code-like senses are first generalized to their policy
        category. Unary counts for both senses and their superconcepts are
        bumped as well (these do not feed totalInstances).
        """
        if delta < 1:
            raise ValueError("delta must be a positive integer")
        if not hierarchy.has_synset(head):
            raise KeyError(f"unknown synset {head!r}")
        if not hierarchy.has_synset(dep):
            raise KeyError(f"unknown synset {dep!r}")
        if policy is not None:
            head = policy.generalize(head, hierarchy)
            dep = policy.generalize(dep, hierarchy)
        heads = [head] + hierarchy.superconcepts(head)
        deps = [dep] + hierarchy.superconcepts(dep)
        if depth_cap > 0:
            heads = heads[: depth_cap + 1]
            deps = deps[: depth_cap + 1]
        for h in heads:
            for d in deps:
                self._bump_pair(PairKey(rule_id, h, d), delta)
        for synset in heads:
            self._bump_unary(synset, delta)
        for synset in deps:
            self._bump_unary(synset, delta)

    def increment_unary(self, hierarchy, synset: str, delta: int = 1):
        """Leaf-level word-instance count; feeds totalInstances."""
        if delta < 1:
            raise ValueError("delta must be a positive integer")
        if not hierarchy.has_synset(synset):
            raise KeyError(f"unknown synset {synset!r}")
        for s in [synset] + hierarchy.superconcepts(synset):
            self._bump_unary(s, delta)
        self.total_instances += delta

    def unary(self, synset: str) -> int:
        return self.unary_counts.get(synset, 0)

    def pair(self, rule_id: str, head: str, dep: str) -> int | None:
        return self.pair_counts.get(PairKey(rule_id, head, dep))

    def lookup_by(self, index: str, key) -> list[tuple[PairKey, int]]:
        """All (PairKey, count) entries reachable through one of the four
        indexes; `key` is a lemma for word indexes and a (pos, synset)
        pair for the sense+pos indexes."""
        if index == "first":
            keys = self._ix_first.get(key, set())
        elif index == "firstSensePos":
            keys = self._ix_first_sp.get(tuple(key), set())
        elif index == "second":
            keys = self._ix_second.get(key, set())
        elif index == "secondSensePos":
            keys = self._ix_second_sp.get(tuple(key), set())
        else:
            raise ValueError(f"unknown index {index!r}; "
                             f"expected one of {INDEX_NAMES}")
        return sorted((k, self.pair_counts[k]) for k in keys
                      if k in self.pair_counts)

    def all_index_keysets(self) -> dict[str, set[PairKey]]:
        return {
            "first": {k for s in self._ix_first.values() for k in s
                      if k in self.pair_counts},
            "firstSensePos": {k for s in self._ix_first_sp.values() for k in s
                              if k in self.pair_counts},
            "second": {k for s in self._ix_second.values() for k in s
                       if k in self.pair_counts},
            "secondSensePos": {k for s in self._ix_second_sp.values()
                               for k in s if k in self.pair_counts},
        }

    # -- estimation ----------------------------------------------------------

    def _generalization_chain(self, hierarchy, synset: str) -> list[str]:
        return [synset] + hierarchy.superconcepts(synset)

    def estimated_pair_count(self, hierarchy, rule_id: str, head: str,
                             dep: str, threshold: int = INHERIT_THRESHOLD,
                             floor: float = COUNT_FLOOR,
                             exclude_exact: bool = False) -> Estimate:
        """Exact count if stored, else the first qualifying ancestor-pair
        estimate in nondecreasing generalization distance (dependent slot
        generalized first on ties), else the floor.
        """
        if not hierarchy.has_synset(head):
            raise KeyError(f"unknown synset {head!r}")
        if not hierarchy.has_synset(dep):
            raise KeyError(f"unknown synset {dep!r}")
        exact_key = PairKey(rule_id, head, dep)
        if not exclude_exact:
            exact = self.pair_counts.get(exact_key)
            if exact is not None:
                return Estimate(float(exact), "exact", exact_key, 0.0)
        heads = self._generalization_chain(hierarchy, head)
        deps = self._generalization_chain(hierarchy, dep)
        combos = []
        for hi in range(len(heads)):
            for di in range(len(deps)):
                if hi == 0 and di == 0:
                    continue
                combos.append((hi + di, -di, hi, di))
        combos.sort()
        for _total, _nd, hi, di in combos:
            key = PairKey(rule_id, heads[hi], deps[di])
            count = self.pair_counts.get(key)
            if count is None or count < threshold:
                continue
            # scale through each generalized slot; composite population
            # for the deviation when both slots are generalized
            n = 1.0
            N = 1.0
            if hi > 0:
                n_h = self.unary(head)
                N_h = self.unary(heads[hi])
                if n_h <= 0 or N_h < max(2, n_h):
                    continue
                n *= n_h
                N *= N_h
            if di > 0:
                n_d = self.unary(dep)
                N_d = self.unary(deps[di])
                if n_d <= 0 or N_d < max(2, n_d):
                    continue
                n *= n_d
                N *= N_d
            if count > N:
                continue
            estimate, prop_sd = antisample_estimate(count, n, N)
            return Estimate(estimate, "inherited", key, n * prop_sd)
        return Estimate(floor, "floor", None, 0.0)

    # -- compression ------------------------------------------------------------

    def compact(self, hierarchy, threshold: int = INHERIT_THRESHOLD,
                floor: float = COUNT_FLOOR) -> int:
        """Drop exact pairs reconstructible from ancestors within one
        count-scale standard deviation.

        Decisions are taken against the pre-compaction snapshot (no
        cascade within one pass), and a pair is only dropped if the
        ancestor pair its estimate came from survives the pass, so the
        post-compaction store reconstructs every dropped count from the
        same basis. Ancestor pairs and unary counts are untouched.
        """
        basis_of: dict[PairKey, PairKey] = {}
        for key, count in self.pair_counts.items():
            est = self.estimated_pair_count(
                hierarchy, key.rule_id, key.first, key.second,
                threshold=threshold, floor=floor, exclude_exact=True)
            if est.source != "inherited":
                continue
            if abs(count - est.value) <= est.count_sd:
                basis_of[key] = est.basis
        dropping = set(basis_of)
        while True:
            retained = {k for k in dropping if basis_of[k] in dropping}
            if not retained:
                break
            dropping -= retained
        for key in sorted(dropping):
            del self.pair_counts[key]
            self._index_remove(key)
        return len(dropping)

    # -- persistence ----------------------------------------------------------

    def save(self) -> str:
        lines = []
        for key in sorted(self.pair_counts):
            lines.append(f"pair {key.rule_id} {key.first} {key.second} "
                         f"{self.pair_counts[key]}")
        for synset in sorted(self.unary_counts):
            lines.append(f"unary {synset} {self.unary_counts[synset]}")
        lines.append(f"total {self.total_instances}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str, pos_of=None) -> "CountStore":
        store = cls(pos_of=pos_of)
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if parts[0] == "pair" and len(parts) == 5:
                    count = int(parts[4])
                    if count < 0:
                        raise CountsError("negative pair count", lineno)
                    store._bump_pair(PairKey(parts[1], parts[2], parts[3]),
                                     count)
                elif parts[0] == "unary" and len(parts) == 3:
                    count = int(parts[2])
                    if count < 0:
                        raise CountsError("negative unary count", lineno)
                    store._bump_unary(parts[1], count)
                elif parts[0] == "total" and len(parts) == 2:
                    store.total_instances = int(parts[1])
                else:
                    raise CountsError(f"malformed counts line {raw!r}", lineno)
            except ValueError as exc:
                if isinstance(exc, CountsError):
                    raise
                raise CountsError(f"malformed counts line {raw!r}", lineno)
        return store
