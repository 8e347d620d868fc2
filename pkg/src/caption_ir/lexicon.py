"""Lexicon: word senses, type/part hierarchy, tokenization, special formats.

The lexicon is loaded once from three flat files (senses, hierarchy,
token-format rules) and is immutable afterwards, so concurrent readers
need no locking.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

POS_TAGS = (
    "noun", "verb", "adjective", "adverb", "preposition",
    "determiner", "conjunction", "other",
)

PREP_CLASSES = ("location", "time", "social", "abstract", "miscellaneous")

# prep-class membership is encoded in the ako hierarchy: a preposition
# sense must sit under exactly one of these category synsets.
PREP_CLASS_SYNSETS = {
    "location-prep-1": "location",
    "time-prep-1": "time",
    "social-prep-1": "social",
    "abstract-prep-1": "abstract",
    "misc-prep-1": "miscellaneous",
}

VOWELS = set("aeiou")


class LexiconError(ValueError):
    """Raised for malformed or inconsistent lexicon input files."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class WordSense:
    """One (surface, pos, synset) entry; `form` marks morphological variants."""
    surface: str
    pos: str
    synset: str
    rank: int
    form: str | None = None  # plural | prespart | pastpart | agent | comparative

    @property
    def lexclass(self) -> str:
        """Grammar-facing terminal class of this sense."""
        if self.form == "code":
            return "code"
        if self.surface == ".":
            return "period"
        if self.surface == ",":
            return "comma"
        if self.pos == "verb" and self.form in ("prespart", "pastpart"):
            return self.form
        return self.pos


@dataclass(frozen=True)
class SpecialFormatRule:
    """Token-shape rule: classifies code-like tokens under a category synset."""
    name: str
    pattern: str
    category: str
    regex: re.Pattern = field(repr=False, compare=False, default=None)
    has_date: bool = False


def synset_lemma(synset: str) -> str:
    """Lemma part of a synset id: 'projectile-1' -> 'projectile'."""
    return synset.rsplit("-", 1)[0]


def _compile_pattern(pattern: str, line: int) -> tuple[re.Pattern, bool]:
    """Compile the restricted glob of a formats-file rule into a regex.

    Uppercase atoms are classes (L letter, D digit, YY/MM/DD date parts,
    '+' repeats the previous class); everything else matches literally.
    Date parts capture named groups so the normalizer can build ISO dates.
    """
    out = []
    i = 0
    has_date = False
    while i < len(pattern):
        two = pattern[i:i + 2]
        if two in ("YY", "MM", "DD"):
            has_date = True
            out.append(f"(?P<{two.lower()}>[0-9]{{2}})")
            i += 2
            continue
        ch = pattern[i]
        if ch == "L":
            out.append("[a-z]")
        elif ch == "D":
            out.append("[0-9]")
        elif ch == "+":
            if not out:
                raise LexiconError(f"pattern {pattern!r} starts with '+'", line)
            out.append("+")
        elif ch in "#/- .":
            out.append(re.escape(ch))
        elif ch.islower() or ch.isdigit():
            out.append(re.escape(ch))
        else:
            raise LexiconError(f"pattern {pattern!r} has bad atom {ch!r}", line)
        i += 1
    return re.compile("".join(out)), has_date


def _normalize_match(rule: SpecialFormatRule, match: re.Match) -> str:
    """Canonical value string for a special-format match."""
    if rule.has_date:
        g = match.groupdict()
        return f"19{g['yy']}-{g['mm']}-{g['dd']}"
    text = match.group(0)
    # strip any leading literal prefix (letters/punct before the first digit)
    m = re.match(r"^[a-z#/ ]+(?=[0-9a-z])", text)
    if m and re.search(r"[0-9]", text):
        first_digit = re.search(r"[0-9]", text).start()
        prefix = text[:first_digit]
        # keep prefixes that are part of the value (single letters glued to
        # digits, e.g. 'apq-'), drop designator prefixes ending in '#', '/' or space
        cut = 0
        for j, ch in enumerate(prefix):
            if ch in "#/ ":
                cut = j + 1
        return text[cut:].strip()
    return text


class Lexicon:
    """Immutable aggregate of senses, hierarchy, aliases and format rules."""

    def __init__(self):
        self._senses: dict[str, list[WordSense]] = {}
        self._synsets: dict[str, str] = {}  # synset -> pos ('noun' for concepts)
        self._declared_triples: set[tuple[str, str, str]] = set()
        self._ako_parents: dict[str, list[str]] = {}
        self._part_wholes: dict[str, list[str]] = {}
        self._aliases: dict[str, list[str]] = {}
        self._formats: list[SpecialFormatRule] = []
        self._concept_ids: set[str] = set()
        self._frozen = False

    # -- construction -----------------------------------------------------

    def _add_sense(self, surface, pos, synset, rank, line):
        if not surface or surface != surface.lower():
            raise LexiconError(f"surface {surface!r} must be nonempty lowercase", line)
        if pos not in POS_TAGS:
            raise LexiconError(f"unknown pos {pos!r}", line)
        triple = (surface, pos, synset)
        if triple in self._declared_triples:
            raise LexiconError(f"duplicate sense {triple}", line)
        self._declared_triples.add(triple)
        prior = self._synsets.get(synset)
        if prior is not None and prior != pos:
            raise LexiconError(
                f"synset {synset} declared with conflicting pos {pos} vs {prior}", line)
        self._synsets[synset] = pos
        self._senses.setdefault(surface, []).append(
            WordSense(surface, pos, synset, rank))

    def _add_concept(self, synset, line):
        if synset in self._synsets and synset not in self._concept_ids:
            # already declared by a sense line; a concept line is redundant but legal
            return
        if synset in self._concept_ids:
            raise LexiconError(f"duplicate synset id {synset}", line)
        self._concept_ids.add(synset)
        self._synsets[synset] = "noun"

    def _check_synset(self, synset, line):
        if synset not in self._synsets:
            raise LexiconError(f"edge references unknown synset {synset!r}", line)

    def _freeze(self):
        # validate ako acyclicity
        state: dict[str, int] = {}

        def visit(node, stack):
            state[node] = 1
            stack.append(node)
            for parent in self._ako_parents.get(node, ()):
                if state.get(parent) == 1:
                    cycle = stack[stack.index(parent):] + [parent]
                    raise LexiconError(
                        "ako cycle involving " + " -> ".join(cycle))
                if state.get(parent, 0) == 0:
                    visit(parent, stack)
            stack.pop()
            state[node] = 2

        for node in sorted(self._ako_parents):
            if state.get(node, 0) == 0:
                visit(node, [])
        # every preposition sense carries exactly one prep class
        for senses in self._senses.values():
            for s in senses:
                if s.pos == "preposition":
                    classes = {PREP_CLASS_SYNSETS[a]
                               for a in self.superconcepts(s.synset)
                               if a in PREP_CLASS_SYNSETS}
                    if len(classes) != 1:
                        raise LexiconError(
                            f"preposition {s.synset} must have exactly one "
                            f"prep-class ancestor, found {sorted(classes)}")
        self._frozen = True

    # -- queries -----------------------------------------------------------

    def pos_of(self, synset: str) -> str:
        return self._synsets.get(synset, "noun")

    def has_synset(self, synset: str) -> bool:
        return synset in self._synsets

    @property
    def synsets(self):
        return self._synsets.keys()

    @property
    def surfaces(self):
        return self._senses.keys()

    @property
    def alias_surfaces(self):
        return self._aliases.keys()

    @property
    def formats(self):
        return tuple(self._formats)

    def superconcepts(self, synset: str) -> list[str]:
        """ako ancestors, breadth-first nearest-to-farthest, ties by id."""
        if synset not in self._synsets:
            raise KeyError(f"unknown synset {synset!r}")
        seen: list[str] = []
        seen_set = {synset}
        frontier = [synset]
        while frontier:
            nxt = []
            for node in frontier:
                for parent in sorted(self._ako_parents.get(node, ())):
                    if parent not in seen_set:
                        seen_set.add(parent)
                        seen.append(parent)
                        nxt.append(parent)
            frontier = nxt
        return seen

    def ako_children(self, synset: str) -> list[str]:
        kids = [c for c, ps in self._ako_parents.items() if synset in ps]
        return sorted(kids)

    def descends_from(self, synset: str, ancestor: str) -> bool:
        return synset == ancestor or ancestor in self.superconcepts(synset)

    def part_wholes(self, synset: str) -> list[str]:
        return sorted(self._part_wholes.get(synset, ()))

    def prep_class(self, synset: str) -> str | None:
        if synset in PREP_CLASS_SYNSETS:
            return PREP_CLASS_SYNSETS[synset]
        for a in self.superconcepts(synset):
            if a in PREP_CLASS_SYNSETS:
                return PREP_CLASS_SYNSETS[a]
        return None

    def min_rank(self, synset: str) -> int:
        ranks = [s.rank for senses in self._senses.values()
                 for s in senses if s.synset == synset]
        return min(ranks) if ranks else 99

    # -- tokenization -------------------------------------------------------

    _WORD_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789#/-")

    def tokenize(self, text: str) -> list[str]:
        """Split caption text into tokens.

        Special-format rules are tried first at each position (longest match
        wins), which keeps shapes like 'bu# 7074' together across the space;
        otherwise tokens are maximal runs of word characters, and any other
        non-space character becomes its own token.
        """
        if not text:
            raise ValueError("caption text is empty")
        text = text.lower()
        tokens: list[str] = []
        i, n = 0, len(text)
        while i < n:
            if text[i].isspace():
                i += 1
                continue
            best = None
            for rule in self._formats:
                m = rule.regex.match(text, i)
                if m is None:
                    continue
                j = m.end()
                # a format match must end at a token boundary
                if j < n and text[j] in self._WORD_CHARS:
                    continue
                if best is None or j > best:
                    best = j
            if best is not None and best > i:
                tokens.append(text[i:best])
                i = best
                continue
            if text[i] in self._WORD_CHARS:
                j = i
                while j < n and text[j] in self._WORD_CHARS:
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                tokens.append(text[i])
                i += 1
        return tokens

    # -- sense lookup --------------------------------------------------------

    def lookup_senses(self, token: str) -> list[WordSense]:
        """All senses for a token: direct, alias, and morphological variants.

        Ordered by (frequencyRank, synset id); empty means unknown word.
        """
        found: dict[tuple[str, str, str | None], WordSense] = {}

        def add(sense):
            key = (sense.pos, sense.synset, sense.form)
            if key not in found:
                found[key] = sense

        for s in self._senses.get(token, ()):
            add(s)
        for synset in self._aliases.get(token, ()):
            add(WordSense(token, self.pos_of(synset), synset,
                          self.min_rank(synset)))
        for base, form in self._morph_variants(token):
            want_pos = "verb" if form in ("prespart", "pastpart") else None
            for s in self._senses.get(base, ()):
                if form == "plural" and s.pos != "noun":
                    continue
                if form in ("prespart", "pastpart") and s.pos != "verb":
                    continue
                if form == "comparative" and s.pos != "adjective":
                    continue
                if form == "agent" and s.pos != "verb":
                    continue
                pos = "noun" if form == "agent" else s.pos
                add(WordSense(token, pos, s.synset, s.rank, form=form))
            for synset in self._aliases.get(base, ()):
                pos = self.pos_of(synset)
                if form == "plural" and pos == "noun":
                    add(WordSense(token, pos, synset, self.min_rank(synset),
                                  form=form))
        return sorted(found.values(), key=lambda s: (s.rank, s.synset, s.form or ""))

    @staticmethod
    def _morph_variants(token: str):
        """Candidate (base lemma, form) pairs by suffix stripping.

        Four families: plural -s/-es, -ing, -ed, -er; with consonant
        undoubling and final-e restoration.
        """
        out = []
        if len(token) > 3 and token.endswith("ies"):
            out.append((token[:-3] + "y", "plural"))
        if len(token) > 3 and token.endswith("es"):
            out.append((token[:-2], "plural"))
        if len(token) > 2 and token.endswith("s") and not token.endswith("ss"):
            out.append((token[:-1], "plural"))
        for suffix, form in (("ing", "prespart"), ("ed", "pastpart"),
                             ("er", "agent")):
            if len(token) > len(suffix) + 1 and token.endswith(suffix):
                stem = token[: -len(suffix)]
                out.append((stem, form))
                out.append((stem + "e", form))  # moving -> move
                if len(stem) > 2 and stem[-1] == stem[-2]:
                    out.append((stem[:-1], form))  # fitted -> fit
        if len(token) > 3 and token.endswith("ied"):
            out.append((token[:-3] + "y", "pastpart"))  # modified -> modify
        if len(token) > 3 and token.endswith("er"):
            out.append((token[:-2], "comparative"))
        return out

    # -- special formats -------------------------------------------------------

    def classify_special(self, token: str) -> tuple[str, str] | None:
        """(category synset, normalized value) for code-shaped tokens."""
        for rule in self._formats:
            m = rule.regex.fullmatch(token)
            if m is not None:
                return rule.category, _normalize_match(rule, m)
        return None

    # -- misspellings and abbreviations ----------------------------------------

    def resolve_unknown(self, token: str) -> list[tuple[str, str, float]]:
        """Misspelling/abbreviation candidates among known surfaces.

        Misspellings: edit distance <= 2 (<= 1 for tokens under 6 chars).
        Abbreviations: the token is an in-order subsequence of a known
        word's consonant skeleton. Sorted by (edit distance, frequency rank).
        """
        limit = 2 if len(token) >= 6 else 1
        candidates: dict[str, tuple[str, int, int]] = {}
        for surface in list(self._senses) + list(self._aliases):
            if surface == token or len(surface) < 2 or not surface.isalpha():
                continue
            rank = min((s.rank for s in self._senses.get(surface, ())),
                       default=self.min_rank(self._aliases[surface][0])
                       if surface in self._aliases else 99)
            dist = _edit_distance(token, surface, limit)
            if dist is not None and dist <= limit:
                candidates[surface] = ("misspelling", dist, rank)
                continue
            if len(token) < len(surface) and _is_subsequence(
                    token, _consonant_skeleton(surface)):
                full = _edit_distance(token, surface, len(surface))
                candidates[surface] = ("abbreviation", full, rank)
        ordered = sorted(candidates.items(),
                         key=lambda kv: (kv[1][1], kv[1][2], kv[0]))
        return [(surface, kind, float(dist))
                for surface, (kind, dist, _rank) in ordered]


def _consonant_skeleton(word: str) -> str:
    return "".join(ch for ch in word if ch not in VOWELS)


def _is_subsequence(needle: str, haystack: str) -> bool:
    it = iter(haystack)
    return all(ch in it for ch in needle)


def _edit_distance(a: str, b: str, limit: int) -> int | None:
    """Levenshtein distance, or None when it certainly exceeds `limit`."""
    if abs(len(a) - len(b)) > limit:
        return None
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        best = i
        for j, cb in enumerate(b, 1):
            cost = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
            cur.append(cost)
            best = min(best, cost)
        if best > limit:
            return None
        prev = cur
    return prev[-1]


def load_lexicon(lexicon_text: str, hierarchy_text: str,
                 formats_text: str) -> Lexicon:
    """Build and validate a Lexicon from the three flat-file texts."""
    lex = Lexicon()

    for lineno, raw in enumerate(lexicon_text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if parts[0] != "sense" or len(parts) != 5:
            raise LexiconError(f"bad lexicon record {raw!r}", lineno)
        _, surface, pos, synset, rank = parts
        try:
            rank_num = int(rank)
        except ValueError:
            raise LexiconError(f"bad frequency rank {rank!r}", lineno)
        if rank_num < 0:
            raise LexiconError(f"negative frequency rank {rank!r}", lineno)
        lex._add_sense(surface, pos, synset, rank_num, lineno)

    pending_edges = []
    for lineno, raw in enumerate(hierarchy_text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        kind = parts[0]
        if kind == "concept" and len(parts) == 2:
            lex._add_concept(parts[1], lineno)
        elif kind in ("ako", "part", "alias") and len(parts) == 3:
            pending_edges.append((lineno, kind, parts[1], parts[2]))
        else:
            raise LexiconError(f"bad hierarchy record {raw!r}", lineno)

    for lineno, kind, a, b in pending_edges:
        if kind == "ako":
            lex._check_synset(a, lineno)
            lex._check_synset(b, lineno)
            lex._ako_parents.setdefault(a, [])
            if b in lex._ako_parents[a]:
                raise LexiconError(f"duplicate ako edge {a} -> {b}", lineno)
            lex._ako_parents[a].append(b)
        elif kind == "part":
            lex._check_synset(a, lineno)
            lex._check_synset(b, lineno)
            lex._part_wholes.setdefault(a, []).append(b)
        else:  # alias
            if a != a.lower():
                raise LexiconError(f"alias surface {a!r} must be lowercase", lineno)
            lex._check_synset(b, lineno)
            lex._aliases.setdefault(a, []).append(b)

    for lineno, raw in enumerate(formats_text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if parts[0] != "fmt" or len(parts) != 4:
            raise LexiconError(f"bad formats record {raw!r} (tab-separated)", lineno)
        _, name, pattern, category = parts
        lex._check_synset(category, lineno)
        regex, has_date = _compile_pattern(pattern, lineno)
        lex._formats.append(SpecialFormatRule(name, pattern, category,
                                              regex=regex, has_date=has_date))

    lex._freeze()
    return lex


def load_lexicon_files(lexicon_path, hierarchy_path, formats_path) -> Lexicon:
    with open(lexicon_path, encoding="utf-8") as f:
        lexicon_text = f.read()
    with open(hierarchy_path, encoding="utf-8") as f:
        hierarchy_text = f.read()
    with open(formats_path, encoding="utf-8") as f:
        formats_text = f.read()
    return load_lexicon(lexicon_text, hierarchy_text, formats_text)
