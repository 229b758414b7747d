"""Document data model, canonical annotation file format, and nested-NER flattening.

A document is pre-tokenized text plus two annotation layers: flat NER alias
mentions (PER only) and coreference chains. Tokens are positional, so a token
is just a string and its index is its position in the token sequence.

The canonical on-disk format is a UTF-8 JSON object::

    {
      "id": "doc_id",
      "tokens": ["One-Eye", "looked", "at", "Goblin", "."],
      "ner": [{"start": 0, "end": 1}, {"start": 3, "end": 4}],
      "coref": [[{"start": 0, "end": 1}], [{"start": 3, "end": 4}]]
    }

Span indices are token offsets, end-exclusive. A coreference mention is an
alias mention exactly when its span also appears in the ``ner`` layer;
otherwise it is a generic mention (pronoun, description, ...).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DocumentFormatError, InvariantError

Span = tuple[int, int]


class MentionKind(Enum):
    ALIAS = "alias"
    GENERIC = "generic"


@dataclass(frozen=True, order=True)
class Mention:
    """An occurrence of a character form at a token span.

    ``form`` is the space-joined text of the span and is cached at
    construction so mentions can travel without their document.
    """

    start: int
    end: int
    kind: MentionKind
    form: str

    @property
    def span(self) -> Span:
        return (self.start, self.end)


@dataclass(frozen=True)
class CorefChain:
    """All mentions of one entity, in document order. Never empty."""

    mentions: tuple[Mention, ...]

    def __iter__(self):
        return iter(self.mentions)

    def __len__(self) -> int:
        return len(self.mentions)

    def spans(self) -> list[Span]:
        return [m.span for m in self.mentions]

    def alias_mentions(self) -> list[Mention]:
        return [m for m in self.mentions if m.kind is MentionKind.ALIAS]

    def sort_key(self) -> tuple:
        return tuple(m.span for m in self.mentions)


@dataclass(frozen=True)
class NestedMention:
    """A mention from a layered (nested) NER annotation scheme."""

    start: int
    end: int
    layer: int = 0


@dataclass(frozen=True)
class Document:
    """Immutable document with flat NER and coreference layers.

    Construct through :meth:`build`, which derives mention forms and kinds,
    normalizes ordering, and checks all invariants.
    """

    id: str
    tokens: tuple[str, ...]
    ner: tuple[Mention, ...]
    coref: tuple[CorefChain, ...]

    @classmethod
    def build(
        cls,
        doc_id: str,
        tokens: Sequence[str],
        ner_spans: Iterable[Span],
        chain_spans: Iterable[Iterable[Span]] = (),
    ) -> "Document":
        tokens = tuple(tokens)
        for i, tok in enumerate(tokens):
            if not isinstance(tok, str) or not tok:
                raise InvariantError(f"token {i} is empty or not a string")

        def form_of(span: Span) -> str:
            return " ".join(tokens[span[0] : span[1]])

        n = len(tokens)
        ner_sorted = sorted((int(s), int(e)) for s, e in ner_spans)
        prev_end = None
        seen: set[Span] = set()
        for span in ner_sorted:
            _check_span(span, n, "ner")
            if span in seen:
                raise InvariantError(f"duplicate ner span {span}")
            if prev_end is not None and span[0] < prev_end:
                raise InvariantError(f"overlapping ner spans at {span}")
            seen.add(span)
            prev_end = max(prev_end, span[1]) if prev_end is not None else span[1]
        ner = tuple(Mention(s, e, MentionKind.ALIAS, form_of((s, e))) for s, e in ner_sorted)
        ner_set = set(ner_sorted)

        chains = []
        for raw_chain in chain_spans:
            spans = sorted((int(s), int(e)) for s, e in raw_chain)
            if not spans:
                raise InvariantError("empty coreference chain")
            mentions = []
            for span in spans:
                _check_span(span, n, "coref")
                kind = MentionKind.ALIAS if span in ner_set else MentionKind.GENERIC
                mentions.append(Mention(span[0], span[1], kind, form_of(span)))
            chains.append(CorefChain(tuple(mentions)))
        chains.sort(key=CorefChain.sort_key)
        return cls(id=doc_id, tokens=tokens, ner=ner, coref=tuple(chains))

    def ner_spans(self) -> list[Span]:
        return [m.span for m in self.ner]

    def chain_spans(self) -> list[list[Span]]:
        return [chain.spans() for chain in self.coref]

    def replace_annotations(
        self,
        ner_spans: Iterable[Span] | None = None,
        chain_spans: Iterable[Iterable[Span]] | None = None,
    ) -> "Document":
        """Rebuild this document with new annotation layers (revalidates)."""
        return Document.build(
            self.id,
            self.tokens,
            self.ner_spans() if ner_spans is None else ner_spans,
            self.chain_spans() if chain_spans is None else chain_spans,
        )


def _check_span(span: Span, n_tokens: int, field: str) -> None:
    start, end = span
    if not (0 <= start < end <= n_tokens):
        raise InvariantError(f"{field} span {span} out of bounds for {n_tokens} tokens")


def read_document(path: str | Path) -> Document:
    """Read a canonical-format document file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentFormatError(str(exc), path=str(path)) from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            path=str(path),
        ) from exc
    if not isinstance(obj, dict):
        raise DocumentFormatError("top-level value must be an object", path=str(path))
    for key in ("id", "tokens", "ner", "coref"):
        if key not in obj:
            raise DocumentFormatError(f"missing field '{key}'", path=str(path), field=key)
    try:
        ner_spans = [_span_from_json(m, "ner") for m in obj["ner"]]
        chain_spans = [
            [_span_from_json(m, f"coref[{i}]") for m in chain]
            for i, chain in enumerate(obj["coref"])
        ]
    except (TypeError, KeyError, ValueError) as exc:
        raise DocumentFormatError(str(exc), path=str(path)) from exc
    try:
        return Document.build(str(obj["id"]), obj["tokens"], ner_spans, chain_spans)
    except InvariantError as exc:
        raise DocumentFormatError(str(exc), path=str(path)) from exc


def _span_from_json(value, field: str) -> Span:
    if not isinstance(value, dict) or "start" not in value or "end" not in value:
        raise ValueError(f"{field}: mention must be an object with 'start' and 'end'")
    return (int(value["start"]), int(value["end"]))


def document_to_json(doc: Document) -> str:
    """Serialize to the canonical byte-stable form (sorted keys, compact)."""
    obj = {
        "id": doc.id,
        "tokens": list(doc.tokens),
        "ner": [{"start": m.start, "end": m.end} for m in doc.ner],
        "coref": [
            [{"start": m.start, "end": m.end} for m in chain] for chain in doc.coref
        ],
    }
    return json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n"


def write_document(doc: Document, path: str | Path) -> None:
    Path(path).write_text(document_to_json(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# Mention normalization and nested-NER flattening
# ---------------------------------------------------------------------------

def trim_mention(tokens: Sequence[str], determiners: Iterable[str]) -> list[str]:
    """Strip leading determiners and cut everything from the first comma on.

    May return an empty list (e.g. a determiner-only mention).
    """
    determiners = {d.lower() for d in determiners}
    out = list(tokens)
    while out and out[0].lower() in determiners:
        out.pop(0)
    if "," in out:
        out = out[: out.index(",")]
    return out


def is_alias_form(tokens: Sequence[str], stopwords: Iterable[str]) -> bool:
    """True when every token is capitalized or a stopword, with at least one
    capitalized non-stopword token."""
    if not tokens:
        return False
    stopwords = {s.lower() for s in stopwords}
    has_content = False
    for tok in tokens:
        capitalized = bool(tok) and tok[0].isupper()
        stop = tok.lower() in stopwords
        if not capitalized and not stop:
            return False
        if capitalized and not stop:
            has_content = True
    return has_content


def flatten_nested_ner(
    nested: Iterable[NestedMention],
    tokens: Sequence[str],
    determiners: Iterable[str],
    stopwords: Iterable[str],
) -> list[Mention]:
    """Flatten layered alias annotations into a non-overlapping mention list.

    Each mention is first trimmed (leading determiners, first-comma cut) and
    then dropped unless it still looks like an alias form. Among surviving
    overlapping mentions only the outermost is kept; partial overlaps are
    resolved in favor of the earlier start (longer span on equal starts).
    """
    det_lower = {d.lower() for d in determiners}
    stopwords = set(stopwords)
    n = len(tokens)
    candidates: set[Span] = set()
    for m in nested:
        if not (0 <= m.start < m.end <= n):
            raise InvariantError(f"nested span ({m.start}, {m.end}) out of bounds")
        words = list(tokens[m.start : m.end])
        offset = 0
        while offset < len(words) and words[offset].lower() in det_lower:
            offset += 1
        trimmed = words[offset:]
        if "," in trimmed:
            trimmed = trimmed[: trimmed.index(",")]
        if not trimmed or not is_alias_form(trimmed, stopwords):
            continue
        candidates.add((m.start + offset, m.start + offset + len(trimmed)))

    kept: list[Span] = []
    for span in sorted(candidates, key=lambda s: (s[0], -s[1])):
        if any(span[0] < e and s < span[1] for s, e in kept):
            continue
        kept.append(span)
    kept.sort()
    return [
        Mention(s, e, MentionKind.ALIAS, " ".join(tokens[s:e])) for s, e in kept
    ]


# ---------------------------------------------------------------------------
# Litbank-style layered TSV ingestion
# ---------------------------------------------------------------------------

NER_LAYER_COUNT = 4


def read_layered_tsv(path: str | Path) -> tuple[list[str], list[NestedMention]]:
    """Read a layered BIO annotation file into tokens plus nested mentions.

    Expected layout: one token per line, tab-separated, with the token
    followed by ``NER_LAYER_COUNT`` BIO tags (``B-PER``/``I-PER``/``O``; other
    categories are ignored). Blank lines are sentence separators and carry no
    token index of their own.
    """
    path = Path(path)
    tokens: list[str] = []
    open_spans: list[int | None] = [None] * NER_LAYER_COUNT
    mentions: list[NestedMention] = []

    def close(layer: int, end: int) -> None:
        if open_spans[layer] is not None:
            mentions.append(NestedMention(open_spans[layer], end, layer))
            open_spans[layer] = None

    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 1 + NER_LAYER_COUNT:
                raise DocumentFormatError(
                    f"line {lineno}: expected token and {NER_LAYER_COUNT} tag columns",
                    path=str(path),
                )
            token = cols[0]
            if not token:
                raise DocumentFormatError(f"line {lineno}: empty token", path=str(path))
            index = len(tokens)
            tokens.append(token)
            for layer in range(NER_LAYER_COUNT):
                tag = cols[1 + layer].strip()
                if tag.startswith("B-"):
                    close(layer, index)
                    if tag == "B-PER":
                        open_spans[layer] = index
                elif tag.startswith("I-"):
                    if tag != "I-PER" or open_spans[layer] is None:
                        close(layer, index)
                else:
                    close(layer, index)
    for layer in range(NER_LAYER_COUNT):
        close(layer, len(tokens))
    return tokens, mentions


def read_chains_file(path: str | Path) -> list[list[Span]]:
    """Read coreference chains: one chain per line, ``start:end`` per mention."""
    path = Path(path)
    chains: list[list[Span]] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            chain: list[Span] = []
            for item in line.split():
                try:
                    start_s, end_s = item.split(":")
                    chain.append((int(start_s), int(end_s)))
                except ValueError as exc:
                    raise DocumentFormatError(
                        f"line {lineno}: bad mention '{item}', expected start:end",
                        path=str(path),
                    ) from exc
            chains.append(chain)
    return chains
