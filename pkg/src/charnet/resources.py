"""Editable word lists backing mention normalization and unification rules.

All resources ship as plain UTF-8 data files inside the package and can be
overridden with user-supplied files of the same format:

* determiners / stopwords: one word per line
* titles: ``title<TAB>gender`` per line, gender in ``{M, F, -}``
* hypocorism gazetteer: one equivalence class per line, comma-separated
* pronouns: ``pronoun<TAB>gender`` per line
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path


@dataclass(frozen=True)
class Lexicon:
    determiners: frozenset[str]
    stopwords: frozenset[str]
    titles: dict[str, str | None]          # lowercased title -> "M" | "F" | None
    hypocorisms: dict[str, frozenset[str]]  # lowercased name -> equivalence-class ids
    pronouns: dict[str, str]                # lowercased pronoun -> "M" | "F"


def _data_text(name: str) -> str:
    return importlib_resources.files("charnet.data").joinpath(name).read_text("utf-8")


def _lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_word_list(text: str) -> frozenset[str]:
    return frozenset(w.lower() for w in _lines(text))


def load_titles(text: str) -> dict[str, str | None]:
    titles: dict[str, str | None] = {}
    for line in _lines(text):
        parts = line.split("\t")
        title = parts[0].strip().lower()
        gender = parts[1].strip().upper() if len(parts) > 1 else "-"
        titles[title] = gender if gender in ("M", "F") else None
    return titles


def load_gazetteer(text: str) -> dict[str, frozenset[str]]:
    classes: dict[str, set[str]] = {}
    for line in _lines(text):
        names = [n.strip().lower() for n in line.split(",") if n.strip()]
        if len(names) < 2:
            continue
        class_id = names[0]
        for name in names:
            classes.setdefault(name, set()).add(class_id)
    return {name: frozenset(ids) for name, ids in classes.items()}


def load_pronouns(text: str) -> dict[str, str]:
    pronouns: dict[str, str] = {}
    for line in _lines(text):
        parts = line.split("\t")
        if len(parts) >= 2 and parts[1].strip().upper() in ("M", "F"):
            pronouns[parts[0].strip().lower()] = parts[1].strip().upper()
    return pronouns


def load_lexicon(
    determiners_path: str | Path | None = None,
    stopwords_path: str | Path | None = None,
    titles_path: str | Path | None = None,
    gazetteer_path: str | Path | None = None,
    pronouns_path: str | Path | None = None,
) -> Lexicon:
    """Build a lexicon from override files, falling back to packaged defaults."""

    def text_of(path: str | Path | None, default_name: str) -> str:
        if path is None:
            return _data_text(default_name)
        return Path(path).read_text(encoding="utf-8")

    return Lexicon(
        determiners=load_word_list(text_of(determiners_path, "determiners.txt")),
        stopwords=load_word_list(text_of(stopwords_path, "stopwords.txt")),
        titles=load_titles(text_of(titles_path, "titles.tsv")),
        hypocorisms=load_gazetteer(text_of(gazetteer_path, "hypocorisms.txt")),
        pronouns=load_pronouns(text_of(pronouns_path, "pronouns.tsv")),
    )


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return load_lexicon()
