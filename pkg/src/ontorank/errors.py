"""Exception types shared across the package."""

from __future__ import annotations


class OntoRankError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OntoRankError):
    """A line of an input file could not be interpreted."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateIdError(OntoRankError):
    def __init__(self, concept_id: str):
        super().__init__(f"concept {concept_id!r} is defined more than once")
        self.concept_id = concept_id


class DanglingReferenceError(OntoRankError):
    def __init__(self, concept_id: str):
        super().__init__(f"is_a target {concept_id!r} is not a defined concept")
        self.concept_id = concept_id


class CycleError(OntoRankError):
    def __init__(self, concept_id: str):
        super().__init__(f"is_a hierarchy contains a cycle through {concept_id!r}")
        self.concept_id = concept_id


class UnknownConceptError(OntoRankError):
    def __init__(self, concept_id: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown concept {concept_id!r}{where}")
        self.concept_id = concept_id
        self.line = line


class UnreachableError(OntoRankError):
    def __init__(self, c1: str, c2: str):
        super().__init__(f"no path between {c1!r} and {c2!r}")
        self.pair = (c1, c2)


class EmptyCorpusError(OntoRankError):
    def __init__(self) -> None:
        super().__init__("corpus contains no documents")


class EmptyInputError(OntoRankError):
    def __init__(self) -> None:
        super().__init__("annotation input contains no data rows")


class DuplicateDocIdError(OntoRankError):
    def __init__(self, doc_id: str):
        super().__init__(f"document {doc_id!r} appears more than once")
        self.doc_id = doc_id


class DegenerateOntologyError(OntoRankError):
    def __init__(self, size: int):
        super().__init__(f"intrinsic information content needs at least 2 concepts, got {size}")
        self.size = size


class NoCommonAncestorError(OntoRankError):
    def __init__(self, c1: str, c2: str):
        super().__init__(f"{c1!r} and {c2!r} share no ancestor")
        self.pair = (c1, c2)


class EmptyScoresError(OntoRankError):
    def __init__(self) -> None:
        super().__init__("cannot aggregate an empty score vector")


class BadQueryError(OntoRankError):
    """The query violates a structural constraint (not concept existence)."""


class WeightMismatchError(BadQueryError):
    def __init__(self, n_weights: int, n_scores: int):
        super().__init__(f"{n_weights} weights given for {n_scores} scores")


class BadWeightsError(BadQueryError):
    pass


class BundleFormatError(OntoRankError):
    """An index bundle file is not in the expected binary format."""
