"""Exception types shared across the package."""


class TopicforgeError(Exception):
    """Base class for all package-specific errors."""


class MalformedCsvError(TopicforgeError):
    def __init__(self, path, row):
        super().__init__(f"{path}: malformed CSV at row {row}")
        self.row = row


class MissingColumnError(TopicforgeError):
    def __init__(self, path, column):
        super().__init__(f"{path}: column {column!r} not found")
        self.column = column


class EmptyVocabularyError(TopicforgeError):
    def __init__(self):
        super().__init__("no term survives document-frequency pruning")


class InvalidKError(TopicforgeError):
    def __init__(self, k, limit):
        super().__init__(f"topic count k={k} outside valid range [1, {limit}]")


class NotRawCountError(TopicforgeError):
    def __init__(self):
        super().__init__("model requires a raw-count matrix, got TF-IDF weights")


class LengthMismatchError(TopicforgeError):
    def __init__(self, got, expected):
        super().__init__(f"weight vector length {got} != vocabulary size {expected}")


class NotStochasticError(TopicforgeError):
    def __init__(self, row):
        super().__init__(f"doc-topic row {row} does not sum to 1")


class UnknownTermError(TopicforgeError):
    def __init__(self, term):
        super().__init__(f"term {term!r} not in vocabulary")


class VocabularyMismatchError(TopicforgeError):
    def __init__(self, got, expected):
        super().__init__(
            f"model topic-term width {got} does not match vocabulary size {expected}"
        )
