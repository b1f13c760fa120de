"""Domain error hierarchy.

Every error carries a stable ``error_code`` (its class name) that the HTTP
layer serializes as ``{"error_code": ..., "message": ...}`` and the batch
tools embed in per-row failure markers.
"""


class ScreeningError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def error_code(self) -> str:
        return type(self).__name__


# -- audio decoding / feature extraction --------------------------------------

class MalformedContainer(ScreeningError):
    """Byte stream is not a well-formed RIFF/WAVE container."""


class UnsupportedEncoding(ScreeningError):
    """WAV encoding other than PCM16 / float32 with at most two channels."""


class EmptyAudio(ScreeningError):
    """WAV container holds zero data samples."""


class DegenerateBand(ScreeningError):
    """Adjacent mel filter centers collapsed onto the same FFT bin."""


class TooShort(ScreeningError):
    """Clip shorter than one analysis frame."""


# -- model weight files / inference --------------------------------------------

class BadMagic(ScreeningError):
    """Weight container header is missing, truncated, or unparseable."""


class VersionUnsupported(ScreeningError):
    """Weight container declares an unknown format version."""


class ShapeMismatch(ScreeningError):
    """Declared array shapes disagree with each other or with the byte blob."""


class NonFiniteWeight(ScreeningError):
    """A model parameter is NaN/Inf, or a standardization scale is not positive."""


class DimensionMismatch(ScreeningError):
    """Feature dimensionality does not match the model input dimension."""


# -- symptom encoding / decision tree ------------------------------------------

class MissingField(ScreeningError):
    """A required questionnaire field is absent."""


class EmptyDataset(ScreeningError):
    """Tree training invoked with no samples."""


class SchemaMismatch(ScreeningError):
    """Feature vector length does not match the tree's schema."""


# -- fusion ---------------------------------------------------------------------

class NoUsableScores(ScreeningError):
    """Every provided source carries zero fusion weight."""


class MissingSource(ScreeningError):
    """A required source is absent under the fail missing-policy."""


# -- session service -------------------------------------------------------------

class StorageUnavailable(ScreeningError):
    """Session store could not read or write its backing files."""


class UnknownSession(ScreeningError):
    """No session with the given id."""


class SessionClosed(ScreeningError):
    """Session is no longer accepting submissions."""


class SchemaViolation(ScreeningError):
    """Submitted metadata or symptoms do not match the declared schema."""


class PayloadTooLarge(ScreeningError):
    """Upload exceeds the configured byte limit."""


class TooShortOrLong(ScreeningError):
    """Clip duration outside the admissible range."""


class SilentClip(ScreeningError):
    """Clip RMS below the silence threshold; unusable for scoring."""


class UnknownCategory(ScreeningError):
    """String is not one of the nine sound category identifiers."""


class NothingToScore(ScreeningError):
    """Session holds neither symptoms nor any recording."""


class ModelMissing(ScreeningError):
    """No weight file available for a category that needs scoring."""


# -- evaluation -------------------------------------------------------------------

class SingleClass(ScreeningError):
    """ROC/AUC requested but labels contain only one class."""
