"""Exception hierarchy shared by every module and the CLI (domain errors exit with 1)."""


class BicoarseError(Exception):
    """Base class for domain errors."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class InvalidCharacter(BicoarseError):
    code = "InvalidCharacter"

    def __init__(self, position, char=None):
        self.position = position
        self.char = char
        super().__init__(f"invalid character {char!r} at position {position}")

    def to_json(self):
        return {**super().to_json(), "position": self.position}


class RankExceeded(BicoarseError):
    code = "RankExceeded"


class AlphabetMismatch(BicoarseError):
    code = "AlphabetMismatch"


class EmptyPattern(BicoarseError):
    code = "EmptyPattern"


class EmptyWord(BicoarseError):
    code = "EmptyWord"


class OracleBoundExceeded(BicoarseError):
    code = "OracleBoundExceeded"


class Unreached(BicoarseError):
    code = "Unreached"


class BallTooLarge(BicoarseError):
    code = "BallTooLarge"


class InvalidPieceSet(BicoarseError):
    code = "InvalidPieceSet"

    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        if self.pair is not None:
            out["pair"] = [str(p) for p in self.pair]
        return out


class InvalidBase(BicoarseError):
    code = "InvalidBase"


class AsymmetricRule(BicoarseError):
    code = "AsymmetricRule"


class InvalidQuasimorphism(BicoarseError):
    code = "InvalidQuasimorphism"


class InfeasibleN(BicoarseError):
    code = "InfeasibleN"


class QContainsQ(BicoarseError):
    code = "QContainsQ"


class NonPrimeInput(BicoarseError):
    code = "NonPrimeInput"


class SampleNotClosed(BicoarseError):
    code = "SampleNotClosed"
