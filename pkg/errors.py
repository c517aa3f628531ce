# ifsynth/errors.py
"""Exception hierarchy shared by every package.

Each error class carries the process exit code the command line maps it to.
"""

EXIT_OK = 0
EXIT_UNREALIZABLE = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_INPUT_ERROR = 3


class ToolkitError(Exception):
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message, details=None):
        super().__init__(message)
        self.message = message
        self.details = details or []


# Input errors

class InputError(ToolkitError):
    pass


class LtlSyntaxError(InputError):
    def __init__(self, message, line=None, column=None):
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class UndeclaredAtomError(InputError):
    def __init__(self, atoms):
        names = ", ".join(sorted(atoms))
        super().__init__(f"Undeclared atom(s): {names}")
        self.atoms = frozenset(atoms)


class ArchitectureError(InputError):
    """Raised with every violated architecture invariant listed in details."""


class SpecFileError(InputError):
    def __init__(self, message, line=None):
        location = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line


class AlphabetMismatchError(InputError):
    pass


class BenchmarkError(InputError):
    pass


# Analysis errors

class AnalysisError(ToolkitError):
    pass


class UnsupportedFragmentError(AnalysisError):
    pass


class ClassExtractionError(AnalysisError):
    pass


class RelativizationError(AnalysisError):
    pass


# Solver errors

class SynthesisError(ToolkitError):
    pass


class SolverError(SynthesisError):
    pass


class SolverNotFoundError(SolverError):
    pass


class MalformedSolverOutputError(SolverError):
    pass


# Composition errors

class CompositionError(ToolkitError):
    exit_code = EXIT_VERIFICATION_FAILED


class LocalityViolationError(CompositionError):
    def __init__(self, message, local_word=None):
        super().__init__(message)
        self.local_word = local_word


class TokenMismatchError(CompositionError):
    pass


class DecoderError(CompositionError):
    pass


class CompositionCapError(CompositionError):
    pass
