class DualRootsException(Exception):
    exit_code: int = 1

    def __init__(
        self,
        *args: object,
        code: int = None,
    ) -> None:
        """Base exception for the dual roots lab

        Args:
            code (int, optional): The process exit code to use when the
                exception reaches the command line. Defaults to the class
                exit_code.
        """
        if code is not None:
            if not isinstance(code, int):
                try:
                    code = int(code)
                except Exception:
                    code = None
        if code is not None:
            self.exit_code = code
        self.message = "\n".join([str(v) for v in args])
        super().__init__(*args)

    def __str__(self) -> str:
        return self.message


class DualRootsDomainException(DualRootsException):
    """A parameter is outside the range an operation or theorem is stated for"""

    exit_code = 3


class DualRootsConfigException(DualRootsDomainException):
    """Invalid run configuration (unparseable rationals, empty grids ...)"""

    exit_code = 3


class ZeroPolynomialException(DualRootsException):
    pass


class InexactDivisionException(DualRootsException):
    pass


class TheoremViolationException(DualRootsException):
    def __init__(
        self,
        *args: object,
        theorem_id: str = None,
        witness: dict = None,
    ) -> None:
        """Raised when a checked statement is found false on a certified witness.

        Args:
            theorem_id (str, optional): The id of the violated statement.
            witness (dict, optional): JSON ready description of the violation.
        """
        super().__init__(*args)
        self.theorem_id = theorem_id
        self.witness = witness or {}

    def __str__(self) -> str:
        val = super().__str__()
        if self.theorem_id:
            val = f"[{self.theorem_id}] {val}"
        return val
