"""Exception hierarchy shared by every grafrec module."""


class GrafrecError(Exception):
    """Base class for all library errors."""


class ValidationError(GrafrecError, ValueError):
    """Input data violates a model constraint."""


class DuplicateArc(ValidationError):
    def __init__(self, src, dst):
        super().__init__(f"duplicate arc {src!r} -> {dst!r}")
        self.src = src
        self.dst = dst


class BadId(ValidationError):
    def __init__(self, node):
        super().__init__(f"node id must be a non-negative integer, got {node!r}")
        self.node = node


class SelfLoop(ValidationError):
    def __init__(self, node):
        super().__init__(f"self-loop on node {node!r} is not supported")
        self.node = node


class UnknownNode(GrafrecError, KeyError):
    def __init__(self, node, what="node"):
        super().__init__(node)
        self.node = node
        self.what = what

    def __str__(self):
        return f"unknown {self.what} {self.node!r}"


class UnknownKernel(UnknownNode):
    def __init__(self, node):
        super().__init__(node, "kernel")


class UnknownObject(UnknownNode):
    def __init__(self, node):
        super().__init__(node, "object")


class UnknownUser(UnknownNode):
    def __init__(self, node):
        super().__init__(node, "user")


class UnknownClass(UnknownNode):
    def __init__(self, node):
        super().__init__(node, "class")


class TypeMismatch(ValidationError):
    pass


class InvalidPattern(ValidationError):
    pass


class OutOfScale(ValidationError):
    def __init__(self, user, obj, value, scale):
        super().__init__(f"rating {value!r} for ({user!r}, {obj!r}) outside scale {scale[0]}..{scale[1]}")
        self.user = user
        self.obj = obj
        self.value = value


class WrongNodeType(TypeMismatch):
    pass


class EmptyGraph(ValidationError):
    pass


class DanglingNode(ValidationError):
    def __init__(self, node):
        super().__init__(f"node {node!r} has no outgoing links")
        self.node = node


class NotStronglyConnected(ValidationError):
    pass


class SingularSystem(GrafrecError, ArithmeticError):
    pass


class ParseError(GrafrecError, ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message, line=0, path=None):
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}: {message}" if line else f"{where} {message}".strip())
        self.line = line
        self.path = path
