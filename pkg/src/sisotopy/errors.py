"""Exception types shared across the package."""


class SisotopyError(Exception):
    pass


class NotBijective(SisotopyError, ValueError):
    pass


class DegreeMismatch(SisotopyError, ValueError):
    pass


class OrderTooLarge(SisotopyError, ValueError):
    pass


class NotAQuasigroup(SisotopyError, ValueError):
    pass


class NotALoop(SisotopyError, ValueError):
    pass


class NotAGroup(SisotopyError, ValueError):
    pass


class NotSmarandache(SisotopyError, ValueError):
    pass


class NotAnIsotopism(SisotopyError, ValueError):
    pass


class TargetNotSLoop(SisotopyError, ValueError):
    pass


class InvalidSubgroupSize(SisotopyError, ValueError):
    pass
