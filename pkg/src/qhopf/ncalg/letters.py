"""Generator letters and their integer codes.

A letter is a small int ``block * 4 + sub``.  Comparing codes compares the
word order: block first (xi < x=y_0 < y_1 < ... < rho_1 < ... < pd < Lam),
then the within-block rank of the quaternionic index pair.
"""

from __future__ import annotations

MAX_COPIES = 8

XI_BLOCK = 0
Y_BLOCK0 = 1  # y_mu lives in block 1 + mu, x = y_0
RHO_BLOCK0 = 10  # rho_mu (mu >= 1) lives in block 10 + mu
D_BLOCK = 20
LAM_BLOCK = 21

LAM = LAM_BLOCK * 4
LAMINV = LAM_BLOCK * 4 + 1

# Default within-block order of index pairs (flat A = 2(a-1) + (b-1)):
# 11 < 22 < 12 < 21.  With this order the q-determinant word x11 x22 is a
# leading term, which the localized det elimination needs.
DEFAULT_ORDER = (0, 3, 1, 2)
NATURAL_ORDER = (0, 1, 2, 3)


class UnknownGenerator(ValueError):
    pass


class Alphabet:
    """Encode/decode letters for a chosen within-block index order."""

    def __init__(self, order=DEFAULT_ORDER):
        order = tuple(order)
        if sorted(order) != [0, 1, 2, 3]:
            raise ValueError(f"bad index order {order}")
        self.order = order
        self.rank = {A: r for r, A in enumerate(order)}

    # constructors
    def xi(self, A: int) -> int:
        return XI_BLOCK * 4 + self.rank[A]

    def y(self, mu: int, A: int) -> int:
        if not 0 <= mu <= MAX_COPIES:
            raise UnknownGenerator(f"copy index {mu} out of range")
        return (Y_BLOCK0 + mu) * 4 + self.rank[A]

    def x(self, A: int) -> int:
        return self.y(0, A)

    def rho(self, mu: int) -> int:
        if not 1 <= mu <= MAX_COPIES:
            raise UnknownGenerator(f"rho index {mu} out of range")
        return (RHO_BLOCK0 + mu) * 4

    def pd(self, A: int) -> int:
        return D_BLOCK * 4 + self.rank[A]

    # decoding
    @staticmethod
    def block(code: int) -> int:
        return code >> 2

    def pair(self, code: int) -> int:
        return self.order[code & 3]

    @staticmethod
    def kind(code: int) -> str:
        b = code >> 2
        if b == XI_BLOCK:
            return "xi"
        if b == Y_BLOCK0:
            return "x"
        if Y_BLOCK0 < b <= Y_BLOCK0 + MAX_COPIES:
            return "y"
        if RHO_BLOCK0 < b <= RHO_BLOCK0 + MAX_COPIES:
            return "rho"
        if b == D_BLOCK:
            return "pd"
        if b == LAM_BLOCK:
            return "lam"
        raise UnknownGenerator(code)

    @staticmethod
    def copy(code: int) -> int:
        b = code >> 2
        if Y_BLOCK0 <= b <= Y_BLOCK0 + MAX_COPIES:
            return b - Y_BLOCK0
        if RHO_BLOCK0 < b <= RHO_BLOCK0 + MAX_COPIES:
            return b - RHO_BLOCK0
        return 0

    def name(self, code: int) -> str:
        k = self.kind(code)
        if k == "lam":
            return "Lam" if code == LAM else "Laminv"
        if k == "rho":
            return f"rho[{self.copy(code)}]"
        A = self.pair(code)
        a, b = divmod(A, 2)
        if k == "xi":
            return f"xi[{a + 1},{b + 1}]"
        if k == "x":
            return f"x[{a + 1},{b + 1}]"
        if k == "pd":
            return f"pd[{a + 1},{b + 1}]"
        return f"y[{self.copy(code)},{a + 1},{b + 1}]"

    def word_str(self, word) -> str:
        return "*".join(self.name(c) for c in word)
