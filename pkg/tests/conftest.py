import pytest

from freeprod import (
    FiniteCyclicGroup,
    FiniteTableGroup,
    FreeFactorGroup,
    FreeProduct,
    InfiniteCyclicGroup,
)

# Symmetric group on {0,1,2}, composed as mappings (p*q)(i) = p[q[i]].
# Built from raw permutation tuples so the table is an oracle independent
# of any group code in the package.
S3_PERMS = [
    (0, 1, 2),
    (1, 0, 2),
    (0, 2, 1),
    (2, 1, 0),
    (1, 2, 0),
    (2, 0, 1),
]


def s3_table() -> list[list[int]]:
    index = {p: i for i, p in enumerate(S3_PERMS)}
    return [
        [index[tuple(p[q[i]] for i in range(3))] for q in S3_PERMS]
        for p in S3_PERMS
    ]


def make_s3() -> FiniteTableGroup:
    return FiniteTableGroup(
        s3_table(),
        generators=(1, 4),
        element_names=("e", "s", "u", "v", "c", "d"),
    )


@pytest.fixture(scope="session")
def z2z3() -> FreeProduct:
    return FreeProduct(FiniteCyclicGroup(2, letter="a"), FiniteCyclicGroup(3, letter="b"))


@pytest.fixture(scope="session")
def z2z2() -> FreeProduct:
    return FreeProduct(FiniteCyclicGroup(2, letter="a"), FiniteCyclicGroup(2, letter="b"))


@pytest.fixture(scope="session")
def zz() -> FreeProduct:
    return FreeProduct(InfiniteCyclicGroup(letter="t"), InfiniteCyclicGroup(letter="u"))


@pytest.fixture(scope="session")
def s3() -> FiniteTableGroup:
    return make_s3()


@pytest.fixture(scope="session")
def s3_z2(s3) -> FreeProduct:
    return FreeProduct(s3, FiniteCyclicGroup(2, letter="w"))


@pytest.fixture(scope="session")
def free_free() -> FreeProduct:
    return FreeProduct(FreeFactorGroup(2, names=("x1", "x2")), FreeFactorGroup(1, names=("y1",)))
