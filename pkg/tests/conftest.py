import functools
from fractions import Fraction

from hypothesis import HealthCheck, settings

from twisted_poisson.coordring import CoordRing
from twisted_poisson.liealg import build_d
from twisted_poisson.rootdata import TwistForm, build_cartan, cartan_matrix_for_type

settings.register_profile(
    "exact", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")

# fixed non-zero twists used wherever a "random u" is needed outside the seeded CLI path
TWISTS = {
    "A2": ((0, Fraction(5, 3)), (Fraction(-5, 3), 0)),
    "B2": ((0, Fraction(-7, 2)), (Fraction(7, 2), 0)),
    "A3": ((0, Fraction(1, 2), Fraction(-3, 4)), (Fraction(-1, 2), 0, 2), (Fraction(3, 4), -2, 0)),
}


@functools.lru_cache(maxsize=None)
def cartan(type_name: str):
    return build_cartan(cartan_matrix_for_type(type_name))


@functools.lru_cache(maxsize=None)
def algebra(type_name: str, twisted: bool = False):
    cd = cartan(type_name)
    tf = TwistForm.from_entries(cd, TWISTS[type_name]) if twisted else None
    return build_d(cd, tf)


@functools.lru_cache(maxsize=None)
def ring(type_name: str, twisted: bool = False) -> CoordRing:
    return CoordRing(algebra(type_name, twisted))
