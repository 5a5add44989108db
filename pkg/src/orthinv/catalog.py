"""Reference towers used by the acceptance suite and the scripts.

Each entry records the y-invariant it is expected to have; that value is
derived independently (quadratic subextensions counted by hand), not read
back from the library.
"""

from dataclasses import dataclass

from .field import Ram, TowerSpec, Unram


@dataclass(frozen=True)
class CatalogTower:
    spec: TowerSpec
    expected_y: int

    @property
    def degree(self):
        return self.spec.degree


def _t(p, *steps, y):
    return CatalogTower(TowerSpec(p, tuple(steps)), y)


CATALOG = (
    _t(5, Ram(2), y=2),
    _t(3, Unram(2), y=2),
    _t(7, Ram(2, 1), y=2),
    _t(5, Unram(3), y=1),
    _t(7, Ram(3), y=1),
    _t(7, Unram(3), y=1),
    _t(5, Unram(2), Ram(2), y=4),
    _t(3, Ram(2), Unram(2), y=4),
    _t(7, Unram(2), Ram(2), y=4),
    _t(7, Unram(2), Ram(2, 1), y=2),
    _t(5, Ram(2), Ram(2, 1), y=2),
    _t(5, Unram(4), y=2),
    _t(7, Ram(4), y=2),
    _t(3, Unram(2), Ram(2, 1), y=2),
    _t(7, Unram(2), Ram(3), y=2),
    _t(5, Unram(3), Ram(2), y=2),
    _t(3, Ram(2), Unram(3), y=2),
)


def catalog(degree=None, p=None):
    return [t for t in CATALOG if (degree is None or t.degree == degree) and (p is None or t.spec.p == p)]
