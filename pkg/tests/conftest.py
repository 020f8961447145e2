import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from unilc2.rings import PolyF2, PolyInt, parse_poly  # noqa: E402


def zx(text: str) -> PolyInt:
    return parse_poly(text, PolyInt)


def f2(text: str) -> PolyF2:
    return parse_poly(text, PolyF2)


def int_polys(max_deg, coeffs=(0, 1, 2)):
    return [PolyInt(t) for t in itertools.product(coeffs, repeat=max_deg + 1)]


def pg_sweep(max_deg=3, coeffs=(0, 1, 2)):
    """All (p, g) with deg <= max_deg, coefficients from the set, and p*g
    having zero constant coefficient."""
    ps = int_polys(max_deg, coeffs)
    return [(p, g) for p in ps for g in ps if (p * g).constant == 0]
