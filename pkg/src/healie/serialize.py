"""JSON encoding of scalars, elements, weights and roots, plus expression rendering."""

from __future__ import annotations

from fractions import Fraction

from .lattice import bar
from .scalars import CyclotomicField, CycScalar
from .structure import RootDatum, Weight
from .tau import TauAlgebra, TauElement
from .toroidal import ToroidalElement


class SerializationError(ValueError):
    pass


# -- scalars -----------------------------------------------------------------


def scalar_to_json(c) -> dict:
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return {"rational": [c.numerator, c.denominator]}
    if c.is_rational():
        f = c.to_fraction()
        return {"rational": [f.numerator, f.denominator]}
    return {"cyclotomic": [[e, v.numerator, v.denominator] for e, v in sorted(c.coeffs.items())]}


def scalar_from_json(field: CyclotomicField, obj) -> CycScalar:
    """Accepts {"rational": [p, q]}, {"cyclotomic": [[e, p, q], ...]}, ints and "p/q" strings."""
    if isinstance(obj, bool):
        raise SerializationError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        try:
            return field(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise SerializationError(f"bad scalar {obj!r}") from exc
    if isinstance(obj, dict) and len(obj) == 1:
        if "rational" in obj:
            p, q = obj["rational"]
            if q == 0:
                raise SerializationError("zero denominator")
            return field(Fraction(int(p), int(q)))
        if "cyclotomic" in obj:
            terms = []
            for e, p, q in obj["cyclotomic"]:
                if q == 0:
                    raise SerializationError("zero denominator")
                terms.append((int(e), Fraction(int(p), int(q))))
            return field.from_powers(terms)
    raise SerializationError(f"bad scalar {obj!r}")


def scalar_text(c) -> str:
    """Rendering that the expression parser reads back."""
    if isinstance(c, CycScalar) and not c.is_rational():
        return f"({c})"
    return str(c.to_fraction() if isinstance(c, CycScalar) else Fraction(c))


# -- vectors and degrees -------------------------------------------------------------


def _deg(r) -> list[int]:
    return [int(x) for x in r]


def _vector_json(tau: TauAlgebra, v: dict) -> dict:
    return {tau.g.labels[i]: scalar_to_json(c) for i, c in sorted(v.items())}


def _vector_from(tau: TauAlgebra, obj: dict) -> dict:
    out = {}
    for lab, s in obj.items():
        if lab not in tau.g.index:
            raise SerializationError(f"unknown basis label {lab!r}")
        c = scalar_from_json(tau.field, s)
        if c:
            out[tau.g.index[lab]] = c
    return out


def _indexed_json(d: dict) -> dict:
    return {str(i + 1): scalar_to_json(c) for i, c in sorted(d.items())}


def _indexed_from(tau: TauAlgebra, obj: dict) -> dict:
    out = {}
    for key, s in obj.items():
        i = int(key) - 1
        if not 0 <= i < tau.n:
            raise SerializationError(f"index {key} out of range 1..{tau.n}")
        c = scalar_from_json(tau.field, s)
        if c:
            out[i] = c
    return out


# -- tau elements ---------------------------------------------------------------


def element_to_json(tau: TauAlgebra, x: TauElement) -> dict:
    return {
        "expr": render(tau, x),
        "loop": [{"degree": _deg(r), "vector": _vector_json(tau, v)} for r, v in sorted(x.loop.items())],
        "K": _indexed_json(x.c0),
        "central": [
            {"degree": _deg(r), "basis": [_deg(bar(r)), _deg(r)], "coeff": scalar_to_json(c)}
            for r, c in sorted(x.cen.items())
        ],
        "d": _indexed_json(x.d0),
        "hamiltonian": [{"degree": _deg(r), "coeff": scalar_to_json(c)} for r, c in sorted(x.ham.items())],
    }


def element_from_json(tau: TauAlgebra, obj: dict) -> TauElement:
    """Inverse of ``element_to_json``; loop terms are checked against their eigenspaces."""
    out = tau.zero()
    lat = tau.lattice
    for term in obj.get("loop", []):
        r = lat.check(term["degree"])
        v = _vector_from(tau, term["vector"])
        if v:
            out = out + tau.loop(v, r)
    out.c0.update(_indexed_from(tau, obj.get("K", {})))
    out.d0.update(_indexed_from(tau, obj.get("d", {})))
    for term in obj.get("central", []):
        r = lat.check(term["degree"])
        if r == lat.zero or not lat.in_gamma_bar(r):
            raise SerializationError(f"central degree {r} must be a nonzero point of Gamma_bar")
        c = scalar_from_json(tau.field, term["coeff"])
        if c:
            out.cen[r] = c
    for term in obj.get("hamiltonian", []):
        r = lat.check(term["degree"])
        c = scalar_from_json(tau.field, term["coeff"])
        out = out + tau.ham(r, c)
    return out


def render(tau: TauAlgebra, x: TauElement) -> str:
    """A parser-readable expression for x."""
    terms = []

    def put(c, body):
        terms.append(body if c == 1 else f"{scalar_text(c)}*{body}")

    for r, v in sorted(x.loop.items()):
        deg = ",".join(str(t) for t in r)
        for i, c in sorted(v.items()):
            put(c, f"{tau.g.labels[i]}({deg})")
    for i, c in sorted(x.c0.items()):
        put(c, f"K{i + 1}")
    for r, c in sorted(x.cen.items()):
        put(c, f"K[({','.join(str(t) for t in bar(r))}),({','.join(str(t) for t in r)})]")
    for i, c in sorted(x.d0.items()):
        put(c, f"d{i + 1}")
    for r, c in sorted(x.ham.items()):
        put(c, f"h[{','.join(str(t) for t in r)}]")
    return " + ".join(terms) if terms else "0"


# -- carrier elements, weights, roots --------------------------------------------------


def toroidal_to_json(tau: TauAlgebra, y: ToroidalElement) -> dict:
    return {
        "frame": [list(row) for row in y.frame.B],
        "loop": [{"degree": _deg(r), "vector": _vector_json(tau, v)} for r, v in sorted(y.loop.items())],
        "K": _indexed_json(y.c0),
        "central": [
            {"degree": _deg(r), "normal": _deg(y.frame.normal(r)), "coeff": scalar_to_json(c)}
            for r, c in sorted(y.cen.items())
        ],
        "derivations": [
            {"degree": _deg(r), "u": _indexed_json(u)} for r, u in sorted(y.der.items())
        ],
    }


def weight_to_json(lam: Weight) -> dict:
    return {
        "finite": [scalar_to_json(c) for c in lam.finite],
        "K": [scalar_to_json(c) for c in lam.K],
        "d": [scalar_to_json(c) for c in lam.d],
    }


def weight_from_json(tau: TauAlgebra, obj: dict) -> Weight:
    f = tau.field
    lam = Weight(
        tuple(scalar_from_json(f, c) for c in obj.get("finite", [0] * tau.g.rank)),
        tuple(scalar_from_json(f, c) for c in obj.get("K", [0] * tau.n)),
        tuple(scalar_from_json(f, c) for c in obj.get("d", [0] * tau.n)),
    )
    if len(lam.finite) != tau.g.rank or len(lam.K) != tau.n or len(lam.d) != tau.n:
        raise SerializationError(
            f"weight must have {tau.g.rank} finite values and {tau.n} values on K and on d"
        )
    return lam


def root_to_json(beta: RootDatum) -> dict:
    return {"alpha": [scalar_to_json(c) for c in beta.alpha], "degree": _deg(beta.degree), "real": beta.is_real}


def root_from_json(tau: TauAlgebra, obj: dict) -> RootDatum:
    alpha = tuple(scalar_from_json(tau.field, c) for c in obj["alpha"])
    if len(alpha) != tau.g.rank:
        raise SerializationError(f"root needs {tau.g.rank} finite values")
    return RootDatum(alpha, tau.lattice.check(obj["degree"]))
