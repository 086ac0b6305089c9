"""Text and JSON rendering of multivectors and tensors."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List

from .blades import AlgebraSignature, Multivector, Tensor, indices


def format_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, int):
        return str(c)
    return repr(float(c))


def blade_name(mask: int, dim: int) -> str:
    if mask == 0:
        return "Id"
    idx = indices(mask)
    if dim <= 9:
        return "e" + "".join(str(i) for i in idx)
    if len(idx) == 1:
        return f"e{idx[0]}"
    return "e{" + ",".join(str(i) for i in idx) + "}"


def _term(mask: int, mag, dim: int) -> str:
    if mask == 0:
        return format_scalar(mag)
    name = blade_name(mask, dim)
    return name if mag == 1 else f"{format_scalar(mag)} {name}"


def _lead(body: str) -> str:
    # "-1", "-3/4 e12" but "- e12"
    return f"-{body}" if body[0].isdigit() else f"- {body}"


def render_text(u: Multivector) -> str:
    parts: List[str] = []
    for i, (m, c) in enumerate(sorted(u.terms.items())):
        neg = c < 0
        body = _term(m, -c if neg else c, u.sig.dim)
        if i == 0:
            parts.append(_lead(body) if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts) if parts else "0"


def render_tensor_text(t: Tensor) -> str:
    if not t.terms:
        return "0"
    dim = t.sig.dim
    parts: List[str] = []
    for i, (key, c) in enumerate(sorted(t.terms.items())):
        neg = c < 0
        mag = -c if neg else c
        legs = " (x) ".join(blade_name(m, dim) for m in key)
        body = legs if mag == 1 else f"{format_scalar(mag)} {legs}"
        if i == 0:
            parts.append(_lead(body) if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts)


def multivector_json(u: Multivector) -> dict:
    return {"dim": u.sig.dim,
            "terms": [{"blade": indices(m), "coeff": format_scalar(c)} for m, c in sorted(u.terms.items())]}


def tensor_json(t: Tensor) -> dict:
    if t.arity != 2:
        return {"dim": t.sig.dim, "arity": t.arity,
                "terms": [{"blades": [indices(m) for m in key], "coeff": format_scalar(c)}
                          for key, c in sorted(t.terms.items())]}
    return {"pairs": [{"left": multivector_json(a), "right": multivector_json(b)} for a, b in t.pairs()]}


def multivector_from_json(data, sig: AlgebraSignature | None = None) -> Multivector:
    if isinstance(data, str):
        data = json.loads(data)
    if sig is None:
        sig = AlgebraSignature(int(data["dim"]))
    elif "dim" in data and int(data["dim"]) != sig.dim:
        raise ValueError(f"JSON multivector has dim {data['dim']}, expected {sig.dim}")
    acc = Multivector.zero(sig)
    for term in data["terms"]:
        acc = acc + Multivector.blade(sig, *term["blade"], coeff=sig.scalar(term["coeff"]))
    return acc


def render(value, fmt: str = "text") -> str:
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(value, Tensor):
        return json.dumps(tensor_json(value)) if fmt == "json" else render_tensor_text(value)
    if isinstance(value, Multivector):
        return json.dumps(multivector_json(value)) if fmt == "json" else render_text(value)
    return json.dumps(format_scalar(value)) if fmt == "json" else format_scalar(value)
