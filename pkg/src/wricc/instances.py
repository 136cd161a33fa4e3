"""Instance files: a small key-value format describing (D, Q, Omega).

Example::

    # the lamplighter group
    D: cyclic 2
    Q: integers
    omega: regular

Also accepted in one line: ``{D: cyclic 2; Q: integers; omega: regular}``.
Group descriptors: ``integers``, ``cyclic N``, ``symmetric N``, ``free N``,
``product(G, G, ...)``, ``wreath(G; G; OMEGA)``.  Carrier descriptors:
``regular``, ``trivial N``, ``int-mod N``, ``natural``,
``union(OMEGA, OMEGA, ...)``.  Nested wreath groups are allowed in the D
position only.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ._parsing import head_and_args, split_top
from .errors import ParseError, TrivialD, UnsupportedQKind
from .groups import (
    CyclicGroup,
    DirectProductGroup,
    FreeGroup,
    Group,
    IntegersGroup,
    SymmetricGroup,
)
from .qsets import (
    DisjointUnionQSet,
    FiniteExplicitQSet,
    IntModQSet,
    QSet,
    RegularQSet,
    TrivialQSet,
)
from .wreath import WreathProduct


def _int_arg(name: str, args: str | None) -> int:
    if args is None:
        raise ParseError(f"{name}: missing numeric argument")
    try:
        return int(args.strip())
    except ValueError:
        raise ParseError(f"{name}: bad numeric argument {args!r}")


def parse_group(text: str) -> Group:
    name, args = head_and_args(text)
    name = name.lower()
    if name == "integers":
        return IntegersGroup()
    if name == "cyclic":
        return CyclicGroup(_int_arg(name, args))
    if name == "symmetric":
        return SymmetricGroup(_int_arg(name, args))
    if name == "free":
        return FreeGroup(_int_arg(name, args))
    if name == "product":
        if not args:
            raise ParseError("product: missing factors")
        return DirectProductGroup(tuple(parse_group(p) for p in split_top(args, ",")))
    if name == "wreath":
        if not args:
            raise ParseError("wreath: missing arguments")
        parts = split_top(args, ";")
        if len(parts) != 3:
            raise ParseError("wreath descriptor needs three ';'-separated parts: D; Q; omega")
        return build_wreath(parse_group(parts[0]), parse_group(parts[1]), parts[2])
    raise ParseError(f"unknown group kind {name!r}")


def parse_omega(text: str, Q: Group) -> QSet:
    name, args = head_and_args(text)
    name = name.lower()
    if name == "regular":
        return RegularQSet(Q)
    if name == "trivial":
        return TrivialQSet(Q, _int_arg(name, args))
    if name in ("int-mod", "intmod", "mod"):
        return IntModQSet(Q, _int_arg(name, args))
    if name == "natural":
        return FiniteExplicitQSet.natural(Q)
    if name == "union":
        if not args:
            raise ParseError("union: missing parts")
        return DisjointUnionQSet(tuple(parse_omega(p, Q) for p in split_top(args, ",")))
    raise ParseError(f"unknown carrier kind {name!r}")


def build_wreath(D: Group, Q: Group, omega_text: str, window_text: str | None = None) -> WreathProduct:
    if Q.kind.startswith("wreath"):
        raise UnsupportedQKind("wreath products cannot act (no FC oracle for them)")
    if D.is_trivial:
        raise TrivialD("D must be nontrivial")
    omega = parse_omega(omega_text, Q)
    window = None
    if window_text:
        window = tuple(omega.parse_point(p) for p in split_top(window_text, ","))
    return WreathProduct(D, Q, omega, window)


@dataclass
class InstanceSpec:
    group: WreathProduct
    d_text: str
    q_text: str
    omega_text: str
    window_text: str | None
    budgets: dict = field(default_factory=dict)
    source: str = ""

    def instance_hash(self) -> str:
        canon = "|".join(
            [
                self.d_text.strip(),
                self.q_text.strip(),
                self.omega_text.strip(),
                (self.window_text or "").strip(),
            ]
        )
        return hashlib.sha256(canon.encode()).hexdigest()[:12]


_BUDGET_KEYS = {"radius", "max-size", "max_size", "samples", "seed"}


def parse_instance(text: str) -> InstanceSpec:
    source = text
    stripped = text.strip()
    if stripped.startswith("{") and stripped.endswith("}"):
        entries = split_top(stripped[1:-1], ";")
    else:
        entries = []
        for line in stripped.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                entries.append(line)
    fields: dict[str, str] = {}
    for entry in entries:
        if ":" not in entry:
            raise ParseError(f"expected 'key: value', got {entry!r}")
        key, value = entry.split(":", 1)
        key = key.strip().lower()
        value = value.strip()
        if key in fields:
            raise ParseError(f"duplicate key {key!r}")
        fields[key] = value
    for required in ("d", "q", "omega"):
        if required not in fields:
            raise ParseError(f"missing required key {required!r}")
    known = {"d", "q", "omega", "window"} | _BUDGET_KEYS
    for key in fields:
        if key not in known:
            raise ParseError(f"unknown key {key!r}")
    Q = parse_group(fields["q"])
    D = parse_group(fields["d"])
    group = build_wreath(D, Q, fields["omega"], fields.get("window"))
    budgets = {}
    for key in _BUDGET_KEYS & fields.keys():
        budgets[key.replace("-", "_")] = _int_arg(key, fields[key])
    return InstanceSpec(
        group=group,
        d_text=fields["d"],
        q_text=fields["q"],
        omega_text=fields["omega"],
        window_text=fields.get("window"),
        budgets=budgets,
        source=source,
    )
