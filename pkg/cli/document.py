"""
Input documents.

A document is one JSON object:

    {
      "base": {"kind": "classical", "n": 3}      or {"kind": "quantum", "dim": 2},
      "effects": {"a": ["1/2", 0, 1], ...},
      "states": {"s": ["1/4", "3/4", 0]},
      "observables": {"A": {"outcomes": ["x", "y"], "effects": {"x": "a", "y": [...]}}}
                     or {"A": ["a", "b"]} (outcomes "1", "2"),
      "channels": {"nu": [[1, 0], ["1/2", "1/2"]]}
                  or {"nu": {"inputs": [...], "outputs": [...], "matrix": [...]}},
      "random_variables": {"f": [1, 1, 2]},
      "subalgebras": {"F": ["a", "b"]}
    }

Rationals are "p/q" strings; quantum matrices are row-major nested arrays
whose entries are numbers, "p/q" strings or [re, im] pairs. Every name is
unique across sections.

Effects are shape-checked on load but only validated as effects when
used, so a document can hold a deliberately invalid payload for
`check effect`.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from algebra.effects import BaseAlgebra, Effect, State, coerce_payload
from infocomplete.partition import RandomVariable
from kernel.errors import DocumentError, EffectAlgebraError
from kernel.rational import to_fraction
from observables.channel import Channel, make_channel
from observables.observable import Observable, validate_observable
from subalgebra.csea import StrongSpan, Subalgebra, from_generators, strong_span

SECTIONS = ('effects', 'states', 'observables', 'channels', 'random_variables', 'subalgebras')


def _reject_duplicates(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise DocumentError(f"duplicate key {key!r}")
        obj[key] = value
    return obj


def _rv_value(value, location: str):
    """Scalar or (nested) array of scalars; arrays become tuples."""
    if isinstance(value, list):
        return tuple(_rv_value(v, location) for v in value)
    if value is None or isinstance(value, dict):
        raise DocumentError("random variable values must be numbers, strings or arrays of them",
                            location)
    return value


def _quantum_entry(value, location: str):
    """Number, "p/q" string or [re, im] pair -> complex."""
    if isinstance(value, (list, tuple)) and len(value) != 2:
        raise DocumentError("complex entry must be [re, im]", location)
    try:
        if isinstance(value, (list, tuple)):
            return complex(float(to_fraction(value[0])), float(to_fraction(value[1])))
        return complex(float(to_fraction(value)))
    except (TypeError, ValueError, ZeroDivisionError):
        raise DocumentError(f"bad matrix entry {value!r}", location) from None


def parse_payload(base: BaseAlgebra, raw, location: str):
    """Shape-check and convert a raw payload (not yet validated as an effect)."""
    if not isinstance(raw, list):
        raise DocumentError("payload must be an array", location)
    try:
        if base.is_classical:
            return coerce_payload(base, raw)
        rows = []
        for i, row in enumerate(raw):
            if not isinstance(row, list):
                raise DocumentError("matrix rows must be arrays", f"{location}[{i}]")
            rows.append([_quantum_entry(v, f"{location}[{i}][{j}]") for j, v in enumerate(row)])
        return coerce_payload(base, rows)
    except DocumentError:
        raise
    except (EffectAlgebraError, TypeError, ValueError, ZeroDivisionError) as e:
        raise DocumentError(str(e), location) from None


def parse_base(raw) -> BaseAlgebra:
    if not isinstance(raw, dict):
        raise DocumentError("missing or malformed base", "base")
    kind = raw.get("kind")
    try:
        if kind == "classical":
            return BaseAlgebra.classical(int(raw["n"]))
        if kind == "quantum":
            return BaseAlgebra.quantum(int(raw["dim"]))
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"bad base descriptor: {e}", "base") from None
    raise DocumentError(f"unknown base kind {kind!r}", "base.kind")


@dataclass
class Document:
    """
    Parsed document. Named objects are built on demand; every failure
    raises DocumentError or an EffectAlgebraError naming the object.
    """

    base: BaseAlgebra
    source: str = "<document>"
    payloads: Dict[str, object] = field(default_factory=dict)
    states: Dict[str, object] = field(default_factory=dict)
    observables: Dict[str, dict] = field(default_factory=dict)
    channels: Dict[str, object] = field(default_factory=dict)
    random_variables: Dict[str, RandomVariable] = field(default_factory=dict)
    subalgebras: Dict[str, List[str]] = field(default_factory=dict)

    def payload(self, name: str):
        if name not in self.payloads:
            raise DocumentError(f"no effect named {name!r}", "effects")
        return self.payloads[name]

    def effect(self, name: str, tol: Optional[float] = None) -> Effect:
        try:
            return Effect(self.base, self.payload(name), tol)
        except DocumentError:
            raise
        except EffectAlgebraError as e:
            raise type(e)(f"effects.{name}: {e}") from None

    def effects(self, names: List[str], tol: Optional[float] = None) -> List[Effect]:
        return [self.effect(n, tol) for n in names]

    def state(self, name: str, tol: Optional[float] = None) -> State:
        if name not in self.states:
            raise DocumentError(f"no state named {name!r}", "states")
        try:
            return State(self.base, self.states[name], tol)
        except EffectAlgebraError as e:
            raise DocumentError(str(e), f"states.{name}") from None

    def observable(self, name: str, tol: Optional[float] = None) -> Observable:
        if name not in self.observables:
            raise DocumentError(f"no observable named {name!r}", "observables")
        entry = self.observables[name]
        location = f"observables.{name}"
        effects = []
        for x in entry["outcomes"]:
            ref = entry["effects"][x]
            if isinstance(ref, str):
                effects.append(self.effect(ref, tol))
            else:
                effects.append(Effect(self.base, parse_payload(self.base, ref, f"{location}.effects.{x}"), tol))
        return validate_observable(self.base, effects, entry["outcomes"], tol)

    def channel(self, name: str, tol: Optional[float] = None) -> Channel:
        if name not in self.channels:
            raise DocumentError(f"no channel named {name!r}", "channels")
        raw = self.channels[name]
        try:
            if isinstance(raw, dict):
                return make_channel(raw["matrix"], raw.get("inputs"), raw.get("outputs"), tol)
            return make_channel(raw, tol=tol)
        except EffectAlgebraError:
            raise
        except KeyError as e:
            raise DocumentError(f"missing field {e}", f"channels.{name}") from None
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise DocumentError(str(e), f"channels.{name}") from None

    def random_variable(self, name: str) -> RandomVariable:
        if name not in self.random_variables:
            raise DocumentError(f"no random variable named {name!r}", "random_variables")
        return self.random_variables[name]

    def generator_names(self, name: str) -> List[str]:
        if name not in self.subalgebras:
            raise DocumentError(f"no subalgebra named {name!r}", "subalgebras")
        return self.subalgebras[name]

    def subalgebra(self, name: str, tol: Optional[float] = None) -> Subalgebra:
        return from_generators(self.base, self.effects(self.generator_names(name), tol), tol)

    def strong_span(self, name: str, tol: Optional[float] = None) -> StrongSpan:
        return strong_span(self.base, self.effects(self.generator_names(name), tol), tol)


def _section(data: dict, key: str) -> dict:
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise DocumentError("section must be an object", key)
    return value


def parse_document(data, source: str = "<document>") -> Document:
    """
    Build a Document from decoded JSON.

    Raises:
        DocumentError: with the dotted location of the first problem
    """
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object", source)
    unknown = [k for k in data if k != "base" and k not in SECTIONS]
    if unknown:
        raise DocumentError(f"unknown sections {unknown}", source)
    base = parse_base(data.get("base"))
    doc = Document(base, source)

    seen: Dict[str, str] = {}
    for section in SECTIONS:
        for name in _section(data, section):
            if name in seen:
                raise DocumentError(f"name {name!r} already used in {seen[name]}", f"{section}.{name}")
            seen[name] = section

    for name, raw in _section(data, "effects").items():
        doc.payloads[name] = parse_payload(base, raw, f"effects.{name}")
    for name, raw in _section(data, "states").items():
        doc.states[name] = parse_payload(base, raw, f"states.{name}")

    for name, raw in _section(data, "observables").items():
        location = f"observables.{name}"
        if isinstance(raw, list):
            # Shorthand: effects in outcome order, outcomes "1".."k"
            raw = {"outcomes": [str(k) for k in range(1, len(raw) + 1)],
                   "effects": {str(k): ref for k, ref in enumerate(raw, 1)}}
        if not isinstance(raw, dict) or "outcomes" not in raw or "effects" not in raw:
            raise DocumentError('observable needs "outcomes" and "effects" or a list of effects',
                                location)
        outcomes = [str(x) for x in raw["outcomes"]]
        effects = raw["effects"]
        if not isinstance(effects, dict) or sorted(effects) != sorted(outcomes):
            raise DocumentError("effects must map every outcome", location)
        for x, ref in effects.items():
            if isinstance(ref, str) and ref not in doc.payloads:
                raise DocumentError(f"unknown effect {ref!r}", f"{location}.effects.{x}")
        doc.observables[name] = {"outcomes": outcomes, "effects": effects}

    for name, raw in _section(data, "channels").items():
        if not isinstance(raw, (list, dict)):
            raise DocumentError("channel must be a matrix or an object", f"channels.{name}")
        doc.channels[name] = raw

    for name, raw in _section(data, "random_variables").items():
        if not isinstance(raw, list) or not raw:
            raise DocumentError("random variable must be a nonempty value list",
                                f"random_variables.{name}")
        values = tuple(_rv_value(v, f"random_variables.{name}[{i}]") for i, v in enumerate(raw))
        doc.random_variables[name] = RandomVariable(values)

    for name, raw in _section(data, "subalgebras").items():
        location = f"subalgebras.{name}"
        if not isinstance(raw, list) or not all(isinstance(n, str) for n in raw):
            raise DocumentError("subalgebra must be a list of effect names", location)
        for ref in raw:
            if ref not in doc.payloads:
                raise DocumentError(f"unknown effect {ref!r}", location)
        doc.subalgebras[name] = list(raw)
    return doc


def load_document(path: str) -> Document:
    """
    Read and parse a document file.

    Raises:
        DocumentError: unreadable file, invalid JSON (with line:column) or
            invalid content
    """
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle, object_pairs_hook=_reject_duplicates)
    except OSError as e:
        raise DocumentError(f"cannot read document: {e.strerror}", path) from None
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", f"{path}:{e.lineno}:{e.colno}") from None
    except DocumentError as e:
        raise DocumentError(str(e), path) from None
    return parse_document(data, path)
