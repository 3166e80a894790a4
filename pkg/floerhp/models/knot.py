from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable

from loguru import logger
from typing_extensions import Self

from floerhp.constants import BUILTIN_KNOT_NAMES
from floerhp.errors import KnotDataError, UnknownKnot
from floerhp.models import BUILTIN_KNOTS, KNOT_RECORD_OPTIONAL_FIELDS, KNOT_RECORD_REQUIRED_FIELDS
from floerhp.models.polys import IntPoly
from floerhp.models.slope import Slope
from floerhp.utils.dict import check_record_keys
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import fraction_to_str, is_half_integer, parse_rational
from floerhp.utils.serialization import load_json_file


@dataclass(frozen=True)
class SeminormEntry:
    """
    One term coeff·‖·‖ of the total Culler-Shalen seminorm, whose kernel is the slope a/b.
    """
    coeff: Fraction
    a: int
    b: int

    def evaluate(self, slope: Slope) -> Fraction:
        return self.coeff * abs(slope.p * self.b - slope.q * self.a)


class SeminormSpec:
    """
    Total Culler-Shalen seminorm, as a weighted sum of seminorms each vanishing on one slope.
    """
    def __init__(self, entries: Iterable[tuple[Fraction | int | str, Fraction | int | str]] = ()):
        self._entries: list[SeminormEntry] = []
        for coeff, slope in entries:
            coeff, slope = parse_rational(coeff), parse_rational(slope)
            if coeff <= 0:
                log_and_raise(ValueError, f"Seminorm weights must be positive, got {coeff}")
            self._entries.append(SeminormEntry(coeff, slope.numerator, slope.denominator))

    @property
    def entries(self) -> list[SeminormEntry]:
        return list(self._entries)

    @property
    def kernel_slopes(self) -> set[Fraction]:
        return {Fraction(e.a, e.b) for e in self._entries}

    def total(self, slope: Slope) -> Fraction:
        """
        ‖p/q‖_T = Σ coeff·|p·b - q·a|.
        """
        return sum((e.evaluate(slope) for e in self._entries), Fraction(0))

    def mirrored(self) -> Self:
        return SeminormSpec((e.coeff, Fraction(-e.a, e.b)) for e in self._entries)

    def to_list(self) -> list[dict]:
        return [{"coeff": fraction_to_str(e.coeff), "slope": f"{e.a}/{e.b}"} for e in self._entries]


class KnotRecord:
    """
    Ingested knot data: everything the Casson and Floer computations need about a knot.
    """
    def __init__(
            self,
            name: str,
            alexander: IntPoly | Iterable[int],
            boundary_slopes: Iterable[Fraction | str],
            seminorm: SeminormSpec,
            E0: Fraction | str | int,
            E1: Fraction | str | int,
            small: bool,
            two_bridge: tuple[int, int] = None,
            irregular_slopes: Iterable[Fraction | str] = (),
    ):
        self._name = name
        self._alexander = alexander if isinstance(alexander, IntPoly) else IntPoly(alexander)
        self._boundary_slopes = frozenset(parse_rational(s) for s in boundary_slopes)
        self._irregular_slopes = frozenset(parse_rational(s) for s in irregular_slopes)
        self._seminorm = seminorm
        self._corrections = (parse_rational(E0), parse_rational(E1))
        self._small = small
        self._two_bridge = tuple(two_bridge) if two_bridge is not None else None
        self._validate()

    def _validate(self):
        if self._alexander.is_zero():
            log_and_raise(KnotDataError, f"{self._name}: Alexander polynomial is zero", field="alexander")
        for label, value in zip(("E0", "E1"), self._corrections):
            if value < 0 or not is_half_integer(value):
                msg = f"{self._name}: {label} = {value} is not a nonnegative half-integer"
                log_and_raise(KnotDataError, msg, field=label)
        if self._two_bridge is not None:
            alpha, beta = self._two_bridge
            if alpha < 3 or alpha % 2 == 0 or gcd(alpha, beta) != 1:
                msg = f"{self._name}: two-bridge parameters ({alpha}, {beta}) need α odd ≥ 3 and gcd(α, β) = 1"
                log_and_raise(KnotDataError, msg, field="two_bridge")
            if self.E0 != 0:
                msg = f"{self._name}: E0 = {self.E0} must vanish for a two-bridge knot"
                log_and_raise(KnotDataError, msg, field="E0")
            if self.E1 != Fraction(alpha - 1, 4):
                msg = f"{self._name}: E1 = {self.E1} differs from (α-1)/4 = {Fraction(alpha - 1, 4)}"
                log_and_raise(KnotDataError, msg, field="E1")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        """
        Build a record from its JSON form, naming the offending field on any violation.

        Raises:
            KnotDataError: on missing, unknown or malformed fields.
        """
        check_record_keys(data, KNOT_RECORD_REQUIRED_FIELDS, KNOT_RECORD_OPTIONAL_FIELDS, name="knot record")
        name = data["name"]
        if not isinstance(name, str) or not name:
            log_and_raise(KnotDataError, "knot record: name must be a nonempty string", field="name")
        alexander = data["alexander"]
        if not isinstance(alexander, list) or not all(_is_int(c) for c in alexander):
            log_and_raise(KnotDataError, f"{name}: alexander must be a list of integers", field="alexander")
        two_bridge = data.get("two_bridge")
        if two_bridge is not None and (not isinstance(two_bridge, list) or len(two_bridge) != 2
                                       or not all(_is_int(c) for c in two_bridge)):
            log_and_raise(KnotDataError, f"{name}: two_bridge must be [alpha, beta]", field="two_bridge")
        if not isinstance(data["small"], bool):
            log_and_raise(KnotDataError, f"{name}: small must be a boolean", field="small")
        return cls(
            name=name,
            alexander=alexander,
            boundary_slopes=_parse_rational_list(data["boundary_slopes"], name, "boundary_slopes"),
            irregular_slopes=_parse_rational_list(data.get("irregular_slopes", []), name, "irregular_slopes"),
            seminorm=_parse_seminorm(data["seminorm"], name),
            E0=_parse_rational_field(data["E0"], name, "E0"),
            E1=_parse_rational_field(data["E1"], name, "E1"),
            small=data["small"],
            two_bridge=two_bridge,
        )

    @property
    def name(self) -> str:
        return self._name

    @property
    def alexander(self) -> IntPoly:
        """
        Alexander polynomial, ascending coefficients.
        """
        return self._alexander

    @property
    def two_bridge(self) -> tuple[int, int] | None:
        """
        Two-bridge parameters (α, β), if the knot is two-bridge.
        """
        return self._two_bridge

    @property
    def boundary_slopes(self) -> frozenset[Fraction]:
        return self._boundary_slopes

    @property
    def irregular_slopes(self) -> frozenset[Fraction]:
        return self._irregular_slopes

    @property
    def seminorm(self) -> SeminormSpec:
        return self._seminorm

    @property
    def E0(self) -> Fraction:
        return self._corrections[0]

    @property
    def E1(self) -> Fraction:
        return self._corrections[1]

    @property
    def small(self) -> bool:
        """
        Whether the knot exterior has no closed essential surface.
        """
        return self._small

    def correction(self, sigma: int) -> Fraction:
        """
        E_σ for σ the parity of p.
        """
        return self._corrections[sigma]

    def is_builtin(self) -> bool:
        return self._name in BUILTIN_KNOT_NAMES

    def to_dict(self) -> dict:
        return {
            "name": self._name,
            "alexander": self._alexander.to_list(),
            "two_bridge": list(self._two_bridge) if self._two_bridge else None,
            "boundary_slopes": [_slope_str(s) for s in sorted(self._boundary_slopes)],
            "irregular_slopes": [_slope_str(s) for s in sorted(self._irregular_slopes)],
            "seminorm": self._seminorm.to_list(),
            "E0": fraction_to_str(self.E0),
            "E1": fraction_to_str(self.E1),
            "small": self._small,
        }

    def __repr__(self):
        return f"KnotRecord({self._name})"


class KnotDatabase:
    """
    Knot records by name: the built-in trefoils, plus any records ingested from a JSON file.
    """
    def __init__(self, records: Iterable[KnotRecord] = ()):
        self._records: dict[str, KnotRecord] = {}
        for record in builtin_records():
            self._records[record.name] = record
        for record in records:
            if record.name in self._records:
                log_and_raise(KnotDataError, f"Duplicate knot name {record.name}", field="name")
            self._records[record.name] = record

    @classmethod
    def from_file(cls, path: str | Path | None) -> Self:
        if path is None:
            return cls()
        return cls(ingest(path))

    @property
    def names(self) -> list[str]:
        return list(self._records)

    def get(self, name: str) -> KnotRecord:
        """
        Raises:
            UnknownKnot: if no record has that name.
        """
        try:
            return self._records[name]
        except KeyError:
            log_and_raise(UnknownKnot, f"Unknown knot {name}; available: {', '.join(self._records)}")


def builtin_records() -> list[KnotRecord]:
    return [KnotRecord.from_dict(dict(data)) for data in BUILTIN_KNOTS]


def ingest(path: str | Path) -> list[KnotRecord]:
    """
    Read a UTF-8 JSON array of knot records.

    Args:
        path: path of the database file.

    Returns:
        the validated records, in file order.

    Raises:
        KnotDataError: if the file is unreadable, not a JSON array, or any record violates the schema.
    """
    try:
        data = load_json_file(path)
    except (OSError, UnicodeDecodeError, ValueError) as e:
        log_and_raise(KnotDataError, f"Cannot read knot database {path}: {e}", field="file")
    if not isinstance(data, list):
        log_and_raise(KnotDataError, f"Knot database {path} must hold a JSON array", field="file")
    records = [KnotRecord.from_dict(entry) for entry in data]
    names = [record.name for record in records]
    for name in names:
        if names.count(name) > 1 or name in BUILTIN_KNOT_NAMES:
            log_and_raise(KnotDataError, f"Duplicate knot name {name} in {path}", field="name")
    for record in records:
        logger.warning(f"Knot {record.name}: seminorm and correction data are not checked against the root oracle")
    logger.info(f"Ingested {len(records)} knot record(s) from {path}")
    return records


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _parse_rational_field(value, name: str, field: str) -> Fraction:
    """
    Rationals are "a/b" or "a" strings; a bare JSON integer n is read as n/1. Floats and booleans are rejected.
    """
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        log_and_raise(KnotDataError, f"{name}: {field} must be a rational string", field=field)
    try:
        return parse_rational(value)
    except ValueError:
        log_and_raise(KnotDataError, f"{name}: invalid rational {value!r} in {field}", field=field)


def _parse_rational_list(values, name: str, field: str) -> list[Fraction]:
    if not isinstance(values, list):
        log_and_raise(KnotDataError, f"{name}: {field} must be a list", field=field)
    return [_parse_rational_field(v, name, field) for v in values]


def _parse_seminorm(entries, name: str) -> SeminormSpec:
    if not isinstance(entries, list):
        log_and_raise(KnotDataError, f"{name}: seminorm must be a list", field="seminorm")
    parsed = []
    for entry in entries:
        check_record_keys(entry, ("coeff", "slope"), name=f"{name} seminorm entry")
        coeff = _parse_rational_field(entry["coeff"], name, "seminorm")
        if coeff <= 0:
            log_and_raise(KnotDataError, f"{name}: seminorm weights must be positive", field="seminorm")
        parsed.append((coeff, _parse_rational_field(entry["slope"], name, "seminorm")))
    return SeminormSpec(parsed)


def _slope_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"
