"""Card catalog: the game's businesses, harms, features and guide entries.

The default catalog ships the complete AI Audit deck: 14 AI-powered business
cards, 13 societal-harm cards and 7 mitigation-feature cards, plus the guide
excerpts used by educators. Legality is keyed on integer harm ids; the colors
and shapes carried by harm cards are presentation aids only (each harm pairs
a unique color with a unique shape so cards stay distinguishable without
relying on color vision).

Kind id 0 is reserved in every family for wild cards and never appears in a
catalog.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

import yaml

from .errors import CatalogParseError, DuplicateIdError, UnknownIdError


@dataclass(frozen=True)
class Harm:
    """A societal/ethical harm card kind."""

    id: int
    title: str
    color: str
    shape: str


@dataclass(frozen=True)
class Business:
    """An AI-venture card kind with the set of harm ids it is vulnerable to."""

    id: int
    title: str
    vulnerable_harms: frozenset[int]


@dataclass(frozen=True)
class Feature:
    """A mitigation-practice card kind with the set of harm ids it counters."""

    id: int
    title: str
    counters: frozenset[int]


@dataclass(frozen=True)
class GuideEntry:
    """Explanatory prose for one (business, harm) pairing."""

    business_id: int
    harm_id: int
    text: str


@dataclass
class Catalog:
    """Immutable card definitions plus id-indexed lookups."""

    businesses: tuple[Business, ...]
    harms: tuple[Harm, ...]
    features: tuple[Feature, ...]
    guide: tuple[GuideEntry, ...] = ()

    business_by_id: dict[int, Business] = field(
        init=False, repr=False, compare=False
    )
    harm_by_id: dict[int, Harm] = field(init=False, repr=False, compare=False)
    feature_by_id: dict[int, Feature] = field(init=False, repr=False, compare=False)
    _guide_by_pair: dict[tuple[int, int], GuideEntry] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.business_by_id = {b.id: b for b in self.businesses}
        self.harm_by_id = {h.id: h for h in self.harms}
        self.feature_by_id = {f.id: f for f in self.features}
        self._guide_by_pair = {(g.business_id, g.harm_id): g for g in self.guide}

    def business(self, business_id: int) -> Business:
        try:
            return self.business_by_id[business_id]
        except KeyError:
            raise UnknownIdError(f"unknown business id {business_id}") from None

    def harm(self, harm_id: int) -> Harm:
        try:
            return self.harm_by_id[harm_id]
        except KeyError:
            raise UnknownIdError(f"unknown harm id {harm_id}") from None

    def feature(self, feature_id: int) -> Feature:
        try:
            return self.feature_by_id[feature_id]
        except KeyError:
            raise UnknownIdError(f"unknown feature id {feature_id}") from None


@dataclass
class ValidationReport:
    """Findings from validate(); a catalog is playable iff errors is empty."""

    errors: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def lines(self) -> list[str]:
        out = [f"error[{code}]: {msg}" for code, msg in self.errors]
        out += [f"warning[{code}]: {msg}" for code, msg in self.warnings]
        return out


# ---------------------------------------------------------------------------
# Default deck data
# ---------------------------------------------------------------------------

_BUSINESSES = [
    (1, "Home security system that uses facial recognition to identify the "
        "person at your door", {5, 8, 10, 11, 13}),
    (2, "Crime prediction tool that can predict future crimes one week in "
        "advance with about 90% accuracy", {7, 8, 10, 11}),
    (3, "Personalized advertisement technology on websites people browse",
        {5, 6}),
    (4, "Hiring algorithms that automate hiring in big companies to reduce "
        "the time taken to go through thousands of resumes", {3, 7, 8, 12}),
    (5, "College admissions automator that decides who should be admitted "
        "based on different aspects in their application", {7, 8, 12}),
    (6, "Self-driving cars", {7, 8, 10}),
    (7, "Conversational agents", {2, 3, 4, 5, 6}),
    (8, "Language translation algorithm", {2, 7, 8}),
    (9, "Medical imaging to detect skin cancer from face images", {7, 8, 13}),
    (10, "Recommender system for social media apps that personalizes your "
         "homepage's feed", {1, 2, 3, 4, 5, 6}),
    (11, "Generative AI Art magazine", {2, 7, 8, 11}),
    (12, "Face filters people can use to apply different styles to their face",
         {1, 8}),
    (13, "Social interactive robot", {1, 5, 6, 13}),
    (14, "Personalizing search engine results to give you results specific "
         "to your past searches", {1, 2, 3}),
]

# One unique color paired with one unique shape per harm; ids drive the rules,
# the badges only make physical cards easy to tell apart (including for
# color-blind players).
_HARMS = [
    (1, "Increased mental health challenges like depression, body dysmorphia, "
        "eating disorders", "crimson", "circle"),
    (2, "Spreading misinformation", "orange", "triangle"),
    (3, "Forming filter bubbles that isolate unique opinions from one another",
        "gold", "square"),
    (4, "Encouraging hateful behavior and hate groups", "forestgreen",
        "diamond"),
    (5, "Leaking your personal details to other parties", "teal", "star"),
    (6, "Manipulating people's buying behaviors", "deepskyblue", "pentagon"),
    (7, "Taking over existing human jobs", "royalblue", "hexagon"),
    (8, "Algorithmic bias discriminating people based on their race, gender, "
        "ethnicity, or occupation", "navy", "cross"),
    (9, "Misdiagnosing a patient's illness", "purple", "heart"),
    (10, "Over-Policing neighborhoods", "magenta", "crescent"),
    (11, "Leading to wrongful arrests of people", "saddlebrown", "ring"),
    (12, "Marginalizing populations already under-represented in the "
         "workforce", "slategray", "teardrop"),
    (13, "Overly placing trust in imperfect technology", "black", "arrow"),
]

_FEATURES = [
    (1, "Making the underlying AI technology and data usage transparent and "
        "explainable to users", {1, 2, 3, 5, 6, 9, 13}),
    (2, "End to end encryption of data collected", {5}),
    (3, "Collecting a balanced, diverse and large dataset to train the AI "
        "technology to reduce algorithmic bias", {3, 8, 11}),
    (4, "Enabling people to control the degree of automation in their tools",
        {3, 6, 9, 10, 13}),
    (5, "Employing a diverse team to develop this technology to gain diverse "
        "perspectives and address diverse needs", {1, 4, 7, 12}),
    (6, "Including all affected populations of the technology in the design "
        "of the system", {1, 7, 12}),
    (7, "Decision making by AI technologies to be examined by humans in the "
        "loop", {2, 7, 8, 9, 13}),
]

# The published guide covers the hiring-algorithm business; further pairings
# are community-authorable through the catalog file format.
_GUIDE = [
    (4, 8,
     "Resume sorters often make use of historical data with demographic "
     "information to make decisions about new data. This historical data "
     "might often have algorithmic biases, or might prefer candidates based "
     "on their race, gender, economic status or even their name. A recent "
     "study found that hiring algorithms are more likely to select applicants "
     "with common white names like Emily or Greg, versus distinctively Black "
     "names like Jamal or Lakisha."),
    (4, 7,
     "Replacing a human recruiter with an automated hiring system may be "
     "time efficient, but what happens to the human recruiter's job? Is it "
     "now redundant? According to a recent survey, companies are increasingly "
     "adopting AI powered screening tools for the first round of resume "
     "sorting, dramatically altering human recruiters' jobs."),
]


def default_catalog() -> Catalog:
    """Build the standard deck: 14 businesses, 13 harms, 7 features."""
    return Catalog(
        businesses=tuple(
            Business(i, t, frozenset(hs)) for i, t, hs in _BUSINESSES
        ),
        harms=tuple(Harm(i, t, c, s) for i, t, c, s in _HARMS),
        features=tuple(Feature(i, t, frozenset(hs)) for i, t, hs in _FEATURES),
        guide=tuple(GuideEntry(b, h, t) for b, h, t in _GUIDE),
    )


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def legal_harms(catalog: Catalog, business_id: int) -> frozenset[int]:
    """Harm ids playable against the given business."""
    return catalog.business(business_id).vulnerable_harms


def can_counter(catalog: Catalog, feature_id: int, harm_id: int) -> bool:
    """True iff the feature answers the harm."""
    catalog.harm(harm_id)  # raise on unknown harm id
    return harm_id in catalog.feature(feature_id).counters


def guide_excerpt(
    catalog: Catalog, business_id: int, harm_id: int
) -> Optional[str]:
    """Guide prose for a (business, harm) pairing, or None if unwritten."""
    catalog.business(business_id)
    catalog.harm(harm_id)
    entry = catalog._guide_by_pair.get((business_id, harm_id))
    return entry.text if entry else None


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(catalog: Catalog) -> ValidationReport:
    """Semantic checks over any catalog (not just the default one).

    Errors make the catalog unplayable: dangling harm references, empty
    vulnerable/counter sets, duplicate or reserved ids, repeated color+shape
    pairs, guide entries on pairings that cannot occur in play. Warnings flag
    content that plays but is probably unintended: harms no business carries,
    harms no feature counters, businesses no feature can defend, features
    that counter nothing on any business.
    """
    report = ValidationReport()
    err = report.errors.append
    warn = report.warnings.append

    harm_ids = {h.id for h in catalog.harms}

    for family, items in (
        ("business", catalog.businesses),
        ("harm", catalog.harms),
        ("feature", catalog.features),
    ):
        seen: set[int] = set()
        for item in items:
            if item.id <= 0:
                err(("reserved_id",
                     f"{family} id {item.id} is reserved (ids must be >= 1)"))
            if item.id in seen:
                err(("duplicate_id", f"duplicate {family} id {item.id}"))
            seen.add(item.id)

    for b in catalog.businesses:
        if not b.vulnerable_harms:
            err(("empty_vulnerable_set",
                 f"business {b.id} lists no vulnerable harms"))
        for h in sorted(b.vulnerable_harms - harm_ids):
            err(("dangling_harm_ref",
                 f"business {b.id} references unknown harm {h}"))

    for f in catalog.features:
        if not f.counters:
            err(("empty_counter_set", f"feature {f.id} counters nothing"))
        for h in sorted(f.counters - harm_ids):
            err(("dangling_harm_ref",
                 f"feature {f.id} references unknown harm {h}"))

    badge_pairs: set[tuple[str, str]] = set()
    for h in catalog.harms:
        pair = (h.color, h.shape)
        if pair in badge_pairs:
            err(("duplicate_badge",
                 f"harm {h.id} repeats color+shape {h.color}/{h.shape}"))
        badge_pairs.add(pair)

    for g in catalog.guide:
        b = catalog.business_by_id.get(g.business_id)
        if b is None or g.harm_id not in harm_ids:
            err(("illegal_guide_pair",
                 f"guide entry ({g.business_id}, {g.harm_id}) names unknown ids"))
        elif g.harm_id not in b.vulnerable_harms:
            err(("illegal_guide_pair",
                 f"guide entry ({g.business_id}, {g.harm_id}): business "
                 f"{g.business_id} is not vulnerable to harm {g.harm_id}"))

    used_harms = frozenset().union(
        *(b.vulnerable_harms for b in catalog.businesses)
    ) if catalog.businesses else frozenset()
    countered = frozenset().union(
        *(f.counters for f in catalog.features)
    ) if catalog.features else frozenset()

    for h in catalog.harms:
        if h.id not in used_harms:
            warn(("orphan_harm",
                  f"harm {h.id} ({h.title}) appears in no business's "
                  "vulnerable harms"))
        if h.id not in countered:
            warn(("uncounterable_harm",
                  f"harm {h.id} ({h.title}) is countered by no feature"))

    for b in catalog.businesses:
        if b.vulnerable_harms and not (b.vulnerable_harms & countered):
            warn(("undefendable_business",
                  f"business {b.id} has no feature that counters any of its "
                  "harms"))

    for f in catalog.features:
        if f.counters and not (f.counters & used_harms):
            warn(("unusable_feature",
                  f"feature {f.id} counters no harm carried by any business"))

    return report


# ---------------------------------------------------------------------------
# Document I/O (YAML; JSON documents parse too since JSON is a YAML subset)
# ---------------------------------------------------------------------------

_SECTION_FIELDS = {
    "businesses": {"id", "title", "harms"},
    "harms": {"id", "title", "color", "shape"},
    "features": {"id", "title", "counters"},
    "guide": {"business", "harm", "text"},
}

CatalogSource = Union[str, bytes, Mapping, io.IOBase]


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CatalogParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _require_str(value, where: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise CatalogParseError(f"{where}: expected non-empty text")
    return value


def _require_int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise CatalogParseError(f"{where}: expected a list of harm ids")
    return [_require_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _entries(doc: Mapping, section: str) -> list[Mapping]:
    entries = doc.get(section)
    if entries is None:
        if section == "guide":
            return []
        raise CatalogParseError(f"missing required section '{section}'")
    if not isinstance(entries, list):
        raise CatalogParseError(f"section '{section}' must be a list")
    fields = _SECTION_FIELDS[section]
    for i, entry in enumerate(entries):
        if not isinstance(entry, Mapping):
            raise CatalogParseError(f"{section}[{i}]: expected a mapping")
        unknown = set(entry) - fields
        if unknown:
            raise CatalogParseError(
                f"{section}[{i}]: unknown field(s) {sorted(unknown)}"
            )
        missing = fields - set(entry)
        if missing:
            raise CatalogParseError(
                f"{section}[{i}]: missing field(s) {sorted(missing)}"
            )
    return entries


def _check_unique_ids(section: str, ids: Iterable[int]) -> None:
    seen: set[int] = set()
    for i in ids:
        if i in seen:
            raise DuplicateIdError(f"{section}: duplicate id {i}")
        seen.add(i)


def load_catalog(source: CatalogSource) -> Catalog:
    """Parse a catalog document into a Catalog.

    Accepts a YAML/JSON string or bytes, an open file, or an already-parsed
    mapping. Structural problems (missing sections, wrong types, duplicate
    ids) raise; semantic soundness is validate()'s job, so e.g. a dangling
    harm reference loads fine and is flagged later.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        if isinstance(source, io.IOBase):
            source = source.read()
        try:
            doc = yaml.safe_load(source)
        except yaml.YAMLError as exc:
            raise CatalogParseError(f"catalog does not parse: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise CatalogParseError("catalog document must be a mapping")
    unknown = set(doc) - set(_SECTION_FIELDS)
    if unknown:
        raise CatalogParseError(f"unknown top-level section(s) {sorted(unknown)}")

    businesses = tuple(
        Business(
            id=_require_int(e["id"], f"businesses[{i}].id"),
            title=_require_str(e["title"], f"businesses[{i}].title"),
            vulnerable_harms=frozenset(
                _require_int_list(e["harms"], f"businesses[{i}].harms")
            ),
        )
        for i, e in enumerate(_entries(doc, "businesses"))
    )
    harms = tuple(
        Harm(
            id=_require_int(e["id"], f"harms[{i}].id"),
            title=_require_str(e["title"], f"harms[{i}].title"),
            color=_require_str(e["color"], f"harms[{i}].color"),
            shape=_require_str(e["shape"], f"harms[{i}].shape"),
        )
        for i, e in enumerate(_entries(doc, "harms"))
    )
    features = tuple(
        Feature(
            id=_require_int(e["id"], f"features[{i}].id"),
            title=_require_str(e["title"], f"features[{i}].title"),
            counters=frozenset(
                _require_int_list(e["counters"], f"features[{i}].counters")
            ),
        )
        for i, e in enumerate(_entries(doc, "features"))
    )
    guide = tuple(
        GuideEntry(
            business_id=_require_int(e["business"], f"guide[{i}].business"),
            harm_id=_require_int(e["harm"], f"guide[{i}].harm"),
            text=_require_str(e["text"], f"guide[{i}].text"),
        )
        for i, e in enumerate(_entries(doc, "guide"))
    )

    _check_unique_ids("businesses", (b.id for b in businesses))
    _check_unique_ids("harms", (h.id for h in harms))
    _check_unique_ids("features", (f.id for f in features))

    return Catalog(businesses, harms, features, guide)


def catalog_to_dict(catalog: Catalog) -> dict:
    """Plain-data form of a catalog, matching the document schema."""
    return {
        "businesses": [
            {"id": b.id, "title": b.title, "harms": sorted(b.vulnerable_harms)}
            for b in catalog.businesses
        ],
        "harms": [
            {"id": h.id, "title": h.title, "color": h.color, "shape": h.shape}
            for h in catalog.harms
        ],
        "features": [
            {"id": f.id, "title": f.title, "counters": sorted(f.counters)}
            for f in catalog.features
        ],
        "guide": [
            {"business": g.business_id, "harm": g.harm_id, "text": g.text}
            for g in catalog.guide
        ],
    }


def serialize_catalog(catalog: Catalog) -> str:
    """Render a catalog as a YAML document; load_catalog() round-trips it."""
    return yaml.safe_dump(
        catalog_to_dict(catalog), sort_keys=False, allow_unicode=True
    )
