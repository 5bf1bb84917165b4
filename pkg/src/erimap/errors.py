"""Exception hierarchy for the erimap engine.

Every error carries a human-readable message naming the offending node,
area, or field. Service layers map these onto machine-readable codes.
"""


class ErimapError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        """Machine-readable error code (SCREAMING_SNAKE of the class name)."""
        name = type(self).__name__
        out = [name[0]]
        for ch in name[1:]:
            if ch.isupper():
                out.append("_")
            out.append(ch)
        return "".join(out).upper()


# --- network construction / inference ---------------------------------------

class InvalidNetworkSpec(ErimapError):
    """Structural defect in a network spec not covered by a narrower error."""


class CycleDetected(InvalidNetworkSpec):
    """The directed graph admits no topological order."""


class DanglingEdge(InvalidNetworkSpec):
    """An edge endpoint references an undeclared node."""


class MalformedTable(InvalidNetworkSpec):
    """A probability table is inconsistent with its node or parents."""


class UnknownNode(ErimapError):
    """A node id does not exist in the network."""


class InvalidState(ErimapError):
    """A state name does not exist on the referenced node."""


class ZeroProbabilityEvidence(ErimapError):
    """The evidence configuration has zero joint probability."""


class StateSpaceTooLarge(ErimapError):
    """Joint enumeration refused: state space exceeds the enumeration cap."""


# --- evidence classification -------------------------------------------------

class UnknownState(ErimapError):
    """An observed state name does not exist on the node."""


class DegenerateNode(ErimapError):
    """Node has fewer than two states."""


class ZeroPriorState(ErimapError):
    """Probability-ratio evidence is positive on a zero-prior state."""


class UnknownTier(ErimapError):
    """Reliability tier is not declared in the reliability table."""


class AmbiguousPayloadFromLowTier(ErimapError):
    """Probability/likelihood payload delivered by an RS1/RS2 source."""


class MalformedPayload(ErimapError):
    """Observation payload vector fails its invariants."""


# --- spatial ------------------------------------------------------------------

class DuplicateAreaId(ErimapError):
    """Two areas share the same id."""


class MissingAttribute(ErimapError):
    """Area lacks the requested layer attribute."""


class UnmappedAttributeValue(ErimapError):
    """Layer attribute value is not a state of the linked node."""


class InvalidGeometry(ErimapError):
    """Polygon is self-intersecting or otherwise not simple."""


# --- pipeline ------------------------------------------------------------------

class UnknownArea(ErimapError):
    """Observation addresses an area that does not exist."""


class EngineHalted(ErimapError):
    """All key variables are confirmed; the engine accepts no more input."""


class HardEvidenceConflict(ErimapError):
    """New hard evidence contradicts recorded hard evidence."""


# --- bundles / parsing ----------------------------------------------------------

class ParseError(ErimapError):
    """A bundle file or observation record failed to parse."""


class CrossValidationError(ErimapError):
    """Bundle files are individually well-formed but mutually inconsistent."""
