"""Protocol definitions for representation builders."""

from typing import Any, Dict, Optional, Protocol, Sequence, runtime_checkable

from trirep.codealg import LinearCode
from trirep.gf2core import BitVec
from trirep.representation import Representation


@runtime_checkable
class RepresentationBuilderProtocol(Protocol):
    """Protocol for representation builder plugins."""

    def build(
        self,
        code: LinearCode,
        basis: Optional[Sequence[BitVec]] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> Representation:
        """
        Build a geometric representation of a code.

        Args:
            code: The code to represent
            basis: Basis to build from; the builder picks one when omitted
            config: Construction constants, see trirep.config

        Returns:
            The representation
        """
        ...

    @property
    def name(self) -> str:
        """Get the name of this builder."""
        ...

    @property
    def dimension(self) -> int:
        """Ambient dimension of the representations this builder produces."""
        ...

    def accepts(self, code: LinearCode) -> bool:
        """
        Check whether this builder can represent the code.

        Returns:
            True if build() will succeed for this code
        """
        return True

    def get_builder_info(self) -> Dict[str, Any]:
        """
        Get information about this builder.

        Returns:
            Dictionary containing builder capabilities and metadata
        """
        return {
            "name": self.name,
            "dimension": self.dimension,
        }
