"""Builder registry and the BuilderManager that dispatches builds by dimension."""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Type, TypeVar, Union

from trirep.codealg import LinearCode, TwoBasisReport, min_representation_dim
from trirep.config import resolve_config
from trirep.exceptions import DimensionError
from trirep.gf2core import BitVec
from trirep.protocol import RepresentationBuilderProtocol
from trirep.representation import Representation

# Configure logging
logger = logging.getLogger(__name__)

# Type for builder classes
T = TypeVar("T")

# Registry to store builder classes with metadata
_BUILDER_REGISTRY: Dict[str, Dict[str, Any]] = {}


def RepresentationBuilder(
    dimension: int,
    enabled: bool = True,
    priority: int = 100,
    name: Optional[str] = None,
) -> Callable[[Type[T]], Type[T]]:
    """
    Decorator to register a class as a representation builder.

    Args:
        dimension: Ambient dimension of the built representations
        enabled: Whether this builder is enabled by default
        priority: Priority of this builder (lower numbers = higher priority)
        name: Custom name for this builder (defaults to class name)

    Returns:
        Decorator function for registering the builder
    """

    def decorator(cls: Type[T]) -> Type[T]:
        builder_name = name or cls.__name__
        if builder_name.endswith("Builder"):
            builder_name = builder_name[:-7].lower()

        _BUILDER_REGISTRY[cls.__name__] = {
            "class": cls,
            "dimension": dimension,
            "enabled": enabled,
            "priority": priority,
            "name": builder_name,
        }

        if not hasattr(cls, "name"):
            setattr(cls, "name", property(lambda self: builder_name))
        if not hasattr(cls, "dimension"):
            setattr(cls, "dimension", property(lambda self: dimension))

        logger.debug(
            f"Registered builder: {cls.__name__} (R^{dimension}, enabled={enabled}, priority={priority})"
        )
        return cls

    return decorator


def get_registered_builders() -> List[Dict[str, Any]]:
    """
    Get all registered builder classes from the registry.

    Returns:
        List of builder metadata dictionaries, sorted by priority
    """
    return sorted(_BUILDER_REGISTRY.values(), key=lambda b: b["priority"])


def initialize_builders() -> List[RepresentationBuilderProtocol]:
    """
    Initialize all enabled builder classes.

    Returns:
        List of builder instances
    """
    instances = []
    for info in get_registered_builders():
        if not info["enabled"]:
            continue
        try:
            instances.append(info["class"]())
            logger.debug(f"Initialized builder: {info['name']}")
        except Exception as e:
            logger.warning(f"Failed to initialize builder {info['name']}: {e}")
    return instances


class BuilderManager:
    """
    Singleton class selecting a builder per ambient dimension.
    """

    _instance = None
    _builders: List[RepresentationBuilderProtocol] = []
    _initialized: bool = False

    def __new__(cls):
        """Ensure only one instance exists."""
        if cls._instance is None:
            cls._instance = super(BuilderManager, cls).__new__(cls)
        return cls._instance

    def _initialize(self) -> None:
        if not self._initialized:
            # the built-in builders register themselves on import
            import trirep.builders  # noqa: F401

            self._builders = initialize_builders()
            self._initialized = True

    def get_builders(self) -> List[str]:
        """Names of the active builders, in priority order."""
        self._initialize()
        return [b.name for b in self._builders]

    def get_builder(self, dimension: int) -> RepresentationBuilderProtocol:
        """
        Highest-priority active builder for a dimension.

        Raises:
            DimensionError: if no active builder produces that dimension
        """
        self._initialize()
        for builder in self._builders:
            if builder.dimension == dimension:
                return builder
        raise DimensionError(f"no active builder for R^{dimension}")

    def _set_enabled(self, name: str, enabled: bool) -> bool:
        for info in _BUILDER_REGISTRY.values():
            if info["name"] == name:
                info["enabled"] = enabled
                self._initialized = False
                self._initialize()
                return True
        return False

    def enable_builder(self, name: str) -> bool:
        """
        Enable a builder by name.

        Returns:
            True if successful, False if builder not found
        """
        return self._set_enabled(name, True)

    def disable_builder(self, name: str) -> bool:
        """
        Disable a builder by name.

        Returns:
            True if successful, False if builder not found
        """
        return self._set_enabled(name, False)

    def get_builder_status(self) -> Dict[str, Dict[str, Any]]:
        """
        Get the status of all registered builders.

        Returns:
            Dictionary of builder names to status information
        """
        self._initialize()
        result = {}
        for info in _BUILDER_REGISTRY.values():
            instance = next((b for b in self._builders if b.name == info["name"]), None)
            status: Dict[str, Any] = {
                "enabled": info["enabled"],
                "priority": info["priority"],
                "dimension": info["dimension"],
                "class": info["class"].__name__,
                "capabilities": {},
            }
            if instance is not None and hasattr(instance, "get_builder_info"):
                try:
                    status["capabilities"] = instance.get_builder_info()
                except Exception as e:
                    logger.warning(f"Error getting builder info for '{info['name']}': {e}")
            result[info["name"]] = status
        return result

    def resolve_dimension(
        self,
        code: LinearCode,
        dimension: Union[int, str] = "auto",
        report: Optional[TwoBasisReport] = None,
    ) -> int:
        """The requested dimension, or the minimal one for ``"auto"``.

        ``report`` is a finished 2-basis search of ``code``, reused when given.
        """
        if dimension == "auto":
            return min_representation_dim(code, report)
        dim = int(dimension)
        if dim not in (3, 4):
            raise DimensionError(f"representations are built in R^3 or R^4, not R^{dim}")
        return dim

    def build(
        self,
        code: LinearCode,
        dimension: Union[int, str] = "auto",
        basis: Optional[Sequence[BitVec]] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> Representation:
        """
        Build a representation of ``code``.

        Args:
            code: The code to represent
            dimension: 3, 4 or "auto" for the minimal dimension
            basis: Optional basis; must be a 2-basis for R^3
            config: Construction constants

        Returns:
            The representation built by the selected builder
        """
        dim = self.resolve_dimension(code, dimension)
        builder = self.get_builder(dim)
        logger.debug(f"Building n={code.length}, d={code.dim} in R^{dim} with '{builder.name}'")
        return builder.build(code, basis=basis, config=resolve_config(config))


# Singleton instance
representations = BuilderManager()
