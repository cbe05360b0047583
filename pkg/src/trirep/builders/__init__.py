"""Built-in representation builders.

Importing this package registers them with the builder registry.
"""

from trirep.builders.r3 import TunnelBridgeBuilder, build_r3
from trirep.builders.r4 import BlockBuilder, build_r4

__all__ = ["TunnelBridgeBuilder", "BlockBuilder", "build_r3", "build_r4"]
