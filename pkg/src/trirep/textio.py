"""Reading the UTF-8 text files trirep works with."""

import logging
from pathlib import Path
from typing import Union

from trirep.exceptions import FormatError

# Configure logging
logger = logging.getLogger(__name__)


def read_text(path: Union[str, Path]) -> str:
    """
    Read a whole UTF-8 text file.

    Raises:
        FormatError: if the file is not valid UTF-8
        OSError: if the file cannot be opened
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        logger.debug(f"Undecodable bytes in {path}: {e}")
        raise FormatError(f"{path} is not UTF-8 text (byte {e.start})") from e
