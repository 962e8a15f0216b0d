#Logging setup shared by the command-line entry points and demos.

import logging
from typing import Dict


class LoggingConfig:
    """Logging configuration"""

    ROOT_LOGGER = 'rpq'
    DEFAULT_LEVEL = logging.WARNING
    VERBOSITY_LEVELS = {
        0: logging.WARNING,
        1: logging.INFO,
        2: logging.DEBUG,
    }
    FORMAT = '%(asctime)s %(levelname)-7s %(name)s: %(message)s'

    @classmethod
    def level_for(cls, verbosity: int) -> int:
        verbosity = max(0, min(verbosity, max(cls.VERBOSITY_LEVELS)))
        return cls.VERBOSITY_LEVELS[verbosity]

    @classmethod
    def configure(cls, verbosity: int = 0) -> logging.Logger:
        """
        Configure the root handler once and return the engine logger

        Args:
            verbosity: 0 = warnings, 1 = info, 2 = debug

        Returns:
            The 'rpq' logger
        """
        level = cls.level_for(verbosity)
        logging.basicConfig(level=level, format=cls.FORMAT)
        logging.getLogger().setLevel(level)
        return logging.getLogger(cls.ROOT_LOGGER)

    @classmethod
    def get_summary(cls) -> Dict:
        return {
            'Root logger': cls.ROOT_LOGGER,
            'Default level': logging.getLevelName(cls.DEFAULT_LEVEL),
            'Verbosity levels': {k: logging.getLevelName(v)
                                 for k, v in cls.VERBOSITY_LEVELS.items()},
        }


if __name__ == "__main__":
    print("Logging Configuration")
    print("=" * 50)
    for key, value in LoggingConfig.get_summary().items():
        print(f"{key:30s}: {value}")
