import logging

from settings import LOG_FILE, LOG_LEVEL


def prepare_logger() -> logging.Logger:
    """
    Creates a logger that is able to both print to console and save logs to a log file
    """
    log_format = logging.Formatter('%(asctime)s :: %(levelname)s :: %(message)s')

    logger = logging.getLogger("poncelet")
    logger.setLevel(LOG_LEVEL)
    logger.propagate = False

    if not logger.handlers:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(LOG_LEVEL)
        console_handler.setFormatter(log_format)
        logger.addHandler(console_handler)

        if LOG_FILE:
            file_handler = logging.FileHandler(LOG_FILE)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(log_format)
            logger.addHandler(file_handler)

    return logger
