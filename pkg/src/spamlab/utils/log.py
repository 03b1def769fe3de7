import sys

from termcolor import colored

__all__ = ["set_verbose", "is_verbose", "info", "warn", "error"]

_verbose = True


def set_verbose(verbose: bool) -> None:
    global _verbose
    _verbose = verbose


def is_verbose() -> bool:
    return _verbose


def info(key: str, value, color: str = "blue") -> None:
    if not _verbose:
        return
    print(
        "[INFO] "
        + colored(f"{key}: ", attrs=["bold"])
        + colored(f"{value}", color=color, attrs=["bold"])
    )


def warn(message: str) -> None:
    print("[WARN] " + colored(message, color="yellow"), file=sys.stderr)


def error(message: str) -> None:
    print("[ERROR] " + colored(message, color="red", attrs=["bold"]), file=sys.stderr)
