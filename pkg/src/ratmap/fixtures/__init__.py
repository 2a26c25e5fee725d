"""Bundled example spaces in the text format."""

from importlib import resources

from ..io.parser import parse


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir()
                  if p.name.endswith(".cdga"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.cdga").read_text(encoding="utf-8")


def load(name: str):
    return parse(text(name), source=f"{name}.cdga").algebra


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.cdga")
