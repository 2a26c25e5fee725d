from .parser import (ParseError, SpaceDescription, format_space, load, load_algebra, parse,
                     parse_element, parse_polynomial)

__all__ = ["ParseError", "SpaceDescription", "format_space", "load", "load_algebra", "parse",
           "parse_element", "parse_polynomial"]
