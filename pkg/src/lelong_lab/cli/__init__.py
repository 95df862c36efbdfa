from .commands import RunConfig, build_parser, dispatch, main, parse_point

__all__ = ["RunConfig", "build_parser", "dispatch", "main", "parse_point"]
