import functools
import hashlib
import typing as t

try:
    import orjson

    _dumps_sorted = functools.partial(
        orjson.dumps, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2
    )

    def dumps_sorted(obj) -> str:
        """Serialize `obj` as key-ordered, indented JSON."""
        return _dumps_sorted(obj).decode("utf-8")

except ImportError:
    import json

    dumps_sorted = functools.partial(
        json.dumps, sort_keys=True, indent=2, ensure_ascii=False
    )


def merge_dict(*sources, dest=None):
    """Merge `sources` into `dest`.

    `dest` is altered in place.
    """
    if dest is None:
        dest = {}
    for source in sources:
        for key, value in source.items():
            if isinstance(value, dict):
                # get node or create one
                node = dest.setdefault(key, {})
                merge_dict(value, dest=node)
            elif value is not None:
                dest[key] = value
    return dest


def digest(data: t.Union[bytes, str]) -> str:
    """A 64 bit hex checksum of `data`."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.blake2b(data, digest_size=8).hexdigest()
