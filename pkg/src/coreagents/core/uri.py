"""SBI resource URI construction and parsing.

Service-based interfaces address every resource as
``{apiRoot}/{apiName}/{apiVersion}/{resourcePart}`` where apiRoot carries
the scheme and authority. Rendering and parsing round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import urlsplit

from ..errors import InvalidApiRoot

_ALLOWED_SCHEMES = ("http", "https")


@dataclass(frozen=True)
class SbiResourceUri:
    api_root: str       # scheme + authority, e.g. "http://127.0.0.1:8080"
    api_name: str       # e.g. "nnrf-nfm"
    api_version: str    # e.g. "v1"
    resource_part: str  # path remainder plus optional query, may be ""

    def render(self) -> str:
        return build_resource_uri(self.api_root, self.api_name,
                                  self.api_version, self.resource_part)


def build_resource_uri(api_root: str, api_name: str, api_version: str,
                       resource_part: str) -> str:
    """Concatenate the four URI components without duplicate slashes.

    Query strings inside resource_part are preserved verbatim. An empty
    resource_part yields the base API URI with a trailing slash.
    """
    split = urlsplit(api_root)
    if split.scheme not in _ALLOWED_SCHEMES:
        raise InvalidApiRoot(f"apiRoot scheme must be http or https, got {split.scheme!r}")
    if not split.netloc:
        raise InvalidApiRoot(f"apiRoot has no authority: {api_root!r}")
    if not api_name or not api_version:
        raise ValueError("apiName and apiVersion must be non-empty")
    root = api_root.rstrip("/")
    return f"{root}/{api_name.strip('/')}/{api_version.strip('/')}/{resource_part.lstrip('/')}"


def parse_resource_uri(uri: str) -> SbiResourceUri:
    """Split a rendered URI back into its four components.

    Inverse of build_resource_uri for every URI it can produce.
    """
    split = urlsplit(uri)
    if split.scheme not in _ALLOWED_SCHEMES:
        raise InvalidApiRoot(f"scheme must be http or https, got {split.scheme!r}")
    segments = split.path.lstrip("/").split("/", 2)
    if len(segments) < 3:
        raise ValueError(f"URI path has fewer than three segments: {uri!r}")
    api_name, api_version, rest = segments
    if split.query:
        rest = f"{rest}?{split.query}"
    return SbiResourceUri(
        api_root=f"{split.scheme}://{split.netloc}",
        api_name=api_name,
        api_version=api_version,
        resource_part=rest,
    )
