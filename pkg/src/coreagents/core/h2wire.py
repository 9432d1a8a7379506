"""Minimal HTTP/2 framing for the cleartext prior-knowledge SBI transport.

Implements the subset of RFC 7540/7541 the service-based interface needs:
frame encode/decode for DATA, HEADERS, SETTINGS, PING, GOAWAY,
WINDOW_UPDATE and RST_STREAM, plus HPACK with the full static table,
dynamic-table decoding and plain (non-Huffman) string literals. The local
encoder always emits literal-without-indexing fields with plain literals,
which every compliant HPACK decoder accepts; Huffman-coded input and
CONTINUATION frames are rejected with a clear error.
"""

from __future__ import annotations

import socket
import struct
from dataclasses import dataclass

CONNECTION_PREFACE = b"PRI * HTTP/2.0\r\n\r\nSM\r\n\r\n"
MAX_FRAME_PAYLOAD = 16384

# Frame types
DATA = 0x0
HEADERS = 0x1
PRIORITY = 0x2
RST_STREAM = 0x3
SETTINGS = 0x4
PUSH_PROMISE = 0x5
PING = 0x6
GOAWAY = 0x7
WINDOW_UPDATE = 0x8
CONTINUATION = 0x9

# Flags
FLAG_END_STREAM = 0x1
FLAG_ACK = 0x1
FLAG_END_HEADERS = 0x4
FLAG_PADDED = 0x8
FLAG_PRIORITY = 0x20


class H2ProtocolError(Exception):
    """Peer sent something outside the supported HTTP/2 subset."""


@dataclass
class Frame:
    type: int
    flags: int
    stream_id: int
    payload: bytes

    def serialize(self) -> bytes:
        header = struct.pack(">I", len(self.payload))[1:]  # 24-bit length
        header += struct.pack(">BBI", self.type, self.flags, self.stream_id & 0x7FFFFFFF)
        return header + self.payload


def read_exact(sock: socket.socket, n: int) -> bytes:
    chunks = []
    remaining = n
    while remaining > 0:
        chunk = sock.recv(remaining)
        if not chunk:
            raise ConnectionError("peer closed connection")
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def read_frame(sock: socket.socket) -> Frame:
    header = read_exact(sock, 9)
    length = struct.unpack(">I", b"\x00" + header[:3])[0]
    ftype, flags = header[3], header[4]
    stream_id = struct.unpack(">I", header[5:9])[0] & 0x7FFFFFFF
    payload = read_exact(sock, length) if length else b""
    return Frame(ftype, flags, stream_id, payload)


def strip_padding(frame: Frame) -> bytes:
    payload = frame.payload
    if frame.flags & FLAG_PADDED:
        if not payload:
            raise H2ProtocolError("padded frame with empty payload")
        pad = payload[0]
        payload = payload[1:]
        if pad > len(payload):
            raise H2ProtocolError("padding exceeds payload")
        payload = payload[: len(payload) - pad]
    return payload


def settings_frame(ack: bool = False, values: dict[int, int] | None = None) -> Frame:
    payload = b"".join(struct.pack(">HI", k, v) for k, v in (values or {}).items())
    return Frame(SETTINGS, FLAG_ACK if ack else 0, 0, b"" if ack else payload)


def window_update(stream_id: int, increment: int) -> Frame:
    return Frame(WINDOW_UPDATE, 0, stream_id, struct.pack(">I", increment))


def goaway(last_stream_id: int, error_code: int = 0) -> Frame:
    return Frame(GOAWAY, 0, 0, struct.pack(">II", last_stream_id, error_code))


# ---------------------------------------------------------------------------
# HPACK (RFC 7541)
# ---------------------------------------------------------------------------

HPACK_STATIC_TABLE: list[tuple[str, str]] = [
    (":authority", ""), (":method", "GET"), (":method", "POST"), (":path", "/"),
    (":path", "/index.html"), (":scheme", "http"), (":scheme", "https"),
    (":status", "200"), (":status", "204"), (":status", "206"), (":status", "304"),
    (":status", "400"), (":status", "404"), (":status", "500"),
    ("accept-charset", ""), ("accept-encoding", "gzip, deflate"),
    ("accept-language", ""), ("accept-ranges", ""), ("accept", ""),
    ("access-control-allow-origin", ""), ("age", ""), ("allow", ""),
    ("authorization", ""), ("cache-control", ""), ("content-disposition", ""),
    ("content-encoding", ""), ("content-language", ""), ("content-length", ""),
    ("content-location", ""), ("content-range", ""), ("content-type", ""),
    ("cookie", ""), ("date", ""), ("etag", ""), ("expect", ""), ("expires", ""),
    ("from", ""), ("host", ""), ("if-match", ""), ("if-modified-since", ""),
    ("if-none-match", ""), ("if-range", ""), ("if-unmodified-since", ""),
    ("last-modified", ""), ("link", ""), ("location", ""), ("max-forwards", ""),
    ("proxy-authenticate", ""), ("proxy-authorization", ""), ("range", ""),
    ("referer", ""), ("refresh", ""), ("retry-after", ""), ("server", ""),
    ("set-cookie", ""), ("strict-transport-security", ""),
    ("transfer-encoding", ""), ("user-agent", ""), ("vary", ""), ("via", ""),
    ("www-authenticate", ""),
]


def _encode_integer(value: int, prefix_bits: int, first_byte: int) -> bytes:
    limit = (1 << prefix_bits) - 1
    if value < limit:
        return bytes([first_byte | value])
    out = bytearray([first_byte | limit])
    value -= limit
    while value >= 128:
        out.append((value % 128) + 128)
        value //= 128
    out.append(value)
    return bytes(out)


def _decode_integer(data: bytes, pos: int, prefix_bits: int) -> tuple[int, int]:
    limit = (1 << prefix_bits) - 1
    value = data[pos] & limit
    pos += 1
    if value < limit:
        return value, pos
    shift = 0
    while True:
        if pos >= len(data):
            raise H2ProtocolError("truncated HPACK integer")
        byte = data[pos]
        pos += 1
        value += (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return value, pos


def encode_headers(headers: list[tuple[str, str]]) -> bytes:
    """Encode as literal-without-indexing fields with plain literals."""
    out = bytearray()
    for name, value in headers:
        nbytes = name.lower().encode("ascii")
        vbytes = value.encode("utf-8")
        out.append(0x00)  # literal without indexing, new name
        out += _encode_integer(len(nbytes), 7, 0x00)
        out += nbytes
        out += _encode_integer(len(vbytes), 7, 0x00)
        out += vbytes
    return bytes(out)


class HpackDecoder:
    """Per-connection HPACK decoding context with a dynamic table."""

    def __init__(self, max_table_size: int = 4096):
        self._dynamic: list[tuple[str, str]] = []
        self._max_size = max_table_size

    def _table_entry(self, index: int) -> tuple[str, str]:
        if index <= 0:
            raise H2ProtocolError("HPACK index 0")
        if index <= len(HPACK_STATIC_TABLE):
            return HPACK_STATIC_TABLE[index - 1]
        dyn = index - len(HPACK_STATIC_TABLE) - 1
        if dyn >= len(self._dynamic):
            raise H2ProtocolError(f"HPACK index {index} out of range")
        return self._dynamic[dyn]

    def _read_string(self, data: bytes, pos: int) -> tuple[str, int]:
        huffman = bool(data[pos] & 0x80)
        length, pos = _decode_integer(data, pos, 7)
        if pos + length > len(data):
            raise H2ProtocolError("truncated HPACK string")
        raw = data[pos:pos + length]
        if huffman:
            raise H2ProtocolError("Huffman-coded HPACK strings are not supported")
        return raw.decode("utf-8"), pos + length

    def _insert(self, name: str, value: str) -> None:
        self._dynamic.insert(0, (name, value))
        self._evict()

    def _evict(self) -> None:
        size = sum(len(n) + len(v) + 32 for n, v in self._dynamic)
        while size > self._max_size and self._dynamic:
            n, v = self._dynamic.pop()
            size -= len(n) + len(v) + 32

    def decode(self, data: bytes) -> list[tuple[str, str]]:
        headers: list[tuple[str, str]] = []
        pos = 0
        while pos < len(data):
            byte = data[pos]
            if byte & 0x80:  # indexed field
                index, pos = _decode_integer(data, pos, 7)
                headers.append(self._table_entry(index))
            elif byte & 0x40:  # literal with incremental indexing
                index, pos = _decode_integer(data, pos, 6)
                name = self._table_entry(index)[0] if index else None
                if name is None:
                    name, pos = self._read_string(data, pos)
                value, pos = self._read_string(data, pos)
                self._insert(name, value)
                headers.append((name, value))
            elif byte & 0x20:  # dynamic table size update
                self._max_size, pos = _decode_integer(data, pos, 5)
                self._evict()
            else:  # literal without indexing / never indexed (4-bit prefix)
                index, pos = _decode_integer(data, pos, 4)
                name = self._table_entry(index)[0] if index else None
                if name is None:
                    name, pos = self._read_string(data, pos)
                value, pos = self._read_string(data, pos)
                headers.append((name, value))
        return headers


# ---------------------------------------------------------------------------
# Request/response exchange helpers shared by client and server
# ---------------------------------------------------------------------------

@dataclass
class H2Request:
    method: str
    path: str
    headers: list[tuple[str, str]]
    body: bytes


@dataclass
class H2Response:
    status: int
    headers: list[tuple[str, str]]
    body: bytes


def send_frames(sock: socket.socket, *frames: Frame) -> None:
    sock.sendall(b"".join(f.serialize() for f in frames))


def response_frames(stream_id: int, status: int, headers: list[tuple[str, str]],
                    body: bytes) -> list[Frame]:
    block = encode_headers([(":status", str(status))] + headers)
    frames = [Frame(HEADERS, FLAG_END_HEADERS | (0 if body else FLAG_END_STREAM),
                    stream_id, block)]
    for offset in range(0, len(body), MAX_FRAME_PAYLOAD):
        chunk = body[offset:offset + MAX_FRAME_PAYLOAD]
        last = offset + MAX_FRAME_PAYLOAD >= len(body)
        frames.append(Frame(DATA, FLAG_END_STREAM if last else 0, stream_id, chunk))
    return frames


def request_frames(stream_id: int, method: str, authority: str, path: str,
                   headers: list[tuple[str, str]], body: bytes,
                   scheme: str = "http") -> list[Frame]:
    pseudo = [(":method", method), (":scheme", scheme),
              (":authority", authority), (":path", path)]
    block = encode_headers(pseudo + headers)
    frames = [Frame(HEADERS, FLAG_END_HEADERS | (0 if body else FLAG_END_STREAM),
                    stream_id, block)]
    for offset in range(0, len(body), MAX_FRAME_PAYLOAD):
        chunk = body[offset:offset + MAX_FRAME_PAYLOAD]
        last = offset + MAX_FRAME_PAYLOAD >= len(body)
        frames.append(Frame(DATA, FLAG_END_STREAM if last else 0, stream_id, chunk))
    return frames


def headers_fragment(frame: Frame) -> bytes:
    """Header block fragment after stripping padding and priority info."""
    payload = strip_padding(frame)
    if frame.flags & FLAG_PRIORITY:
        if len(payload) < 5:
            raise H2ProtocolError("truncated priority section")
        payload = payload[5:]
    return payload


class Http2Client:
    """Blocking prior-knowledge client multiplexing sequential streams."""

    def __init__(self, host: str, port: int, timeout: float = 10.0):
        self.host = host
        self.port = port
        self.timeout = timeout
        self._sock: socket.socket | None = None
        self._decoder = HpackDecoder()
        self._next_stream = 1

    def _connect(self) -> socket.socket:
        sock = socket.create_connection((self.host, self.port), timeout=self.timeout)
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        sock.sendall(CONNECTION_PREFACE)
        send_frames(sock, settings_frame())
        self._decoder = HpackDecoder()
        self._next_stream = 1
        return sock

    def close(self) -> None:
        if self._sock is not None:
            try:
                send_frames(self._sock, goaway(0))
                self._sock.close()
            except OSError:
                pass
            self._sock = None

    def request(self, method: str, path: str,
                headers: list[tuple[str, str]] | None = None,
                body: bytes = b"") -> H2Response:
        if self._sock is None:
            self._sock = self._connect()
        try:
            return self._exchange(self._sock, method, path, headers or [], body)
        except (ConnectionError, OSError, H2ProtocolError):
            # One reconnect attempt: the server may have idled out the socket.
            self.close()
            self._sock = self._connect()
            return self._exchange(self._sock, method, path, headers or [], body)

    def _exchange(self, sock: socket.socket, method: str, path: str,
                  headers: list[tuple[str, str]], body: bytes) -> H2Response:
        stream_id = self._next_stream
        self._next_stream += 2
        authority = f"{self.host}:{self.port}"
        send_frames(sock, *request_frames(stream_id, method, authority, path,
                                          headers, body))
        status = 0
        resp_headers: list[tuple[str, str]] = []
        resp_body = bytearray()
        while True:
            frame = read_frame(sock)
            if frame.type == SETTINGS:
                if not frame.flags & FLAG_ACK:
                    send_frames(sock, settings_frame(ack=True))
                continue
            if frame.type == PING:
                if not frame.flags & FLAG_ACK:
                    send_frames(sock, Frame(PING, FLAG_ACK, 0, frame.payload))
                continue
            if frame.type in (WINDOW_UPDATE, PRIORITY):
                continue
            if frame.type == GOAWAY:
                raise ConnectionError("server sent GOAWAY")
            if frame.stream_id != stream_id:
                continue
            if frame.type == HEADERS:
                for name, value in self._decoder.decode(headers_fragment(frame)):
                    if name == ":status":
                        status = int(value)
                    else:
                        resp_headers.append((name, value))
                if frame.flags & FLAG_END_STREAM:
                    return H2Response(status, resp_headers, bytes(resp_body))
            elif frame.type == DATA:
                resp_body += strip_padding(frame)
                if frame.flags & FLAG_END_STREAM:
                    return H2Response(status, resp_headers, bytes(resp_body))
            elif frame.type == RST_STREAM:
                raise ConnectionError("stream reset by server")
