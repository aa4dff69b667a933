# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
Reader and Writer for the binary container of equivalence structures

Layout (all integers little-endian)::

    header   magic "EQSC", version (u16), kind code (u8), n (u64), k (u64),
             number of fields (u32)
    field    name length (u8), name (utf-8), type tag (u8), payload

Payloads:

* ``int``: one u64
* ``bits``: bit length (u64), then the bits most significant first, padded
  to a byte
* ``uints``: value count (u64), value width (u8), then the values packed
  least significant bit first, back to back, padded to a byte

Field names are group paths (``"a/b"``) of the reader/writer protocol, so
that any object with ``serialize``/``deserialize`` methods can be stored.
"""

import collections
import logging
import struct

import numpy as np
from bitarray import bitarray

import eqsuccinct.dynamic  # noqa: F401 (registers the dynamic kind)
from eqsuccinct.structures import get_structure_class
from eqsuccinct.userconfigio import BaseIOHandler, WriterMixin
from eqsuccinct.utils import CorruptFileError

logger = logging.getLogger(__name__)

MAGIC = b"EQSC"
VERSION = 1
HEADER = struct.Struct("<4sHBQQI")
KIND_CODES = collections.OrderedDict(
    [("compact", 1), ("fast", 2), ("const", 3), ("dynamic", 4)]
)
TAG_INT, TAG_BITS, TAG_UINTS = 0, 1, 2
U64 = struct.Struct("<Q")
U8 = struct.Struct("<B")
UINTS_HEADER = struct.Struct("<QB")


#: Values packed (or unpacked) per numpy pass
CHUNK = 1 << 16


def pack_uints(values):
    """Return (width, bytes) of nonnegative integers packed least
    significant bit first"""
    values = np.asarray(values, dtype=np.int64).ravel()
    if len(values) and values.min() < 0:
        raise ValueError("only nonnegative integers can be packed")
    width = int(values.max()).bit_length() if len(values) else 0
    shifts = np.arange(width, dtype=np.int64)
    packed = bitarray(endian="little")
    for start in range(0, len(values), CHUNK):
        bits = (values[start : start + CHUNK, None] >> shifts) & 1
        packed.pack(bits.astype(np.uint8).tobytes())
    return width, packed.tobytes()


def unpack_uints(data, count, width):
    """Inverse of pack_uints"""
    if width == 0:
        return np.zeros(count, dtype=np.int64)
    packed = bitarray(endian="little")
    packed.frombytes(data)
    if len(packed) < count * width:
        raise CorruptFileError("packed integer field is truncated")
    shifts = np.arange(width, dtype=np.int64)
    values = np.empty(count, dtype=np.int64)
    for start in range(0, count, CHUNK):
        stop = min(count, start + CHUNK)
        bits = np.frombuffer(packed[start * width : stop * width].unpack(), dtype=np.uint8)
        bits = bits.reshape(stop - start, width).astype(np.int64)
        values[start:stop] = (bits << shifts).sum(axis=1)
    return values


class BinaryHandler(BaseIOHandler):
    """Class handling binary container r/w"""

    def __init__(self, filename):
        super().__init__()
        self.filename = filename
        self.fields = collections.OrderedDict()

    def close(self):
        """Expected close method: do nothing for binary I/O handler classes"""


class BinaryWriter(BinaryHandler, WriterMixin):
    """Class handling binary serialization"""

    def __init__(self, filename, kind, n, k):
        super().__init__(filename)
        if kind not in KIND_CODES:
            raise ValueError("unknown structure kind %r" % (kind,))
        self.kind = kind
        self.n = n
        self.k = k

    def write_int(self, val):
        if val < 0:
            raise ValueError("%s: only nonnegative integers are stored" % self.path())
        self.fields[self.path()] = (TAG_INT, U64.pack(val))

    write_bool = write_int

    def write_bits(self, val):
        payload = val if val.endian() == "big" else bitarray(val.to01(), endian="big")
        self.fields[self.path()] = (TAG_BITS, U64.pack(len(payload)) + payload.tobytes())

    def write_array(self, val):
        width, data = pack_uints(val)
        self.fields[self.path()] = (TAG_UINTS, UINTS_HEADER.pack(val.size, width) + data)

    def write_sequence(self, val):
        self.write_array(np.asarray(val, dtype=np.int64))

    def write_any(self, val):
        raise NotImplementedError(
            "%s: cannot store %r in a binary container" % (self.path(), type(val))
        )

    write_float = write_str = write_unicode = write_any

    def write_none(self):
        self.write_any(None)

    def get_bytes(self):
        """Return the container as bytes"""
        chunks = [
            HEADER.pack(MAGIC, VERSION, KIND_CODES[self.kind], self.n, self.k, len(self.fields))
        ]
        for name, (tag, payload) in self.fields.items():
            encoded = name.encode("utf-8")
            chunks.append(U8.pack(len(encoded)) + encoded + U8.pack(tag) + payload)
        return b"".join(chunks)

    def save(self):
        data = self.get_bytes()
        with open(self.filename, "wb") as fdesc:
            fdesc.write(data)
        logger.debug("%s: %d fields, %d bytes", self.filename, len(self.fields), len(data))


class BinaryReader(BinaryHandler):
    """Class handling binary deserialization"""

    def __init__(self, filename=None, data=None):
        super().__init__(filename)
        if data is None:
            with open(filename, "rb") as fdesc:
                data = fdesc.read()
        self.__parse(data)

    def __parse(self, data):
        try:
            magic, version, code, self.n, self.k, count = HEADER.unpack_from(data, 0)
        except struct.error:
            raise CorruptFileError("truncated header")
        if magic != MAGIC:
            raise CorruptFileError("bad magic %r" % magic)
        if version != VERSION:
            raise CorruptFileError("unsupported container version %d" % version)
        kinds = {value: key for key, value in KIND_CODES.items()}
        if code not in kinds:
            raise CorruptFileError("unknown structure kind code %d" % code)
        self.kind = kinds[code]
        offset = HEADER.size
        try:
            for _index in range(count):
                (length,) = U8.unpack_from(data, offset)
                name = data[offset + 1 : offset + 1 + length].decode("utf-8")
                offset += 1 + length
                (tag,) = U8.unpack_from(data, offset)
                offset += 1
                value, offset = self.__parse_value(tag, data, offset)
                self.fields[name] = value
        except (struct.error, UnicodeDecodeError):
            raise CorruptFileError("truncated field after %d fields" % len(self.fields))
        if offset != len(data):
            raise CorruptFileError("%d trailing bytes" % (len(data) - offset))

    @staticmethod
    def __parse_value(tag, data, offset):
        if tag == TAG_INT:
            return U64.unpack_from(data, offset)[0], offset + U64.size
        if tag == TAG_BITS:
            (length,) = U64.unpack_from(data, offset)
            offset += U64.size
            size = -(-length // 8)
            if offset + size > len(data):
                raise CorruptFileError("bit field is truncated")
            value = bitarray(endian="big")
            value.frombytes(data[offset : offset + size])
            return value[:length], offset + size
        if tag == TAG_UINTS:
            count, width = UINTS_HEADER.unpack_from(data, offset)
            offset += UINTS_HEADER.size
            size = -(-(count * width) // 8)
            if offset + size > len(data):
                raise CorruptFileError("integer field is truncated")
            return unpack_uints(data[offset : offset + size], count, width), offset + size
        raise CorruptFileError("unknown field type %d" % tag)

    def read(self, group_name=None, func=None, instance=None):
        """Read value within current group or group_name"""
        if group_name:
            self.begin(group_name)
        if instance is None:
            val = (self.read_any if func is None else func)()
        else:
            instance.deserialize(self)
            val = instance
        if group_name:
            self.end(group_name)
        return val

    def has_field(self, name):
        return name in self.fields

    def read_any(self):
        return self.fields[self.path()]

    read_int = read_bool = read_bits = read_array = read_sequence = read_any


def write_structure(filename, structure, user_map=None):
    """Write a structure (and optionally its user map) to a binary container"""
    writer = BinaryWriter(filename, structure.kind, structure.n, structure.k)
    structure.serialize(writer)
    if user_map is not None:
        with writer.group("user_map"):
            user_map.serialize(writer)
    writer.save()
    return writer


def read_structure(filename):
    """Return (structure, user map or None) read from a binary container"""
    from eqsuccinct.ingest import UserLabelMap

    reader = BinaryReader(filename)
    structure = get_structure_class(reader.kind).deserialize(reader, reader.n, reader.k)
    user_map = None
    if any(name.startswith("user_map/") for name in reader.fields):
        user_map = UserLabelMap.__new__(UserLabelMap)
        with reader.group("user_map"):
            user_map.deserialize(reader)
    return structure, user_map
