"""Phase data file formats.

csv         one decimal radian value per line (1-D signals)
mat-text    M space-separated values per row, N rows (2-D; a signal is
            a single row)
f64-binary  16-byte header (magic "S1PH", u32 rows, u32 cols, 4 reserved
            zero bytes, little endian) followed by row-major float64;
            cols == 0 marks a 1-D signal of length rows
png-hue     8-bit RGB visualization, hue = (value + pi) / (2*pi) at full
            saturation; export only

All writes go through a temp file in the target directory plus an atomic
rename.  Values outside [-pi, pi) are wrapped on read with a warning.
"""

import os
import struct
import tempfile
import warnings

import numpy as np
from PIL import Image

from .cyclic import TWO_PI, wrap

MAGIC = b"S1PH"
FORMATS = ("csv", "mat-text", "f64-binary", "png-hue")

_SUFFIXES = {
    ".csv": "csv",
    ".txt": "mat-text",
    ".mat": "mat-text",
    ".bin": "f64-binary",
    ".png": "png-hue",
}


class ParseError(Exception):
    """Malformed phase data file (includes location information)."""


def detect_format(path, fmt=None):
    if fmt is not None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
        return fmt
    suffix = os.path.splitext(str(path))[1].lower()
    if suffix in _SUFFIXES:
        return _SUFFIXES[suffix]
    raise ValueError(
        f"cannot infer format from {path!r}; pass one of {FORMATS} explicitly"
    )


def _atomic_write(path, payload):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phasetv-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _wrap_checked(arr, path):
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{path}: non-finite value in phase data")
    if arr.size and (arr.min() < -np.pi or arr.max() >= np.pi):
        warnings.warn(f"{path}: values outside [-pi, pi) were wrapped on read")
        return wrap(arr)
    return arr


def write_phase_data(path, data, fmt=None):
    """Write a 1-D signal or 2-D image in the chosen (or inferred) format."""
    fmt = detect_format(path, fmt)
    data = np.asarray(data, dtype=float)
    if data.ndim not in (1, 2):
        raise ValueError("phase data must be 1-D or 2-D")
    if fmt == "csv":
        if data.ndim != 1:
            raise ValueError("csv holds 1-D signals only")
        payload = "".join(f"{v:.17g}\n" for v in data).encode()
    elif fmt == "mat-text":
        rows = data[None, :] if data.ndim == 1 else data
        payload = "".join(
            " ".join(f"{v:.17g}" for v in row) + "\n" for row in rows
        ).encode()
    elif fmt == "f64-binary":
        if data.ndim == 1:
            header = struct.pack("<4sIII", MAGIC, data.size, 0, 0)
        else:
            header = struct.pack("<4sIII", MAGIC, data.shape[0], data.shape[1], 0)
        payload = header + np.ascontiguousarray(data, dtype="<f8").tobytes()
    else:  # png-hue
        payload = _encode_png_hue(data)
    _atomic_write(path, payload)


def read_phase_data(path, fmt=None):
    """Read phase data; returns a 1-D array (csv, single-row formats) or
    2-D array, wrapped into the canonical domain if needed."""
    fmt = detect_format(path, fmt)
    if fmt == "png-hue":
        raise ValueError("png-hue is a one-way visualization format")
    with open(path, "rb") as handle:
        raw = handle.read()
    if fmt == "csv":
        values = []
        for lineno, line in enumerate(raw.decode().splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number: {line!r}") from None
        if not values:
            raise ParseError(f"{path}: empty csv file")
        return _wrap_checked(np.array(values), path)
    if fmt == "mat-text":
        rows = []
        width = None
        for lineno, line in enumerate(raw.decode().splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split()]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: malformed row") from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(
                    f"{path}:{lineno}: expected {width} values, got {len(row)}"
                )
            rows.append(row)
        if not rows:
            raise ParseError(f"{path}: empty mat-text file")
        arr = np.array(rows)
        return _wrap_checked(arr[0] if arr.shape[0] == 1 else arr, path)
    # f64-binary
    if len(raw) < 16:
        raise ParseError(f"{path}: truncated header (offset {len(raw)} < 16)")
    magic, n, m, _reserved = struct.unpack("<4sIII", raw[:16])
    if magic != MAGIC:
        raise ParseError(f"{path}: bad magic {magic!r} at offset 0")
    count = n * max(m, 1)
    expected = 16 + 8 * count
    if len(raw) != expected:
        raise ParseError(
            f"{path}: expected {expected} bytes for {n}x{max(m, 1)} grid, "
            f"got {len(raw)}"
        )
    arr = np.frombuffer(raw[16:], dtype="<f8").astype(float)
    if m:
        arr = arr.reshape(n, m)
    return _wrap_checked(arr, path)


def _encode_png_hue(data):
    import io

    img = np.atleast_2d(np.asarray(data, dtype=float))
    hue = (wrap(img) + np.pi) / TWO_PI
    h8 = np.clip(np.floor(hue * 256.0), 0, 255).astype(np.uint8)
    full = np.full_like(h8, 255)
    hsv = np.stack([h8, full, full], axis=-1)
    buf = io.BytesIO()
    Image.fromarray(hsv, mode="HSV").convert("RGB").save(buf, format="PNG")
    return buf.getvalue()
